#include <doctest.h>

#include <cmath>
#include <vector>

#include "scramble/analysis.hpp"
#include "scramble/errors.hpp"

using namespace scramble;

namespace {

Series make(std::size_t L, std::size_t n, double dt, double (*f)(double, double)) {
  Series s;
  s.L = L;
  for (std::size_t k = 0; k < n; ++k) {
    double t = dt * k;
    s.t.push_back(t);
    s.mean.push_back(f(t, double(L)));
    s.err.push_back(0.0);
  }
  return s;
}

}  // namespace

TEST_CASE("collapse error") {
  auto a = make(64, 100, 1.0, [](double t, double) { return std::sqrt(t); });
  auto b = a;
  b.L = 128;
  std::vector<Series> same{a, b};
  CHECK(collapse_error(same, CollapseSpec{0, 0}) == doctest::Approx(0.0));

  // y = L g(t / L^2) collapses with z = 2, alpha = 1.
  auto diffusive = [](double t, double L) { return L * (1 - std::exp(-t / (L * L))); };
  std::vector<Series> set{make(32, 400, 10.24, diffusive), make(64, 400, 40.96, diffusive),
                          make(128, 400, 163.84, diffusive)};
  double good = collapse_error(set, CollapseSpec{2, 1});
  double bad = collapse_error(set, CollapseSpec{1, 1});
  CHECK(good < 1e-3);
  CHECK(bad > 3 * good);

  std::vector<Series> swapped{set[2], set[0], set[1]};
  CHECK(collapse_error(swapped, CollapseSpec{2, 1}) == doctest::Approx(good));
  auto scaled = set;
  for (auto& s : scaled)
    for (auto& v : s.mean) v *= 7.5;
  CHECK(collapse_error(scaled, CollapseSpec{2, 1}) == doctest::Approx(good));

  Series late = make(64, 10, 1.0, diffusive);
  for (auto& t : late.t) t += 1e6;
  std::vector<Series> disjoint{make(64, 10, 1.0, diffusive), late};
  CHECK_THROWS_AS(collapse_error(disjoint, CollapseSpec{0, 0}), NoOverlap);
  std::vector<Series> single{a};
  CHECK_THROWS_AS(collapse_error(single, CollapseSpec{}), InvalidArgument);
  CollapseSpec tiny;
  tiny.grid = 8;
  CHECK_THROWS_AS(collapse_error(same, tiny), InvalidArgument);
}

TEST_CASE("exponential rate fit recovers a planted rate") {
  auto s = make(256, 2000, 1.0, [](double t, double L) { return std::exp(8 * t / L); });
  auto fit = fit_exponential_rate(s, exponential_window(256));
  CHECK(std::abs(fit.estimate - 8.0 / 256) < 1e-10);
  CHECK(fit.r2 == doctest::Approx(1.0));
  CHECK(fit.stderr_ >= 0.0);
  CHECK(std::isfinite(fit.stderr_));
  CHECK(fit.window_lo == doctest::Approx(32.0 * std::log(2.0)).epsilon(0.05));
  Series neg = s;
  neg.mean[0] = -1;
  CHECK_THROWS_AS(fit_exponential_rate(neg, FitWindow{FitWindow::Axis::time, 0, 10}), NonPositive);
}

TEST_CASE("power law fit recovers a planted exponent") {
  auto lin = make(100, 200, 1.0, [](double t, double) { return 3 * t; });
  auto fit = fit_power_law(lin, power_law_window(100));
  CHECK(std::abs(fit.estimate - 1.0) < 1e-10);
  CHECK(fit.points == 97);
  auto root = make(100, 200, 1.0, [](double t, double) { return 0.7 * std::sqrt(t); });
  CHECK(std::abs(fit_power_law(root, power_law_window(100)).estimate - 0.5) < 1e-10);
  CHECK_THROWS_AS(fit_power_law(lin, FitWindow{FitWindow::Axis::time, 0, 10}), NonPositive);
  CHECK_THROWS_AS(fit_power_law(lin, FitWindow{FitWindow::Axis::time, 5, 5}), TooShort);
}

TEST_CASE("saturation value") {
  auto c = make(10, 100, 1.0, [](double, double) { return 4.25; });
  auto r = saturation_value(c, 0.2);
  CHECK(r.estimate == 4.25);
  CHECK(r.stderr_ == 0.0);
  CHECK(r.points == 20);
  CHECK_THROWS_AS(saturation_value(c, 0.05), TooShort);
  CHECK_THROWS_AS(saturation_value(c, 0.0), InvalidArgument);
}

TEST_CASE("linear fit standard errors") {
  std::vector<double> x{0, 1, 2, 3}, y{0.1, 0.9, 2.1, 2.9};
  auto f = linear_fit(x, y);
  CHECK(f.estimate == doctest::Approx(0.96));
  CHECK(std::isfinite(f.stderr_));
  CHECK(f.stderr_ > 0);
  std::vector<double> x2{0, 1}, y2{0, 1};
  CHECK(std::isinf(linear_fit(x2, y2).stderr_));
}
