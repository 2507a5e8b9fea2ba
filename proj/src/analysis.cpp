#include "scramble/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scramble/errors.hpp"

namespace scramble {

namespace {

double interpolate(std::span<const double> x, std::span<const double> y, double at) {
  auto it = std::lower_bound(x.begin(), x.end(), at);
  if (it == x.begin()) return y.front();
  if (it == x.end()) return y.back();
  std::size_t k = static_cast<std::size_t>(it - x.begin());
  double x0 = x[k - 1], x1 = x[k];
  if (x1 == x0) return y[k];
  double w = (at - x0) / (x1 - x0);
  return y[k - 1] + w * (y[k] - y[k - 1]);
}

// Indices of the points inside the window. A value window takes the first
// contiguous run that enters [lo, hi], so later noise cannot re-enter it.
std::vector<std::size_t> select(const Series& s, const FitWindow& win) {
  std::vector<std::size_t> idx;
  if (win.axis == FitWindow::Axis::time) {
    for (std::size_t k = 0; k < s.size(); ++k)
      if (s.t[k] >= win.lo && s.t[k] <= win.hi) idx.push_back(k);
    return idx;
  }
  std::size_t k = 0;
  while (k < s.size() && s.mean[k] < win.lo) ++k;
  for (; k < s.size() && s.mean[k] <= win.hi; ++k) idx.push_back(k);
  return idx;
}

FitResult log_fit(const Series& s, const FitWindow& win, bool log_x) {
  auto idx = select(s, win);
  std::vector<double> x, y;
  for (std::size_t k : idx) {
    if (!(s.mean[k] > 0.0)) throw NonPositive("fit window contains a nonpositive value");
    if (log_x && !(s.t[k] > 0.0)) throw NonPositive("power-law window contains t <= 0");
    x.push_back(log_x ? std::log(s.t[k]) : s.t[k]);
    y.push_back(std::log(s.mean[k]));
  }
  FitResult r = linear_fit(x, y);
  r.window_lo = s.t[idx.front()];
  r.window_hi = s.t[idx.back()];
  return r;
}

}  // namespace

double collapse_error(std::span<const Series> series, const CollapseSpec& spec) {
  if (series.size() < 2) throw InvalidArgument("collapse needs at least two series");
  if (spec.grid < 16) throw InvalidArgument("collapse grid needs at least 16 points");
  if (!(spec.window_lo >= 0.0 && spec.window_hi <= 1.0 && spec.window_lo < spec.window_hi))
    throw InvalidArgument("collapse window must satisfy 0 <= lo < hi <= 1");
  std::vector<std::vector<double>> xs, ys;
  double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
  for (const auto& s : series) {
    if (s.size() < 2) throw TooShort("collapse series needs at least two points");
    if (s.L == 0) throw InvalidArgument("collapse series lacks a system size");
    double L = static_cast<double>(s.L);
    double sx = std::pow(L, -spec.z), sy = std::pow(L, -spec.alpha);
    std::vector<double> x(s.size()), y(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
      x[k] = s.t[k] * sx;
      y[k] = s.mean[k] * sy;
    }
    lo = std::max(lo, x.front());
    hi = std::min(hi, x.back());
    xs.push_back(std::move(x));
    ys.push_back(std::move(y));
  }
  if (!(lo < hi)) throw NoOverlap("rescaled domains do not overlap");
  double a = lo + spec.window_lo * (hi - lo), b = lo + spec.window_hi * (hi - lo);
  const std::size_t G = spec.grid;
  std::vector<double> mean(G, 0.0);
  std::vector<std::vector<double>> vals(series.size(), std::vector<double>(G));
  for (std::size_t g = 0; g < G; ++g) {
    double at = a + (b - a) * static_cast<double>(g) / static_cast<double>(G - 1);
    for (std::size_t s = 0; s < series.size(); ++s) {
      vals[s][g] = interpolate(xs[s], ys[s], at);
      mean[g] += vals[s][g];
    }
    mean[g] /= static_cast<double>(series.size());
  }
  double ss = 0.0;
  for (std::size_t s = 0; s < series.size(); ++s)
    for (std::size_t g = 0; g < G; ++g) ss += (vals[s][g] - mean[g]) * (vals[s][g] - mean[g]);
  double rms = std::sqrt(ss / static_cast<double>(series.size() * G));
  auto [mn, mx] = std::minmax_element(mean.begin(), mean.end());
  double range = *mx - *mn;
  if (range == 0.0) return rms == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return rms / range;
}

FitWindow exponential_window(std::size_t L) {
  return FitWindow{FitWindow::Axis::value, 2.0, static_cast<double>(L) / 20.0};
}

FitWindow power_law_window(std::size_t L) {
  double l = static_cast<double>(L);
  return FitWindow{FitWindow::Axis::time, 4.0, l * l / 100.0};
}

FitResult linear_fit(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw TooShort("fit needs at least two points in the window");
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
    syy += (y[k] - my) * (y[k] - my);
  }
  if (sxx == 0.0) throw TooShort("fit window has no spread in x");
  FitResult r;
  r.estimate = sxy / sxx;
  r.intercept = my - r.estimate * mx;
  double sse = 0;
  for (std::size_t k = 0; k < n; ++k) {
    double d = y[k] - r.intercept - r.estimate * x[k];
    sse += d * d;
  }
  r.points = n;
  r.r2 = syy > 0 ? 1.0 - sse / syy : 1.0;
  r.stderr_ = n > 2 ? std::sqrt(sse / static_cast<double>(n - 2) / sxx) : std::numeric_limits<double>::infinity();
  r.window_lo = x.front();
  r.window_hi = x.back();
  return r;
}

FitResult fit_exponential_rate(const Series& s, const FitWindow& window) { return log_fit(s, window, false); }

FitResult fit_power_law(const Series& s, const FitWindow& window) { return log_fit(s, window, true); }

FitResult saturation_value(const Series& s, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) throw InvalidArgument("tail fraction must lie in (0, 1]");
  auto n = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(s.size())));
  if (n < 10) throw TooShort("saturation tail spans fewer than 10 points");
  std::size_t first = s.size() - n;
  double m = 0;
  for (std::size_t k = first; k < s.size(); ++k) m += s.mean[k];
  m /= n;
  double var = 0;
  for (std::size_t k = first; k < s.size(); ++k) var += (s.mean[k] - m) * (s.mean[k] - m);
  var /= static_cast<double>(n - 1);
  FitResult r;
  r.estimate = m;
  r.stderr_ = std::sqrt(var / static_cast<double>(n));
  r.window_lo = s.t[first];
  r.window_hi = s.t.back();
  r.points = n;
  r.r2 = 0.0;
  return r;
}

Series per_site(const Series& s) {
  Series out = s;
  double L = static_cast<double>(s.L);
  for (auto& v : out.mean) v /= L;
  for (auto& v : out.err) v /= L;
  return out;
}

}  // namespace scramble
