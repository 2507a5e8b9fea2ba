#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "scramble/errors.hpp"
#include "scramble/series.hpp"

namespace scramble {

// Four-body term B_ijkl with 0-based i < j < k < l.
struct FourBodyRate {
  std::size_t i, j, k, l;
  double rate;
};

// Sparse rate matrix over height vectors of L sites, indexed by the bit mask of
// the height vector (site i is bit i-1). df/dt = G f. For each source state we
// keep its outgoing transitions; the diagonal holds minus their total.
class HeightGenerator {
 public:
  std::size_t num_sites() const { return L_; }
  std::size_t dimension() const { return diag_.size(); }
  double diagonal(std::size_t h) const { return diag_[h]; }
  double max_rate() const;
  // Rate h -> target, 0 if absent. For the weight-mixed generator this is the
  // rate of the unmixed source term.
  double rate(std::size_t h, std::size_t target) const;
  std::span<const std::uint32_t> targets(std::size_t h) const;
  std::span<const double> rates(std::size_t h) const;
  bool is_weight_mixed() const { return mixed_; }

  void apply(std::span<const double> f, std::span<double> out) const;
  std::vector<double> column_sums() const;

 private:
  friend HeightGenerator build_local_generator(std::size_t, double, double);
  friend HeightGenerator build_generic_generator(std::size_t, const std::vector<std::vector<double>>&,
                                                 const std::vector<FourBodyRate>&);
  friend HeightGenerator build_nonlocal_height_generator(std::size_t, double);

  void finish();
  void mix(std::span<const double> f, std::span<double> out) const;

  std::size_t L_ = 0;
  bool mixed_ = false;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<std::uint32_t> targets_;
  std::vector<double> rates_;
  std::vector<double> diag_;
  std::vector<double> inv_class_size_;  // 1 / C(L, w), for mixing
  std::vector<std::uint8_t> weight_;
};

constexpr std::size_t kMaxExactSites = 14;

HeightGenerator build_local_generator(std::size_t L, double A, double B);
// A is an L x L symmetric matrix with zero diagonal.
HeightGenerator build_generic_generator(std::size_t L, const std::vector<std::vector<double>>& A,
                                        const std::vector<FourBodyRate>& B);
// Source term on sites 1..4 sandwiched between averages over each weight class:
// the height-space form of the nonlocal model, whose reshuffling leaves every
// arrangement of a given weight equally likely.
HeightGenerator build_nonlocal_height_generator(std::size_t L, double B);

// Probability that 4 fixed sites hold exactly i particles when h particles sit
// uniformly on L sites: C(4,i) C(L-4,h-i) / C(L,h).
double p_hi(std::size_t L, std::size_t h, std::size_t i);

// Tridiagonal-in-steps-of-two rate matrix over sizes h = 1..L (index h-1).
class SizeGenerator {
 public:
  std::size_t num_sites() const { return diag_.size(); }
  std::size_t dimension() const { return diag_.size(); }
  // Entry (row, col) with 1-based sizes; zero off the three bands.
  double entry(std::size_t row, std::size_t col) const;
  double max_rate() const;
  void apply(std::span<const double> f, std::span<double> out) const;
  std::vector<double> column_sums() const;

 private:
  friend SizeGenerator build_size_generator(std::size_t, double);
  std::vector<double> up_;    // rate h -> h+2
  std::vector<double> down_;  // rate h -> h-2
  std::vector<double> diag_;
};

SizeGenerator build_size_generator(std::size_t L, double B);

struct DistributionState {
  std::vector<double> p;
  double t = 0.0;
};

DistributionState single_particle_distribution(const HeightGenerator& gen);  // uniform over one-particle states
DistributionState unit_size_distribution(const SizeGenerator& gen);          // all weight on h = 1

void check_normalized(const DistributionState& f, std::size_t dimension);

// Fixed-step RK4. Steps never exceed 0.1 / max rate and divide each grid
// interval evenly. After each step the state is renormalized; a correction above
// 1e-8 throws StiffnessGuard.
template <class Gen>
std::vector<DistributionState> integrate(const Gen& gen, const DistributionState& f0, std::span<const double> t_grid) {
  const std::size_t n = gen.dimension();
  check_normalized(f0, n);
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (t_grid[k] < f0.t || (k > 0 && !(t_grid[k] > t_grid[k - 1])))
      throw InvalidArgument("time grid must be increasing and start at or after f0.t");
  }
  const double rate = gen.max_rate();
  const double h_max = rate > 0 ? 0.1 / rate : std::numeric_limits<double>::infinity();
  std::vector<double> f = f0.p, k1(n), k2(n), k3(n), k4(n), tmp(n);
  double t = f0.t;
  std::vector<DistributionState> out;
  out.reserve(t_grid.size());
  for (double target : t_grid) {
    double span = target - t;
    if (span > 0 && rate > 0) {
      auto steps = static_cast<std::size_t>(std::ceil(span / h_max));
      double h = span / static_cast<double>(steps);
      for (std::size_t s = 0; s < steps; ++s) {
        gen.apply(f, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = f[i] + 0.5 * h * k1[i];
        gen.apply(tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = f[i] + 0.5 * h * k2[i];
        gen.apply(tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = f[i] + h * k3[i];
        gen.apply(tmp, k4);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          f[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
          total += f[i];
        }
        if (!(std::abs(total - 1.0) <= 1e-8))
          throw StiffnessGuard("renormalization correction " + std::to_string(std::abs(total - 1.0)) +
                               " exceeds 1e-8 at t = " + std::to_string(t + (s + 1) * h));
        for (double& v : f) v /= total;
      }
    }
    t = target;
    out.push_back(DistributionState{f, t});
  }
  return out;
}

// Early-time growth of the nonlocal model: exp(32 B t / L).
double early_time_mean(double t, std::size_t L, double B);

// Mean size of each state: weight of the height vector, or the size index.
double mean_size(const HeightGenerator& gen, const DistributionState& f);
double mean_size(const SizeGenerator& gen, const DistributionState& f);

template <class Gen>
Series exact_mean_series(const Gen& gen, const DistributionState& f0, std::span<const double> t_grid) {
  Series s;
  for (const auto& st : integrate(gen, f0, t_grid)) {
    s.t.push_back(st.t);
    s.mean.push_back(mean_size(gen, st));
    s.err.push_back(0.0);
  }
  s.L = gen.num_sites();
  return s;
}

// Distribution over sizes 0..L of a height distribution.
std::vector<double> aggregate_by_weight(const HeightGenerator& gen, const DistributionState& f);

}  // namespace scramble
