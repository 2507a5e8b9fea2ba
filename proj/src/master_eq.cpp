#include "scramble/master_eq.hpp"

#include <bit>

namespace scramble {

namespace {

void check_sites(std::size_t L) {
  if (L > kMaxExactSites) throw DimensionTooLarge("exact height solves are limited to L <= 14");
  if (L < 5) throw TooSmall("height generator needs L >= 5");
}

// Falling factorial n (n-1) ... (n-k+1) as a double; zero when k > n.
double falling(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t j = 0; j < k; ++j) r *= static_cast<double>(n - j);
  return r;
}

double binomial4(std::size_t i) {
  static constexpr double c[5] = {1, 4, 6, 4, 1};
  return c[i];
}

}  // namespace

double HeightGenerator::max_rate() const {
  double m = 0.0;
  for (double d : diag_) m = std::max(m, -d);
  return m;
}

std::span<const std::uint32_t> HeightGenerator::targets(std::size_t h) const {
  return std::span<const std::uint32_t>(targets_).subspan(offsets_[h], offsets_[h + 1] - offsets_[h]);
}

std::span<const double> HeightGenerator::rates(std::size_t h) const {
  return std::span<const double>(rates_).subspan(offsets_[h], offsets_[h + 1] - offsets_[h]);
}

double HeightGenerator::rate(std::size_t h, std::size_t target) const {
  auto ts = targets(h);
  auto rs = rates(h);
  for (std::size_t k = 0; k < ts.size(); ++k)
    if (ts[k] == target) return rs[k];
  return 0.0;
}

void HeightGenerator::finish() {
  const std::size_t dim = std::size_t{1} << L_;
  diag_.assign(dim, 0.0);
  for (std::size_t h = 0; h < dim; ++h)
    for (double r : rates(h)) diag_[h] -= r;
  weight_.resize(dim);
  for (std::size_t h = 0; h < dim; ++h) weight_[h] = static_cast<std::uint8_t>(std::popcount(h));
  inv_class_size_.assign(L_ + 1, 0.0);
  for (std::size_t w = 0; w <= L_; ++w) inv_class_size_[w] = falling(w, w) / falling(L_, w);
}

void HeightGenerator::mix(std::span<const double> f, std::span<double> out) const {
  std::vector<double> cls(L_ + 1, 0.0);
  for (std::size_t h = 0; h < f.size(); ++h) cls[weight_[h]] += f[h];
  for (std::size_t w = 0; w <= L_; ++w) cls[w] *= inv_class_size_[w];
  for (std::size_t h = 0; h < f.size(); ++h) out[h] = cls[weight_[h]];
}

void HeightGenerator::apply(std::span<const double> f, std::span<double> out) const {
  const std::size_t dim = diag_.size();
  std::vector<double> mixed;
  std::span<const double> in = f;
  if (mixed_) {
    mixed.resize(dim);
    mix(f, mixed);
    in = mixed;
  }
  for (std::size_t h = 0; h < dim; ++h) out[h] = diag_[h] * in[h];
  for (std::size_t h = 0; h < dim; ++h) {
    double v = in[h];
    if (v == 0.0) continue;
    for (std::uint32_t k = offsets_[h]; k < offsets_[h + 1]; ++k) out[targets_[k]] += rates_[k] * v;
  }
  if (mixed_) {
    std::vector<double> tmp(out.begin(), out.end());
    mix(tmp, out);
  }
}

std::vector<double> HeightGenerator::column_sums() const {
  std::vector<double> s(diag_.size());
  for (std::size_t h = 0; h < diag_.size(); ++h) {
    double acc = diag_[h];
    for (double r : rates(h)) acc += r;
    s[h] = acc;
  }
  return s;
}

HeightGenerator build_local_generator(std::size_t L, double A, double B) {
  check_sites(L);
  if (!(A >= 0.0) || !(B >= 0.0)) throw InvalidArgument("rates must be nonnegative");
  HeightGenerator g;
  g.L_ = L;
  const std::size_t dim = std::size_t{1} << L;
  for (std::size_t h = 0; h < dim; ++h) {
    for (std::size_t i = 0; i < L; ++i) {
      std::size_t j = (i + 1) % L;
      if (A > 0.0 && (((h >> i) ^ (h >> j)) & 1)) {
        g.targets_.push_back(static_cast<std::uint32_t>(h ^ (std::size_t{1} << i) ^ (std::size_t{1} << j)));
        g.rates_.push_back(4.0 * A);
      }
    }
    if (B > 0.0 && (std::popcount(h & 15u) & 1)) {
      g.targets_.push_back(static_cast<std::uint32_t>(h ^ 15u));
      g.rates_.push_back(4.0 * B);
    }
    g.offsets_.push_back(static_cast<std::uint32_t>(g.targets_.size()));
  }
  g.finish();
  return g;
}

HeightGenerator build_generic_generator(std::size_t L, const std::vector<std::vector<double>>& A,
                                        const std::vector<FourBodyRate>& B) {
  check_sites(L);
  if (A.size() != L) throw ShapeMismatch("A must be L x L");
  for (std::size_t i = 0; i < L; ++i) {
    if (A[i].size() != L) throw ShapeMismatch("A must be L x L");
    if (A[i][i] != 0.0) throw ShapeMismatch("A must have zero diagonal");
    for (std::size_t j = 0; j < i; ++j)
      if (A[i][j] != A[j][i]) throw ShapeMismatch("A must be symmetric");
  }
  for (const auto& b : B) {
    if (!(b.i < b.j && b.j < b.k && b.k < b.l && b.l < L)) throw ShapeMismatch("B terms need i < j < k < l < L");
    if (!(b.rate >= 0.0)) throw InvalidArgument("rates must be nonnegative");
  }
  HeightGenerator g;
  g.L_ = L;
  const std::size_t dim = std::size_t{1} << L;
  for (std::size_t h = 0; h < dim; ++h) {
    for (std::size_t i = 0; i < L; ++i)
      for (std::size_t j = i + 1; j < L; ++j) {
        if (A[i][j] < 0.0) throw InvalidArgument("rates must be nonnegative");
        if (A[i][j] > 0.0 && (((h >> i) ^ (h >> j)) & 1)) {
          g.targets_.push_back(static_cast<std::uint32_t>(h ^ (std::size_t{1} << i) ^ (std::size_t{1} << j)));
          g.rates_.push_back(4.0 * A[i][j]);
        }
      }
    for (const auto& b : B) {
      std::size_t mask = (std::size_t{1} << b.i) | (std::size_t{1} << b.j) | (std::size_t{1} << b.k) |
                         (std::size_t{1} << b.l);
      if (b.rate > 0.0 && (std::popcount(h & mask) & 1)) {
        g.targets_.push_back(static_cast<std::uint32_t>(h ^ mask));
        g.rates_.push_back(4.0 * b.rate);
      }
    }
    g.offsets_.push_back(static_cast<std::uint32_t>(g.targets_.size()));
  }
  g.finish();
  return g;
}

HeightGenerator build_nonlocal_height_generator(std::size_t L, double B) {
  HeightGenerator g = build_local_generator(L, 0.0, B);
  g.mixed_ = true;
  return g;
}

double p_hi(std::size_t L, std::size_t h, std::size_t i) {
  if (L < 4 || h > L || i > 4 || i > h || 4 - i > L - h) return 0.0;
  // C(L-4, h-i) / C(L, h) = [h]_i [L-h]_{4-i} / [L]_4 with falling factorials.
  return binomial4(i) * falling(h, i) * falling(L - h, 4 - i) / falling(L, 4);
}

double SizeGenerator::entry(std::size_t row, std::size_t col) const {
  const std::size_t L = diag_.size();
  if (row < 1 || col < 1 || row > L || col > L) throw InvalidArgument("size index out of range");
  if (row == col) return diag_[col - 1];
  if (row == col + 2) return up_[col - 1];
  if (col == row + 2) return down_[col - 1];
  return 0.0;
}

double SizeGenerator::max_rate() const {
  double m = 0.0;
  for (double d : diag_) m = std::max(m, -d);
  return m;
}

void SizeGenerator::apply(std::span<const double> f, std::span<double> out) const {
  const std::size_t L = diag_.size();
  for (std::size_t c = 0; c < L; ++c) out[c] = diag_[c] * f[c];
  for (std::size_t c = 0; c + 2 < L; ++c) out[c + 2] += up_[c] * f[c];
  for (std::size_t c = 2; c < L; ++c) out[c - 2] += down_[c] * f[c];
}

std::vector<double> SizeGenerator::column_sums() const {
  const std::size_t L = diag_.size();
  std::vector<double> s(L);
  for (std::size_t c = 0; c < L; ++c) s[c] = diag_[c] + (c + 2 < L ? up_[c] : 0.0) + (c >= 2 ? down_[c] : 0.0);
  return s;
}

SizeGenerator build_size_generator(std::size_t L, double B) {
  if (L < 5) throw TooSmall("size generator needs L >= 5");
  if (!(B >= 0.0)) throw InvalidArgument("rate B must be nonnegative");
  SizeGenerator g;
  g.up_.assign(L, 0.0);
  g.down_.assign(L, 0.0);
  g.diag_.assign(L, 0.0);
  for (std::size_t h = 1; h <= L; ++h) {
    double up = 4.0 * B * p_hi(L, h, 1);
    double down = 4.0 * B * p_hi(L, h, 3);
    g.up_[h - 1] = h + 2 <= L ? up : 0.0;
    g.down_[h - 1] = h >= 3 ? down : 0.0;
    g.diag_[h - 1] = -(up + down);
  }
  return g;
}

DistributionState single_particle_distribution(const HeightGenerator& gen) {
  DistributionState f;
  f.p.assign(gen.dimension(), 0.0);
  const std::size_t L = gen.num_sites();
  for (std::size_t i = 0; i < L; ++i) f.p[std::size_t{1} << i] = 1.0 / static_cast<double>(L);
  return f;
}

DistributionState unit_size_distribution(const SizeGenerator& gen) {
  DistributionState f;
  f.p.assign(gen.dimension(), 0.0);
  f.p[0] = 1.0;
  return f;
}

void check_normalized(const DistributionState& f, std::size_t dimension) {
  if (f.p.size() != dimension) throw ShapeMismatch("distribution length differs from generator dimension");
  double total = 0.0;
  for (double v : f.p) {
    if (v < 0.0 || v > 1.0) throw NotNormalized("probability outside [0, 1]");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) throw NotNormalized("distribution sums to " + std::to_string(total));
}

double early_time_mean(double t, std::size_t L, double B) {
  if (t < 0) throw InvalidArgument("t must be nonnegative");
  return std::exp(32.0 * B * t / static_cast<double>(L));
}

double mean_size(const HeightGenerator&, const DistributionState& f) {
  double m = 0.0;
  for (std::size_t h = 0; h < f.p.size(); ++h) m += f.p[h] * std::popcount(h);
  return m;
}

double mean_size(const SizeGenerator&, const DistributionState& f) {
  double m = 0.0;
  for (std::size_t h = 0; h < f.p.size(); ++h) m += f.p[h] * static_cast<double>(h + 1);
  return m;
}

std::vector<double> aggregate_by_weight(const HeightGenerator& gen, const DistributionState& f) {
  std::vector<double> out(gen.num_sites() + 1, 0.0);
  for (std::size_t h = 0; h < f.p.size(); ++h) out[std::popcount(h)] += f.p[h];
  return out;
}

}  // namespace scramble
