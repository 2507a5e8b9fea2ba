#include "scramble/sep.hpp"

#include <algorithm>
#include <cmath>

#include "scramble/errors.hpp"

namespace scramble {

namespace {

enum class Observable { count, squared_displacement };

void simulate(const SepConfig& cfg, Philox& rng, Observable obs, std::span<std::int64_t> out) {
  Lattice lat = init_single_particle(cfg.L, rng);
  const double pa = cfg.p_A(), pb = cfg.p_B();
  auto value = [&]() -> std::int64_t {
    if (obs == Observable::count) return static_cast<std::int64_t>(lat.count());
    return lat.displacement * lat.displacement;
  };
  std::size_t r = 0;
  out[r++] = value();
  for (std::size_t n = 1; n <= cfg.periods; ++n) {
    step_source(lat, pb, rng);
    if (cfg.variant == SepVariant::local)
      step_hop(lat, pa, rng);
    else
      step_shuffle(lat, rng);
    if (n % cfg.record_every == 0) out[r++] = value();
  }
}

}  // namespace

std::size_t Lattice::count() const {
  std::size_t c = 0;
  for (auto v : occ) c += v;
  return c;
}

Lattice init_single_particle(std::size_t L, Philox& rng) {
  if (L < 5) throw TooSmall("lattice needs at least 5 sites");
  Lattice lat;
  lat.occ.assign(L, 0);
  lat.occ[rng.below(static_cast<std::uint32_t>(L))] = 1;
  return lat;
}

void step_source(Lattice& lat, double p_B, Philox& rng) {
  auto& o = lat.occ;
  if (((o[0] + o[1] + o[2] + o[3]) & 1) == 0) return;
  if (!rng.bernoulli(p_B)) return;
  for (int i = 0; i < 4; ++i) o[i] ^= 1;
}

void step_hop(Lattice& lat, double p_A, Philox& rng) {
  const std::size_t L = lat.occ.size();
  const double move = 2.0 * p_A;
  const int sweeps = std::max(1, static_cast<int>(std::ceil(move - 1e-12)));
  const double q = move / sweeps;
  auto& parts = lat.scratch;
  for (int s = 0; s < sweeps; ++s) {
    parts.clear();
    for (std::size_t i = 0; i < L; ++i)
      if (lat.occ[i]) parts.push_back(static_cast<std::uint32_t>(i));
    for (std::size_t i = parts.size(); i > 1; --i) std::swap(parts[i - 1], parts[rng.below(static_cast<std::uint32_t>(i))]);
    for (std::uint32_t x : parts) {
      if (!rng.bernoulli(q)) continue;
      bool right = rng.bit();
      std::size_t y = right ? (x + 1 == L ? 0 : x + 1) : (x == 0 ? L - 1 : x - 1);
      if (lat.occ[y]) continue;
      lat.occ[x] = 0;
      lat.occ[y] = 1;
      lat.displacement += right ? 1 : -1;
    }
  }
}

// A uniform permutation of a 0/1 occupation vector leaves a uniformly random
// set of occupied sites of the same size, so only that set is drawn. The
// minority species is placed by rejection.
void step_shuffle(Lattice& lat, Philox& rng) {
  auto& o = lat.occ;
  const std::size_t L = o.size();
  const std::size_t n = lat.count();
  const bool place_holes = 2 * n > L;
  const std::uint8_t fill = place_holes ? 1 : 0;
  std::size_t k = place_holes ? L - n : n;
  std::fill(o.begin(), o.end(), fill);
  while (k > 0) {
    std::size_t x = rng.below(static_cast<std::uint32_t>(L));
    if (o[x] != fill) continue;
    o[x] = static_cast<std::uint8_t>(1 - fill);
    --k;
  }
}

std::string_view to_string(SepVariant v) { return v == SepVariant::local ? "local" : "nonlocal"; }

void SepConfig::validate() const {
  if (L < 5) throw TooSmall("L must be at least 5");
  if (!(A >= 0.0) || !(B >= 0.0)) throw InvalidArgument("rates A and B must be nonnegative");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (variant == SepVariant::local && p_A() > 1.0) throw InvalidArgument("p_A = 4 A dt exceeds 1");
  if (p_B() > 1.0) throw InvalidArgument("p_B = 4 B dt exceeds 1");
  if (trajectories == 0) throw InvalidArgument("trajectories must be positive");
  if (record_every == 0) throw InvalidArgument("record_every must be positive");
}

std::vector<double> SepConfig::record_times() const {
  std::vector<double> t{0.0};
  for (std::size_t n = record_every; n <= periods; n += record_every) t.push_back(static_cast<double>(n) * dt);
  return t;
}

Series run_trajectory(const SepConfig& cfg, std::uint64_t index) {
  cfg.validate();
  Series s;
  s.t = cfg.record_times();
  std::vector<std::int64_t> out(s.t.size());
  Philox rng(cfg.seed, index);
  simulate(cfg, rng, Observable::count, out);
  s.mean.assign(out.begin(), out.end());
  s.err.assign(out.size(), 0.0);
  s.L = cfg.L;
  s.trajectories = 1;
  s.seed = cfg.seed;
  return s;
}

Series run_ensemble(const SepConfig& cfg, unsigned threads) {
  cfg.validate();
  Series s = run_integer_ensemble(cfg.trajectories, cfg.seed, cfg.record_times(), threads,
                                  [&](std::uint64_t, Philox& rng, std::span<std::int64_t> out) {
                                    simulate(cfg, rng, Observable::count, out);
                                  });
  s.L = cfg.L;
  return s;
}

Series run_msd(const SepConfig& cfg, unsigned threads) {
  cfg.validate();
  if (cfg.B != 0.0) throw InvalidArgument("MSD measurement needs B = 0");
  if (cfg.variant != SepVariant::local) throw InvalidArgument("MSD measurement needs the local variant");
  Series s = run_integer_ensemble(cfg.trajectories, cfg.seed, cfg.record_times(), threads,
                                  [&](std::uint64_t, Philox& rng, std::span<std::int64_t> out) {
                                    simulate(cfg, rng, Observable::squared_displacement, out);
                                  });
  s.L = cfg.L;
  return s;
}

}  // namespace scramble
