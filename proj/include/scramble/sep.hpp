#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "scramble/rng.hpp"
#include "scramble/series.hpp"

namespace scramble {

// Occupation numbers of a periodic ring, one byte per site.
struct Lattice {
  std::vector<std::uint8_t> occ;
  // Net signed hop count summed over all particles. With a single particle this
  // is its unwrapped displacement.
  std::int64_t displacement = 0;
  std::vector<std::uint32_t> scratch;

  std::size_t size() const { return occ.size(); }
  std::size_t count() const;
};

// One particle at a uniformly random site.
Lattice init_single_particle(std::size_t L, Philox& rng);

// If sites 1..4 hold an odd number of particles, complement them with probability p_B.
void step_source(Lattice& lat, double p_B, Philox& rng);

// Symmetric exclusion hopping. Each particle attempts a move with probability
// 2 p_A per period, to the left or right with equal odds, blocked if the target
// is occupied. The period is split into ceil(2 p_A) sweeps, each visiting the
// particles in a fresh random order.
void step_hop(Lattice& lat, double p_A, Philox& rng);

// Uniformly random permutation of all sites. Only the resulting occupied set is
// sampled, which has the same distribution.
void step_shuffle(Lattice& lat, Philox& rng);

enum class SepVariant { local, nonlocal };
std::string_view to_string(SepVariant v);

struct SepConfig {
  std::size_t L = 0;
  double A = 0.25;
  double B = 0.25;
  double dt = 1.0;
  std::size_t periods = 0;
  std::uint64_t trajectories = 1;
  std::uint64_t seed = 0;
  SepVariant variant = SepVariant::local;
  std::size_t record_every = 1;

  double p_A() const { return 4.0 * A * dt; }
  double p_B() const { return 4.0 * B * dt; }
  void validate() const;
  std::vector<double> record_times() const;
};

Series run_trajectory(const SepConfig& cfg, std::uint64_t index);
Series run_ensemble(const SepConfig& cfg, unsigned threads = 0);

// Mean squared displacement of a single particle with the source switched off.
Series run_msd(const SepConfig& cfg, unsigned threads = 0);

}  // namespace scramble
