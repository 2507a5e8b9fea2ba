#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "scramble/majorana.hpp"
#include "scramble/rng.hpp"
#include "scramble/series.hpp"
#include "scramble/tableau.hpp"

namespace scramble {

enum class CircuitVariant { local_random, nonlocal, floquet };
std::string_view to_string(CircuitVariant v);

// One period: an optional random two-qubit Clifford on qubits 1 and 2, then
// either two layers of nearest-neighbour braids (each braid applied with
// probability p; p = 1 for floquet) or a uniformly random permutation of all
// 2L modes (nonlocal).
struct CircuitConfig {
  std::size_t L = 0;
  CircuitVariant variant = CircuitVariant::local_random;
  double p = 0.5;
  bool interaction = true;
  std::size_t periods = 0;
  std::uint64_t trajectories = 1;
  std::uint64_t seed = 0;
  // Entanglement subsystem, 1-based inclusive qubits. 0 selects the default:
  // L/4+2 .. 3L/4+1 for the braid circuits, 1..L/2 for nonlocal.
  std::size_t subsystem_lo = 0;
  std::size_t subsystem_hi = 0;
  // Record at t = 0, every record_every periods (0 disables), and at
  // log_points log-spaced periods (0 disables). The last period is always kept.
  std::size_t record_every = 1;
  std::size_t log_points = 0;
  // Start the size engine from a single Majorana instead of a local pair.
  bool single_majorana_start = false;
  // Gate action in the size engine. The entanglement engine always uses the
  // exact action, since the restricted one does not preserve commutation.
  GateAction size_gate_action = GateAction::restricted;

  double braid_probability() const { return variant == CircuitVariant::floquet ? 1.0 : p; }
  std::size_t lo() const;
  std::size_t hi() const;
  void validate() const;
  std::vector<std::size_t> record_periods() const;
};

void evolve_period(MajoranaString& s, const CircuitConfig& cfg, Philox& rng);
void evolve_period(StabilizerTableau& t, const CircuitConfig& cfg, Philox& rng);

// Majorana weight of an evolved local operator, ensemble-averaged.
Series heisenberg_size_series(const CircuitConfig& cfg, unsigned threads = 0);

// Entanglement entropy (bits) of the evolved paired state, ensemble-averaged.
Series ee_series(const CircuitConfig& cfg, unsigned threads = 0);

}  // namespace scramble
