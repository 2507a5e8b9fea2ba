#include "scramble/circuit.hpp"

#include <algorithm>
#include <cmath>

#include "scramble/errors.hpp"

namespace scramble {

namespace {

constexpr BitVector::Word kEven = 0x5555555555555555ull;

// Scratch buffers reused across periods of one trajectory.
struct Workspace {
  BitVector coins;
  BitVector used;
  std::vector<std::uint32_t> perm;
  std::vector<std::uint32_t> from, to, order;
};

void fill_coins(BitVector& coins, int offset, double p, Philox& rng) {
  coins.clear();
  const std::size_t m = coins.size();
  if (p <= 0.0) return;
  auto w = coins.words();
  BitVector::Word mask = offset == 0 ? kEven : ~kEven;
  if (p >= 1.0 || p == 0.5) {
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = (p >= 1.0 ? ~BitVector::Word{0} : rng.next_u64()) & mask;
    if (m & 63) w.back() &= (BitVector::Word{1} << (m & 63)) - 1;
    return;
  }
  for (std::size_t a = static_cast<std::size_t>(offset); a < m; a += 2)
    if (rng.bernoulli(p)) coins.set(a);
}

void random_permutation(std::vector<std::uint32_t>& perm, std::size_t m, Philox& rng) {
  perm.resize(m);
  for (std::size_t k = 0; k < m; ++k) perm[k] = static_cast<std::uint32_t>(k);
  for (std::size_t i = m; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(static_cast<std::uint32_t>(i))]);
}

void gate(MajoranaString& s, const CircuitConfig& cfg, Philox& rng) {
  apply_two_qubit_clifford(s, sample_two_qubit_clifford(rng), cfg.size_gate_action);
}

void gate(StabilizerTableau& t, const CircuitConfig&, Philox& rng) {
  apply_two_qubit_clifford(t, sample_two_qubit_clifford(rng));
}

// A uniformly random relabeling of all modes, applied to a sparse string. Only
// the images of the occupied modes are drawn, by rejection, which has the same
// distribution as restricting a full random permutation.
void random_relabel(MajoranaString& s, Philox& rng, Workspace& ws) {
  const std::size_t m = s.num_modes();
  auto& modes = s.modes();
  ws.from.clear();
  modes.for_each_set([&](std::size_t k) { ws.from.push_back(static_cast<std::uint32_t>(k)); });
  const std::size_t w = ws.from.size();
  if (2 * w > m) {
    random_permutation(ws.perm, m, rng);
    apply_fermion_permutation(s, ws.perm);
    return;
  }
  if (ws.used.size() != m) ws.used = BitVector(m);
  ws.to.resize(w);
  for (std::size_t n = 0; n < w; ++n) {
    std::uint32_t pos;
    do pos = rng.below(static_cast<std::uint32_t>(m));
    while (ws.used.get(pos));
    ws.used.set(pos);
    ws.to[n] = pos;
  }
  for (std::uint32_t k : ws.from) modes.flip(k);
  for (std::uint32_t k : ws.to) {
    modes.set(k);
    ws.used.flip(k);
  }
  // Reordering the images into increasing order costs the parity of the
  // permutation that sorts them.
  ws.order.resize(w);
  for (std::size_t n = 0; n < w; ++n) ws.order[n] = static_cast<std::uint32_t>(n);
  std::sort(ws.order.begin(), ws.order.end(), [&](std::uint32_t a, std::uint32_t b) { return ws.to[a] < ws.to[b]; });
  std::size_t cycles = 0;
  for (std::size_t n = 0; n < w; ++n) {
    if (ws.order[n] == UINT32_MAX) continue;
    ++cycles;
    for (std::size_t j = n; ws.order[j] != UINT32_MAX;) {
      std::size_t next = ws.order[j];
      ws.order[j] = UINT32_MAX;
      j = next;
    }
  }
  if ((w - cycles) & 1) s.set_phase(-s.phase());
}

void relabel(MajoranaString& s, const CircuitConfig&, Philox& rng, Workspace& ws) { random_relabel(s, rng, ws); }

void relabel(StabilizerTableau& t, const CircuitConfig& cfg, Philox& rng, Workspace& ws) {
  random_permutation(ws.perm, 2 * cfg.L, rng);
  apply_fermion_permutation(t, ws.perm);
}

template <class Target>
void step(Target& target, const CircuitConfig& cfg, Philox& rng, Workspace& ws) {
  const std::size_t m = 2 * cfg.L;
  if (cfg.interaction) gate(target, cfg, rng);
  if (cfg.variant == CircuitVariant::nonlocal) {
    relabel(target, cfg, rng, ws);
    return;
  }
  if (ws.coins.size() != m) ws.coins = BitVector(m);
  const double p = cfg.braid_probability();
  for (int offset = 0; offset < 2; ++offset) {
    fill_coins(ws.coins, offset, p, rng);
    apply_braid_layer(target, offset, ws.coins);
  }
}

}  // namespace

std::string_view to_string(CircuitVariant v) {
  switch (v) {
    case CircuitVariant::local_random: return "local-random";
    case CircuitVariant::nonlocal: return "nonlocal";
    case CircuitVariant::floquet: return "floquet";
  }
  return "?";
}

std::size_t CircuitConfig::lo() const {
  if (subsystem_lo) return subsystem_lo;
  return variant == CircuitVariant::nonlocal ? 1 : L / 4 + 2;
}

std::size_t CircuitConfig::hi() const {
  if (subsystem_hi) return subsystem_hi;
  return variant == CircuitVariant::nonlocal ? L / 2 : 3 * L / 4 + 1;
}

void CircuitConfig::validate() const {
  if (L < 2) throw TooSmall("circuit needs at least 2 qubits");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("braid probability must lie in [0, 1]");
  if (trajectories == 0) throw InvalidArgument("trajectories must be positive");
  if (lo() < 1 || hi() < lo() || hi() > L) throw InvalidArgument("subsystem must satisfy 1 <= lo <= hi <= L");
}

std::vector<std::size_t> CircuitConfig::record_periods() const {
  std::vector<std::size_t> r{0};
  if (record_every > 0)
    for (std::size_t n = record_every; n <= periods; n += record_every) r.push_back(n);
  if (log_points > 0 && periods > 0) {
    double top = std::log(static_cast<double>(periods));
    for (std::size_t k = 0; k < log_points; ++k) {
      double frac = log_points == 1 ? 1.0 : static_cast<double>(k) / static_cast<double>(log_points - 1);
      r.push_back(static_cast<std::size_t>(std::llround(std::exp(frac * top))));
    }
  }
  if (periods > 0) r.push_back(periods);
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

void evolve_period(MajoranaString& s, const CircuitConfig& cfg, Philox& rng) {
  if (s.num_modes() != 2 * cfg.L) throw ShapeMismatch("string has the wrong number of modes");
  Workspace ws;
  step(s, cfg, rng, ws);
}

void evolve_period(StabilizerTableau& t, const CircuitConfig& cfg, Philox& rng) {
  if (t.num_qubits() != cfg.L) throw ShapeMismatch("tableau has the wrong number of qubits");
  Workspace ws;
  step(t, cfg, rng, ws);
}

Series heisenberg_size_series(const CircuitConfig& cfg, unsigned threads) {
  cfg.validate();
  auto periods = cfg.record_periods();
  std::vector<double> times(periods.begin(), periods.end());
  const std::size_t m = 2 * cfg.L;
  Series s = run_integer_ensemble(
      cfg.trajectories, cfg.seed, std::move(times), threads,
      [&](std::uint64_t, Philox& rng, std::span<std::int64_t> out) {
        MajoranaString op;
        if (cfg.single_majorana_start) {
          op = MajoranaString::from_modes(m, {rng.below(static_cast<std::uint32_t>(m))});
        } else {
          std::size_t i = rng.below(static_cast<std::uint32_t>(cfg.L));
          op = MajoranaString::from_modes(m, {2 * i, 2 * i + 1});
        }
        Workspace ws;
        std::size_t r = 0;
        std::size_t parity = op.weight() & 1;
        for (std::size_t n = 0; n <= cfg.periods; ++n) {
          if (n > 0) {
            step(op, cfg, rng, ws);
            if (!cfg.interaction && (op.weight() & 1) != parity)
              throw GuardViolation("fermion parity changed under a parity-preserving circuit");
          }
          if (r < periods.size() && periods[r] == n) out[r++] = static_cast<std::int64_t>(op.weight());
        }
      });
  s.L = cfg.L;
  return s;
}

Series ee_series(const CircuitConfig& cfg, unsigned threads) {
  cfg.validate();
  auto periods = cfg.record_periods();
  std::vector<double> times(periods.begin(), periods.end());
  const std::size_t lo = cfg.lo(), hi = cfg.hi();
  Series s = run_integer_ensemble(
      cfg.trajectories, cfg.seed, std::move(times), threads,
      [&](std::uint64_t, Philox& rng, std::span<std::int64_t> out) {
        StabilizerTableau tab = StabilizerTableau::paired(cfg.L);
        Workspace ws;
        std::size_t r = 0;
        for (std::size_t n = 0; n <= cfg.periods; ++n) {
          if (n > 0) {
            step(tab, cfg, rng, ws);
            if (!cfg.interaction && tab.odd_weight().any())
              throw GuardViolation("fermion parity changed under a parity-preserving circuit");
          }
          if (r < periods.size() && periods[r] == n)
            out[r++] = static_cast<std::int64_t>(entanglement_entropy(tab, lo, hi));
        }
      });
  s.L = cfg.L;
  return s;
}

}  // namespace scramble
