#include "scramble/tableau.hpp"

#include <algorithm>
#include <bit>

#include "scramble/errors.hpp"

namespace scramble {

namespace {

using Word = BitVector::Word;
constexpr Word kEven = 0x5555555555555555ull;
constexpr Word kOdd = 0xAAAAAAAAAAAAAAAAull;

void check_mode(std::size_t k, std::size_t m) {
  if (k >= m) throw InvalidArgument("mode index out of range");
}

void check_permutation(std::span<const std::uint32_t> perm, std::size_t m) {
  if (perm.size() != m) throw ShapeMismatch("permutation length differs from mode count");
  std::vector<bool> seen(m, false);
  for (std::uint32_t v : perm) {
    if (v >= m || seen[v]) throw InvalidArgument("not a permutation");
    seen[v] = true;
  }
}

// Parity of inversions in seq, whose values lie in [0, m).
bool inversion_parity(std::span<const std::uint32_t> seq, std::size_t m) {
  std::vector<std::uint32_t> fen(m + 1, 0);
  std::size_t inv = 0;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    std::size_t le = 0;  // earlier values <= seq[n]
    for (std::size_t i = seq[n] + 1; i > 0; i -= i & (~i + 1)) le += fen[i];
    inv += n - le;
    for (std::size_t i = seq[n] + 1; i <= m; i += i & (~i + 1)) ++fen[i];
  }
  return inv & 1;
}

}  // namespace

StabilizerTableau StabilizerTableau::paired(std::size_t num_qubits) {
  if (num_qubits == 0) throw InvalidArgument("tableau needs at least one qubit");
  StabilizerTableau t;
  t.qubits_ = num_qubits;
  t.columns_.assign(2 * num_qubits, BitVector(num_qubits));
  for (std::size_t i = 0; i < num_qubits; ++i) {
    t.columns_[2 * i].set(i);
    t.columns_[2 * i + 1].set(i);
  }
  t.sign_ = BitVector(num_qubits);
  t.odd_ = BitVector(num_qubits);
  t.weight_.assign(num_qubits, 2);
  return t;
}

StabilizerTableau StabilizerTableau::from_generators(std::span<const MajoranaString> gens) {
  std::size_t L = gens.size();
  if (L == 0) throw InvalidArgument("tableau needs at least one generator");
  StabilizerTableau t;
  t.qubits_ = L;
  t.columns_.assign(2 * L, BitVector(L));
  t.sign_ = BitVector(L);
  t.odd_ = BitVector(L);
  t.weight_.assign(L, 0);
  for (std::size_t i = 0; i < L; ++i) {
    const auto& g = gens[i];
    if (g.num_modes() != 2 * L) throw ShapeMismatch("generator mode count must be 2L");
    if (!g.is_hermitian()) throw InvalidArgument("generator is not Hermitian");
    g.modes().for_each_set([&](std::size_t k) { t.columns_[k].set(i); });
    t.sign_.set(i, g.phase().exponent() == 2);
    t.weight_[i] = static_cast<std::uint32_t>(g.weight());
    t.odd_.set(i, g.weight() & 1);
  }
  if (!t.is_commuting()) throw InvalidArgument("generators do not commute");
  if (t.rank() != L) throw InvalidArgument("generators are not independent");
  return t;
}

MajoranaString StabilizerTableau::generator(std::size_t i) const {
  BitVector bits(columns_.size());
  for (std::size_t k = 0; k < columns_.size(); ++k)
    if (columns_[k].get(i)) bits.set(k);
  return MajoranaString(std::move(bits), Phase(sign_.get(i) ? 2 : 0));
}

std::vector<MajoranaString> StabilizerTableau::generators() const {
  std::vector<MajoranaString> out;
  out.reserve(qubits_);
  for (std::size_t i = 0; i < qubits_; ++i) out.push_back(generator(i));
  return out;
}

bool StabilizerTableau::is_commuting() const {
  auto g = generators();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (!commutes(g[i], g[j])) return false;
  return true;
}

std::size_t StabilizerTableau::rank() const {
  std::vector<BitVector> rows;
  for (const auto& g : generators()) rows.push_back(g.modes());
  return f2_rank(std::move(rows));
}

void apply_braid(MajoranaString& s, std::size_t a, std::size_t b) {
  check_mode(a, s.num_modes());
  check_mode(b, s.num_modes());
  if (a == b) throw InvalidArgument("braid needs two distinct modes");
  bool ha = s.has(a), hb = s.has(b);
  if (ha == hb) return;
  auto [lo, hi] = std::minmax(a, b);
  int e = (s.modes().count_range(lo + 1, hi) & 1) ? 2 : 0;
  if (hb) e += 2;
  s.modes().flip(a);
  s.modes().flip(b);
  s.mul_phase(Phase(e));
}

void apply_braid(StabilizerTableau& t, std::size_t a, std::size_t b) {
  std::size_t m = t.num_modes();
  check_mode(a, m);
  check_mode(b, m);
  if (a == b) throw InvalidArgument("braid needs two distinct modes");
  auto [lo, hi] = std::minmax(a, b);
  std::size_t nw = t.sign_.num_words();
  auto ca = t.columns_[a].words();
  auto cb = t.columns_[b].words();
  auto sg = t.sign_.words();
  if (hi == lo + 1) {
    for (std::size_t w = 0; w < nw; ++w) sg[w] ^= cb[w] & ~ca[w];
  } else {
    // Parity of the modes strictly between lo and hi, from whichever side is shorter.
    BitVector between(t.qubits_);
    if (hi - lo - 1 <= m - (hi - lo + 1)) {
      for (std::size_t k = lo + 1; k < hi; ++k) between ^= t.columns_[k];
    } else {
      between = t.odd_;
      between ^= t.columns_[a];
      between ^= t.columns_[b];
      for (std::size_t k = 0; k < lo; ++k) between ^= t.columns_[k];
      for (std::size_t k = hi + 1; k < m; ++k) between ^= t.columns_[k];
    }
    auto bw = between.words();
    for (std::size_t w = 0; w < nw; ++w) sg[w] ^= ((ca[w] ^ cb[w]) & bw[w]) ^ (cb[w] & ~ca[w]);
  }
  std::swap(t.columns_[a], t.columns_[b]);
}

void apply_mode_sign_flip(MajoranaString& s, std::size_t a) {
  check_mode(a, s.num_modes());
  if (s.has(a)) s.mul_phase(Phase(2));
}

void apply_mode_sign_flip(StabilizerTableau& t, std::size_t a) {
  check_mode(a, t.num_modes());
  t.sign_ ^= t.columns_[a];
}

void apply_fermion_permutation(MajoranaString& s, std::span<const std::uint32_t> perm) {
  std::size_t m = s.num_modes();
  check_permutation(perm, m);
  std::vector<std::uint32_t> seq;
  seq.reserve(s.weight());
  BitVector out(m);
  s.modes().for_each_set([&](std::size_t k) {
    seq.push_back(perm[k]);
    out.set(perm[k]);
  });
  Phase ph = s.phase();
  if (inversion_parity(seq, m)) ph = -ph;
  s = MajoranaString(std::move(out), ph);
}

void apply_fermion_permutation(StabilizerTableau& t, std::span<const std::uint32_t> perm) {
  std::size_t m = t.num_modes();
  check_permutation(perm, m);
  std::size_t nw = t.sign_.num_words();
  // Fenwick tree over target positions; node i holds the XOR of the columns
  // inserted so far whose image falls in its range. A query gives, per row, the
  // parity of earlier modes in the row that land above the current one.
  std::vector<Word> fen((m + 1) * nw, 0);
  std::vector<Word> total(nw, 0), q(nw);
  auto flip = t.sign_.words();
  for (std::size_t l = 0; l < m; ++l) {
    auto col = t.columns_[l].words();
    std::size_t pos = perm[l];
    std::copy(total.begin(), total.end(), q.begin());
    for (std::size_t i = pos + 1; i > 0; i -= i & (~i + 1)) {
      const Word* node = &fen[i * nw];
      for (std::size_t w = 0; w < nw; ++w) q[w] ^= node[w];
    }
    for (std::size_t w = 0; w < nw; ++w) flip[w] ^= q[w] & col[w];
    for (std::size_t i = pos + 1; i <= m; i += i & (~i + 1)) {
      Word* node = &fen[i * nw];
      for (std::size_t w = 0; w < nw; ++w) node[w] ^= col[w];
    }
    for (std::size_t w = 0; w < nw; ++w) total[w] ^= col[w];
  }
  std::vector<BitVector> relabeled(m);
  for (std::size_t k = 0; k < m; ++k) relabeled[perm[k]] = std::move(t.columns_[k]);
  t.columns_ = std::move(relabeled);
}

void apply_two_qubit_clifford(MajoranaString& s, TwoQubitClifford gate, GateAction action) {
  if (s.num_modes() < 4) throw TooSmall("two-qubit Clifford needs at least 4 modes");
  Word w0 = s.modes().words()[0];
  unsigned low = static_cast<unsigned>(w0 & 15u);
  int ql = std::popcount(low);
  int qr = static_cast<int>(s.weight()) - ql;
  unsigned r = action == GateAction::exact ? static_cast<unsigned>(qr & 1) : 0u;
  if (low == 0 && r == 0) return;
  LowModeImage img = majorana_action(gate)[low | (r << 4)];
  int ql2 = std::popcount(unsigned(img.pattern));
  int e = img.exp + s.phase().exponent() + (ql - ql2) * qr;
  s.modes().words()[0] = (w0 & ~Word{15}) | img.pattern;
  s.set_phase(Phase(e));
}

void apply_two_qubit_clifford(StabilizerTableau& t, TwoQubitClifford gate) {
  if (t.num_modes() < 4) throw TooSmall("two-qubit Clifford needs at least 4 modes");
  auto table = majorana_action(gate);
  std::span<Word> cols[4] = {t.columns_[0].words(), t.columns_[1].words(), t.columns_[2].words(),
                             t.columns_[3].words()};
  auto sg = t.sign_.words();
  auto od = t.odd_.words();
  for (std::size_t i = 0; i < t.qubits_; ++i) {
    std::size_t w = i >> 6;
    Word bit = Word{1} << (i & 63);
    unsigned low = 0;
    for (int c = 0; c < 4; ++c)
      if (cols[c][w] & bit) low |= 1u << c;
    int ql = std::popcount(low);
    int qr = static_cast<int>(t.weight_[i]) - ql;
    if (low == 0 && (qr & 1) == 0) continue;
    LowModeImage img = table[low | ((qr & 1) << 4)];
    int ql2 = std::popcount(unsigned(img.pattern));
    int e = img.exp + ((sg[w] & bit) ? 2 : 0) + (ql - ql2) * qr;
    if (e & 1) throw GuardViolation("Clifford produced a non-Hermitian generator");
    if (e & 2)
      sg[w] |= bit;
    else
      sg[w] &= ~bit;
    for (int c = 0; c < 4; ++c) {
      if ((img.pattern >> c) & 1)
        cols[c][w] |= bit;
      else
        cols[c][w] &= ~bit;
    }
    t.weight_[i] = static_cast<std::uint32_t>(qr + ql2);
    if ((qr + ql2) & 1)
      od[w] |= bit;
    else
      od[w] &= ~bit;
  }
}

void apply_braid_layer(MajoranaString& s, int offset, const BitVector& coins) {
  std::size_t m = s.num_modes();
  if (coins.size() != m) throw ShapeMismatch("coin mask must have one bit per mode");
  auto mw = s.modes().words();
  auto cw = coins.words();
  std::size_t nw = mw.size();
  int flips = 0;
  if (offset == 0) {
    for (std::size_t w = 0; w < nw; ++w) {
      Word c = cw[w] & kEven;
      Word a = mw[w] & kEven, b = (mw[w] >> 1) & kEven;
      Word d = (a ^ b) & c;
      flips += std::popcount(b & ~a & c);
      mw[w] ^= d | (d << 1);
    }
    if (flips & 1) s.mul_phase(Phase(2));
    return;
  }
  // Pairs (2i+1, 2i+2): inside a word, across a word boundary, and the wrap pair.
  const Word in_word = kOdd & ~(Word{1} << 63);
  const std::size_t last = m - 1;
  for (std::size_t w = 0; w < nw; ++w) {
    Word c = cw[w] & in_word;
    if ((last >> 6) == w) c &= ~(Word{1} << (last & 63));
    Word a = mw[w] & in_word, b = (mw[w] >> 1) & in_word;
    Word d = (a ^ b) & c;
    flips += std::popcount(b & ~a & c);
    mw[w] ^= d | (d << 1);
  }
  for (std::size_t w = 0; w + 1 < nw; ++w) {
    std::size_t a = 64 * w + 63;
    if (a >= last || !coins.get(a)) continue;
    bool ha = (mw[w] >> 63) & 1, hb = mw[w + 1] & 1;
    if (ha == hb) continue;
    if (hb) ++flips;
    mw[w] ^= Word{1} << 63;
    mw[w + 1] ^= 1;
  }
  if (flips & 1) s.mul_phase(Phase(2));
  if (coins.get(last)) apply_braid(s, last, 0);
}

void apply_braid_layer(StabilizerTableau& t, int offset, const BitVector& coins) {
  std::size_t m = t.num_modes();
  if (coins.size() != m) throw ShapeMismatch("coin mask must have one bit per mode");
  coins.for_each_set([&](std::size_t a) {
    if ((a & 1) != static_cast<std::size_t>(offset & 1)) return;
    apply_braid(t, a, (a + 1) % m);
  });
}

std::size_t f2_rank(std::vector<BitVector> vecs) {
  if (vecs.empty()) return 0;
  std::size_t n = vecs.front().size();
  std::vector<int> pivot_owner(n, -1);
  std::size_t rank = 0;
  for (std::size_t v = 0; v < vecs.size(); ++v) {
    auto vw = vecs[v].words();
    for (;;) {
      std::size_t w = vw.size();
      while (w > 0 && vw[w - 1] == 0) --w;
      if (w == 0) break;
      std::size_t top = 64 * (w - 1) + 63 - std::countl_zero(vw[w - 1]);
      int owner = pivot_owner[top];
      if (owner < 0) {
        pivot_owner[top] = static_cast<int>(v);
        ++rank;
        break;
      }
      auto ow = vecs[owner].words();
      for (std::size_t k = 0; k < w; ++k) vw[k] ^= ow[k];
    }
  }
  return rank;
}

std::size_t entanglement_entropy(const StabilizerTableau& t, std::size_t lo, std::size_t hi) {
  std::size_t L = t.num_qubits();
  if (lo < 1 || hi < lo || hi > L) throw InvalidArgument("subsystem must satisfy 1 <= lo <= hi <= L");
  std::size_t a0 = 2 * (lo - 1), a1 = 2 * hi;  // modes [a0, a1)
  // Parity of each generator's modes to the right of the subsystem. Through the
  // Jordan-Wigner string it acts as X on every qubit of the subsystem.
  BitVector tail(L);
  if (2 * L - a1 <= a0 + (a1 - a0)) {
    for (std::size_t k = a1; k < 2 * L; ++k) tail ^= t.column(k);
  } else {
    tail = t.odd_weight();
    for (std::size_t k = 0; k < a1; ++k) tail ^= t.column(k);
  }
  // Restricted Pauli columns: x_i = b_i + s_i, z_i = a_i + b_i, where s_i is
  // the parity of everything to the right of qubit i.
  std::vector<BitVector> vecs;
  vecs.reserve(a1 - a0);
  BitVector s = std::move(tail);
  for (std::size_t i = hi; i-- > lo - 1;) {
    const BitVector& a = t.column(2 * i);
    const BitVector& b = t.column(2 * i + 1);
    vecs.push_back(b ^ s);
    BitVector z = a ^ b;
    s ^= z;
    vecs.push_back(std::move(z));
  }
  return f2_rank(std::move(vecs)) - (hi - lo + 1);
}

}  // namespace scramble
