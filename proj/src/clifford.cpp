#include "scramble/clifford.hpp"

#include <algorithm>
#include <bit>

#include "scramble/errors.hpp"

namespace scramble {

namespace {

int pauli_product_exponent(int x1, int z1, int x2, int z2) {
  if (x1 && z1) return z2 - x2;
  if (x1) return z2 * (2 * x2 - 1);
  if (z1) return x2 * (1 - 2 * z2);
  return 0;
}

// Symplectic form on (x1, z1, x2, z2).
int omega(unsigned u, unsigned v) {
  auto bit = [](unsigned w, int i) { return int((w >> i) & 1u); };
  return (bit(u, 0) * bit(v, 1) + bit(u, 1) * bit(v, 0) + bit(u, 2) * bit(v, 3) + bit(u, 3) * bit(v, 2)) & 1;
}

bool is_symplectic(unsigned m) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (omega((m >> (4 * i)) & 15u, (m >> (4 * j)) & 15u) != omega(1u << i, 1u << j)) return false;
  return true;
}

// Four-mode Majorana string in canonical form: phase i^exp.
struct Maj4 {
  std::uint8_t pattern;
  std::uint8_t exp;
};

Maj4 mul4(Maj4 a, Maj4 b) {
  int swaps = 0;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < x; ++y)
      if (((a.pattern >> x) & 1) && ((b.pattern >> y) & 1)) ++swaps;
  std::uint8_t m = a.pattern ^ b.pattern;
  int e = a.exp + b.exp + hermitian_exponent(std::popcount(a.pattern)) +
          hermitian_exponent(std::popcount(b.pattern)) - hermitian_exponent(std::popcount(m)) + 2 * swaps;
  return Maj4{m, static_cast<std::uint8_t>(e & 3)};
}

using ActionTable = std::vector<std::array<LowModeImage, 32>>;

ActionTable build_action_table() {
  std::array<Maj4, 16> jw{};     // by Pauli2 bits, phase-free Pauli
  std::array<Pauli2, 16> unjw{};  // by canonical Majorana pattern
  for (unsigned b = 0; b < 16; ++b) {
    MajoranaString s = jw_map(to_pauli_string(Pauli2{static_cast<std::uint8_t>(b), 0}));
    unsigned pat = 0;
    s.modes().for_each_set([&](std::size_t k) { pat |= 1u << k; });
    jw[b] = Maj4{static_cast<std::uint8_t>(pat), static_cast<std::uint8_t>(s.phase().exponent())};
  }
  for (unsigned pat = 0; pat < 16; ++pat) {
    BitVector bits(4);
    for (int k = 0; k < 4; ++k)
      if ((pat >> k) & 1) bits.set(k);
    unjw[pat] = to_pauli2(jw_unmap(MajoranaString(bits, Phase())));
  }
  const Maj4 pi = jw[0b0101];  // X1 X2

  std::array<Pauli2, 32> inputs{};
  for (unsigned key = 0; key < 32; ++key) {
    Maj4 low{static_cast<std::uint8_t>(key & 15), 0};
    if (key >> 4) low = mul4(low, pi);
    Pauli2 q = unjw[low.pattern];
    q.exp = static_cast<std::uint8_t>((q.exp + low.exp) & 3);
    inputs[key] = q;
  }

  ActionTable table(TwoQubitClifford::kGroupSize);
  for (std::uint32_t g = 0; g < TwoQubitClifford::kGroupSize; ++g) {
    TwoQubitClifford gate(g);
    for (unsigned key = 0; key < 32; ++key) {
      Pauli2 out = gate.apply(inputs[key]);
      Maj4 m = jw[out.bits];
      m.exp = static_cast<std::uint8_t>((m.exp + out.exp) & 3);
      if (key >> 4) m = mul4(m, pi);
      table[g][key] = LowModeImage{m.pattern, m.exp};
    }
  }
  return table;
}

}  // namespace

Pauli2 multiply(Pauli2 a, Pauli2 b) {
  int e = a.exp + b.exp;
  for (int q = 0; q < 2; ++q)
    e += pauli_product_exponent((a.bits >> (2 * q)) & 1, (a.bits >> (2 * q + 1)) & 1, (b.bits >> (2 * q)) & 1,
                                (b.bits >> (2 * q + 1)) & 1);
  return Pauli2{static_cast<std::uint8_t>(a.bits ^ b.bits), static_cast<std::uint8_t>(e & 3)};
}

PauliString to_pauli_string(Pauli2 p) {
  BitVector x(2), z(2);
  x.set(0, p.bits & 1);
  z.set(0, (p.bits >> 1) & 1);
  x.set(1, (p.bits >> 2) & 1);
  z.set(1, (p.bits >> 3) & 1);
  return PauliString(x, z, Phase(p.exp));
}

Pauli2 to_pauli2(const PauliString& p) {
  if (p.num_qubits() != 2) throw ShapeMismatch("to_pauli2: need exactly two qubits");
  unsigned b = unsigned(p.x()[0]) | unsigned(p.z()[0]) << 1 | unsigned(p.x()[1]) << 2 | unsigned(p.z()[1]) << 3;
  return Pauli2{static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(p.phase().exponent())};
}

const std::vector<std::uint16_t>& symplectic_group() {
  static const std::vector<std::uint16_t> group = [] {
    std::vector<std::uint16_t> g;
    for (unsigned m = 0; m < (1u << 16); ++m)
      if (is_symplectic(m)) g.push_back(static_cast<std::uint16_t>(m));
    return g;
  }();
  return group;
}

TwoQubitClifford::TwoQubitClifford() {
  const auto& g = symplectic_group();
  constexpr std::uint16_t kIdentity = 0x8421;
  index_ = static_cast<std::uint32_t>(std::lower_bound(g.begin(), g.end(), kIdentity) - g.begin()) * 16;
}

TwoQubitClifford::TwoQubitClifford(std::uint32_t index) : index_(index) {
  if (index >= kGroupSize) throw InvalidArgument("two-qubit Clifford index out of range");
}

TwoQubitClifford TwoQubitClifford::from_images(const std::array<Pauli2, 4>& images) {
  unsigned m = 0, signs = 0;
  for (int c = 0; c < 4; ++c) {
    if (images[c].exp & 1) throw InvalidArgument("Clifford image is not Hermitian");
    m |= unsigned(images[c].bits & 15) << (4 * c);
    if (images[c].exp == 2) signs |= 1u << c;
  }
  if (!is_symplectic(m)) throw InvalidArgument("Clifford images violate commutation relations");
  const auto& g = symplectic_group();
  auto it = std::lower_bound(g.begin(), g.end(), static_cast<std::uint16_t>(m));
  return TwoQubitClifford(static_cast<std::uint32_t>(it - g.begin()) * 16 + signs);
}

Pauli2 TwoQubitClifford::image(int g) const {
  unsigned m = symplectic_group()[index_ >> 4];
  return Pauli2{static_cast<std::uint8_t>((m >> (4 * g)) & 15u), static_cast<std::uint8_t>(((index_ >> g) & 1u) * 2)};
}

Pauli2 TwoQubitClifford::apply(Pauli2 p) const {
  // Y = i X Z on each qubit, so P = i^{e + x1 z1 + x2 z2} X1^x1 Z1^z1 X2^x2 Z2^z2.
  int e = p.exp + ((p.bits & (p.bits >> 1)) & 1) + ((p.bits >> 2) & (p.bits >> 3) & 1);
  Pauli2 out{0, static_cast<std::uint8_t>(e & 3)};
  for (int g = 0; g < 4; ++g)
    if ((p.bits >> g) & 1) out = multiply(out, image(g));
  return out;
}

PauliString TwoQubitClifford::apply(const PauliString& p) const { return to_pauli_string(apply(to_pauli2(p))); }

TwoQubitClifford sample_two_qubit_clifford(Philox& rng) {
  std::uint32_t s = rng.below(TwoQubitClifford::kSymplecticCount);
  std::uint32_t signs = static_cast<std::uint32_t>(rng.next_u64() & 15u);
  return TwoQubitClifford(s * 16 + signs);
}

std::span<const LowModeImage, 32> majorana_action(TwoQubitClifford gate) {
  static const ActionTable table = build_action_table();
  return std::span<const LowModeImage, 32>(table[gate.index()]);
}

}  // namespace scramble
