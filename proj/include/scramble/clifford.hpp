#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "scramble/pauli.hpp"
#include "scramble/rng.hpp"

namespace scramble {

// Compact two-qubit Pauli: bits 0..3 are (x1, z1, x2, z2), phase is i^exp.
struct Pauli2 {
  std::uint8_t bits = 0;
  std::uint8_t exp = 0;
  friend bool operator==(Pauli2, Pauli2) = default;
};

Pauli2 multiply(Pauli2 a, Pauli2 b);
PauliString to_pauli_string(Pauli2 p);
Pauli2 to_pauli2(const PauliString& p);

// An element of the two-qubit Clifford group modulo phases, acting on qubits 1
// and 2. Stored as the images of X1, Z1, X2, Z2: a symplectic matrix from the
// 720-element Sp(4, F2) plus four sign bits, giving 11520 elements.
class TwoQubitClifford {
 public:
  static constexpr std::uint32_t kSymplecticCount = 720;
  static constexpr std::uint32_t kGroupSize = kSymplecticCount * 16;

  TwoQubitClifford();  // identity
  explicit TwoQubitClifford(std::uint32_t index);

  // Throws InvalidArgument unless the images are Hermitian and satisfy the
  // canonical commutation relations.
  static TwoQubitClifford from_images(const std::array<Pauli2, 4>& images);

  std::uint32_t index() const { return index_; }
  // Image of X1, Z1, X2, Z2 for g = 0, 1, 2, 3.
  Pauli2 image(int g) const;
  Pauli2 apply(Pauli2 p) const;
  PauliString apply(const PauliString& p) const;

  friend bool operator==(TwoQubitClifford, TwoQubitClifford) = default;

 private:
  std::uint32_t index_;
};

// Sp(4, F2) as 16-bit matrices (column c = image of generator c in bits 4c..4c+3),
// sorted ascending. Exactly 720 entries.
const std::vector<std::uint16_t>& symplectic_group();

// Uniform over all 11520 elements.
TwoQubitClifford sample_two_qubit_clifford(Philox& rng);

// Action on the four lowest Majorana modes. Entry [pattern | (r << 4)] gives the
// new low-mode pattern and the phase exponent of the low factor, for an input
// whose low factor is canonical with phase +1 and whose remaining modes have
// parity r. See apply_two_qubit_clifford for how the pieces combine.
struct LowModeImage {
  std::uint8_t pattern;
  std::uint8_t exp;
};
std::span<const LowModeImage, 32> majorana_action(TwoQubitClifford gate);

}  // namespace scramble
