#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scramble/bitvec.hpp"
#include "scramble/clifford.hpp"
#include "scramble/majorana.hpp"

namespace scramble {

// L commuting, independent Hermitian Majorana strings on 2L modes. Stored
// column-major: column k holds the occupation of mode k across all generators,
// which makes braids column swaps and permutations column relabelings.
class StabilizerTableau {
 public:
  StabilizerTableau() = default;

  // Generators i g_{2i-1} g_{2i}, i = 1..L.
  static StabilizerTableau paired(std::size_t num_qubits);
  // Throws InvalidArgument if the strings are not Hermitian, commuting and independent.
  static StabilizerTableau from_generators(std::span<const MajoranaString> gens);

  std::size_t num_qubits() const { return qubits_; }
  std::size_t num_modes() const { return columns_.size(); }
  MajoranaString generator(std::size_t i) const;
  std::vector<MajoranaString> generators() const;

  const BitVector& column(std::size_t k) const { return columns_[k]; }
  const BitVector& signs() const { return sign_; }
  const BitVector& odd_weight() const { return odd_; }
  std::uint32_t row_weight(std::size_t i) const { return weight_[i]; }

  bool is_commuting() const;
  std::size_t rank() const;

 private:
  friend void apply_braid(StabilizerTableau&, std::size_t, std::size_t);
  friend void apply_mode_sign_flip(StabilizerTableau&, std::size_t);
  friend void apply_fermion_permutation(StabilizerTableau&, std::span<const std::uint32_t>);
  friend void apply_two_qubit_clifford(StabilizerTableau&, TwoQubitClifford);
  friend void apply_braid_layer(StabilizerTableau&, int, const BitVector&);

  std::size_t qubits_ = 0;
  std::vector<BitVector> columns_;   // 2L columns of L bits
  BitVector sign_;                   // generator i carries -1
  BitVector odd_;                    // generator i has odd weight
  std::vector<std::uint32_t> weight_;
};

// Conjugation sending g_a -> g_b and g_b -> -g_a (0-based modes).
void apply_braid(MajoranaString& s, std::size_t a, std::size_t b);
void apply_braid(StabilizerTableau& t, std::size_t a, std::size_t b);

// g_a -> -g_a, all other modes fixed.
void apply_mode_sign_flip(MajoranaString& s, std::size_t a);
void apply_mode_sign_flip(StabilizerTableau& t, std::size_t a);

// Relabeling g_k -> g_{perm[k]}.
void apply_fermion_permutation(MajoranaString& s, std::span<const std::uint32_t> perm);
void apply_fermion_permutation(StabilizerTableau& t, std::span<const std::uint32_t> perm);

// Two-qubit Clifford on qubits 1 and 2 (modes 0..3).
//
// exact: conjugation by the qubit unitary. A string with an odd number of modes
// beyond mode 3 carries the Jordan-Wigner tail X1 X2 through the gate, so it is
// transformed even when modes 0..3 are empty.
// restricted: only the factor on modes 0..3 is conjugated, as a 4-mode operator,
// and the rest of the string is ignored. This is the mode-local shuffle of the
// 15 nontrivial patterns. It is not an algebra automorphism when the gate
// changes fermion parity, so tableaux always use the exact action.
enum class GateAction { exact, restricted };
void apply_two_qubit_clifford(MajoranaString& s, TwoQubitClifford gate, GateAction action = GateAction::exact);
void apply_two_qubit_clifford(StabilizerTableau& t, TwoQubitClifford gate);

// A layer of nearest-neighbour braids on the ring of 2L modes. offset 0 pairs
// (2i, 2i+1), offset 1 pairs (2i+1, 2i+2 mod 2L). coins has 2L bits and selects
// a pair by the bit at its first mode 2i + offset.
void apply_braid_layer(MajoranaString& s, int offset, const BitVector& coins);
void apply_braid_layer(StabilizerTableau& t, int offset, const BitVector& coins);

// Rank over F2 of a set of equal-length bit vectors.
std::size_t f2_rank(std::vector<BitVector> vecs);

// Entanglement entropy in bits of qubits [lo, hi] (1-based, inclusive).
std::size_t entanglement_entropy(const StabilizerTableau& t, std::size_t lo, std::size_t hi);

}  // namespace scramble
