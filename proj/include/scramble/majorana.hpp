#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scramble/bitvec.hpp"

namespace scramble {

// Global phase i^k with k taken mod 4.
class Phase {
 public:
  constexpr Phase() = default;
  constexpr explicit Phase(int exponent) : exp_(static_cast<std::uint8_t>(exponent & 3)) {}

  constexpr int exponent() const { return exp_; }
  constexpr bool is_real() const { return (exp_ & 1) == 0; }
  constexpr Phase operator*(Phase o) const { return Phase(exp_ + o.exp_); }
  constexpr Phase operator-() const { return Phase(exp_ + 2); }
  constexpr Phase conj() const { return Phase(-exp_); }
  friend constexpr bool operator==(Phase, Phase) = default;

  // "+", "+i", "-", "-i"
  std::string_view token() const;

 private:
  std::uint8_t exp_ = 0;
};

// i^{q(q-1)/2} exponent mod 4: makes a product of q distinct Majoranas Hermitian.
constexpr int hermitian_exponent(std::size_t q) { return static_cast<int>((q * (q - 1) / 2) & 3); }

// A Majorana string c * i^{q(q-1)/2} * g_{k1} ... g_{kq} with k1 < ... < kq.
// The stored phase is c; Hermitian strings have c = +1 or -1. Modes are 0-based
// internally; the text form uses 1-based labels g1..g2L.
class MajoranaString {
 public:
  MajoranaString() = default;
  explicit MajoranaString(std::size_t num_modes) : modes_(num_modes) {}
  MajoranaString(BitVector modes, Phase phase) : modes_(std::move(modes)), phase_(phase) {}

  // Canonical Hermitian string on the given (distinct, any order) modes.
  static MajoranaString from_modes(std::size_t num_modes, std::initializer_list<std::size_t> modes,
                                   Phase phase = Phase());
  static MajoranaString from_modes(std::size_t num_modes, std::span<const std::size_t> modes,
                                   Phase phase = Phase());
  // The operator coeff * g_{k1} g_{k2} ... in the given order; repeats allowed.
  static MajoranaString product(std::size_t num_modes, std::span<const std::size_t> ordered,
                                Phase coeff = Phase());
  static MajoranaString product(std::size_t num_modes, std::initializer_list<std::size_t> ordered,
                                Phase coeff = Phase());

  std::size_t num_modes() const { return modes_.size(); }
  std::size_t weight() const { return modes_.count(); }
  bool has(std::size_t k) const { return modes_.get(k); }
  bool is_identity() const { return !modes_.any(); }
  bool is_hermitian() const { return phase_.is_real(); }

  const BitVector& modes() const { return modes_; }
  BitVector& modes() { return modes_; }
  Phase phase() const { return phase_; }
  void set_phase(Phase p) { phase_ = p; }
  void mul_phase(Phase p) { phase_ = phase_ * p; }

  friend bool operator==(const MajoranaString&, const MajoranaString&) = default;

 private:
  BitVector modes_;
  Phase phase_;
};

// Parity of #{(x in a, y in b) : x > y}.
bool ordering_parity(const BitVector& a, const BitVector& b);

MajoranaString multiply(const MajoranaString& a, const MajoranaString& b);
bool commutes(const MajoranaString& a, const MajoranaString& b);

// "+ g1 g2 g5"; the identity renders as "+".
std::string to_string(const MajoranaString& s);
MajoranaString parse_majorana(std::string_view text, std::size_t num_modes);

struct HeightVector {
  BitVector bits;

  std::size_t weight() const { return bits.count(); }
  friend bool operator==(const HeightVector&, const HeightVector&) = default;
};

HeightVector height_of(const MajoranaString& s);
std::size_t size_of(const MajoranaString& s);

// Expected weight of a normalized distribution over height vectors.
double mean_size(std::span<const std::pair<HeightVector, double>> dist);

}  // namespace scramble
