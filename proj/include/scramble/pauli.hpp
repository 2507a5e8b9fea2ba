#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "scramble/bitvec.hpp"
#include "scramble/majorana.hpp"

namespace scramble {

// phase * (x) over qubits of I, X, Z, Y for (x,z) = (0,0), (1,0), (0,1), (1,1).
// Y is the Hermitian Pauli Y, so a string is Hermitian iff its phase is real.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t num_qubits) : x_(num_qubits), z_(num_qubits) {}
  PauliString(BitVector x, BitVector z, Phase phase);

  // "+XIZ", "-iYY"; a missing sign means "+". Qubit 1 is the leftmost letter.
  static PauliString parse(std::string_view text);

  std::size_t num_qubits() const { return x_.size(); }
  char at(std::size_t q) const;
  void set(std::size_t q, char op);
  const BitVector& x() const { return x_; }
  const BitVector& z() const { return z_; }
  Phase phase() const { return phase_; }
  void set_phase(Phase p) { phase_ = p; }
  bool is_hermitian() const { return phase_.is_real(); }

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  BitVector x_, z_;
  Phase phase_;
};

PauliString multiply(const PauliString& a, const PauliString& b);
bool commutes(const PauliString& a, const PauliString& b);
std::string to_string(const PauliString& p);

// X_i = i g_{2i-1} g_{2i}, Y_i = (prod_{j<i} X_j) g_{2i}, Z_i = -i X_i Y_i.
MajoranaString jw_map(const PauliString& p);
PauliString jw_unmap(const MajoranaString& s);

}  // namespace scramble
