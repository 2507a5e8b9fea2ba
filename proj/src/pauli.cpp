#include "scramble/pauli.hpp"

#include "scramble/errors.hpp"

namespace scramble {

namespace {

// sigma(x1,z1) sigma(x2,z2) = i^g sigma(x1^x2, z1^z2)
int pauli_product_exponent(bool x1, bool z1, bool x2, bool z2) {
  if (x1 && z1) return int(z2) - int(x2);
  if (x1) return int(z2) * (2 * int(x2) - 1);
  if (z1) return int(x2) * (1 - 2 * int(z2));
  return 0;
}

}  // namespace

PauliString::PauliString(BitVector x, BitVector z, Phase phase) : x_(std::move(x)), z_(std::move(z)), phase_(phase) {
  if (x_.size() != z_.size()) throw ShapeMismatch("PauliString: x and z lengths differ");
}

PauliString PauliString::parse(std::string_view text) {
  Phase ph;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') ph = Phase(2);
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    ph = ph * Phase(1);
    ++pos;
  }
  PauliString p(text.size() - pos);
  p.phase_ = ph;
  for (std::size_t q = 0; pos < text.size(); ++pos, ++q) p.set(q, text[pos]);
  return p;
}

char PauliString::at(std::size_t q) const {
  static constexpr char kOps[4] = {'I', 'X', 'Z', 'Y'};
  return kOps[int(x_.get(q)) | (int(z_.get(q)) << 1)];
}

void PauliString::set(std::size_t q, char op) {
  switch (op) {
    case 'I': x_.set(q, false), z_.set(q, false); break;
    case 'X': x_.set(q, true), z_.set(q, false); break;
    case 'Z': x_.set(q, false), z_.set(q, true); break;
    case 'Y': x_.set(q, true), z_.set(q, true); break;
    default: throw InvalidArgument(std::string("bad Pauli letter '") + op + "'");
  }
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) throw ShapeMismatch("multiply: qubit counts differ");
  int e = a.phase().exponent() + b.phase().exponent();
  for (std::size_t q = 0; q < a.num_qubits(); ++q)
    e += pauli_product_exponent(a.x()[q], a.z()[q], b.x()[q], b.z()[q]);
  return PauliString(a.x() ^ b.x(), a.z() ^ b.z(), Phase(e));
}

bool commutes(const PauliString& a, const PauliString& b) {
  std::size_t s = (a.x() & b.z()).count() + (a.z() & b.x()).count();
  return (s & 1) == 0;
}

std::string to_string(const PauliString& p) {
  std::string out(p.phase().token());
  for (std::size_t q = 0; q < p.num_qubits(); ++q) out += p.at(q);
  return out;
}

MajoranaString jw_map(const PauliString& p) {
  std::size_t L = p.num_qubits();
  std::size_t M = 2 * L;
  MajoranaString string_above(M);  // prod_{j<i} X_j
  MajoranaString result(M);
  for (std::size_t i = 0; i < L; ++i) {
    MajoranaString xi = MajoranaString::from_modes(M, {2 * i, 2 * i + 1});  // i g g is Hermitian-canonical
    bool x = p.x()[i], z = p.z()[i];
    if (x || z) {
      MajoranaString yi = multiply(string_above, MajoranaString::from_modes(M, {2 * i + 1}));
      MajoranaString op;
      if (x && z)
        op = yi;
      else if (x)
        op = xi;
      else {
        op = multiply(xi, yi);
        op.mul_phase(Phase(3));
      }
      result = multiply(result, op);
    }
    string_above = multiply(string_above, xi);
  }
  result.mul_phase(p.phase());
  return result;
}

PauliString jw_unmap(const MajoranaString& s) {
  if (s.num_modes() % 2 != 0) throw ShapeMismatch("jw_unmap: odd number of modes");
  std::size_t L = s.num_modes() / 2;
  PauliString p(L);
  bool tail = false;  // parity of modes on qubits to the right
  for (std::size_t i = L; i-- > 0;) {
    bool a = s.has(2 * i), b = s.has(2 * i + 1);
    bool x = b != tail;
    bool z = a != b;
    p.set(i, "IXZY"[int(x) | (int(z) << 1)]);
    tail = tail != (a != b);
  }
  MajoranaString bare = jw_map(p);
  if (bare.modes() != s.modes()) throw InvalidArgument("jw_unmap: inconsistent mode pattern");
  p.set_phase(s.phase() * bare.phase().conj());
  return p;
}

}  // namespace scramble
