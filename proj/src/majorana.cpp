#include "scramble/majorana.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "scramble/errors.hpp"

namespace scramble {

std::string_view Phase::token() const {
  static constexpr std::string_view kTokens[4] = {"+", "+i", "-", "-i"};
  return kTokens[exp_];
}

MajoranaString MajoranaString::from_modes(std::size_t num_modes, std::span<const std::size_t> modes,
                                          Phase phase) {
  BitVector bits(num_modes);
  for (std::size_t k : modes) {
    if (k >= num_modes) throw InvalidArgument("mode index out of range");
    if (bits.get(k)) throw InvalidArgument("repeated mode in from_modes");
    bits.set(k);
  }
  return MajoranaString(std::move(bits), phase);
}

MajoranaString MajoranaString::from_modes(std::size_t num_modes, std::initializer_list<std::size_t> modes,
                                          Phase phase) {
  return from_modes(num_modes, std::span<const std::size_t>(modes.begin(), modes.size()), phase);
}

MajoranaString MajoranaString::product(std::size_t num_modes, std::span<const std::size_t> ordered,
                                       Phase coeff) {
  MajoranaString acc(num_modes);
  for (std::size_t k : ordered) {
    if (k >= num_modes) throw InvalidArgument("mode index out of range");
    MajoranaString g(num_modes);
    g.modes_.set(k);
    acc = multiply(acc, g);
  }
  acc.mul_phase(coeff);
  return acc;
}

MajoranaString MajoranaString::product(std::size_t num_modes, std::initializer_list<std::size_t> ordered,
                                       Phase coeff) {
  return product(num_modes, std::span<const std::size_t>(ordered.begin(), ordered.size()), coeff);
}

bool ordering_parity(const BitVector& a, const BitVector& b) {
  // For every y in b we need the parity of the bits of a strictly above y.
  auto aw = a.words();
  auto bw = b.words();
  std::uint64_t carry = 0;  // parity of a in all higher words, as 0 or ~0
  std::uint64_t acc = 0;
  for (std::size_t w = aw.size(); w-- > 0;) {
    std::uint64_t s = aw[w];
    s ^= s >> 1;
    s ^= s >> 2;
    s ^= s >> 4;
    s ^= s >> 8;
    s ^= s >> 16;
    s ^= s >> 32;
    // bit y of s is the parity of bits >= y; shift once for strictly above.
    acc ^= bw[w] & ((s >> 1) ^ carry);
    if (std::popcount(aw[w]) & 1) carry = ~carry;
  }
  return std::popcount(acc) & 1;
}

MajoranaString multiply(const MajoranaString& a, const MajoranaString& b) {
  if (a.num_modes() != b.num_modes()) throw ShapeMismatch("multiply: mode counts differ");
  std::size_t qa = a.weight(), qb = b.weight();
  BitVector m = a.modes() ^ b.modes();
  std::size_t q = m.count();
  int e = a.phase().exponent() + b.phase().exponent() + hermitian_exponent(qa) + hermitian_exponent(qb) -
          hermitian_exponent(q);
  if (ordering_parity(a.modes(), b.modes())) e += 2;
  return MajoranaString(std::move(m), Phase(e));
}

bool commutes(const MajoranaString& a, const MajoranaString& b) {
  std::size_t overlap = (a.modes() & b.modes()).count();
  return ((a.weight() * b.weight() - overlap) & 1) == 0;
}

std::string to_string(const MajoranaString& s) {
  std::string out(s.phase().token());
  s.modes().for_each_set([&](std::size_t k) {
    out += " g";
    out += std::to_string(k + 1);
  });
  return out;
}

MajoranaString parse_majorana(std::string_view text, std::size_t num_modes) {
  std::istringstream in{std::string(text)};
  std::string tok;
  if (!(in >> tok)) throw InvalidArgument("empty Majorana string");
  Phase ph;
  if (tok == "+")
    ph = Phase(0);
  else if (tok == "+i")
    ph = Phase(1);
  else if (tok == "-")
    ph = Phase(2);
  else if (tok == "-i")
    ph = Phase(3);
  else
    throw InvalidArgument("bad sign token '" + tok + "'");
  BitVector bits(num_modes);
  std::size_t last = 0;
  while (in >> tok) {
    std::size_t k = 0;
    if (tok.size() < 2 || tok[0] != 'g') throw InvalidArgument("bad mode token '" + tok + "'");
    auto [p, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), k);
    if (ec != std::errc() || p != tok.data() + tok.size() || k == 0 || k > num_modes)
      throw InvalidArgument("bad mode token '" + tok + "'");
    if (k <= last) throw InvalidArgument("mode labels must increase");
    last = k;
    bits.set(k - 1);
  }
  return MajoranaString(std::move(bits), ph);
}

HeightVector height_of(const MajoranaString& s) { return HeightVector{s.modes()}; }

std::size_t size_of(const MajoranaString& s) { return s.weight(); }

double mean_size(std::span<const std::pair<HeightVector, double>> dist) {
  double total = 0.0, mean = 0.0;
  for (const auto& [h, p] : dist) {
    if (p < 0.0) throw NotNormalized("negative probability");
    total += p;
    mean += p * static_cast<double>(h.weight());
  }
  if (std::abs(total - 1.0) > 1e-9) throw NotNormalized("probabilities sum to " + std::to_string(total));
  return mean;
}

}  // namespace scramble
