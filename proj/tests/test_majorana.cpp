#include <doctest.h>

#include <vector>

#include "dense_oracle.hpp"
#include "scramble/errors.hpp"
#include "scramble/majorana.hpp"
#include "scramble/pauli.hpp"
#include "scramble/rng.hpp"

using namespace scramble;

namespace {

MajoranaString from_mask(std::size_t m, unsigned mask, Phase ph = Phase()) {
  BitVector b(m);
  for (std::size_t k = 0; k < m; ++k)
    if ((mask >> k) & 1) b.set(k);
  return MajoranaString(b, ph);
}

PauliString pauli_from_index(std::size_t L, unsigned idx, Phase ph = Phase()) {
  PauliString p(L);
  for (std::size_t q = 0; q < L; ++q) p.set(q, "IXYZ"[(idx >> (2 * q)) & 3]);
  p.set_phase(ph);
  return p;
}

}  // namespace

TEST_CASE("height and size of simple strings") {
  auto id = MajoranaString(8);
  CHECK(height_of(id).weight() == 0);
  CHECK(size_of(id) == 0);
  auto g1 = MajoranaString::from_modes(8, {0});
  CHECK(height_of(g1).bits.ones() == std::vector<std::size_t>{0});
  CHECK(size_of(g1) == 1);
  auto g12 = MajoranaString::from_modes(8, {0, 1});
  CHECK(height_of(g12).bits.ones() == std::vector<std::size_t>{0, 1});
  CHECK(size_of(MajoranaString::from_modes(8, {0, 1, 2, 3})) == 4);
}

TEST_CASE("mean size of a height distribution") {
  HeightVector a{BitVector(6)}, b{BitVector(6)}, z{BitVector(6)};
  a.bits.set(0);
  b.bits.set(0);
  b.bits.set(1);
  std::vector<std::pair<HeightVector, double>> d1{{a, 1.0}};
  CHECK(mean_size(d1) == doctest::Approx(1.0));
  std::vector<std::pair<HeightVector, double>> d2{{a, 0.5}, {b, 0.5}};
  CHECK(mean_size(d2) == doctest::Approx(1.5));
  std::vector<std::pair<HeightVector, double>> d3{{z, 1.0}};
  CHECK(mean_size(d3) == 0.0);
  std::vector<std::pair<HeightVector, double>> bad{{a, 0.5}};
  CHECK_THROWS_AS(mean_size(bad), NotNormalized);
}

TEST_CASE("canonical strings are Hermitian in the dense representation") {
  for (unsigned mask = 0; mask < 64; ++mask) {
    auto s = from_mask(6, mask);
    auto d = oracle::dense(s);
    CHECK(oracle::close(d, d.adjoint()));
    CHECK(oracle::close(d * d, oracle::Mat::Identity(8, 8)));
  }
}

TEST_CASE("multiply and commutes agree with the dense oracle on 4 modes, exhaustively") {
  for (unsigned ma = 0; ma < 16; ++ma)
    for (unsigned mb = 0; mb < 16; ++mb)
      for (int ea = 0; ea < 4; ++ea) {
        auto a = from_mask(4, ma, Phase(ea));
        auto b = from_mask(4, mb, Phase(3 * ea + 1));
        auto ab = multiply(a, b);
        auto da = oracle::dense(a), db = oracle::dense(b);
        CHECK(oracle::close(oracle::dense(ab), da * db));
        CHECK(height_of(ab).bits == (height_of(a).bits ^ height_of(b).bits));
        CHECK(commutes(a, b) == oracle::close(da * db, db * da));
      }
}

TEST_CASE("multiply examples") {
  auto g1 = MajoranaString::from_modes(6, {0});
  auto g2 = MajoranaString::from_modes(6, {1});
  auto sq = multiply(g1, g1);
  CHECK(sq.is_identity());
  CHECK(sq.phase() == Phase());
  auto a = multiply(g1, g2), b = multiply(g2, g1);
  CHECK(a.modes() == b.modes());
  CHECK(a.phase() == -b.phase());
  // (i g1 g2)(i g2 g3) = - g1 g3 = i (i g1 g3)
  auto x = MajoranaString::from_modes(6, {0, 1});
  auto y = MajoranaString::from_modes(6, {1, 2});
  auto xy = multiply(x, y);
  CHECK(to_string(xy) == "+i g1 g3");
  CHECK(oracle::close(oracle::dense(xy), oracle::dense(x) * oracle::dense(y)));
}

TEST_CASE("multiply is associative and squares to plus or minus one") {
  Philox rng(3, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 150;
    auto draw = [&] {
      BitVector b(m);
      for (std::size_t k = 0; k < m; ++k)
        if (rng.bit()) b.set(k);
      return MajoranaString(b, Phase(static_cast<int>(rng.below(4))));
    };
    auto a = draw(), b = draw(), c = draw();
    CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    auto h = MajoranaString(a.modes(), Phase());
    auto hh = multiply(h, h);
    CHECK(hh.is_identity());
    CHECK(hh.phase() == Phase());
  }
}

TEST_CASE("ordering parity matches a naive count across word boundaries") {
  Philox rng(5, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + rng.below(300);
    BitVector a(m), b(m);
    for (std::size_t k = 0; k < m; ++k) {
      if (rng.below(8) == 0) a.set(k);
      if (rng.below(8) == 0) b.set(k);
    }
    std::size_t naive = 0;
    for (std::size_t x : a.ones())
      for (std::size_t y : b.ones()) naive += x > y;
    CHECK(ordering_parity(a, b) == bool(naive & 1));
  }
}

TEST_CASE("string text form") {
  auto s = MajoranaString::from_modes(8, {4, 0, 1});
  CHECK(to_string(s) == "+ g1 g2 g5");
  CHECK(to_string(MajoranaString(8)) == "+");
  auto n = MajoranaString::from_modes(8, {2}, Phase(2));
  CHECK(to_string(n) == "- g3");
  for (std::string text : {"+ g1 g2 g5", "+", "- g3", "+i g1 g3", "-i g2 g4 g6 g8"})
    CHECK(to_string(parse_majorana(text, 8)) == text);
  CHECK_THROWS_AS(parse_majorana("+ g9", 8), InvalidArgument);
  CHECK_THROWS_AS(parse_majorana("+ g2 g1", 8), InvalidArgument);
}

TEST_CASE("jw_map examples") {
  auto x1 = jw_map(PauliString::parse("+XII"));
  CHECK(to_string(x1) == "+ g1 g2");
  CHECK(jw_map(PauliString::parse("+III")).is_identity());
  auto z1 = jw_map(PauliString::parse("+ZII"));
  CHECK(z1.weight() == 1);
  CHECK(oracle::close(oracle::dense(z1), oracle::dense(PauliString::parse("+ZII"))));
  CHECK(to_string(jw_map(PauliString::parse("+IZ"))) == "- g1 g2 g3");
}

TEST_CASE("jw_map equals the dense Pauli operator on up to 3 qubits, exhaustively") {
  for (std::size_t L = 1; L <= 3; ++L)
    for (unsigned idx = 0; idx < (1u << (2 * L)); ++idx)
      for (int e = 0; e < 4; ++e) {
        auto p = pauli_from_index(L, idx, Phase(e));
        auto s = jw_map(p);
        CHECK(oracle::close(oracle::dense(s), oracle::dense(p)));
        CHECK(jw_unmap(s) == p);
      }
}

TEST_CASE("jw round trip on large random strings") {
  Philox rng(9, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 2 * (1 + rng.below(200));
    BitVector b(m);
    for (std::size_t k = 0; k < m; ++k)
      if (rng.bit()) b.set(k);
    MajoranaString s(b, Phase(static_cast<int>(rng.below(4))));
    CHECK(jw_map(jw_unmap(s)) == s);
  }
}

TEST_CASE("jw_map preserves commutation on 2 qubits, exhaustively") {
  for (unsigned a = 0; a < 16; ++a)
    for (unsigned b = 0; b < 16; ++b) {
      auto pa = pauli_from_index(2, a), pb = pauli_from_index(2, b);
      CHECK(commutes(pa, pb) == commutes(jw_map(pa), jw_map(pb)));
      CHECK(jw_map(multiply(pa, pb)) == multiply(jw_map(pa), jw_map(pb)));
    }
}
