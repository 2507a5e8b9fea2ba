#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <bit>
#include <set>
#include <vector>

#include "dense_oracle.hpp"
#include "scramble/clifford.hpp"
#include "scramble/errors.hpp"
#include "scramble/tableau.hpp"

using namespace scramble;

namespace {

double chi2_limit(std::size_t dof) { return boost::math::quantile(boost::math::chi_squared(double(dof)), 0.999); }

MajoranaString from_mask(std::size_t m, unsigned mask, Phase ph = Phase()) {
  BitVector b(m);
  for (std::size_t k = 0; k < m; ++k)
    if ((mask >> k) & 1) b.set(k);
  return MajoranaString(b, ph);
}

}  // namespace

TEST_CASE("symplectic group has 720 elements and contains the identity") {
  const auto& g = symplectic_group();
  CHECK(g.size() == 720);
  CHECK(std::is_sorted(g.begin(), g.end()));
  TwoQubitClifford id;
  for (int c = 0; c < 4; ++c) CHECK(id.image(c) == (Pauli2{static_cast<std::uint8_t>(1u << c), 0}));
  for (unsigned b = 0; b < 16; ++b)
    for (std::uint8_t e = 0; e < 4; ++e) CHECK(id.apply(Pauli2{static_cast<std::uint8_t>(b), e}) == (Pauli2{static_cast<std::uint8_t>(b), e}));
}

TEST_CASE("from_images rejects invalid images") {
  std::array<Pauli2, 4> bad{Pauli2{1, 0}, Pauli2{1, 0}, Pauli2{4, 0}, Pauli2{8, 0}};
  CHECK_THROWS_AS(TwoQubitClifford::from_images(bad), InvalidArgument);
  std::array<Pauli2, 4> nonherm{Pauli2{1, 1}, Pauli2{2, 0}, Pauli2{4, 0}, Pauli2{8, 0}};
  CHECK_THROWS_AS(TwoQubitClifford::from_images(nonherm), InvalidArgument);
  CHECK_THROWS_AS(TwoQubitClifford(11520), InvalidArgument);
}

TEST_CASE("index encoding equals the group generated by H, S and CNOT") {
  const auto& group = oracle::clifford_group_by_closure();
  REQUIRE(group.size() == 11520);
  std::set<std::uint32_t> indices;
  for (const auto& el : group) {
    auto g = TwoQubitClifford::from_images(el.images);
    indices.insert(g.index());
    for (int c = 0; c < 4; ++c) CHECK(g.image(c) == el.images[c]);
  }
  CHECK(indices.size() == 11520);
}

TEST_CASE("apply agrees with dense conjugation for every group element") {
  const auto& group = oracle::clifford_group_by_closure();
  std::vector<oracle::Mat> paulis;
  for (unsigned b = 0; b < 16; ++b) paulis.push_back(oracle::dense(Pauli2{static_cast<std::uint8_t>(b), 0}));
  int failures = 0;
  for (const auto& el : group) {
    auto g = TwoQubitClifford::from_images(el.images);
    for (unsigned b = 0; b < 16; ++b) {
      Pauli2 want = oracle::identify_pauli2(el.unitary * paulis[b] * el.unitary.adjoint());
      if (!(g.apply(Pauli2{static_cast<std::uint8_t>(b), 0}) == want)) ++failures;
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("exact Majorana action equals dense conjugation on 3 qubits") {
  const auto& group = oracle::clifford_group_by_closure();
  Philox rng(21, 0);
  oracle::Mat id2 = oracle::pauli('I');
  for (int trial = 0; trial < 400; ++trial) {
    const auto& el = group[rng.below(11520)];
    auto gate = TwoQubitClifford::from_images(el.images);
    oracle::Mat U = oracle::kron_all({el.unitary, id2});
    for (unsigned mask = 0; mask < 64; ++mask) {
      auto s = from_mask(6, mask, Phase(static_cast<int>(rng.below(4))));
      auto before = oracle::dense(s);
      apply_two_qubit_clifford(s, gate);
      CHECK(oracle::close(oracle::dense(s), U * before * U.adjoint()));
    }
  }
}

TEST_CASE("restricted action conjugates only the low factor") {
  Philox rng(22, 0);
  for (int trial = 0; trial < 2000; ++trial) {
    auto gate = sample_two_qubit_clifford(rng);
    unsigned low = rng.below(16), rest = rng.below(256) << 4;
    auto lo = from_mask(12, low), re = from_mask(12, rest);
    auto s = multiply(lo, re);
    auto lo_img = lo;
    apply_two_qubit_clifford(lo_img, gate, GateAction::restricted);
    auto exact_lo = lo;
    apply_two_qubit_clifford(exact_lo, gate);
    CHECK(lo_img == exact_lo);
    apply_two_qubit_clifford(s, gate, GateAction::restricted);
    CHECK(s == multiply(lo_img, re));
    if (std::popcount(rest) % 2 == 0) {
      auto t = multiply(lo, re);
      apply_two_qubit_clifford(t, gate);
      CHECK(t == s);
    }
  }
}

TEST_CASE("identity gate and strings away from modes 1-4 are unchanged") {
  auto s = MajoranaString::from_modes(12, {1, 2, 7});
  auto t = s;
  apply_two_qubit_clifford(t, TwoQubitClifford());
  CHECK(t == s);
  Philox rng(2, 2);
  auto far = MajoranaString::from_modes(12, {5, 8});
  for (int i = 0; i < 100; ++i) {
    auto f = far;
    apply_two_qubit_clifford(f, sample_two_qubit_clifford(rng));
    CHECK(f == far);
  }
}

TEST_CASE("image of a single Majorana over the whole group: 4, 6, 4, 1 out of 15") {
  for (std::size_t mode = 0; mode < 4; ++mode) {
    std::array<int, 5> hist{};
    for (std::uint32_t g = 0; g < TwoQubitClifford::kGroupSize; ++g) {
      auto s = MajoranaString::from_modes(8, {mode});
      apply_two_qubit_clifford(s, TwoQubitClifford(g));
      ++hist[s.weight()];
    }
    CHECK(hist[0] == 0);
    CHECK(hist[1] * 15 == 4 * 11520);
    CHECK(hist[2] * 15 == 6 * 11520);
    CHECK(hist[3] * 15 == 4 * 11520);
    CHECK(hist[4] * 15 == 1 * 11520);
  }
}

TEST_CASE("sampling is uniform over the group") {
  Philox rng(77, 0);
  const int draws = 360000;
  std::vector<int> sym(720, 0), signs(16, 0), x1(16, 0);
  for (int i = 0; i < draws; ++i) {
    auto g = sample_two_qubit_clifford(rng);
    ++sym[g.index() >> 4];
    ++signs[g.index() & 15];
    ++x1[g.image(0).bits];
  }
  auto chi2 = [](const std::vector<int>& h, double e, std::size_t skip = 99) {
    double c = 0;
    for (std::size_t k = 0; k < h.size(); ++k)
      if (k != skip) c += (h[k] - e) * (h[k] - e) / e;
    return c;
  };
  CHECK(chi2(sym, draws / 720.0) < chi2_limit(719));
  CHECK(chi2(signs, draws / 16.0) < chi2_limit(15));
  // X1 goes to each of the 15 nonidentity Paulis equally often.
  CHECK(x1[0] == 0);
  CHECK(chi2(x1, draws / 15.0, 0) < chi2_limit(14));
}
