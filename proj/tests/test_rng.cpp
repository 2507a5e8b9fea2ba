#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <vector>

#include "scramble/rng.hpp"

using scramble::Philox;

TEST_CASE("philox 4x32-10 known answer") {
  auto r = Philox::bijection({0, 0, 0, 0}, {0, 0});
  CHECK(r[0] == 0x6627e8d5u);
  CHECK(r[1] == 0xe169c58du);
  CHECK(r[2] == 0xbc57ac4cu);
  CHECK(r[3] == 0x9b00dbd8u);
  auto s = Philox::bijection({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  CHECK(s[0] == 0x408f276du);
  CHECK(s[1] == 0x41c83b0eu);
  CHECK(s[2] == 0xa20bc7c6u);
  CHECK(s[3] == 0x6d5451fdu);
  auto t = Philox::bijection({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  CHECK(t[0] == 0xd16cfe09u);
  CHECK(t[1] == 0x94fdccebu);
  CHECK(t[2] == 0x5001e420u);
  CHECK(t[3] == 0x24126ea1u);
}

TEST_CASE("streams are deterministic and distinct") {
  Philox a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  for (int i = 0; i < 100; ++i) {
    auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
    CHECK(x != d.next_u64());
  }
}

TEST_CASE("below is uniform") {
  Philox rng(11, 0);
  const std::uint32_t n = 37;
  const int draws = 370000;
  std::vector<int> hist(n, 0);
  for (int i = 0; i < draws; ++i) ++hist[rng.below(n)];
  double chi2 = 0, e = double(draws) / n;
  for (int h : hist) chi2 += (h - e) * (h - e) / e;
  boost::math::chi_squared dist(n - 1);
  CHECK(chi2 < boost::math::quantile(dist, 0.999));
}

TEST_CASE("bernoulli at the endpoints consumes nothing") {
  Philox a(1, 1), b(1, 1);
  CHECK_FALSE(a.bernoulli(0.0));
  CHECK(a.bernoulli(1.0));
  CHECK(a.next_u64() == b.next_u64());
}
