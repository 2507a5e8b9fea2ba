#include <doctest.h>

#include "scramble/bitvec.hpp"
#include "scramble/rng.hpp"

using scramble::BitVector;

TEST_CASE("bitvector basic operations") {
  BitVector v(130);
  CHECK(v.count() == 0);
  CHECK_FALSE(v.any());
  v.set(0);
  v.set(64);
  v.set(129);
  CHECK(v.count() == 3);
  CHECK(v.parity());
  v.flip(64);
  CHECK_FALSE(v.get(64));
  CHECK(v.ones() == std::vector<std::size_t>{0, 129});
  BitVector w(130);
  w.set(129);
  w.set(5);
  CHECK((v ^ w).ones() == std::vector<std::size_t>{0, 5});
  CHECK((v & w).ones() == std::vector<std::size_t>{129});
  v.clear();
  CHECK(v.count() == 0);
}

TEST_CASE("count_range matches a naive count") {
  scramble::Philox rng(1, 0);
  for (std::size_t n : {1u, 63u, 64u, 65u, 200u}) {
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i)
      if (rng.bit()) v.set(i);
    for (int trial = 0; trial < 200; ++trial) {
      std::size_t lo = rng.below(static_cast<std::uint32_t>(n + 1));
      std::size_t hi = rng.below(static_cast<std::uint32_t>(n + 1));
      std::size_t naive = 0;
      for (std::size_t i = lo; i < hi; ++i) naive += v.get(i);
      CHECK(v.count_range(lo, hi) == naive);
    }
  }
}
