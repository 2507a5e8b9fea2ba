#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace scramble {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Philox4x32-10 counter-based generator. Each (seed, stream) pair selects an
// independent key; draws walk the counter. Results depend only on the key and
// the number of values consumed, never on thread scheduling.
class Philox {
 public:
  using result_type = std::uint64_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t k = splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ull));
    key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
  }

  static Block bijection(Block ctr, Key key) {
    for (int r = 0; r < 10; ++r) {
      if (r > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
      std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  std::uint64_t operator()() { return next_u64(); }

  std::uint64_t next_u64() {
    if (pos_ == 2) refill();
    return buf_[pos_++];
  }

  std::uint32_t next_u32() {
    if (half_avail_) {
      half_avail_ = false;
      return static_cast<std::uint32_t>(half_ >> 32);
    }
    half_ = next_u64();
    half_avail_ = true;
    return static_cast<std::uint32_t>(half_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), n <= 2^32, unbiased (Lemire).
  std::uint32_t below(std::uint32_t n) {
    std::uint64_t m = std::uint64_t{next_u32()} * n;
    auto l = static_cast<std::uint32_t>(m);
    if (l < n) {
      std::uint32_t t = static_cast<std::uint32_t>(-n) % n;
      while (l < t) {
        m = std::uint64_t{next_u32()} * n;
        l = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

  // p <= 0 and p >= 1 consume nothing.
  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform() < p;
  }

  bool bit() {
    if (bits_left_ == 0) {
      bits_ = next_u64();
      bits_left_ = 64;
    }
    bool b = bits_ & 1u;
    bits_ >>= 1;
    --bits_left_;
    return b;
  }

 private:
  void refill() {
    Block c = {static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32), 0u, 0u};
    ++counter_;
    Block r = bijection(c, key_);
    buf_[0] = (std::uint64_t{r[1]} << 32) | r[0];
    buf_[1] = (std::uint64_t{r[3]} << 32) | r[2];
    pos_ = 0;
  }

  Key key_{};
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 2> buf_{};
  int pos_ = 2;
  std::uint64_t half_ = 0;
  bool half_avail_ = false;
  std::uint64_t bits_ = 0;
  int bits_left_ = 0;
};

}  // namespace scramble
