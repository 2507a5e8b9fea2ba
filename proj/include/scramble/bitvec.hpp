#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace scramble {

// Fixed-length bit vector packed into 64-bit words. Bits at positions >= size()
// are always zero, so word-level popcounts and comparisons need no masking.
class BitVector {
 public:
  using Word = std::uint64_t;

  BitVector() = default;
  explicit BitVector(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  std::size_t num_words() const { return words_.size(); }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  bool operator[](std::size_t i) const { return get(i); }
  void set(std::size_t i, bool v = true) {
    Word m = Word{1} << (i & 63);
    if (v)
      words_[i >> 6] |= m;
    else
      words_[i >> 6] &= ~m;
  }
  void flip(std::size_t i) { words_[i >> 6] ^= Word{1} << (i & 63); }
  void clear() { std::fill(words_.begin(), words_.end(), Word{0}); }

  std::size_t count() const {
    std::size_t c = 0;
    for (Word w : words_) c += std::popcount(w);
    return c;
  }
  bool parity() const {
    Word acc = 0;
    for (Word w : words_) acc ^= w;
    return std::popcount(acc) & 1;
  }
  bool any() const {
    for (Word w : words_)
      if (w) return true;
    return false;
  }

  // Number of set bits with index in [lo, hi).
  std::size_t count_range(std::size_t lo, std::size_t hi) const {
    if (lo >= hi) return 0;
    std::size_t wl = lo >> 6, wh = (hi - 1) >> 6;
    Word lo_mask = ~Word{0} << (lo & 63);
    Word hi_mask = ~Word{0} >> (63 - ((hi - 1) & 63));
    if (wl == wh) return std::popcount(words_[wl] & lo_mask & hi_mask);
    std::size_t c = std::popcount(words_[wl] & lo_mask);
    for (std::size_t w = wl + 1; w < wh; ++w) c += std::popcount(words_[w]);
    return c + std::popcount(words_[wh] & hi_mask);
  }

  BitVector& operator^=(const BitVector& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }
  BitVector& operator&=(const BitVector& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }
  BitVector& operator|=(const BitVector& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
  friend bool operator==(const BitVector&, const BitVector&) = default;

  std::span<Word> words() { return words_; }
  std::span<const Word> words() const { return words_; }

  template <class F>
  void for_each_set(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word x = words_[w];
      while (x) {
        f((w << 6) + std::countr_zero(x));
        x &= x - 1;
      }
    }
  }

  std::vector<std::size_t> ones() const {
    std::vector<std::size_t> out;
    for_each_set([&](std::size_t i) { out.push_back(i); });
    return out;
  }

 private:
  std::size_t size_ = 0;
  std::vector<Word> words_;
};

}  // namespace scramble
