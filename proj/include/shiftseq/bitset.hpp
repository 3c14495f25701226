#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace shiftseq {

// Dynamic fixed-size bit vector. Used for vertex sets and for vertex-pair
// relations (a relation over V vertices is a Bitset of V*V bits, row-major).
// The size is fixed at construction.
class Bitset {
public:
  Bitset() = default;

  explicit Bitset(std::uint32_t size)
      : size_(size), blocks_((size + 63) / 64, 0) {}

  static Bitset all(std::uint32_t size) {
    Bitset b(size);
    for (auto& w : b.blocks_) w = ~0ULL;
    b.clear_padding();
    return b;
  }

  std::uint32_t size() const { return size_; }

  void set(std::uint32_t i) { blocks_[i >> 6] |= 1ULL << (i & 63); }
  void reset(std::uint32_t i) { blocks_[i >> 6] &= ~(1ULL << (i & 63)); }

  bool test(std::uint32_t i) const {
    return (blocks_[i >> 6] >> (i & 63)) & 1;
  }

  bool any() const {
    for (auto w : blocks_)
      if (w) return true;
    return false;
  }

  bool none() const { return !any(); }

  std::uint32_t count() const {
    std::uint32_t c = 0;
    for (auto w : blocks_) c += static_cast<std::uint32_t>(std::popcount(w));
    return c;
  }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= o.blocks_[i];
    return *this;
  }

  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= o.blocks_[i];
    return *this;
  }

  bool intersects(const Bitset& o) const {
    std::size_t n = std::min(blocks_.size(), o.blocks_.size());
    for (std::size_t i = 0; i < n; ++i)
      if (blocks_[i] & o.blocks_[i]) return true;
    return false;
  }

  // OR all bits of `src` into this one, shifted up by `offset` positions.
  // The caller guarantees offset + src.size() <= size().
  void or_shifted(const Bitset& src, std::uint32_t offset) {
    std::uint32_t block = offset >> 6;
    std::uint32_t shift = offset & 63;
    for (std::size_t j = 0; j < src.blocks_.size(); ++j) {
      std::uint64_t w = src.blocks_[j];
      if (!w) continue;
      blocks_[block + j] |= w << shift;
      if (shift != 0 && block + j + 1 < blocks_.size())
        blocks_[block + j + 1] |= w >> (64 - shift);
    }
  }

  // Calls f(i) for every set bit i in increasing order.
  template <typename F>
  void for_each(F f) const {
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      std::uint64_t w = blocks_[b];
      while (w) {
        std::uint32_t bit = static_cast<std::uint32_t>(std::countr_zero(w));
        f(static_cast<std::uint32_t>(b * 64 + bit));
        w &= w - 1;
      }
    }
  }

  // First set bit, or size() if empty.
  std::uint32_t first() const {
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      if (blocks_[b])
        return static_cast<std::uint32_t>(b * 64 + std::countr_zero(blocks_[b]));
    return size_;
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

  const std::vector<std::uint64_t>& blocks() const { return blocks_; }

  struct Hash {
    std::size_t operator()(const Bitset& b) const {
      std::uint64_t h = 1469598103934665603ULL ^ b.size_;
      for (auto w : b.blocks_) {
        h ^= w;
        h *= 1099511628211ULL;
      }
      return static_cast<std::size_t>(h);
    }
  };

private:
  void clear_padding() {
    if (size_ & 63) blocks_.back() &= (1ULL << (size_ & 63)) - 1;
  }

  std::uint32_t size_ = 0;
  std::vector<std::uint64_t> blocks_;
};

}  // namespace shiftseq
