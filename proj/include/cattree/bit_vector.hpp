#pragma once

#include <bit>
#include <cstdint>
#include <string_view>
#include <vector>

#include "cattree/serialize.hpp"

namespace cattree {

class BitVector;

// Append-only construction buffer for BitVector.
class BitVectorBuilder {
 public:
  BitVectorBuilder() = default;
  explicit BitVectorBuilder(std::size_t size) : words_((size + 63) / 64, 0), size_(size) {}

  void push_back(bool bit) {
    if ((size_ & 63) == 0) words_.push_back(0);
    if (bit) words_[size_ >> 6] |= 1ULL << (size_ & 63);
    ++size_;
  }

  void set(std::size_t i, bool bit = true) {
    if (bit) {
      words_[i >> 6] |= 1ULL << (i & 63);
    } else {
      words_[i >> 6] &= ~(1ULL << (i & 63));
    }
  }

  std::size_t size() const noexcept { return size_; }

  BitVector build() &&;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

// Static bitvector with constant-time rank and logarithmic select.
//
// Rank directory: per 512-bit superblock one absolute count plus seven
// packed 9-bit counts relative to the superblock start, i.e. 128 bits of
// overhead per 512 data bits.
//
// Conventions: rank(c, i) counts c in the first i bits (0 <= i <= size);
// select(c, j) returns the 1-based position p with bit p equal to c and
// rank(c, p) == j; get(i) reads the 0-based bit i.
class BitVector {
 public:
  BitVector() = default;
  BitVector(std::vector<std::uint64_t> words, std::size_t size);

  // Parses a string of '0'/'1' characters.
  static BitVector from_string(std::string_view bits);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1; }

  std::size_t rank1(std::size_t i) const noexcept {
    const std::size_t word = i >> 6;
    const std::size_t super = word >> 3;
    const std::size_t sub = word & 7;
    std::size_t r = directory_[2 * super];
    if (sub) r += (directory_[2 * super + 1] >> (9 * (sub - 1))) & 0x1ff;
    const unsigned offset = i & 63;
    if (offset) r += std::popcount(words_[word] & ((1ULL << offset) - 1));
    return r;
  }
  std::size_t rank0(std::size_t i) const noexcept { return i - rank1(i); }
  std::size_t rank(bool c, std::size_t i) const noexcept { return c ? rank1(i) : rank0(i); }

  // Checked variants of the above.
  std::size_t rank_checked(bool c, std::size_t i) const;
  std::size_t select(bool c, std::size_t j) const;

  std::size_t count(bool c) const noexcept { return c ? ones_ : size_ - ones_; }

  std::uint64_t size_in_bits() const noexcept { return 64ULL * (words_.size() + directory_.size()); }

  void save(BinaryWriter& out) const;
  static BitVector load(BinaryReader& in);

 private:
  void build_directory();
  std::size_t select_unchecked(bool c, std::size_t j) const noexcept;

  std::vector<std::uint64_t> words_;
  std::vector<std::uint64_t> directory_;
  std::size_t size_ = 0;
  std::size_t ones_ = 0;
};

inline BitVector BitVectorBuilder::build() && { return BitVector(std::move(words_), size_); }

}  // namespace cattree
