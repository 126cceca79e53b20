#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cattree/serialize.hpp"

namespace cattree {

// Number of bits needed to store max_value (at least 1).
unsigned bit_width_for(std::uint64_t max_value) noexcept;

// Fixed-width bit-packed integer array.
class PackedVector {
 public:
  PackedVector() = default;
  PackedVector(std::size_t size, unsigned width);

  // Packs values at the minimal width that fits their maximum.
  static PackedVector pack(std::span<const std::uint64_t> values);
  static PackedVector pack(std::span<const std::uint32_t> values);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  unsigned width() const noexcept { return width_; }

  std::uint64_t operator[](std::size_t i) const noexcept {
    const std::size_t bit = i * width_;
    const std::size_t word = bit >> 6;
    const unsigned offset = bit & 63;
    std::uint64_t v = words_[word] >> offset;
    if (offset + width_ > 64) v |= words_[word + 1] << (64 - offset);
    return v & mask_;
  }

  void set(std::size_t i, std::uint64_t value) noexcept;

  // Storage cost in bits.
  std::uint64_t size_in_bits() const noexcept { return words_.size() * 64ULL; }

  void save(BinaryWriter& out) const;
  static PackedVector load(BinaryReader& in);

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
  unsigned width_ = 1;
  std::uint64_t mask_ = 1;
};

}  // namespace cattree
