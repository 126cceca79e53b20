#include "cattree/packed_vector.hpp"

#include <algorithm>
#include <bit>

namespace cattree {

unsigned bit_width_for(std::uint64_t max_value) noexcept {
  return std::max(1U, static_cast<unsigned>(std::bit_width(max_value)));
}

namespace {

std::uint64_t mask_for(unsigned width) { return width == 64 ? ~0ULL : (1ULL << width) - 1; }

}  // namespace

PackedVector::PackedVector(std::size_t size, unsigned width)
    : words_((size * width + 63) / 64, 0), size_(size), width_(width), mask_(mask_for(width)) {}

PackedVector PackedVector::pack(std::span<const std::uint64_t> values) {
  std::uint64_t max_value = 0;
  for (auto v : values) max_value = std::max(max_value, v);
  PackedVector packed(values.size(), bit_width_for(max_value));
  for (std::size_t i = 0; i < values.size(); ++i) packed.set(i, values[i]);
  return packed;
}

PackedVector PackedVector::pack(std::span<const std::uint32_t> values) {
  std::uint64_t max_value = 0;
  for (auto v : values) max_value = std::max<std::uint64_t>(max_value, v);
  PackedVector packed(values.size(), bit_width_for(max_value));
  for (std::size_t i = 0; i < values.size(); ++i) packed.set(i, values[i]);
  return packed;
}

void PackedVector::set(std::size_t i, std::uint64_t value) noexcept {
  value &= mask_;
  const std::size_t bit = i * width_;
  const std::size_t word = bit >> 6;
  const unsigned offset = bit & 63;
  words_[word] = (words_[word] & ~(mask_ << offset)) | (value << offset);
  if (offset + width_ > 64) {
    const unsigned spill = 64 - offset;
    words_[word + 1] = (words_[word + 1] & ~(mask_ >> spill)) | (value >> spill);
  }
}

void PackedVector::save(BinaryWriter& out) const {
  out.u64(size_);
  out.u32(width_);
  out.vec(words_);
}

PackedVector PackedVector::load(BinaryReader& in) {
  PackedVector v;
  v.size_ = in.u64();
  v.width_ = in.u32();
  if (v.width_ == 0 || v.width_ > 64) BinaryReader::fail("packed vector width out of range");
  v.mask_ = mask_for(v.width_);
  v.words_ = in.vec<std::uint64_t>();
  if (v.size_ > v.words_.size() * 64 / v.width_ || v.words_.size() != (v.size_ * v.width_ + 63) / 64) {
    BinaryReader::fail("packed vector size mismatch");
  }
  return v;
}

}  // namespace cattree
