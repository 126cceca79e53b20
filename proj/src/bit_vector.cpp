#include "cattree/bit_vector.hpp"

#include <stdexcept>
#include <string>

namespace cattree {

namespace {

constexpr std::size_t kSuperWords = 8;

// Position (0-based) of the k-th (0-based) set bit in word.
unsigned select_in_word(std::uint64_t word, unsigned k) noexcept {
  for (unsigned i = 0; i < k; ++i) word &= word - 1;
  return static_cast<unsigned>(std::countr_zero(word));
}

}  // namespace

BitVector::BitVector(std::vector<std::uint64_t> words, std::size_t size)
    : words_(std::move(words)), size_(size) {
  words_.resize((size_ + 63) / 64);
  if (size_ & 63) words_.back() &= (1ULL << (size_ & 63)) - 1;
  build_directory();
}

BitVector BitVector::from_string(std::string_view bits) {
  BitVectorBuilder builder;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string must contain only 0 and 1");
    builder.push_back(c == '1');
  }
  return std::move(builder).build();
}

void BitVector::build_directory() {
  // One extra superblock entry so rank1(size) never reads past the end.
  const std::size_t supers = words_.size() / kSuperWords + 1;
  directory_.assign(2 * supers, 0);
  std::size_t total = 0;
  for (std::size_t s = 0; s < supers; ++s) {
    directory_[2 * s] = total;
    std::uint64_t packed = 0;
    std::size_t rel = 0;
    for (std::size_t w = 0; w < kSuperWords; ++w) {
      const std::size_t idx = s * kSuperWords + w;
      if (w > 0) packed |= static_cast<std::uint64_t>(rel) << (9 * (w - 1));
      if (idx < words_.size()) rel += std::popcount(words_[idx]);
    }
    directory_[2 * s + 1] = packed;
    total += rel;
  }
  ones_ = total;
  // rank1 reads words_[size/64] when size is a multiple of 64 only with a
  // zero offset, so no padding word is needed.
}

std::size_t BitVector::rank_checked(bool c, std::size_t i) const {
  if (i > size_) {
    throw std::out_of_range("rank position " + std::to_string(i) + " exceeds length " + std::to_string(size_));
  }
  return rank(c, i);
}

std::size_t BitVector::select(bool c, std::size_t j) const {
  if (j == 0 || j > count(c)) {
    throw std::out_of_range("select occurrence " + std::to_string(j) + " out of range");
  }
  return select_unchecked(c, j);
}

std::size_t BitVector::select_unchecked(bool c, std::size_t j) const noexcept {
  // Superblock s covers bits [512 s, 512 (s + 1)); find the last superblock
  // whose preceding count is < j.
  const std::size_t supers = directory_.size() / 2;
  auto before = [&](std::size_t s) -> std::size_t {
    const std::size_t ones = directory_[2 * s];
    return c ? ones : s * kSuperWords * 64 - ones;
  };
  std::size_t lo = 0, hi = supers - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (before(mid) < j) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  std::size_t remaining = j - before(lo);
  for (std::size_t w = lo * kSuperWords; w < words_.size(); ++w) {
    const std::uint64_t word = c ? words_[w] : ~words_[w];
    const std::size_t pop = std::popcount(word);
    if (remaining <= pop) {
      return w * 64 + select_in_word(word, static_cast<unsigned>(remaining - 1)) + 1;
    }
    remaining -= pop;
  }
  return size_;  // unreachable for valid j
}

void BitVector::save(BinaryWriter& out) const {
  out.u64(size_);
  out.vec(words_);
}

BitVector BitVector::load(BinaryReader& in) {
  const std::size_t size = in.u64();
  auto words = in.vec<std::uint64_t>();
  if (words.size() != (size + 63) / 64) BinaryReader::fail("bitvector size mismatch");
  return BitVector(std::move(words), size);
}

}  // namespace cattree
