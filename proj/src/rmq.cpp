#include "cattree/rmq.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace cattree {

Rmq::Rmq(std::span<const std::uint64_t> values) : values_(PackedVector::pack(values)) { build_index(); }

void Rmq::build_index() {
  const std::size_t m = values_.size();
  block_ = m <= 2 ? 1 : static_cast<std::size_t>(std::bit_width(m - 1));
  const std::size_t blocks = (m + block_ - 1) / block_;
  block_min_ = PackedVector(blocks, bit_width_for(block_ - 1));
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t lo = b * block_;
    const std::size_t hi = std::min(m, lo + block_) - 1;
    block_min_.set(b, scan(lo, hi) - lo);
  }
  table_.clear();
  const unsigned width = bit_width_for(blocks == 0 ? 0 : blocks - 1);
  for (std::size_t span = 2, k = 0; span <= blocks; span *= 2, ++k) {
    PackedVector row(blocks - span + 1, width);
    const std::size_t half = span / 2;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const std::size_t left = k == 0 ? i : table_[k - 1][i];
      const std::size_t right = k == 0 ? i + 1 : table_[k - 1][i + half];
      const std::size_t winner = better(block_argmin(left), block_argmin(right)) == block_argmin(left) ? left : right;
      row.set(i, winner);
    }
    table_.push_back(std::move(row));
  }
}

std::size_t Rmq::block_argmin(std::size_t block) const noexcept { return block * block_ + block_min_[block]; }

std::size_t Rmq::scan(std::size_t lo, std::size_t hi) const noexcept {
  std::size_t best = lo;
  for (std::size_t i = lo + 1; i <= hi; ++i) {
    if (values_[i] < values_[best]) best = i;
  }
  return best;
}

std::size_t Rmq::query(std::size_t l, std::size_t r) const {
  if (l == 0 || l > r || r > size()) {
    throw std::out_of_range("rmq range [" + std::to_string(l) + ".." + std::to_string(r) + "] invalid for length " +
                            std::to_string(size()));
  }
  const std::size_t lo = l - 1, hi = r - 1;
  const std::size_t bl = lo / block_, br = hi / block_;
  if (bl == br) return scan(lo, hi) + 1;

  std::size_t best = scan(lo, (bl + 1) * block_ - 1);
  if (bl + 1 < br) {
    const std::size_t first = bl + 1, last = br - 1;
    const std::size_t count = last - first + 1;
    std::size_t mid;
    if (count == 1) {
      mid = block_argmin(first);
    } else {
      const unsigned k = static_cast<unsigned>(std::bit_width(count)) - 1;
      const auto& row = table_[k - 1];
      const std::size_t a = block_argmin(row[first]);
      const std::size_t b = block_argmin(row[last + 1 - (std::size_t{1} << k)]);
      mid = better(a, b);
    }
    best = better(best, mid);
  }
  best = better(best, scan(br * block_, hi));
  return best + 1;
}

std::uint64_t Rmq::index_bits() const noexcept {
  std::uint64_t bits = block_min_.size_in_bits();
  for (const auto& row : table_) bits += row.size_in_bits();
  return bits;
}

std::uint64_t Rmq::size_in_bits() const noexcept { return values_.size_in_bits() + index_bits(); }

void Rmq::save(BinaryWriter& out) const { values_.save(out); }

Rmq Rmq::load(BinaryReader& in) {
  Rmq rmq;
  rmq.values_ = PackedVector::load(in);
  rmq.build_index();
  return rmq;
}

}  // namespace cattree
