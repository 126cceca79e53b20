#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cattree/packed_vector.hpp"

namespace cattree {

// Range-minimum structure over an owned integer array.
//
// Blocks of b = ceil(log2 m) cells; the minimum position of every block is
// stored and a sparse table indexes the block minima. A query scans at most
// two partial blocks and combines two overlapping sparse-table cells.
// Positions are 1-based; ties resolve to the leftmost position.
class Rmq {
 public:
  Rmq() = default;
  explicit Rmq(std::span<const std::uint64_t> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::uint64_t value(std::size_t pos) const noexcept { return values_[pos - 1]; }

  // Leftmost position of the minimum in values[l..r]; throws
  // std::out_of_range on an empty, inverted, or out-of-bounds range.
  std::size_t query(std::size_t l, std::size_t r) const;

  std::size_t block_size() const noexcept { return block_; }
  std::uint64_t size_in_bits() const noexcept;
  std::uint64_t index_bits() const noexcept;  // everything but the values

  void save(BinaryWriter& out) const;
  static Rmq load(BinaryReader& in);

 private:
  void build_index();
  // 0-based, inclusive.
  std::size_t scan(std::size_t lo, std::size_t hi) const noexcept;
  std::size_t better(std::size_t a, std::size_t b) const noexcept {
    return values_[b] < values_[a] || (values_[b] == values_[a] && b < a) ? b : a;
  }
  std::size_t block_argmin(std::size_t block) const noexcept;

  PackedVector values_;
  std::size_t block_ = 1;
  PackedVector block_min_;           // in-block offset of each block minimum
  std::vector<PackedVector> table_;  // table_[k][i]: argmin block over blocks [i, i + 2^(k+1))
};

}  // namespace cattree
