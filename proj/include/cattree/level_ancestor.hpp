#pragma once

#include <cstdint>
#include <vector>

#include "cattree/corpus.hpp"

namespace cattree {

// Level-ancestor and leaf-selection queries over a CategoryTree, backed by
// binary-lifting jump tables (ceil(log2 h) rows of node ids).
class LevelAncestorIndex {
 public:
  LevelAncestorIndex() = default;
  explicit LevelAncestorIndex(const CategoryTree& tree);

  // Ancestor of v at level l, 1 <= l <= level(v); throws Error(InvalidLevel).
  NodeId laq(NodeId v, Level l) const;
  // Unchecked; l must lie in [1, level(v)].
  NodeId laq_unchecked(NodeId v, Level l) const noexcept {
    std::uint32_t diff = levels_[v] - l;
    for (std::size_t k = 0; diff; ++k, diff >>= 1) {
      if (diff & 1) v = up_[k][v];
    }
    return v;
  }

  // Leaf of document j (1-based); throws std::out_of_range.
  NodeId leafselect(DocId j) const;
  NodeId leafselect_unchecked(DocId j) const noexcept { return leaves_[j - 1]; }

  Level level(NodeId v) const noexcept { return levels_[v]; }
  std::size_t jump_rows() const noexcept { return up_.size(); }
  std::uint64_t size_in_bits() const noexcept;

 private:
  std::vector<Level> levels_;
  std::vector<NodeId> leaves_;
  std::vector<std::vector<NodeId>> up_;  // up_[k][v]: ancestor 2^k levels above v
};

}  // namespace cattree
