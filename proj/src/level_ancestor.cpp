#include "cattree/level_ancestor.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "cattree/error.hpp"

namespace cattree {

LevelAncestorIndex::LevelAncestorIndex(const CategoryTree& tree)
    : leaves_(tree.leaves().begin(), tree.leaves().end()) {
  const std::size_t count = tree.node_count();
  levels_.resize(count);
  for (NodeId v = 0; v < count; ++v) levels_[v] = tree.level(v);
  const Level h = tree.height();
  const std::size_t rows = h <= 1 ? 0 : std::bit_width(h - 1);
  up_.resize(rows);
  if (rows == 0) return;
  up_[0].resize(count);
  for (NodeId v = 0; v < count; ++v) up_[0][v] = v == tree.root() ? v : tree.parent(v);
  for (std::size_t k = 1; k < rows; ++k) {
    up_[k].resize(count);
    for (NodeId v = 0; v < count; ++v) up_[k][v] = up_[k - 1][up_[k - 1][v]];
  }
}

NodeId LevelAncestorIndex::laq(NodeId v, Level l) const {
  if (v >= levels_.size()) throw std::out_of_range("node " + std::to_string(v) + " out of range");
  if (l < 1 || l > levels_[v]) {
    throw Error(Errc::InvalidLevel, "level " + std::to_string(l) + " outside [1.." + std::to_string(levels_[v]) +
                                        "] for node " + std::to_string(v));
  }
  return laq_unchecked(v, l);
}

NodeId LevelAncestorIndex::leafselect(DocId j) const {
  if (j < 1 || j > leaves_.size()) throw std::out_of_range("leaf " + std::to_string(j) + " out of range");
  return leaves_[j - 1];
}

std::uint64_t LevelAncestorIndex::size_in_bits() const noexcept {
  std::uint64_t bits = 32ULL * (levels_.size() + leaves_.size());
  for (const auto& row : up_) bits += 32ULL * row.size();
  return bits;
}

}  // namespace cattree
