#pragma once

#include <cstdint>
#include <vector>

#include "cattree/bit_vector.hpp"
#include "cattree/corpus.hpp"

namespace cattree {

// Heavy path decomposition by leaf-count weights. The heavy child of a node
// is its heaviest child, ties going to the lowest node id; every path runs
// from its head down to a leaf.
class HeavyPathDecomposition {
 public:
  struct Path {
    NodeId head = kNoNode;
    std::vector<NodeId> nodes;  // head first, one node per level down to a leaf
    // Light children of the path nodes by increasing depth (ties: node id).
    std::vector<NodeId> light_children;
    // light_prefix[k]: light children hanging from nodes[0..k); size k + 1.
    std::vector<std::uint32_t> light_prefix;
    // Depth marks over levels [1..h] (bit l - 1 set iff a path node sits at level l).
    BitVector depths;
  };

  HeavyPathDecomposition() = default;
  explicit HeavyPathDecomposition(const CategoryTree& tree);

  std::uint32_t weight(NodeId v) const noexcept { return weight_[v]; }
  NodeId heavy_child(NodeId v) const noexcept { return heavy_[v]; }
  std::uint32_t path_of(NodeId v) const noexcept { return path_of_[v]; }
  const std::vector<Path>& paths() const noexcept { return paths_; }
  const Path& path(std::uint32_t p) const noexcept { return paths_[p]; }
  std::uint32_t root_path() const noexcept { return path_of_[root_]; }

  // Light edges on the path from the root down to v.
  std::uint32_t light_depth(NodeId v) const noexcept { return light_depth_[v]; }

 private:
  std::vector<std::uint32_t> weight_;
  std::vector<NodeId> heavy_;
  std::vector<std::uint32_t> path_of_;
  std::vector<std::uint32_t> light_depth_;
  std::vector<Path> paths_;
  NodeId root_ = kNoNode;
};

}  // namespace cattree
