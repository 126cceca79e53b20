#include "cattree/heavy_path.hpp"

#include <algorithm>

namespace cattree {

HeavyPathDecomposition::HeavyPathDecomposition(const CategoryTree& tree) : root_(tree.root()) {
  const std::size_t count = tree.node_count();
  std::vector<NodeId> order{root_};
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (NodeId c : tree.children(order[k])) order.push_back(c);
  }

  weight_.assign(count, 0);
  heavy_.assign(count, kNoNode);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    if (tree.is_leaf(v)) {
      weight_[v] = 1;
      continue;
    }
    // children() is in ascending id order, so strict '>' keeps the lowest id on ties.
    for (NodeId c : tree.children(v)) {
      weight_[v] += weight_[c];
      if (heavy_[v] == kNoNode || weight_[c] > weight_[heavy_[v]]) heavy_[v] = c;
    }
  }

  path_of_.assign(count, 0);
  light_depth_.assign(count, 0);
  const Level h = tree.height();
  // Heads are discovered in BFS order, so parents' paths exist first.
  for (NodeId v : order) {
    const bool head = v == root_ || heavy_[tree.parent(v)] != v;
    if (!head) continue;
    Path path;
    path.head = v;
    BitVectorBuilder marks(h);
    for (NodeId x = v; x != kNoNode; x = heavy_[x]) {
      path.nodes.push_back(x);
      marks.set(tree.level(x) - 1);
    }
    path.depths = std::move(marks).build();
    path.light_prefix.push_back(0);
    for (NodeId x : path.nodes) {
      for (NodeId c : tree.children(x)) {
        if (c != heavy_[x]) path.light_children.push_back(c);
      }
      path.light_prefix.push_back(static_cast<std::uint32_t>(path.light_children.size()));
    }
    const auto id = static_cast<std::uint32_t>(paths_.size());
    const std::uint32_t light = v == root_ ? 0 : light_depth_[tree.parent(v)] + 1;
    for (NodeId x : path.nodes) {
      path_of_[x] = id;
      light_depth_[x] = light;
    }
    paths_.push_back(std::move(path));
  }
}

}  // namespace cattree
