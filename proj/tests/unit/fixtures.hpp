#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "cattree/corpus.hpp"

namespace fixtures {

using cattree::CategoryTree;
using cattree::Corpus;
using cattree::kNoNode;
using cattree::NodeId;

// Running example: docs ab, ba, aa, bb under r{u{l1,l2}, v{l3,l4}}.
inline constexpr NodeId r = 0, u = 1, v = 2, l1 = 3, l2 = 4, l3 = 5, l4 = 6;

inline Corpus running_corpus() { return Corpus({"ab", "ba", "aa", "bb"}); }
inline CategoryTree running_tree() { return CategoryTree({kNoNode, r, r, u, u, v, v}, {l1, l2, l3, l4}, 4); }

// Depth of v by walking parents (root = 1).
inline unsigned walk_level(const std::vector<NodeId>& parents, NodeId v) {
  unsigned l = 1;
  while (parents[v] != kNoNode) v = parents[v], ++l;
  return l;
}

inline NodeId walk_ancestor(const std::vector<NodeId>& parents, NodeId v, unsigned level) {
  unsigned l = walk_level(parents, v);
  while (l > level) v = parents[v], --l;
  return v;
}

// Brute force straight from the definition: scan documents, climb parents.
inline std::vector<NodeId> brute_query(const std::vector<std::string>& docs, const std::vector<NodeId>& parents,
                                       const std::vector<NodeId>& leaves, const std::string& p, unsigned level) {
  std::vector<NodeId> out;
  for (std::size_t j = 0; j < docs.size(); ++j) {
    if (docs[j].find(p) != std::string::npos) out.push_back(walk_ancestor(parents, leaves[j], level));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<NodeId> brute_query(const Corpus& c, const CategoryTree& t, const std::string& p, unsigned level) {
  return brute_query(c.documents(), t.parents(), {t.leaves().begin(), t.leaves().end()}, p, level);
}

}  // namespace fixtures
