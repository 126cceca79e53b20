#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "cattree/bit_vector.hpp"

namespace cattree {

using Symbol = std::uint32_t;

// Alphabet partition tree. Every node covers an interval [lo, hi]; the
// children of an internal node partition it into consecutive, ascending
// subintervals; leaves are singletons. nodes[0] is the root.
struct WaveletShape {
  struct Node {
    Symbol lo = 0;
    Symbol hi = 0;
    std::vector<std::uint32_t> children;
    friend bool operator==(const Node&, const Node&) = default;
  };

  std::vector<Node> nodes;

  // Root with one singleton leaf per symbol of [lo, hi] (a plain balanced
  // wavelet tree once binarized). A one-symbol interval is a lone leaf.
  static WaveletShape balanced(Symbol lo, Symbol hi);

  // Throws std::invalid_argument when the partition conditions fail.
  void validate() const;
};

// Wavelet tree with an arbitrary shape. A shape node with d >= 2 children
// stores its child-selector sequence as a local binary wavelet tree of
// ceil(log2 d) levels (balanced split of the children); unary shape nodes
// store nothing.
//
// Positions follow BitVector: rank takes a prefix length, select and access
// use 1-based positions.
class WaveletTree {
 public:
  static constexpr Symbol kNoBound = std::numeric_limits<Symbol>::max();

  WaveletTree() = default;
  WaveletTree(std::span<const Symbol> seq, WaveletShape shape);

  std::size_t size() const noexcept { return size_; }
  const WaveletShape& shape() const noexcept { return shape_; }

  Symbol access(std::size_t i) const;
  std::size_t rank(Symbol c, std::size_t i) const;
  std::size_t select(Symbol c, std::size_t j) const;

  // Symbol at 0-based index i together with its number of occurrences in
  // [0, i). One root-to-leaf descent.
  std::pair<Symbol, std::size_t> access_rank(std::size_t i) const noexcept;

  // Occurrences of c in the 0-based prefix [0, i), unchecked; c must be
  // covered by the shape.
  std::size_t rank_unchecked(Symbol c, std::size_t i) const noexcept;

  // Maps the half-open range [b, e) of shape node `node`'s subsequence onto
  // its children, calling fn(child, b', e') for each child whose range is
  // nonempty and whose interval starts at or below max_symbol. Returns the
  // number of bitvector nodes touched.
  template <typename Fn>
  std::size_t for_each_child(std::uint32_t node, std::size_t b, std::size_t e, Fn&& fn,
                             Symbol max_symbol = kNoBound) const {
    const auto& children = shape_.nodes[node].children;
    if (children.empty() || b >= e) return 0;
    if (children.size() == 1) {
      fn(children[0], b, e);
      return 0;
    }
    std::size_t visits = 0;
    descend(local_root_[node], b, e, fn, max_symbol, visits);
    return visits;
  }

  // Sum of bitvector lengths (raw sequence bits) and total footprint.
  std::uint64_t bitvector_bits() const noexcept;
  std::uint64_t size_in_bits() const noexcept;
  std::size_t binary_node_count() const noexcept { return binary_.size(); }

  void save(BinaryWriter& out) const;
  static WaveletTree load(BinaryReader& in);

 private:
  static constexpr std::uint32_t kShapeFlag = 1U << 31;
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  struct BinaryNode {
    BitVector bits;
    Symbol split = 0;  // smallest symbol routed to child[1]
    std::uint32_t child[2] = {0, 0};  // binary node index, or shape index | kShapeFlag
  };

  template <typename Fn>
  void descend(std::uint32_t link, std::size_t b, std::size_t e, Fn& fn, Symbol max_symbol,
               std::size_t& visits) const {
    if (link & kShapeFlag) {
      fn(link & ~kShapeFlag, b, e);
      return;
    }
    const BinaryNode& node = binary_[link];
    ++visits;
    const std::size_t b0 = node.bits.rank0(b), e0 = node.bits.rank0(e);
    if (e0 > b0) descend(node.child[0], b0, e0, fn, max_symbol, visits);
    if (node.split <= max_symbol) {
      const std::size_t b1 = b - b0, e1 = e - e0;
      if (e1 > b1) descend(node.child[1], b1, e1, fn, max_symbol, visits);
    }
  }

  void build(std::uint32_t node, std::vector<Symbol> seq);
  std::uint32_t build_local(std::uint32_t node, std::size_t first, std::size_t last, std::vector<Symbol> seq,
                            std::vector<std::uint32_t> child_of);
  std::size_t child_index(std::uint32_t node, Symbol c) const noexcept;
  void check_symbol(Symbol c) const;

  WaveletShape shape_;
  std::vector<std::uint32_t> local_root_;
  std::vector<BinaryNode> binary_;
  std::size_t size_ = 0;
};

}  // namespace cattree
