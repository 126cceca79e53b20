#include "cattree/wavelet_tree.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "cattree/error.hpp"
#include "cattree/packed_vector.hpp"

namespace cattree {

WaveletShape WaveletShape::balanced(Symbol lo, Symbol hi) {
  if (lo > hi) throw std::invalid_argument("empty alphabet interval");
  WaveletShape shape;
  shape.nodes.push_back({lo, hi, {}});
  if (lo == hi) return shape;
  for (Symbol c = lo;; ++c) {
    shape.nodes[0].children.push_back(static_cast<std::uint32_t>(shape.nodes.size()));
    shape.nodes.push_back({c, c, {}});
    if (c == hi) break;
  }
  return shape;
}

void WaveletShape::validate() const {
  if (nodes.empty()) throw std::invalid_argument("wavelet shape has no root");
  std::vector<char> seen(nodes.size(), 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const auto& node = nodes[stack.back()];
    stack.pop_back();
    if (node.lo > node.hi) throw std::invalid_argument("inverted shape interval");
    if (node.children.empty()) {
      if (node.lo != node.hi) throw std::invalid_argument("shape leaves must be singleton intervals");
      continue;
    }
    Symbol next = node.lo;
    for (auto child : node.children) {
      if (child >= nodes.size() || seen[child]) throw std::invalid_argument("shape is not a tree");
      seen[child] = 1;
      if (nodes[child].lo != next) throw std::invalid_argument("children do not partition the parent interval");
      next = nodes[child].hi + 1;
      stack.push_back(child);
    }
    if (next - 1 != node.hi) throw std::invalid_argument("children do not cover the parent interval");
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw std::invalid_argument("shape has unreachable nodes");
  }
}

WaveletTree::WaveletTree(std::span<const Symbol> seq, WaveletShape shape) : shape_(std::move(shape)), size_(seq.size()) {
  shape_.validate();
  const auto& root = shape_.nodes[0];
  for (Symbol c : seq) {
    if (c < root.lo || c > root.hi) {
      throw Error(Errc::InvalidSymbol, "symbol " + std::to_string(c) + " outside the shape's alphabet");
    }
  }
  local_root_.assign(shape_.nodes.size(), kNone);
  build(0, std::vector<Symbol>(seq.begin(), seq.end()));
}

std::size_t WaveletTree::child_index(std::uint32_t node, Symbol c) const noexcept {
  const auto& children = shape_.nodes[node].children;
  auto it = std::upper_bound(children.begin(), children.end(), c,
                             [&](Symbol v, std::uint32_t child) { return v < shape_.nodes[child].lo; });
  return static_cast<std::size_t>(it - children.begin()) - 1;
}

void WaveletTree::build(std::uint32_t node, std::vector<Symbol> seq) {
  const auto& children = shape_.nodes[node].children;
  if (children.empty()) return;
  if (children.size() == 1) {
    build(children[0], std::move(seq));
    return;
  }
  std::vector<std::uint32_t> child_of(seq.size());
  for (std::size_t k = 0; k < seq.size(); ++k) child_of[k] = static_cast<std::uint32_t>(child_index(node, seq[k]));
  local_root_[node] = build_local(node, 0, children.size(), std::move(seq), std::move(child_of));
}

std::uint32_t WaveletTree::build_local(std::uint32_t node, std::size_t first, std::size_t last,
                                       std::vector<Symbol> seq, std::vector<std::uint32_t> child_of) {
  const auto& children = shape_.nodes[node].children;
  const std::size_t mid = first + (last - first + 1) / 2;
  const auto index = static_cast<std::uint32_t>(binary_.size());
  binary_.emplace_back();

  BitVectorBuilder bits;
  std::vector<Symbol> seq_side[2];
  std::vector<std::uint32_t> child_side[2];
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const bool right = child_of[k] >= mid;
    bits.push_back(right);
    seq_side[right].push_back(seq[k]);
    child_side[right].push_back(child_of[k]);
  }
  seq.clear();
  seq.shrink_to_fit();
  child_of.clear();
  child_of.shrink_to_fit();

  std::uint32_t links[2];
  const std::size_t ranges[2][2] = {{first, mid}, {mid, last}};
  for (int side = 0; side < 2; ++side) {
    const auto [lo, hi] = ranges[side];
    if (hi - lo == 1) {
      links[side] = children[lo] | kShapeFlag;
      build(children[lo], std::move(seq_side[side]));
    } else {
      links[side] = build_local(node, lo, hi, std::move(seq_side[side]), std::move(child_side[side]));
    }
  }
  BinaryNode& out = binary_[index];
  out.bits = std::move(bits).build();
  out.split = shape_.nodes[children[mid]].lo;
  out.child[0] = links[0];
  out.child[1] = links[1];
  return index;
}

void WaveletTree::check_symbol(Symbol c) const {
  if (shape_.nodes.empty() || c < shape_.nodes[0].lo || c > shape_.nodes[0].hi) {
    throw std::invalid_argument("symbol " + std::to_string(c) + " not in the wavelet tree alphabet");
  }
}

std::size_t WaveletTree::rank_unchecked(Symbol c, std::size_t i) const noexcept {
  std::uint32_t node = 0;
  for (;;) {
    const auto& children = shape_.nodes[node].children;
    if (children.empty()) return i;
    if (children.size() == 1) {
      node = children[0];
      continue;
    }
    std::uint32_t link = local_root_[node];
    while (!(link & kShapeFlag)) {
      const BinaryNode& bn = binary_[link];
      const bool bit = c >= bn.split;
      i = bn.bits.rank(bit, i);
      link = bn.child[bit];
    }
    node = link & ~kShapeFlag;
  }
}

std::size_t WaveletTree::rank(Symbol c, std::size_t i) const {
  check_symbol(c);
  if (i > size_) throw std::out_of_range("rank position " + std::to_string(i) + " out of range");
  return rank_unchecked(c, i);
}

std::pair<Symbol, std::size_t> WaveletTree::access_rank(std::size_t i) const noexcept {
  std::uint32_t node = 0;
  for (;;) {
    const auto& children = shape_.nodes[node].children;
    if (children.empty()) return {shape_.nodes[node].lo, i};
    if (children.size() == 1) {
      node = children[0];
      continue;
    }
    std::uint32_t link = local_root_[node];
    while (!(link & kShapeFlag)) {
      const BinaryNode& bn = binary_[link];
      const bool bit = bn.bits.get(i);
      i = bn.bits.rank(bit, i);
      link = bn.child[bit];
    }
    node = link & ~kShapeFlag;
  }
}

Symbol WaveletTree::access(std::size_t i) const {
  if (i == 0 || i > size_) throw std::out_of_range("access position " + std::to_string(i) + " out of range");
  return access_rank(i - 1).first;
}

std::size_t WaveletTree::select(Symbol c, std::size_t j) const {
  check_symbol(c);
  std::vector<std::pair<const BinaryNode*, bool>> path;
  std::size_t count = size_;
  std::uint32_t node = 0;
  for (;;) {
    const auto& children = shape_.nodes[node].children;
    if (children.empty()) break;
    if (children.size() == 1) {
      node = children[0];
      continue;
    }
    std::uint32_t link = local_root_[node];
    while (!(link & kShapeFlag)) {
      const BinaryNode& bn = binary_[link];
      const bool bit = c >= bn.split;
      count = bn.bits.rank(bit, count);
      path.emplace_back(&bn, bit);
      link = bn.child[bit];
    }
    node = link & ~kShapeFlag;
  }
  if (j == 0 || j > count) throw std::out_of_range("select occurrence " + std::to_string(j) + " out of range");
  std::size_t pos = j;
  for (auto it = path.rbegin(); it != path.rend(); ++it) pos = it->first->bits.select(it->second, pos);
  return pos;
}

std::uint64_t WaveletTree::bitvector_bits() const noexcept {
  std::uint64_t bits = 0;
  for (const auto& node : binary_) bits += node.bits.size();
  return bits;
}

std::uint64_t WaveletTree::size_in_bits() const noexcept {
  std::uint64_t bits = 0;
  for (const auto& node : binary_) bits += node.bits.size_in_bits() + 3 * 32;
  for (const auto& node : shape_.nodes) bits += 2 * 32 + 32 * node.children.size();
  bits += 32ULL * local_root_.size();
  return bits;
}

void WaveletTree::save(BinaryWriter& out) const {
  // Shape plus the packed sequence; bitvectors are rebuilt on load, which
  // also re-establishes every structural invariant.
  out.u64(shape_.nodes.size());
  for (const auto& node : shape_.nodes) {
    out.u32(node.lo);
    out.u32(node.hi);
    out.vec(node.children);
  }
  std::vector<std::uint64_t> seq(size_);
  for (std::size_t i = 0; i < size_; ++i) seq[i] = access_rank(i).first;
  PackedVector::pack(seq).save(out);
}

WaveletTree WaveletTree::load(BinaryReader& in) {
  const std::uint64_t shape_nodes = in.u64();
  if (shape_nodes == 0 || shape_nodes > in.remaining()) BinaryReader::fail("wavelet shape size");
  WaveletShape shape;
  shape.nodes.resize(shape_nodes);
  for (auto& node : shape.nodes) {
    node.lo = in.u32();
    node.hi = in.u32();
    node.children = in.vec<std::uint32_t>();
  }
  try {
    shape.validate();
  } catch (const std::invalid_argument& e) {
    BinaryReader::fail(std::string("wavelet shape: ") + e.what());
  }
  const auto packed = PackedVector::load(in);
  std::vector<Symbol> seq(packed.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (packed[i] > std::numeric_limits<Symbol>::max()) BinaryReader::fail("wavelet symbol width");
    seq[i] = static_cast<Symbol>(packed[i]);
  }
  try {
    return WaveletTree(seq, std::move(shape));
  } catch (const Error& e) {
    BinaryReader::fail(std::string("wavelet sequence: ") + e.what());
  }
}

}  // namespace cattree
