#pragma once

#include <span>
#include <vector>

#include "cattree/engine.hpp"
#include "cattree/heavy_path.hpp"
#include "cattree/wavelet_tree.hpp"

namespace cattree {

// Wavelet tree shaped like the category tree with unary chains contracted.
//
// Documents become symbols by their left-to-right leaf rank (children
// ordered by smallest document id below them), so every subtree covers a
// contiguous symbol interval. A contracted chain is represented by its
// lowest node and keeps that node's level as its depth. A query walks down
// from the root and stops at the first node whose depth reaches the
// queried level, reporting that node's level-i ancestor.
class ShapedWaveletEngine final : public Engine {
 public:
  ShapedWaveletEngine(std::shared_ptr<const IndexCore> core, std::span<const DocId> doc_array);

  EngineKind kind() const noexcept override { return EngineKind::Wavelet; }
  void report(SuffixInterval rows, Level level, QueryContext& ctx, std::vector<NodeId>& out) const override;

  const WaveletTree& wavelet() const noexcept { return wavelet_; }
  // Tree node represented by a shape node and its stored depth.
  NodeId original(std::uint32_t shape_node) const noexcept { return original_[shape_node]; }
  Level depth(std::uint32_t shape_node) const noexcept { return core_->tree.level(original_[shape_node]); }
  // Most internal (branching) shape nodes on any root-to-leaf path.
  std::uint32_t branching_depth() const noexcept;
  // Largest child count of a shape node.
  std::size_t max_degree() const noexcept;

  SpaceReport space() const override;
  void save(BinaryWriter& out) const override;
  static std::unique_ptr<ShapedWaveletEngine> load(std::shared_ptr<const IndexCore> core, BinaryReader& in);

 private:
  ShapedWaveletEngine(std::shared_ptr<const IndexCore> core, WaveletTree wavelet, std::vector<NodeId> original);

  WaveletTree wavelet_;
  std::vector<NodeId> original_;  // shape node -> lowest tree node of its chain
};

// Heavy-path variant: one balanced wavelet tree per heavy path over the
// light children hanging from it (ordered by increasing depth), plus one
// extra trailing symbol for documents at the path's own leaf. A level-i
// query confines each path's traversal to the light children at depth <= i:
// those at depth i are reported, shallower ones recurse into their own
// path, and the path's own level-i node is reported when some element
// falls outside that alphabet prefix.
class HeavyPathEngine final : public Engine {
 public:
  HeavyPathEngine(std::shared_ptr<const IndexCore> core, std::span<const DocId> doc_array);

  EngineKind kind() const noexcept override { return EngineKind::Heavy; }
  // The O(t log^2 D) variant; the Huffman-shaped O(t log D) one is not built.
  std::string label() const override { return "heavy(t*log^2 D)"; }
  void report(SuffixInterval rows, Level level, QueryContext& ctx, std::vector<NodeId>& out) const override;

  const HeavyPathDecomposition& decomposition() const noexcept { return paths_; }
  const WaveletTree& sequence(std::uint32_t path) const noexcept { return sequences_[path]; }
  // Sum of path sequence lengths.
  std::uint64_t total_sequence_length() const noexcept;

  SpaceReport space() const override;
  void save(BinaryWriter& out) const override;
  static std::unique_ptr<HeavyPathEngine> load(std::shared_ptr<const IndexCore> core, BinaryReader& in);

 private:
  HeavyPathEngine(std::shared_ptr<const IndexCore> core, std::vector<WaveletTree> sequences);

  HeavyPathDecomposition paths_;
  std::vector<WaveletTree> sequences_;  // per path id
};

}  // namespace cattree
