#pragma once

#include <span>
#include <vector>

#include "cattree/engine.hpp"
#include "cattree/rmq.hpp"

namespace cattree {

// Per-level colored range reporting over the virtual arrays
// A_i[j] = laq(leafselect(A[j]), i).
//
// Each level keeps prev[j] (last earlier row with the same level-i
// ancestor, 0 if none) reduced to its minimum over blocks of alpha rows,
// with an Rmq over those block minima. With alpha = 1 the block minima are
// prev itself and a query is the classic recursion: a row is a first
// occurrence in [l..r] iff prev < l. With alpha > 1 each selected block is
// scanned in full, and the partial blocks at both ends are scanned directly,
// so a query reads at most alpha * (t + 2) cells of A_i.
class ColoredEngine final : public Engine {
 public:
  ColoredEngine(std::shared_ptr<const IndexCore> core, std::span<const DocId> doc_array, std::uint32_t alpha);

  // ceil(h / log2 sigma) for compact mode, 1 otherwise.
  static std::uint32_t default_alpha(DocArrayMode mode, Level height, std::uint32_t sigma) noexcept;

  EngineKind kind() const noexcept override { return EngineKind::Colored; }
  std::string label() const override;
  std::uint32_t alpha() const noexcept { return alpha_; }

  void report(SuffixInterval rows, Level level, QueryContext& ctx, std::vector<NodeId>& out) const override;

  // Cells indexed by the level's RMQ (ceil(n'/alpha)).
  std::size_t indexed_cells(Level level) const noexcept { return reporters_[level - 1].size(); }
  const Rmq& reporter(Level level) const noexcept { return reporters_[level - 1]; }

  // prev over A_i for one level (row-indexed, index 0 holds row 1).
  static std::vector<std::uint64_t> previous_occurrences(const IndexCore& core, std::span<const DocId> doc_array,
                                                         Level level);

  SpaceReport space() const override;
  void save(BinaryWriter& out) const override;
  static std::unique_ptr<ColoredEngine> load(std::shared_ptr<const IndexCore> core, BinaryReader& in);

 private:
  ColoredEngine(std::shared_ptr<const IndexCore> core, std::uint32_t alpha, std::vector<Rmq> reporters);

  std::uint32_t alpha_ = 1;
  std::vector<Rmq> reporters_;  // one per level, index level - 1
};

}  // namespace cattree
