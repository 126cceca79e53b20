#include "cattree/colored_engine.hpp"

#include <algorithm>
#include <cmath>

#include "cattree/error.hpp"

namespace cattree {

std::uint32_t ColoredEngine::default_alpha(DocArrayMode mode, Level height, std::uint32_t sigma) noexcept {
  if (mode == DocArrayMode::Stored) return 1;
  const double log_sigma = std::max(1.0, std::log2(static_cast<double>(std::max<std::uint32_t>(sigma, 2))));
  return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::ceil(height / log_sigma)));
}

std::vector<std::uint64_t> ColoredEngine::previous_occurrences(const IndexCore& core,
                                                               std::span<const DocId> doc_array, Level level) {
  const auto& tree = core.tree;
  const std::size_t colors = tree.level_size(level);
  // Separator rows share one extra color that is never reported.
  std::vector<std::uint64_t> last(colors + 1, 0);
  std::vector<std::uint64_t> prev(doc_array.size());
  for (std::size_t row = 1; row <= doc_array.size(); ++row) {
    const DocId doc = doc_array[row - 1];
    std::size_t color = colors;
    if (doc != 0) color = tree.level_rank(core.ancestors.laq_unchecked(tree.leaf_of(doc), level));
    prev[row - 1] = last[color];
    last[color] = row;
  }
  return prev;
}

ColoredEngine::ColoredEngine(std::shared_ptr<const IndexCore> core, std::span<const DocId> doc_array,
                             std::uint32_t alpha)
    : Engine(std::move(core)), alpha_(alpha) {
  if (alpha_ < 1) throw Error(Errc::InvalidAlpha, "alpha must be at least 1");
  const Level h = core_->tree.height();
  reporters_.reserve(h);
  for (Level level = 1; level <= h; ++level) {
    auto prev = previous_occurrences(*core_, doc_array, level);
    if (alpha_ > 1) {
      std::vector<std::uint64_t> minima((prev.size() + alpha_ - 1) / alpha_);
      for (std::size_t b = 0; b < minima.size(); ++b) {
        const auto first = prev.begin() + b * alpha_;
        const auto last = prev.begin() + std::min(prev.size(), (b + 1) * alpha_);
        minima[b] = *std::min_element(first, last);
      }
      prev = std::move(minima);
    }
    reporters_.emplace_back(prev);
  }
}

ColoredEngine::ColoredEngine(std::shared_ptr<const IndexCore> core, std::uint32_t alpha, std::vector<Rmq> reporters)
    : Engine(std::move(core)), alpha_(alpha), reporters_(std::move(reporters)) {}

std::string ColoredEngine::label() const {
  return std::string("colored(alpha=") + std::to_string(alpha_) +
         (core_->docs.mode() == DocArrayMode::Compact ? ",compact)" : ")");
}

void ColoredEngine::report(SuffixInterval rows, Level level, QueryContext& ctx, std::vector<NodeId>& out) const {
  const IndexCore& core = *core_;
  const Rmq& rmq = reporters_[level - 1];
  const std::size_t n = core.n_prime();
  const std::size_t l = std::max<std::size_t>(rows.first, 1);
  const std::size_t r = std::min(rows.last, n);
  if (l > r) return;
  ctx.scratch.ensure(core.tree.max_level_size());

  auto visit = [&](std::size_t row) {
    ++ctx.stats.array_accesses;
    const NodeId node = core.ancestor_at(row, level, &ctx.stats);
    if (node == kNoNode) return;
    if (ctx.scratch.test_and_set(core.tree.level_rank(node))) out.push_back(node);
  };
  auto scan = [&](std::size_t first, std::size_t last) {
    for (std::size_t row = first; row <= last; ++row) visit(row);
  };

  // Blocks (0-based) fully inside [l..r].
  const std::size_t a = alpha_;
  const std::size_t first_full = (l - 1 + a - 1) / a;
  const std::size_t last_full_end = r == n ? (n + a - 1) / a : r / a;  // one past the last full block
  if (first_full >= last_full_end) {
    scan(l, r);
  } else {
    scan(l, first_full * a);
    std::vector<std::pair<std::size_t, std::size_t>> pending{{first_full, last_full_end - 1}};
    while (!pending.empty()) {
      const auto [lo, hi] = pending.back();
      pending.pop_back();
      ++ctx.stats.rmq_calls;
      const std::size_t m = rmq.query(lo + 1, hi + 1) - 1;
      if (rmq.value(m + 1) >= l) continue;
      scan(m * a + 1, std::min(n, (m + 1) * a));
      if (m + 1 <= hi) pending.emplace_back(m + 1, hi);
      if (m > lo) pending.emplace_back(lo, m - 1);
    }
    scan(std::min(n, (last_full_end)*a) + 1, r);
  }
  ctx.scratch.reset();
}

SpaceReport ColoredEngine::space() const {
  SpaceReport report;
  const std::uint64_t np = core_->n_prime();
  for (std::size_t k = 0; k < reporters_.size(); ++k) {
    report.push_back({"colored reporter level " + std::to_string(k + 1) + " (" +
                          std::to_string(reporters_[k].size()) + " cells)",
                      reporters_[k].size_in_bits(),
                      alpha_ == 1 ? "2n'+o(n') [prev stored: O(n' log n')]"
                                  : "O(n'/alpha) = " + std::to_string(np / alpha_) + " cells"});
  }
  return report;
}

void ColoredEngine::save(BinaryWriter& out) const {
  out.u32(alpha_);
  out.u64(reporters_.size());
  for (const auto& rmq : reporters_) rmq.save(out);
}

std::unique_ptr<ColoredEngine> ColoredEngine::load(std::shared_ptr<const IndexCore> core, BinaryReader& in) {
  const std::uint32_t alpha = in.u32();
  const std::uint64_t levels = in.u64();
  if (alpha == 0 || levels != core->tree.height()) BinaryReader::fail("colored engine header");
  const std::size_t cells = (core->n_prime() + alpha - 1) / alpha;
  std::vector<Rmq> reporters;
  for (std::uint64_t k = 0; k < levels; ++k) {
    reporters.push_back(Rmq::load(in));
    if (reporters.back().size() != cells) BinaryReader::fail("colored reporter length");
  }
  return std::unique_ptr<ColoredEngine>(new ColoredEngine(std::move(core), alpha, std::move(reporters)));
}

}  // namespace cattree
