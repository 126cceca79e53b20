#include "cattree/engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "cattree/error.hpp"

namespace cattree {

const char* engine_name(EngineKind kind) noexcept {
  switch (kind) {
    case EngineKind::Colored: return "colored";
    case EngineKind::Wavelet: return "wavelet";
    case EngineKind::Heavy: return "heavy";
  }
  return "unknown";
}

std::optional<EngineKind> parse_engine(std::string_view name) noexcept {
  if (name == "colored") return EngineKind::Colored;
  if (name == "wavelet") return EngineKind::Wavelet;
  if (name == "heavy") return EngineKind::Heavy;
  return std::nullopt;
}

IndexCore::IndexCore(CategoryTree tree_, SuffixIndex text_, DocumentArray docs_, std::uint64_t n_,
                     std::uint32_t sigma_)
    : tree(std::move(tree_)),
      ancestors(tree),
      text(std::move(text_)),
      docs(std::move(docs_)),
      n(n_),
      sigma(sigma_) {}

SpaceReport IndexCore::space() const {
  const std::uint64_t np = n_prime();
  const std::uint64_t log_d = std::bit_width(static_cast<std::uint64_t>(doc_count()));  // ceil(log2(D + 1))
  const double log_sigma = std::log2(std::max<double>(2.0, static_cast<double>(text.alphabet_size())));
  SpaceReport report;
  report.push_back({"text index: bwt wavelet tree", text.occ_bits(),
                    "n*log(sigma)*(1+o(1)) ~ " + std::to_string(static_cast<std::uint64_t>(np * log_sigma))});
  report.push_back({"text index: sa samples (rate " + std::to_string(text.sample_rate()) + ")", text.sample_bits(),
                    "O(n log sigma)"});
  report.push_back({"text index: symbol tables", text.table_bits(), "O(sigma log n)"});
  report.push_back({"document array (stored)", docs.stored_bits(), "n*ceil(log D) ~ " + std::to_string(np * log_d)});
  report.push_back({"document array: separator bitmap", docs.separators().size_in_bits(), "n'+o(n')"});
  report.push_back({"level ancestor (binary lifting)", ancestors.size_in_bits(), "2*Delta+o(Delta)"});
  return report;
}

QueryResult Engine::query(std::string_view pattern, Level level, QueryContext& ctx) const {
  if (level < 1 || level > core_->tree.height()) {
    throw Error(Errc::InvalidLevel, "level " + std::to_string(level) + " outside [1.." +
                                        std::to_string(core_->tree.height()) + "]");
  }
  QueryResult result;
  result.level = level;
  const SuffixInterval rows = core_->text.count(pattern);
  if (rows.empty()) return result;
  report(rows, level, ctx, result.nodes);
  std::sort(result.nodes.begin(), result.nodes.end());
  return result;
}

QueryContext Engine::make_context() const {
  QueryContext ctx;
  ctx.scratch.ensure(core_->tree.max_level_size());
  return ctx;
}

}  // namespace cattree
