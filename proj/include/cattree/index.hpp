#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cattree/colored_engine.hpp"
#include "cattree/engine.hpp"
#include "cattree/wavelet_engines.hpp"

namespace cattree {

struct BuildOptions {
  std::vector<EngineKind> engines{EngineKind::Colored};
  std::optional<std::uint32_t> alpha;  // colored engine; default per doc-array mode
  std::size_t sample_rate = 0;         // 0: SuffixIndex::default_sample_rate
  DocArrayMode doc_mode = DocArrayMode::Stored;
};

// A built categorical retrieval index: shared text/tree structures plus any
// subset of the three engines.
//
// On-disk container (little-endian):
//   "CTIX" | u32 version | u32 engine mask | u32 section count |
//   per section: u64 name length, name bytes, u64 offset, u64 length, u64 FNV-1a |
//   section payloads at their offsets.
// Sections: "meta", "tree", "text", "docs", and one per engine
// ("engine.colored", "engine.wavelet", "engine.heavy").
class CategoricalIndex {
 public:
  static constexpr std::uint32_t kFormatVersion = 1;

  static CategoricalIndex build(const Corpus& corpus, const CategoryTree& tree, const BuildOptions& options);

  bool has(EngineKind kind) const noexcept { return engines_.count(kind) != 0; }
  // Throws Error(EngineUnavailable).
  const Engine& engine(EngineKind kind) const;
  std::vector<EngineKind> engines() const;
  const IndexCore& core() const noexcept { return *core_; }

  QueryResult query(EngineKind kind, std::string_view pattern, Level level, QueryContext& ctx) const {
    return engine(kind).query(pattern, level, ctx);
  }
  QueryContext make_context() const;

  SpaceReport space() const;

  std::string serialize() const;
  // Throws Error(MalformedIndex) on any structural or checksum failure.
  static CategoricalIndex deserialize(std::string_view bytes);
  void save(const std::filesystem::path& path) const;
  static CategoricalIndex load(const std::filesystem::path& path);

 private:
  std::shared_ptr<const IndexCore> core_;
  std::map<EngineKind, std::unique_ptr<Engine>> engines_;
};

}  // namespace cattree
