#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cattree/corpus.hpp"
#include "cattree/level_ancestor.hpp"
#include "cattree/query.hpp"
#include "cattree/suffix_index.hpp"

namespace cattree {

enum class EngineKind : std::uint8_t { Colored = 0, Wavelet = 1, Heavy = 2 };

const char* engine_name(EngineKind kind) noexcept;
std::optional<EngineKind> parse_engine(std::string_view name) noexcept;

// One line of a space breakdown: measured bits and the bound it is
// compared against.
struct SpaceItem {
  std::string structure;
  std::uint64_t bits = 0;
  std::string target;
};
using SpaceReport = std::vector<SpaceItem>;

// Read-only state shared by every engine of an index.
struct IndexCore {
  CategoryTree tree;
  LevelAncestorIndex ancestors;
  SuffixIndex text;
  DocumentArray docs;
  std::uint64_t n = 0;  // total document length, separators excluded
  std::uint32_t sigma = 0;

  IndexCore(CategoryTree tree_, SuffixIndex text_, DocumentArray docs_, std::uint64_t n_, std::uint32_t sigma_);

  std::size_t n_prime() const noexcept { return text.size(); }
  std::size_t doc_count() const noexcept { return tree.doc_count(); }

  // laq(leafselect(A[row]), level), or kNoNode on a separator row.
  NodeId ancestor_at(std::size_t row, Level level, QueryStats* stats) const noexcept {
    const DocId doc = docs.at_unchecked(row, text, stats);
    if (doc == 0) return kNoNode;
    return ancestors.laq_unchecked(ancestors.leafselect_unchecked(doc), level);
  }

  SpaceReport space() const;
};

class Engine {
 public:
  explicit Engine(std::shared_ptr<const IndexCore> core) : core_(std::move(core)) {}
  virtual ~Engine() = default;

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  virtual EngineKind kind() const noexcept = 0;
  virtual std::string label() const { return engine_name(kind()); }

  // Categories at `level` holding a document that contains `pattern`.
  // Throws Error(InvalidLevel | InvalidPattern).
  QueryResult query(std::string_view pattern, Level level, QueryContext& ctx) const;

  // Appends the distinct level-`level` categories of the given rows to out
  // (unsorted). Rows must be nonempty and lie inside [1..n'].
  virtual void report(SuffixInterval rows, Level level, QueryContext& ctx, std::vector<NodeId>& out) const = 0;

  virtual SpaceReport space() const = 0;
  virtual void save(BinaryWriter& out) const = 0;

  const IndexCore& core() const noexcept { return *core_; }
  QueryContext make_context() const;

 protected:
  std::shared_ptr<const IndexCore> core_;
};

}  // namespace cattree
