#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cattree/corpus.hpp"
#include "cattree/query.hpp"

namespace cattree {

// Brute-force reference: naive substring scans over the raw documents and an
// ancestor table filled by walking parent pointers. Shares nothing with the
// engines beyond the corpus types.
class OracleIndex {
 public:
  OracleIndex(const Corpus& corpus, const CategoryTree& tree);

  Level height() const noexcept { return height_; }
  // anc(j, i): level-i ancestor of document j's leaf.
  NodeId anc(DocId j, Level i) const { return anc_[j - 1][i - 1]; }

  // Throws Error(InvalidLevel | InvalidPattern) like the engines.
  QueryResult query(std::string_view pattern, Level level) const;
  // Overlapping occurrences across all documents.
  std::uint64_t count(std::string_view pattern) const;

  static std::uint64_t count_in(std::string_view text, std::string_view pattern);
  // 1-based starting positions in lexicographic suffix order.
  static std::vector<std::uint32_t> suffix_array(std::string_view text);

 private:
  std::vector<std::string> documents_;
  std::vector<std::vector<NodeId>> anc_;
  Level height_ = 0;
};

}  // namespace cattree
