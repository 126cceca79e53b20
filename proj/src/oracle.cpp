#include "cattree/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "cattree/error.hpp"

namespace cattree {

OracleIndex::OracleIndex(const Corpus& corpus, const CategoryTree& tree)
    : documents_(corpus.documents()), height_(tree.height()) {
  const auto& parents = tree.parents();
  for (NodeId leaf : tree.leaves()) {
    std::vector<NodeId> path;
    for (NodeId v = leaf; v != kNoNode; v = parents[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    anc_.push_back(std::move(path));
  }
}

QueryResult OracleIndex::query(std::string_view pattern, Level level) const {
  if (level < 1 || level > height_) throw Error(Errc::InvalidLevel, "level out of range");
  if (pattern.empty() || pattern.find(kSeparator) != std::string_view::npos) {
    throw Error(Errc::InvalidPattern, "pattern must be nonempty and separator-free");
  }
  QueryResult result;
  result.level = level;
  for (std::size_t j = 0; j < documents_.size(); ++j) {
    if (documents_[j].find(pattern) != std::string::npos) result.nodes.push_back(anc_[j][level - 1]);
  }
  std::sort(result.nodes.begin(), result.nodes.end());
  result.nodes.erase(std::unique(result.nodes.begin(), result.nodes.end()), result.nodes.end());
  return result;
}

std::uint64_t OracleIndex::count_in(std::string_view text, std::string_view pattern) {
  if (pattern.empty() || pattern.size() > text.size()) return 0;
  std::uint64_t c = 0;
  for (std::size_t i = 0; i + pattern.size() <= text.size(); ++i) {
    if (text.compare(i, pattern.size(), pattern) == 0) ++c;
  }
  return c;
}

std::uint64_t OracleIndex::count(std::string_view pattern) const {
  std::uint64_t c = 0;
  for (const auto& d : documents_) c += count_in(d, pattern);
  return c;
}

std::vector<std::uint32_t> OracleIndex::suffix_array(std::string_view text) {
  std::vector<std::uint32_t> sa(text.size());
  std::iota(sa.begin(), sa.end(), 1U);
  std::sort(sa.begin(), sa.end(), [&](std::uint32_t a, std::uint32_t b) {
    return text.substr(a - 1) < text.substr(b - 1);
  });
  return sa;
}

}  // namespace cattree
