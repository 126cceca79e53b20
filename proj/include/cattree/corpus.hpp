#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cattree/serialize.hpp"

namespace cattree {

using NodeId = std::uint32_t;
using DocId = std::uint32_t;  // 1-based; 0 marks a separator suffix
using Level = std::uint32_t;  // root is level 1

inline constexpr char kSeparator = '\0';
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

// Document collection over the byte alphabet [1..sigma]. The concatenation
// terminates every document, including the last, with the separator byte 0.
class Corpus {
 public:
  // Throws Error(EmptyCorpus | EmptyDocument | InvalidSymbol).
  explicit Corpus(std::vector<std::string> documents, std::optional<std::uint32_t> sigma = std::nullopt);

  std::size_t doc_count() const noexcept { return documents_.size(); }
  const std::string& document(DocId j) const { return documents_.at(j - 1); }
  const std::vector<std::string>& documents() const noexcept { return documents_; }
  std::uint32_t sigma() const noexcept { return sigma_; }
  const std::string& concat() const noexcept { return concat_; }
  std::size_t n() const noexcept { return concat_.size() - documents_.size(); }
  std::size_t n_prime() const noexcept { return concat_.size(); }

 private:
  std::vector<std::string> documents_;
  std::uint32_t sigma_ = 0;
  std::string concat_;
};

// Rooted category tree whose D leaves all sit at level h; leaf j (1-based)
// belongs to document j.
class CategoryTree {
 public:
  CategoryTree() = default;

  // parents[v] is kNoNode for the root. Validates the shape and throws
  // Error(MultipleRoots | CyclicTree | RaggedLeaves | LeafCountMismatch |
  // MalformedTree).
  CategoryTree(std::vector<NodeId> parents, std::vector<NodeId> leaves, std::size_t doc_count);

  std::size_t node_count() const noexcept { return parent_.size(); }
  std::size_t doc_count() const noexcept { return leaves_.size(); }
  Level height() const noexcept { return height_; }
  NodeId root() const noexcept { return root_; }

  NodeId parent(NodeId v) const noexcept { return parent_[v]; }
  Level level(NodeId v) const noexcept { return level_[v]; }
  std::span<const NodeId> children(NodeId v) const noexcept {
    return {child_list_.data() + child_begin_[v], child_list_.data() + child_begin_[v + 1]};
  }
  bool is_leaf(NodeId v) const noexcept { return child_begin_[v] == child_begin_[v + 1]; }

  std::span<const NodeId> leaves() const noexcept { return leaves_; }
  NodeId leaf_of(DocId j) const noexcept { return leaves_[j - 1]; }
  const std::vector<NodeId>& parents() const noexcept { return parent_; }

  // Dense rank of v among the nodes of its level, in node-id order.
  std::uint32_t level_rank(NodeId v) const noexcept { return level_rank_[v]; }
  std::size_t level_size(Level l) const noexcept { return level_size_[l]; }
  std::size_t max_level_size() const noexcept;

  void save(BinaryWriter& out) const;
  static CategoryTree load(BinaryReader& in);

 private:
  std::vector<NodeId> parent_;
  std::vector<NodeId> leaves_;
  std::vector<Level> level_;
  std::vector<std::uint32_t> child_begin_;
  std::vector<NodeId> child_list_;
  std::vector<std::uint32_t> level_rank_;
  std::vector<std::size_t> level_size_;  // indexed by level, [0] unused
  Level height_ = 0;
  NodeId root_ = kNoNode;
};

// Manifest: {"sigma": optional int, "documents": [{"id": int, "path": str} |
// {"id": int, "text": str}, ...]} with ids 1..D; paths are relative to the
// manifest's directory.
Corpus load_corpus(const std::filesystem::path& manifest);
Corpus parse_manifest(std::string_view json_text, const std::filesystem::path& base_dir = {});

// Tree file: {"nodes": [{"id": int, "parent": int|null}, ...], "leaves": [...]}.
CategoryTree load_tree(const std::filesystem::path& tree_file, const Corpus& corpus);
CategoryTree parse_tree(std::string_view json_text, std::size_t doc_count);

std::string manifest_json(const Corpus& corpus);
std::string tree_json(const CategoryTree& tree);

}  // namespace cattree
