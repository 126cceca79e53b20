#include "cattree/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cattree/error.hpp"
#include "json.hpp"

namespace cattree {

using nlohmann::json;

Corpus::Corpus(std::vector<std::string> documents, std::optional<std::uint32_t> sigma)
    : documents_(std::move(documents)) {
  if (documents_.empty()) throw Error(Errc::EmptyCorpus, "corpus has no documents");
  std::uint32_t max_byte = 0;
  std::size_t total = 0;
  for (std::size_t j = 0; j < documents_.size(); ++j) {
    const auto& doc = documents_[j];
    if (doc.empty()) throw Error(Errc::EmptyDocument, "document " + std::to_string(j + 1) + " is empty");
    for (unsigned char c : doc) {
      if (c == 0) throw Error(Errc::InvalidSymbol, "document " + std::to_string(j + 1) + " contains byte 0");
      max_byte = std::max<std::uint32_t>(max_byte, c);
    }
    total += doc.size() + 1;
  }
  if (sigma) {
    if (*sigma < max_byte || *sigma > 255) {
      throw Error(Errc::InvalidSymbol, "declared sigma " + std::to_string(*sigma) + " does not cover byte " +
                                           std::to_string(max_byte));
    }
    sigma_ = *sigma;
  } else {
    sigma_ = max_byte;
  }
  concat_.reserve(total);
  for (const auto& doc : documents_) {
    concat_ += doc;
    concat_.push_back(kSeparator);
  }
}

CategoryTree::CategoryTree(std::vector<NodeId> parents, std::vector<NodeId> leaves, std::size_t doc_count)
    : parent_(std::move(parents)), leaves_(std::move(leaves)) {
  const std::size_t count = parent_.size();
  if (count == 0) throw Error(Errc::MalformedTree, "tree has no nodes");
  for (NodeId v = 0; v < count; ++v) {
    if (parent_[v] == kNoNode) {
      if (root_ != kNoNode) throw Error(Errc::MultipleRoots, "nodes " + std::to_string(root_) + " and " +
                                                                 std::to_string(v) + " both lack a parent");
      root_ = v;
    } else if (parent_[v] >= count) {
      throw Error(Errc::MalformedTree, "node " + std::to_string(v) + " has unknown parent");
    }
  }
  if (root_ == kNoNode) throw Error(Errc::CyclicTree, "no root: every node has a parent");

  child_begin_.assign(count + 1, 0);
  for (NodeId v = 0; v < count; ++v) {
    if (v != root_) ++child_begin_[parent_[v] + 1];
  }
  for (std::size_t v = 0; v < count; ++v) child_begin_[v + 1] += child_begin_[v];
  child_list_.resize(count - 1);
  {
    auto fill = child_begin_;
    for (NodeId v = 0; v < count; ++v) {
      if (v != root_) child_list_[fill[parent_[v]]++] = v;
    }
  }

  level_.assign(count, 0);
  level_[root_] = 1;
  std::vector<NodeId> order{root_};
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (NodeId c : children(order[k])) {
      level_[c] = level_[order[k]] + 1;
      order.push_back(c);
    }
  }
  if (order.size() != count) throw Error(Errc::CyclicTree, "nodes unreachable from the root form a cycle");

  height_ = *std::max_element(level_.begin(), level_.end());
  std::size_t leaf_total = 0;
  for (NodeId v = 0; v < count; ++v) {
    if (!is_leaf(v)) continue;
    ++leaf_total;
    if (level_[v] != height_) {
      throw Error(Errc::RaggedLeaves, "leaf " + std::to_string(v) + " at level " + std::to_string(level_[v]) +
                                          ", expected " + std::to_string(height_));
    }
  }
  if (leaf_total != doc_count || leaves_.size() != doc_count) {
    throw Error(Errc::LeafCountMismatch, "tree has " + std::to_string(leaf_total) + " leaves and lists " +
                                             std::to_string(leaves_.size()) + " for " + std::to_string(doc_count) +
                                             " documents");
  }
  std::vector<char> used(count, 0);
  for (NodeId leaf : leaves_) {
    if (leaf >= count || !is_leaf(leaf) || used[leaf]) {
      throw Error(Errc::MalformedTree, "leaves list is not a bijection onto the leaf nodes");
    }
    used[leaf] = 1;
  }

  level_size_.assign(height_ + 1, 0);
  level_rank_.resize(count);
  for (NodeId v = 0; v < count; ++v) level_rank_[v] = static_cast<std::uint32_t>(level_size_[level_[v]]++);
}

std::size_t CategoryTree::max_level_size() const noexcept {
  return *std::max_element(level_size_.begin(), level_size_.end());
}

void CategoryTree::save(BinaryWriter& out) const {
  out.vec(parent_);
  out.vec(leaves_);
}

CategoryTree CategoryTree::load(BinaryReader& in) {
  auto parents = in.vec<NodeId>();
  auto leaves = in.vec<NodeId>();
  try {
    const std::size_t docs = leaves.size();
    return CategoryTree(std::move(parents), std::move(leaves), docs);
  } catch (const Error& e) {
    BinaryReader::fail(std::string("category tree: ") + e.what());
  }
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MissingFile, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json(std::string_view text, Errc code) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(code, e.what());
  }
}

}  // namespace

Corpus parse_manifest(std::string_view json_text, const std::filesystem::path& base_dir) {
  const json doc = parse_json(json_text, Errc::MalformedManifest);
  try {
    if (!doc.is_object() || !doc.contains("documents") || !doc["documents"].is_array()) {
      throw Error(Errc::MalformedManifest, "manifest needs a \"documents\" array");
    }
    const auto& entries = doc["documents"];
    if (entries.empty()) throw Error(Errc::EmptyCorpus, "manifest lists no documents");
    std::vector<std::string> texts(entries.size());
    std::vector<char> filled(entries.size(), 0);
    for (const auto& entry : entries) {
      const auto id = entry.at("id").get<std::int64_t>();
      if (id < 1 || id > static_cast<std::int64_t>(entries.size()) || filled[id - 1]) {
        throw Error(Errc::MalformedManifest, "document ids must be 1..D without gaps or repeats");
      }
      filled[id - 1] = 1;
      if (entry.contains("text")) {
        texts[id - 1] = entry["text"].get<std::string>();
      } else if (entry.contains("path")) {
        texts[id - 1] = read_file(base_dir / entry["path"].get<std::string>());
      } else {
        throw Error(Errc::MalformedManifest, "document " + std::to_string(id) + " has neither text nor path");
      }
    }
    std::optional<std::uint32_t> sigma;
    if (doc.contains("sigma") && !doc["sigma"].is_null()) sigma = doc["sigma"].get<std::uint32_t>();
    return Corpus(std::move(texts), sigma);
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedManifest, e.what());
  }
}

Corpus load_corpus(const std::filesystem::path& manifest) {
  return parse_manifest(read_file(manifest), manifest.parent_path());
}

CategoryTree parse_tree(std::string_view json_text, std::size_t doc_count) {
  const json doc = parse_json(json_text, Errc::MalformedTree);
  try {
    const auto& nodes = doc.at("nodes");
    std::vector<NodeId> parents(nodes.size(), kNoNode);
    std::vector<char> seen(nodes.size(), 0);
    for (const auto& node : nodes) {
      const auto id = node.at("id").get<std::int64_t>();
      if (id < 0 || id >= static_cast<std::int64_t>(nodes.size()) || seen[id]) {
        throw Error(Errc::MalformedTree, "node ids must be dense 0..N-1 without repeats");
      }
      seen[id] = 1;
      const auto& parent = node.at("parent");
      if (!parent.is_null()) {
        const auto p = parent.get<std::int64_t>();
        if (p < 0 || p >= static_cast<std::int64_t>(nodes.size())) {
          throw Error(Errc::MalformedTree, "node " + std::to_string(id) + " has unknown parent");
        }
        parents[id] = static_cast<NodeId>(p);
      }
    }
    auto leaves = doc.at("leaves").get<std::vector<NodeId>>();
    return CategoryTree(std::move(parents), std::move(leaves), doc_count);
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedTree, e.what());
  }
}

CategoryTree load_tree(const std::filesystem::path& tree_file, const Corpus& corpus) {
  return parse_tree(read_file(tree_file), corpus.doc_count());
}

std::string manifest_json(const Corpus& corpus) {
  json docs = json::array();
  for (std::size_t j = 0; j < corpus.doc_count(); ++j) {
    docs.push_back({{"id", j + 1}, {"text", corpus.documents()[j]}});
  }
  return json{{"sigma", corpus.sigma()}, {"documents", docs}}.dump(1);
}

std::string tree_json(const CategoryTree& tree) {
  json nodes = json::array();
  for (NodeId v = 0; v < tree.node_count(); ++v) {
    nodes.push_back({{"id", v}, {"parent", v == tree.root() ? json(nullptr) : json(tree.parent(v))}});
  }
  return json{{"nodes", nodes}, {"leaves", std::vector<NodeId>(tree.leaves().begin(), tree.leaves().end())}}.dump(1);
}

}  // namespace cattree
