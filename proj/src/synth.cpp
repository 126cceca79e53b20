#include "cattree/synth.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cattree {

CategoryTree generate_tree(std::size_t docs, Level height, double unary_density, std::mt19937_64& rng) {
  if (docs == 0 || height == 0) throw std::invalid_argument("need at least one document and one level");
  if (height == 1 && docs != 1) throw std::invalid_argument("height 1 allows a single document");
  std::bernoulli_distribution unary(unary_density);
  std::bernoulli_distribution merge(0.5);

  // Built bottom-up in construction ids, relabelled at the end.
  std::vector<NodeId> parent(docs, kNoNode);
  std::vector<NodeId> current(docs);
  std::iota(current.begin(), current.end(), 0U);
  for (Level l = height; l > 1; --l) {
    std::vector<NodeId> upper;
    const bool last = l == 2;
    // Levels left above this one must still be able to funnel into the root.
    for (std::size_t k = 0; k < current.size();) {
      const auto p = static_cast<NodeId>(parent.size());
      parent.push_back(kNoNode);
      upper.push_back(p);
      parent[current[k++]] = p;
      if (last) {
        while (k < current.size()) parent[current[k++]] = p;
      } else if (!unary(rng)) {
        while (k < current.size() && merge(rng)) parent[current[k++]] = p;
      }
    }
    current = std::move(upper);
  }
  if (height == 1) current = {0};

  // Random relabelling so ids carry no structure.
  std::vector<NodeId> label(parent.size());
  std::iota(label.begin(), label.end(), 0U);
  std::shuffle(label.begin(), label.end(), rng);
  std::vector<NodeId> parents(parent.size(), kNoNode);
  for (std::size_t v = 0; v < parent.size(); ++v) {
    parents[label[v]] = parent[v] == kNoNode ? kNoNode : label[parent[v]];
  }
  std::vector<NodeId> leaves(docs);
  for (std::size_t j = 0; j < docs; ++j) leaves[j] = label[j];
  std::shuffle(leaves.begin(), leaves.end(), rng);
  return CategoryTree(std::move(parents), std::move(leaves), docs);
}

SynthInstance generate(const SynthParams& params) {
  if (params.sigma < 1 || params.sigma > 26) throw std::invalid_argument("sigma must be in [1..26]");
  if (params.doc_len == 0) throw std::invalid_argument("doc_len must be positive");
  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<std::size_t> length(1, params.doc_len);
  std::uniform_int_distribution<int> letter(0, static_cast<int>(params.sigma) - 1);
  std::vector<std::string> docs(params.docs);
  for (auto& d : docs) {
    d.resize(length(rng));
    for (auto& c : d) c = static_cast<char>('a' + letter(rng));
  }
  auto tree = generate_tree(params.docs, params.height, params.unary_density, rng);
  return SynthInstance{Corpus(std::move(docs)), std::move(tree)};
}

CategoryTree subdivide(const CategoryTree& tree) {
  std::vector<NodeId> parents = tree.parents();
  const std::size_t original = parents.size();
  for (NodeId v = 0; v < original; ++v) {
    if (parents[v] == kNoNode) continue;
    const auto mid = static_cast<NodeId>(parents.size());
    parents.push_back(parents[v]);
    parents[v] = mid;
  }
  std::vector<NodeId> leaves(tree.leaves().begin(), tree.leaves().end());
  return CategoryTree(std::move(parents), std::move(leaves), tree.doc_count());
}

std::string sample_pattern(const Corpus& corpus, std::mt19937_64& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len_dist(1, std::max<std::size_t>(1, max_len));
  std::size_t len = len_dist(rng);
  if (std::bernoulli_distribution(0.75)(rng)) {
    std::uniform_int_distribution<std::size_t> pick(1, corpus.doc_count());
    const std::string& d = corpus.document(static_cast<DocId>(pick(rng)));
    len = std::min(len, d.size());
    std::uniform_int_distribution<std::size_t> start(0, d.size() - len);
    return d.substr(start(rng), len);
  }
  // Random bytes over the letters present in the corpus, plus one past sigma.
  std::string alphabet;
  for (std::uint32_t c = 1; c <= std::min<std::uint32_t>(corpus.sigma() + 1, 255); ++c) {
    if (c >= 'a' || corpus.sigma() < 'a') alphabet.push_back(static_cast<char>(c));
  }
  std::uniform_int_distribution<std::size_t> sym(0, alphabet.size() - 1);
  std::string p(len, '\0');
  for (auto& c : p) c = alphabet[sym(rng)];
  return p;
}

}  // namespace cattree
