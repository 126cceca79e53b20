#include "cattree/wavelet_engines.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace cattree {

namespace {

// Shape of the contracted category tree plus, per shape node, the tree node
// it stands for; also the symbol (leaf rank, 1-based) of every document.
struct ContractedShape {
  WaveletShape shape;
  std::vector<NodeId> original;
  std::vector<Symbol> doc_symbol;  // index j - 1
};

ContractedShape contract(const CategoryTree& tree) {
  const std::size_t count = tree.node_count();
  std::vector<DocId> doc_of_leaf(count, 0);
  for (DocId j = 1; j <= tree.doc_count(); ++j) doc_of_leaf[tree.leaf_of(j)] = j;

  std::vector<NodeId> order{tree.root()};
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (NodeId c : tree.children(order[k])) order.push_back(c);
  }
  std::vector<DocId> min_doc(count, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    if (tree.is_leaf(v)) {
      min_doc[v] = doc_of_leaf[v];
    } else {
      min_doc[v] = min_doc[tree.children(v).front()];
      for (NodeId c : tree.children(v)) min_doc[v] = std::min(min_doc[v], min_doc[c]);
    }
  }
  auto ordered_children = [&](NodeId v) {
    std::vector<NodeId> kids(tree.children(v).begin(), tree.children(v).end());
    std::sort(kids.begin(), kids.end(), [&](NodeId x, NodeId y) { return min_doc[x] < min_doc[y]; });
    return kids;
  };
  auto lowest = [&](NodeId v) {
    while (tree.children(v).size() == 1) v = tree.children(v).front();
    return v;
  };

  ContractedShape out;
  out.doc_symbol.assign(tree.doc_count(), 0);
  // Depth-first over contracted nodes; leaf ranks are assigned in visit order.
  struct Frame {
    std::uint32_t shape;
    std::vector<NodeId> kids;
    std::size_t next = 0;
  };
  Symbol next_symbol = 1;
  auto open = [&](NodeId v) -> Frame {
    const auto id = static_cast<std::uint32_t>(out.shape.nodes.size());
    out.shape.nodes.push_back({next_symbol, next_symbol, {}});
    out.original.push_back(v);
    if (tree.is_leaf(v)) {
      out.doc_symbol[doc_of_leaf[v] - 1] = next_symbol++;
      return {id, {}};
    }
    return {id, ordered_children(v)};
  };
  std::vector<Frame> stack;
  stack.push_back(open(lowest(tree.root())));
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next == top.kids.size()) {
      out.shape.nodes[top.shape].hi = next_symbol - 1;
      stack.pop_back();
      continue;
    }
    const NodeId child = lowest(top.kids[top.next++]);
    const std::uint32_t parent = top.shape;
    Frame frame = open(child);
    out.shape.nodes[parent].children.push_back(frame.shape);
    if (frame.kids.empty()) continue;
    stack.push_back(std::move(frame));
  }
  return out;
}

}  // namespace

ShapedWaveletEngine::ShapedWaveletEngine(std::shared_ptr<const IndexCore> core, std::span<const DocId> doc_array)
    : Engine(std::move(core)) {
  ContractedShape contracted = contract(core_->tree);
  const std::size_t d = core_->doc_count();
  std::vector<Symbol> seq;
  seq.reserve(doc_array.size() - d);
  for (std::size_t row = d; row < doc_array.size(); ++row) seq.push_back(contracted.doc_symbol[doc_array[row] - 1]);
  wavelet_ = WaveletTree(seq, std::move(contracted.shape));
  original_ = std::move(contracted.original);
}

ShapedWaveletEngine::ShapedWaveletEngine(std::shared_ptr<const IndexCore> core, WaveletTree wavelet,
                                         std::vector<NodeId> original)
    : Engine(std::move(core)), wavelet_(std::move(wavelet)), original_(std::move(original)) {}

void ShapedWaveletEngine::report(SuffixInterval rows, Level level, QueryContext& ctx,
                                 std::vector<NodeId>& out) const {
  // Separator rows are exactly 1..D and carry no symbol.
  const std::size_t d = core_->doc_count();
  const std::size_t first = std::max(rows.first, d + 1);
  if (first > rows.last) return;
  struct Item {
    std::uint32_t node;
    std::size_t b, e;
  };
  std::vector<Item> stack{{0, first - 1 - d, rows.last - d}};
  while (!stack.empty()) {
    const Item item = stack.back();
    stack.pop_back();
    if (depth(item.node) >= level) {
      out.push_back(core_->ancestors.laq_unchecked(original_[item.node], level));
      continue;
    }
    ctx.stats.wavelet_visits += wavelet_.for_each_child(
        item.node, item.b, item.e, [&](std::uint32_t child, std::size_t b, std::size_t e) {
          stack.push_back({child, b, e});
        });
  }
}

std::uint32_t ShapedWaveletEngine::branching_depth() const noexcept {
  const auto& nodes = wavelet_.shape().nodes;
  std::vector<std::uint32_t> depth(nodes.size(), 0);
  std::uint32_t best = 0;
  // Children always have larger ids than their parent.
  for (std::uint32_t v = 0; v < nodes.size(); ++v) {
    if (nodes[v].children.empty()) continue;
    const std::uint32_t here = depth[v] + 1;
    best = std::max(best, here);
    for (auto c : nodes[v].children) depth[c] = here;
  }
  return best;
}

std::size_t ShapedWaveletEngine::max_degree() const noexcept {
  std::size_t best = 0;
  for (const auto& node : wavelet_.shape().nodes) best = std::max(best, node.children.size());
  return best;
}

SpaceReport ShapedWaveletEngine::space() const {
  const std::uint64_t n = wavelet_.size();
  const std::uint64_t log_d = std::bit_width(std::max<std::size_t>(max_degree(), 1) - 1);
  return {
      {"shaped wavelet: bitvector bits", wavelet_.bitvector_bits(),
       "n*h_b*ceil(log d_max) = " + std::to_string(n * branching_depth() * log_d)},
      {"shaped wavelet: total with rank directories and node tables", wavelet_.size_in_bits(),
       "n(h log D)(1+o(1)) + O(D log n)"},
      {"shaped wavelet: stored depths", 32ULL * original_.size(), "O(D log h)"},
  };
}

void ShapedWaveletEngine::save(BinaryWriter& out) const { wavelet_.save(out); }

std::unique_ptr<ShapedWaveletEngine> ShapedWaveletEngine::load(std::shared_ptr<const IndexCore> core,
                                                               BinaryReader& in) {
  auto wavelet = WaveletTree::load(in);
  // The shape and node map follow from the tree; the stored shape must agree.
  ContractedShape contracted = contract(core->tree);
  if (wavelet.shape().nodes != contracted.shape.nodes || wavelet.size() + core->doc_count() != core->n_prime()) {
    BinaryReader::fail("shaped wavelet does not match the category tree");
  }
  return std::unique_ptr<ShapedWaveletEngine>(
      new ShapedWaveletEngine(std::move(core), std::move(wavelet), std::move(contracted.original)));
}

HeavyPathEngine::HeavyPathEngine(std::shared_ptr<const IndexCore> core, std::span<const DocId> doc_array)
    : Engine(std::move(core)), paths_(core_->tree) {
  const CategoryTree& tree = core_->tree;
  const auto& paths = paths_.paths();

  // Symbol of every light child within its parent's path (1-based).
  std::vector<Symbol> light_symbol(tree.node_count(), 0);
  for (const auto& path : paths) {
    for (std::size_t k = 0; k < path.light_children.size(); ++k) {
      light_symbol[path.light_children[k]] = static_cast<Symbol>(k + 1);
    }
  }
  // Per document, the (path, symbol) pairs its occurrences contribute.
  std::vector<std::vector<std::pair<std::uint32_t, Symbol>>> chain(tree.doc_count());
  for (DocId j = 1; j <= tree.doc_count(); ++j) {
    const NodeId leaf = tree.leaf_of(j);
    std::uint32_t p = paths_.path_of(leaf);
    auto& links = chain[j - 1];
    links.emplace_back(p, static_cast<Symbol>(paths[p].light_children.size() + 1));
    for (NodeId head = paths[p].head; head != tree.root(); head = paths[p].head) {
      p = paths_.path_of(tree.parent(head));
      links.emplace_back(p, light_symbol[head]);
    }
  }
  std::vector<std::vector<Symbol>> seqs(paths.size());
  for (std::size_t row = tree.doc_count(); row < doc_array.size(); ++row) {
    for (const auto& [p, s] : chain[doc_array[row] - 1]) seqs[p].push_back(s);
  }
  sequences_.reserve(paths.size());
  for (std::size_t p = 0; p < paths.size(); ++p) {
    const auto top = static_cast<Symbol>(paths[p].light_children.size() + 1);
    sequences_.emplace_back(seqs[p], WaveletShape::balanced(1, top));
    std::vector<Symbol>().swap(seqs[p]);
  }
}

HeavyPathEngine::HeavyPathEngine(std::shared_ptr<const IndexCore> core, std::vector<WaveletTree> sequences)
    : Engine(std::move(core)), paths_(core_->tree), sequences_(std::move(sequences)) {}

void HeavyPathEngine::report(SuffixInterval rows, Level level, QueryContext& ctx, std::vector<NodeId>& out) const {
  const std::size_t d = core_->doc_count();
  const std::size_t first = std::max(rows.first, d + 1);
  if (first > rows.last) return;
  const CategoryTree& tree = core_->tree;
  struct Item {
    std::uint32_t path;
    std::size_t b, e;
    std::uint64_t depth;
  };
  std::vector<Item> stack{{paths_.root_path(), first - 1 - d, rows.last - d, 1}};
  while (!stack.empty()) {
    const Item item = stack.back();
    stack.pop_back();
    ctx.stats.path_depth = std::max(ctx.stats.path_depth, item.depth);
    const auto& path = paths_.path(item.path);
    // Path nodes above `level` and the light children hanging from them.
    const std::size_t above = level > 1 ? path.depths.rank1(level - 1) : 0;
    const Symbol bound = path.light_prefix[above];
    std::size_t covered = 0;
    if (bound > 0) {
      const WaveletTree& wt = sequences_[item.path];
      ctx.stats.wavelet_visits += wt.for_each_child(
          0, item.b, item.e,
          [&](std::uint32_t leaf, std::size_t b, std::size_t e) {
            const Symbol s = wt.shape().nodes[leaf].lo;
            if (s > bound) return;
            covered += e - b;
            const NodeId child = path.light_children[s - 1];
            if (tree.level(child) == level) {
              out.push_back(child);
            } else {
              stack.push_back({paths_.path_of(child), b, e, item.depth + 1});
            }
          },
          bound);
    }
    if (covered < item.e - item.b) out.push_back(path.nodes[level - tree.level(path.head)]);
  }
}

std::uint64_t HeavyPathEngine::total_sequence_length() const noexcept {
  std::uint64_t total = 0;
  for (const auto& wt : sequences_) total += wt.size();
  return total;
}

SpaceReport HeavyPathEngine::space() const {
  std::uint64_t raw = 0, total = 0, marks = 0, lists = 0;
  for (const auto& wt : sequences_) {
    raw += wt.bitvector_bits();
    total += wt.size_in_bits();
  }
  for (const auto& path : paths_.paths()) {
    marks += path.depths.size_in_bits();
    lists += 32ULL * (path.nodes.size() + path.light_children.size() + path.light_prefix.size());
  }
  return {
      {"heavy paths: sequence bitvector bits", raw, "O(n log^2 D)"},
      {"heavy paths: sequences with rank directories", total, "O(n log^2 D)"},
      {"heavy paths: depth bitvectors", marks, "O(Delta) per path set"},
      {"heavy paths: path and light-child tables", lists, "O(Delta log Delta)"},
  };
}

void HeavyPathEngine::save(BinaryWriter& out) const {
  out.u64(sequences_.size());
  for (const auto& wt : sequences_) wt.save(out);
}

std::unique_ptr<HeavyPathEngine> HeavyPathEngine::load(std::shared_ptr<const IndexCore> core, BinaryReader& in) {
  const std::uint64_t count = in.u64();
  if (count > in.remaining()) BinaryReader::fail("heavy path count");
  std::vector<WaveletTree> sequences;
  sequences.reserve(count);
  for (std::uint64_t p = 0; p < count; ++p) sequences.push_back(WaveletTree::load(in));
  auto engine = std::unique_ptr<HeavyPathEngine>(new HeavyPathEngine(std::move(core), std::move(sequences)));
  const auto& paths = engine->paths_.paths();
  if (paths.size() != engine->sequences_.size()) BinaryReader::fail("heavy path count mismatch");
  for (std::size_t p = 0; p < paths.size(); ++p) {
    const WaveletTree& wt = engine->sequences_[p];
    const auto top = static_cast<Symbol>(paths[p].light_children.size() + 1);
    if (wt.shape().nodes != WaveletShape::balanced(1, top).nodes) BinaryReader::fail("heavy path alphabet mismatch");
    // Occurrences of a light child's symbol are exactly that child's path sequence.
    for (std::size_t k = 0; k < paths[p].light_children.size(); ++k) {
      const auto& child_seq = engine->sequences_[engine->paths_.path_of(paths[p].light_children[k])];
      if (wt.rank(static_cast<Symbol>(k + 1), wt.size()) != child_seq.size()) {
        BinaryReader::fail("heavy path sequence lengths disagree");
      }
    }
  }
  if (engine->sequences_[engine->paths_.root_path()].size() + engine->core().doc_count() != engine->core().n_prime()) {
    BinaryReader::fail("heavy root path length");
  }
  return engine;
}

}  // namespace cattree
