// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Every expected value comes from the brute-force oracle or
// from direct recomputation.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cattree/cli.hpp"
#include "cattree/index.hpp"
#include "cattree/oracle.hpp"
#include "cattree/synth.hpp"

using namespace cattree;

namespace {

constexpr std::uint64_t kSeed = 20240917;
constexpr std::size_t kInstances = 1000;
constexpr std::size_t kQueriesPerInstance = 24;

std::uint64_t floor_log2(std::uint64_t x) { return x == 0 ? 0 : std::bit_width(x) - 1; }
std::uint64_t ceil_log2(std::uint64_t x) { return x <= 1 ? 0 : std::bit_width(x - 1); }

struct Verdict {
  bool pass = true;
  std::string detail;
  std::string first_failure;

  void fail(const std::string& why) {
    if (pass) first_failure = why;
    pass = false;
  }
};

struct Criterion {
  int id;
  std::string title;
  Verdict verdict;
  double seconds = 0;
};

// ---------------------------------------------------------------------------
// Instance set shared by criteria 1, 4, 5, 6, 9 and 10.

struct Query {
  std::string pattern;
  Level level;
};

struct Instance {
  std::uint64_t seed;
  SynthParams params;
  bool subdivided;
  std::uint32_t alpha;  // sparsified colored engine
};

std::vector<Instance> instance_plan() {
  std::mt19937_64 rng(kSeed);
  std::vector<Instance> plan;
  const std::uint32_t sigmas[] = {2, 4, 26};
  const double densities[] = {0.0, 0.25, 0.6, 0.9};
  for (std::size_t k = 0; k < kInstances; ++k) {
    Instance in;
    in.seed = rng();
    SynthParams& p = in.params;
    p.docs = std::uniform_int_distribution<std::size_t>(1, 64)(rng);
    p.doc_len = std::uniform_int_distribution<std::size_t>(1, 512)(rng);
    p.sigma = sigmas[k % 3];
    p.unary_density = densities[(k / 3) % 4];
    in.subdivided = k % 10 == 9;
    const Level max_h = in.subdivided ? 32 : 64;
    p.height = p.docs == 1 ? std::uniform_int_distribution<Level>(1, max_h)(rng)
                           : std::uniform_int_distribution<Level>(2, max_h)(rng);
    p.seed = in.seed;
    in.alpha = std::uniform_int_distribution<std::uint32_t>(2, 12)(rng);
    plan.push_back(in);
  }
  return plan;
}

SynthInstance materialize(const Instance& in) {
  auto inst = generate(in.params);
  if (in.subdivided && inst.tree.height() > 1) inst.tree = subdivide(inst.tree);
  return inst;
}

std::vector<Query> workload(const SynthInstance& inst, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<Level> level(1, inst.tree.height());
  std::vector<Query> qs;
  for (std::size_t k = 0; k < kQueriesPerInstance; ++k) {
    std::string p = sample_pattern(inst.corpus, rng, k % 4 == 0 ? 16 : 6);
    qs.push_back({std::move(p), level(rng)});
  }
  return qs;
}

struct Built {
  CategoricalIndex exact;   // colored alpha = 1, wavelet, heavy; stored array
  CategoricalIndex sparse;  // colored alpha > 1 over the compact array
};

Built build_pair(const SynthInstance& inst, std::uint32_t alpha) {
  BuildOptions exact;
  exact.engines = {EngineKind::Colored, EngineKind::Wavelet, EngineKind::Heavy};
  exact.alpha = 1;
  BuildOptions sparse;
  sparse.engines = {EngineKind::Colored};
  sparse.alpha = alpha;
  sparse.doc_mode = DocArrayMode::Compact;
  return {CategoricalIndex::build(inst.corpus, inst.tree, exact), CategoricalIndex::build(inst.corpus, inst.tree, sparse)};
}

std::string describe(std::size_t instance, const Query& q, const std::string& engine) {
  std::string p;
  for (unsigned char c : q.pattern) p += (c >= 0x20 && c < 0x7f) ? std::string(1, static_cast<char>(c)) : "?";
  return "instance " + std::to_string(instance) + " engine " + engine + " pattern \"" + p + "\" level " +
         std::to_string(q.level);
}

struct FuzzTotals {
  std::size_t instances = 0;
  std::size_t queries = 0;
  std::size_t compared = 0;
  std::size_t max_d = 0;
  Level max_h = 0;
  std::size_t max_doc = 0;
};

// Runs the instance set once. With reload, every index goes through
// serialize/deserialize first and answers are also compared with the
// pre-save answers.
void run_instances(bool reload, Verdict& c1, Verdict& c4, Verdict& c5, Verdict& c6, Verdict& c9, FuzzTotals& totals) {
  const auto plan = instance_plan();
  for (std::size_t k = 0; k < plan.size(); ++k) {
    const auto inst = materialize(plan[k]);
    const OracleIndex oracle(inst.corpus, inst.tree);
    Built built = build_pair(inst, plan[k].alpha);
    std::optional<Built> original;
    if (reload) {
      Built copy{CategoricalIndex::deserialize(built.exact.serialize()),
                 CategoricalIndex::deserialize(built.sparse.serialize())};
      original.emplace(std::move(built));
      built = std::move(copy);
    }
    totals.instances++;
    totals.max_d = std::max(totals.max_d, inst.corpus.doc_count());
    totals.max_h = std::max(totals.max_h, inst.tree.height());
    for (const auto& d : inst.corpus.documents()) totals.max_doc = std::max(totals.max_doc, d.size());

    const std::uint64_t d = inst.corpus.doc_count();
    const std::uint64_t h = inst.tree.height();
    struct Subject {
      const CategoricalIndex* index;
      const CategoricalIndex* before;
      EngineKind kind;
      bool sparse;
    };
    std::vector<Subject> subjects;
    for (EngineKind kind : {EngineKind::Colored, EngineKind::Wavelet, EngineKind::Heavy}) {
      subjects.push_back({&built.exact, original ? &original->exact : nullptr, kind, false});
    }
    subjects.push_back({&built.sparse, original ? &original->sparse : nullptr, EngineKind::Colored, true});

    auto ctx_exact = built.exact.make_context();
    auto ctx_sparse = built.sparse.make_context();
    auto ctx_before = built.exact.make_context();
    for (const Query& q : workload(inst, plan[k].seed)) {
      totals.queries++;
      const QueryResult expected = oracle.query(q.pattern, q.level);
      const std::uint64_t t1 = expected.t() + 1;
      for (const Subject& s : subjects) {
        QueryContext& ctx = s.sparse ? ctx_sparse : ctx_exact;
        ctx.stats.reset();
        const QueryResult got = s.index->query(s.kind, q.pattern, q.level, ctx);
        const std::string label = s.index->engine(s.kind).label();
        totals.compared++;
        if (got != expected) c1.fail(describe(k, q, label));
        if (s.before) {
          const QueryResult prior = s.before->query(s.kind, q.pattern, q.level, ctx_before);
          if (prior != got) c1.fail("reload changed answer: " + describe(k, q, label));
        }
        if (!ctx.scratch.all_zero()) c9.fail(describe(k, q, label));
        const QueryStats& st = ctx.stats;
        const std::uint64_t t = got.t();
        switch (s.kind) {
          case EngineKind::Colored:
            if (!s.sparse) {
              if (st.rmq_calls > 2 * t + 1 || st.array_accesses > 2 * t + 1) {
                c4.fail(describe(k, q, label) + " rmq=" + std::to_string(st.rmq_calls) +
                        " accesses=" + std::to_string(st.array_accesses) + " t=" + std::to_string(t));
              }
            } else if (st.array_accesses > 8ULL * plan[k].alpha * (t + 1)) {
              c4.fail(describe(k, q, label) + " accesses=" + std::to_string(st.array_accesses));
            }
            break;
          case EngineKind::Wavelet:
            if (st.wavelet_visits > 4 * t1 * h * (ceil_log2(d) + 1)) {
              c5.fail(describe(k, q, label) + " visits=" + std::to_string(st.wavelet_visits));
            }
            break;
          case EngineKind::Heavy: {
            const std::uint64_t lg = floor_log2(d) + 1;
            if (st.wavelet_visits > 4 * t1 * lg * lg) {
              c6.fail(describe(k, q, label) + " visits=" + std::to_string(st.wavelet_visits));
            }
            break;
          }
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------

Verdict criterion2() {
  Verdict v;
  std::mt19937_64 rng(kSeed + 2);
  const std::uint32_t sigmas[] = {2, 4, 26};
  std::size_t pairs = 0;
  for (std::size_t k = 0; k < 500; ++k) {
    SynthParams p;
    p.docs = 1 + rng() % 40;
    p.doc_len = 1 + rng() % (20000 / p.docs);
    p.sigma = sigmas[k % 3];
    p.height = p.docs == 1 ? 1 : 2;
    p.seed = rng();
    const auto inst = generate(p);
    const OracleIndex oracle(inst.corpus, inst.tree);
    const SuffixIndex idx(inst.corpus, 1 + rng() % 16);
    for (int q = 0; q < 20; ++q) {
      const std::string pat = sample_pattern(inst.corpus, rng, 1 + q % 10);
      ++pairs;
      const auto got = idx.count(pat).size();
      const auto want = oracle.count(pat);
      if (got != want) v.fail("corpus " + std::to_string(k) + ": " + std::to_string(got) + " vs " + std::to_string(want));
    }
  }
  v.detail = std::to_string(pairs) + " (corpus, pattern) pairs";
  return v;
}

Verdict criterion3() {
  Verdict v;
  std::mt19937_64 rng(kSeed + 3);
  std::size_t rows = 0, worst_steps[3] = {0, 0, 0};
  const std::size_t rates[] = {1, 4, 32};
  for (std::size_t k = 0; k < 30; ++k) {
    SynthParams p;
    p.docs = 1 + rng() % 30;
    p.doc_len = 1 + rng() % 200;
    p.sigma = std::array{2u, 4u, 26u}[k % 3];
    p.height = p.docs == 1 ? 1 : 2;
    p.seed = rng();
    const auto inst = generate(p);
    const auto sa = OracleIndex::suffix_array(inst.corpus.concat());
    for (int r = 0; r < 3; ++r) {
      const SuffixIndex idx(inst.corpus, rates[r]);
      for (std::size_t i = 1; i <= sa.size(); ++i) {
        QueryStats st;
        ++rows;
        if (idx.locate(i, &st) != sa[i - 1]) v.fail("corpus " + std::to_string(k) + " row " + std::to_string(i));
        worst_steps[r] = std::max<std::size_t>(worst_steps[r], st.lf_steps);
        if (st.lf_steps > rates[r] - 1) v.fail("LF steps " + std::to_string(st.lf_steps) + " at s=" + std::to_string(rates[r]));
      }
    }
  }
  v.detail = std::to_string(rows) + " rows; max LF steps " + std::to_string(worst_steps[0]) + "/" +
             std::to_string(worst_steps[1]) + "/" + std::to_string(worst_steps[2]) + " at s=1/4/32";
  return v;
}

// Median heavy-engine visit counter on a deep unary tree versus the same tree
// with every edge subdivided (height roughly doubled, D fixed).
Verdict criterion6_depth(double& worst_change) {
  Verdict v;
  std::mt19937_64 rng(kSeed + 6);
  worst_change = 0;
  for (int k = 0; k < 10; ++k) {
    SynthParams p;
    p.docs = 32;
    p.doc_len = 200;
    p.sigma = std::array{2u, 4u, 26u}[k % 3];
    p.height = 32;
    p.unary_density = 0.8;
    p.seed = rng();
    const auto inst = generate(p);
    const CategoryTree deep = subdivide(inst.tree);
    BuildOptions o;
    o.engines = {EngineKind::Heavy};
    const auto a = CategoricalIndex::build(inst.corpus, inst.tree, o);
    const auto b = CategoricalIndex::build(inst.corpus, deep, o);
    auto ca = a.make_context();
    auto cb = b.make_context();
    std::vector<std::uint64_t> va, vb;
    for (int q = 0; q < 200; ++q) {
      const std::string pat = sample_pattern(inst.corpus, rng, 3);
      const Level level = 1 + rng() % inst.tree.height();
      ca.stats.reset();
      cb.stats.reset();
      a.query(EngineKind::Heavy, pat, level, ca);
      // level l of the original sits at level 2l-1 after subdivision
      b.query(EngineKind::Heavy, pat, 2 * level - 1, cb);
      va.push_back(ca.stats.wavelet_visits);
      vb.push_back(cb.stats.wavelet_visits);
    }
    std::nth_element(va.begin(), va.begin() + va.size() / 2, va.end());
    std::nth_element(vb.begin(), vb.begin() + vb.size() / 2, vb.end());
    const double ma = static_cast<double>(va[va.size() / 2]);
    const double mb = static_cast<double>(vb[vb.size() / 2]);
    const double change = std::abs(mb - ma) / std::max(ma, 1.0);
    worst_change = std::max(worst_change, change);
    if (change >= 0.10) v.fail("tree " + std::to_string(k) + ": median " + std::to_string(ma) + " -> " + std::to_string(mb));
  }
  return v;
}

Verdict criterion7() {
  Verdict v;
  std::mt19937_64 rng(kSeed + 7);
  std::size_t leaves_checked = 0;
  std::uint64_t worst_margin = 0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t d = 1 + rng() % 4096;
    const Level h = d == 1 ? 1 + rng() % 5 : 2 + rng() % 30;
    const auto tree = generate_tree(d, h, (k % 4) * 0.3, rng);
    const HeavyPathDecomposition hp(tree);
    const auto& parents = tree.parents();
    // leaf counts recomputed by walking up from every leaf
    std::vector<std::uint32_t> weight(parents.size(), 0);
    for (NodeId leaf : tree.leaves()) {
      for (NodeId x = leaf; x != kNoNode; x = parents[x]) ++weight[x];
    }
    const std::uint64_t bound = floor_log2(d);
    for (NodeId leaf : tree.leaves()) {
      ++leaves_checked;
      std::uint64_t light = 0;
      for (NodeId x = leaf; parents[x] != kNoNode; x = parents[x]) {
        const NodeId heavy = hp.heavy_child(parents[x]);
        if (weight[heavy] < weight[x]) v.fail("heavy child lighter than a sibling in tree " + std::to_string(k));
        light += heavy != x;
      }
      worst_margin = std::max(worst_margin, light);
      if (light > bound) v.fail("tree " + std::to_string(k) + ": " + std::to_string(light) + " light edges, D=" + std::to_string(d));
    }
  }
  v.detail = "100 trees, " + std::to_string(leaves_checked) + " leaves; max light edges on a path " + std::to_string(worst_margin);
  return v;
}

Verdict criterion8() {
  Verdict v;
  std::ostringstream detail;
  const auto dir = std::filesystem::temp_directory_path() / ("cattree_acceptance_" + std::to_string(kSeed));
  std::filesystem::create_directories(dir);
  struct Config {
    std::size_t docs;
    std::size_t doc_len;
    std::uint32_t sigma;
    Level height;
    double unary;
  };
  const Config configs[] = {{32, 7000, 4, 6, 0.3}, {64, 3400, 26, 12, 0.5}, {200, 1100, 2, 8, 0.0}};
  int c = 0;
  for (const Config& cfg : configs) {
    SynthParams p{cfg.docs, cfg.doc_len, cfg.sigma, cfg.height, cfg.unary, kSeed + 80 + static_cast<std::uint64_t>(c)};
    const auto inst = generate(p);
    const std::uint64_t n = inst.corpus.n(), np = inst.corpus.n_prime(), d = inst.corpus.doc_count();
    if (n < 100000 || d < 32) v.fail("generated corpus too small: n=" + std::to_string(n));

    BuildOptions o;
    o.engines = {EngineKind::Wavelet};
    const auto idx = CategoricalIndex::build(inst.corpus, inst.tree, o);
    const std::uint64_t doc_bits = idx.core().docs.stored_bits();
    const double doc_cap = 1.1 * static_cast<double>(np) * static_cast<double>(ceil_log2(d + 1));
    if (static_cast<double>(doc_bits) > doc_cap) v.fail("document array " + std::to_string(doc_bits) + " bits");

    const auto& w = dynamic_cast<const ShapedWaveletEngine&>(idx.engine(EngineKind::Wavelet));
    const double wt_cap = 1.5 * static_cast<double>(np) * w.branching_depth() * static_cast<double>(ceil_log2(w.max_degree()));
    if (static_cast<double>(w.wavelet().bitvector_bits()) > wt_cap) {
      v.fail("shaped wavelet " + std::to_string(w.wavelet().bitvector_bits()) + " bits");
    }

    std::size_t worst_cells = 0;
    for (std::uint32_t alpha : {2u, 4u, 8u, 16u}) {
      BuildOptions so;
      so.engines = {EngineKind::Colored};
      so.alpha = alpha;
      so.doc_mode = DocArrayMode::Compact;
      const auto sidx = CategoricalIndex::build(inst.corpus, inst.tree, so);
      const auto& ce = dynamic_cast<const ColoredEngine&>(sidx.engine(EngineKind::Colored));
      for (Level l = 1; l <= inst.tree.height(); ++l) {
        worst_cells = std::max(worst_cells, ce.indexed_cells(l) * alpha);
        if (static_cast<double>(ce.indexed_cells(l)) > 2.0 * static_cast<double>(np) / alpha) {
          v.fail("alpha " + std::to_string(alpha) + " level " + std::to_string(l) + ": " +
                 std::to_string(ce.indexed_cells(l)) + " cells");
        }
      }
    }

    // ct bench must report the same measured bits
    const auto corpus_file = (dir / "corpus.json").string();
    const auto tree_file = (dir / "tree.json").string();
    std::ofstream(corpus_file) << manifest_json(inst.corpus);
    std::ofstream(tree_file) << tree_json(inst.tree);
    const char* argv[] = {"ct", "bench", "-c", corpus_file.c_str(), "-t", tree_file.c_str(), "-e", "wavelet", "-n", "3"};
    std::ostringstream out, err;
    const int code = cli::run(10, argv, out, err);
    const std::string needle = "space,document array (stored)," + std::to_string(doc_bits) + ",";
    if (code != 0 || out.str().find(needle) == std::string::npos) v.fail("ct bench did not report the document array bits");

    detail << (c ? "; " : "") << "D=" << d << " n=" << n << ": A " << doc_bits << "/" << static_cast<std::uint64_t>(doc_cap)
           << " bits, wavelet " << w.wavelet().bitvector_bits() << "/" << static_cast<std::uint64_t>(wt_cap)
           << " bits, max cells*alpha/n' " << static_cast<double>(worst_cells) / static_cast<double>(np);
    ++c;
  }
  std::filesystem::remove_all(dir);
  v.detail = detail.str();
  return v;
}

template <typename Fn>
double timed(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main() {
  std::vector<Criterion> results(10);
  for (int k = 0; k < 10; ++k) results[k].id = k + 1;
  results[0].title = "oracle equivalence";
  results[1].title = "count correctness";
  results[2].title = "locate correctness";
  results[3].title = "colored-engine work bound";
  results[4].title = "shaped-wavelet work bound";
  results[5].title = "heavy-path work bound";
  results[6].title = "heavy-path light-edge bound";
  results[7].title = "space accounting";
  results[8].title = "scratch hygiene";
  results[9].title = "serialization round trip";

  FuzzTotals fuzz;
  Verdict c1, c4, c5, c6, c9;
  const double fuzz_seconds = timed([&] { run_instances(false, c1, c4, c5, c6, c9, fuzz); });
  c1.detail = std::to_string(fuzz.instances) + " instances, " + std::to_string(fuzz.queries) + " queries x 4 engines, max D=" +
              std::to_string(fuzz.max_d) + " max h=" + std::to_string(fuzz.max_h) + " max |T_j|=" + std::to_string(fuzz.max_doc);
  if (fuzz.instances < 1000) c1.fail("fewer than 1000 instances");
  if (fuzz_seconds > 300) c1.fail("took " + std::to_string(fuzz_seconds) + " s");
  c4.detail = "exact: rmq, A_i <= 2t+1; sparsified: A_i <= 8*alpha*(t+1)";
  c5.detail = "visits <= 4(t+1)h(ceil(log2 D)+1)";
  c9.detail = std::to_string(fuzz.compared) + " engine queries";

  double worst_change = 0;
  Verdict c6_depth;
  results[5].seconds = timed([&] { c6_depth = criterion6_depth(worst_change); });
  if (!c6_depth.pass) c6.fail(c6_depth.first_failure);
  char change[32];
  std::snprintf(change, sizeof change, "%.1f%%", worst_change * 100);
  c6.detail = std::string("visits <= 4(t+1)(floor(log2 D)+1)^2; worst median change on doubled height ") + change;

  results[0].verdict = c1;
  results[0].seconds = fuzz_seconds;
  results[3].seconds = results[4].seconds = results[8].seconds = -1;
  results[3].verdict = c4;
  results[4].verdict = c5;
  results[5].verdict = c6;
  results[8].verdict = c9;
  results[1].seconds = timed([&] { results[1].verdict = criterion2(); });
  results[2].seconds = timed([&] { results[2].verdict = criterion3(); });
  results[6].seconds = timed([&] { results[6].verdict = criterion7(); });
  results[7].seconds = timed([&] { results[7].verdict = criterion8(); });

  FuzzTotals again;
  Verdict r1, r4, r5, r6, r9;
  results[9].seconds = timed([&] { run_instances(true, r1, r4, r5, r6, r9, again); });
  results[9].verdict = r1;
  results[9].verdict.detail = std::to_string(again.instances) + " instances reloaded, " +
                              std::to_string(again.compared) + " engine queries";
  if (!r9.pass) results[9].verdict.fail("scratch after reload: " + r9.first_failure);

  bool all = true;
  for (const auto& c : results) {
    all &= c.verdict.pass;
    char when[32];
    if (c.seconds < 0) std::snprintf(when, sizeof when, "measured in 1");
    else std::snprintf(when, sizeof when, "%.1f s", c.seconds);
    std::printf("%s  %2d  %-28s %s (%s)\n", c.verdict.pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                c.verdict.detail.c_str(), when);
    if (!c.verdict.pass) std::printf("          first failure: %s\n", c.verdict.first_failure.c_str());
  }
  return all ? 0 : 1;
}
