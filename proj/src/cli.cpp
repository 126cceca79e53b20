#include "cattree/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>

#include "CLI11.hpp"
#include "json.hpp"

#include "cattree/error.hpp"
#include "cattree/index.hpp"
#include "cattree/oracle.hpp"
#include "cattree/synth.hpp"

namespace cattree::cli {

namespace {

std::string decode_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) throw Error(Errc::InvalidPattern, "hex pattern has odd length");
  std::string bytes;
  for (std::size_t k = 0; k < hex.size(); k += 2) {
    unsigned value = 0;
    const auto r = std::from_chars(hex.data() + k, hex.data() + k + 2, value, 16);
    if (r.ec != std::errc() || r.ptr != hex.data() + k + 2) throw Error(Errc::InvalidPattern, "bad hex digit in pattern");
    bytes.push_back(static_cast<char>(value));
  }
  return bytes;
}

std::string escape(std::string_view s) {
  std::string out;
  for (unsigned char c : s) {
    if (c >= 0x20 && c < 0x7f && c != '\\' && c != '"') {
      out.push_back(static_cast<char>(c));
    } else {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\x%02x", c);
      out += buf;
    }
  }
  return out;
}

std::string braces(const std::vector<NodeId>& nodes) {
  std::string s = "{";
  for (std::size_t k = 0; k < nodes.size(); ++k) s += (k ? "," : "") + std::to_string(nodes[k]);
  return s + "}";
}

std::vector<EngineKind> parse_engines(const std::vector<std::string>& names) {
  std::vector<EngineKind> kinds;
  for (const auto& name : names) {
    if (name == "all") return {EngineKind::Colored, EngineKind::Wavelet, EngineKind::Heavy};
    auto kind = parse_engine(name);
    if (!kind) throw CLI::ValidationError("--engine", "unknown engine '" + name + "'");
    if (std::find(kinds.begin(), kinds.end(), *kind) == kinds.end()) kinds.push_back(*kind);
  }
  return kinds;
}

DocArrayMode parse_mode(const std::string& name) {
  return name == "compact" ? DocArrayMode::Compact : DocArrayMode::Stored;
}

void print_space(const SpaceReport& report, std::ostream& out) {
  std::size_t width = 5;
  std::uint64_t total = 0;
  for (const auto& item : report) width = std::max(width, item.structure.size());
  for (const auto& item : report) {
    out << item.structure << std::string(width - item.structure.size() + 2, ' ') << item.bits << " bits";
    if (!item.target.empty()) out << "  target " << item.target;
    out << '\n';
    total += item.bits;
  }
  out << "total" << std::string(width - 3, ' ') << total << " bits\n";
}

struct CommonInputs {
  std::string corpus;
  std::string tree;
};

struct BuildArgs {
  CommonInputs in;
  std::string output;
  std::vector<std::string> engines{"colored"};
  std::uint32_t alpha = 1;
  CLI::Option* alpha_opt = nullptr;
  std::size_t sample_rate = 0;
  std::string mode = "stored";
};

int cmd_build(const BuildArgs& a, std::ostream& out) {
  const Corpus corpus = load_corpus(a.in.corpus);
  const CategoryTree tree = load_tree(a.in.tree, corpus);
  BuildOptions options;
  options.engines = parse_engines(a.engines);
  options.sample_rate = a.sample_rate;
  options.doc_mode = parse_mode(a.mode);
  if (a.alpha_opt->count() > 0) options.alpha = a.alpha;
  const auto index = CategoricalIndex::build(corpus, tree, options);
  index.save(a.output);
  print_space(index.space(), out);
  return 0;
}

struct QueryArgs {
  std::string index;
  std::string pattern;
  Level level = 0;
  bool hex = false;
  std::string format = "text";
  std::string engine;
};

int cmd_query(const QueryArgs& a, std::ostream& out) {
  const auto index = CategoricalIndex::load(a.index);
  EngineKind kind = index.engines().front();
  if (!a.engine.empty()) {
    auto parsed = parse_engine(a.engine);
    if (!parsed) throw CLI::ValidationError("--engine", "unknown engine '" + a.engine + "'");
    kind = *parsed;
  }
  const std::string pattern = a.hex ? decode_hex(a.pattern) : a.pattern;
  auto ctx = index.make_context();
  const auto result = index.query(kind, pattern, a.level, ctx);
  if (a.format == "json") {
    out << nlohmann::ordered_json{{"level", result.level}, {"t", result.t()}, {"nodes", result.nodes}}.dump() << '\n';
  } else {
    for (NodeId v : result.nodes) out << v << '\n';
  }
  return 0;
}

struct VerifyArgs {
  CommonInputs in;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::size_t max_len = 8;
  bool inject_fault = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const Corpus corpus = load_corpus(a.in.corpus);
  const CategoryTree tree = load_tree(a.in.tree, corpus);
  const OracleIndex oracle(corpus, tree);

  BuildOptions exact;
  exact.engines = {EngineKind::Colored, EngineKind::Wavelet, EngineKind::Heavy};
  exact.alpha = 1;
  BuildOptions compact;
  compact.doc_mode = DocArrayMode::Compact;
  const auto full = CategoricalIndex::build(corpus, tree, exact);
  const auto sparse = CategoricalIndex::build(corpus, tree, compact);

  struct Subject {
    const Engine* engine;
    QueryContext ctx;
    bool faulty;
  };
  std::vector<Subject> subjects;
  for (EngineKind kind : full.engines()) {
    subjects.push_back({&full.engine(kind), full.make_context(), a.inject_fault && kind == EngineKind::Heavy});
  }
  subjects.push_back({&sparse.engine(EngineKind::Colored), sparse.make_context(), false});

  std::mt19937_64 rng(a.seed);
  std::uniform_int_distribution<Level> level_dist(1, tree.height());
  for (std::size_t trial = 1; trial <= a.trials; ++trial) {
    const std::string pattern = sample_pattern(corpus, rng, a.max_len);
    const Level level = level_dist(rng);
    const auto expected = oracle.query(pattern, level);
    for (auto& s : subjects) {
      auto got = s.engine->query(pattern, level, s.ctx);
      if (s.faulty) {
        // Negative control: perturb one engine's answer.
        if (got.nodes.empty()) got.nodes.push_back(tree.root());
        else got.nodes.pop_back();
      }
      const bool clean = s.ctx.scratch.all_zero();
      if (got != expected || !clean) {
        out << "mismatch trial=" << trial << " engine=" << s.engine->label() << " pattern=\"" << escape(pattern)
            << "\" level=" << level << " expected=" << braces(expected.nodes) << " got=" << braces(got.nodes)
            << (clean ? "" : " scratch-not-reset") << '\n';
        return kFailure;
      }
    }
  }
  out << "ok trials=" << a.trials << " engines=" << subjects.size() << " seed=" << a.seed << '\n';
  return 0;
}

struct BenchArgs {
  CommonInputs in;
  std::vector<std::string> engines{"all"};
  std::vector<std::uint32_t> alphas{1};
  std::size_t queries = 100;
  std::uint64_t seed = 1;
  std::size_t max_len = 8;
  std::size_t sample_rate = 0;
  std::string mode = "stored";
  std::string output;
};

constexpr const char* kBenchHeader =
    "engine,config,row,structure,bits,query,pattern_len,level,t,rmq_calls,array_accesses,wavelet_visits,lf_steps,"
    "path_depth";

int cmd_bench(const BenchArgs& a, std::ostream& stdout_stream) {
  const Corpus corpus = load_corpus(a.in.corpus);
  const CategoryTree tree = load_tree(a.in.tree, corpus);
  const auto kinds = parse_engines(a.engines);

  std::mt19937_64 rng(a.seed);
  std::uniform_int_distribution<Level> level_dist(1, tree.height());
  std::vector<std::pair<std::string, Level>> workload;
  for (std::size_t q = 0; q < a.queries; ++q) {
    std::string p = sample_pattern(corpus, rng, a.max_len);
    workload.emplace_back(std::move(p), level_dist(rng));
  }

  std::ofstream file;
  if (!a.output.empty()) {
    file.open(a.output);
    if (!file) throw Error(Errc::MissingFile, "cannot write " + a.output);
  }
  std::ostream& out = a.output.empty() ? stdout_stream : file;
  out << kBenchHeader << '\n';

  auto run_config = [&](const CategoricalIndex& index, EngineKind kind) {
    const Engine& engine = index.engine(kind);
    const std::string name = engine_name(kind);
    const std::string config = engine.label();
    for (const auto& item : index.space()) {
      out << name << ',' << config << ",space," << item.structure << ',' << item.bits << ",,,,,,,,,\n";
    }
    auto ctx = index.make_context();
    for (std::size_t q = 0; q < workload.size(); ++q) {
      ctx.stats.reset();
      const auto& [pattern, level] = workload[q];
      const auto result = engine.query(pattern, level, ctx);
      const auto& s = ctx.stats;
      out << name << ',' << config << ",query,,," << q + 1 << ',' << pattern.size() << ',' << level << ','
          << result.t() << ',' << s.rmq_calls << ',' << s.array_accesses << ',' << s.wavelet_visits << ','
          << s.lf_steps << ',' << s.path_depth << '\n';
    }
  };

  BuildOptions base;
  base.sample_rate = a.sample_rate;
  base.doc_mode = parse_mode(a.mode);
  for (EngineKind kind : kinds) {
    if (kind == EngineKind::Colored) {
      for (std::uint32_t alpha : a.alphas) {
        BuildOptions options = base;
        options.engines = {kind};
        options.alpha = alpha;
        run_config(CategoricalIndex::build(corpus, tree, options), kind);
      }
    } else {
      BuildOptions options = base;
      options.engines = {kind};
      run_config(CategoricalIndex::build(corpus, tree, options), kind);
    }
  }
  return 0;
}

struct GenArgs {
  SynthParams params;
  std::string out_dir;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const auto instance = generate(a.params);
  const std::filesystem::path dir(a.out_dir);
  std::filesystem::create_directories(dir);
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path);
    if (!(f << text << '\n')) throw Error(Errc::MissingFile, "cannot write " + path.string());
  };
  write(dir / "corpus.json", manifest_json(instance.corpus));
  write(dir / "tree.json", tree_json(instance.tree));
  out << (dir / "corpus.json").string() << '\n' << (dir / "tree.json").string() << '\n';
  return 0;
}

void add_inputs(CLI::App* sub, CommonInputs& in) {
  sub->add_option("-c,--corpus", in.corpus, "corpus manifest (JSON)")->required()->check(CLI::ExistingFile);
  sub->add_option("-t,--tree", in.tree, "category tree (JSON)")->required()->check(CLI::ExistingFile);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ct: report the categories whose documents contain a pattern"};
  app.name("ct");
  app.require_subcommand(1);

  BuildArgs build;
  auto* b = app.add_subcommand("build", "build an index file");
  add_inputs(b, build.in);
  b->add_option("-o,--output", build.output, "index file to write")->required();
  b->add_option("-e,--engine", build.engines, "colored | wavelet | heavy | all (repeatable)");
  build.alpha_opt = b->add_option("-a,--alpha", build.alpha, "colored engine sparsification");
  b->add_option("-s,--sample-rate", build.sample_rate, "suffix array sampling rate (0 = log n')");
  b->add_option("-m,--doc-array", build.mode, "stored | compact")
      ->check(CLI::IsMember({"stored", "compact"}));

  QueryArgs query;
  auto* q = app.add_subcommand("query", "query an index file");
  q->add_option("-x,--index", query.index, "index file")->required();
  q->add_option("-p,--pattern", query.pattern, "pattern")->required();
  q->add_option("-i,--level", query.level, "tree level, root = 1")->required();
  q->add_flag("--hex", query.hex, "pattern is hex encoded");
  q->add_option("-f,--format", query.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  q->add_option("-e,--engine", query.engine, "engine section to use (default: first in file)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "cross-check every engine against the brute-force oracle");
  add_inputs(v, verify.in);
  v->add_option("-n,--trials", verify.trials, "number of random queries");
  v->add_option("--seed", verify.seed, "random seed");
  v->add_option("--max-len", verify.max_len, "longest sampled pattern");
  v->add_flag("--inject-fault", verify.inject_fault, "perturb the heavy engine (negative control)");

  BenchArgs bench;
  auto* be = app.add_subcommand("bench", "space and work counters as CSV");
  add_inputs(be, bench.in);
  be->add_option("-e,--engine", bench.engines, "engines to run");
  be->add_option("-a,--alpha", bench.alphas, "alpha values for the colored engine");
  be->add_option("-n,--queries", bench.queries, "workload size");
  be->add_option("--seed", bench.seed, "random seed");
  be->add_option("--max-len", bench.max_len, "longest sampled pattern");
  be->add_option("-s,--sample-rate", bench.sample_rate, "suffix array sampling rate");
  be->add_option("-m,--doc-array", bench.mode, "stored | compact")->check(CLI::IsMember({"stored", "compact"}));
  be->add_option("-o,--output", bench.output, "CSV file (default stdout)");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "write a synthetic corpus and tree");
  g->add_option("--docs", gen.params.docs, "number of documents");
  g->add_option("--doc-len", gen.params.doc_len, "maximum document length");
  g->add_option("--sigma", gen.params.sigma, "alphabet size (letters)")->check(CLI::Range(1, 26));
  g->add_option("--height", gen.params.height, "tree height");
  g->add_option("--unary-density", gen.params.unary_density, "chance of a unary node")->check(CLI::Range(0.0, 1.0));
  g->add_option("--seed", gen.params.seed, "random seed");
  g->add_option("-o,--out", gen.out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (b->parsed()) return cmd_build(build, out);
    if (q->parsed()) return cmd_query(query, out);
    if (v->parsed()) return cmd_verify(verify, out);
    if (be->parsed()) return cmd_bench(bench, out);
    if (g->parsed()) return cmd_gen(gen, out);
  } catch (const Error& e) {
    err << "ct: " << e.what() << '\n';
    switch (e.code()) {
      case Errc::InvalidLevel:
      case Errc::InvalidPattern:
        return kBadLevel;
      case Errc::MalformedIndex:
        return kMalformedIndex;
      default:
        return kFailure;
    }
  } catch (const CLI::Error& e) {
    err << "ct: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    err << "ct: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace cattree::cli
