#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"

#include "cattree/cli.hpp"
#include "cattree/error.hpp"
#include "cattree/index.hpp"
#include "cattree/synth.hpp"

using namespace cattree;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run ct(std::vector<std::string> args) {
  args.insert(args.begin(), "ct");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("cattree_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    std::ofstream(dir / "corpus.json") << manifest_json(fixtures::running_corpus());
    std::ofstream(dir / "tree.json") << tree_json(fixtures::running_tree());
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("build then query the running example") {
  Workspace w;
  auto b = ct({"build", "-c", w / "corpus.json", "-t", w / "tree.json", "-e", "colored", "-o", w / "idx"});
  CHECK(b.code == 0);
  CHECK(b.out.find("document array") != std::string::npos);
  auto q = ct({"query", "-x", w / "idx", "-p", "a", "-i", "2"});
  CHECK(q.code == 0);
  CHECK(q.out == "1\n2\n");
  auto j = ct({"query", "-x", w / "idx", "-p", "a", "-i", "2", "--format", "json"});
  CHECK(j.out == "{\"level\":2,\"t\":2,\"nodes\":[1,2]}\n");
  auto hex = ct({"query", "-x", w / "idx", "-p", "6262", "--hex", "-i", "2"});
  CHECK(hex.out == "2\n");
  auto none = ct({"query", "-x", w / "idx", "-p", "zz", "-i", "1"});
  CHECK(none.code == 0);
  CHECK(none.out.empty());
  auto level = ct({"query", "-x", w / "idx", "-p", "a", "-i", "99"});
  CHECK(level.code == cli::kBadLevel);
  CHECK(level.out.empty());
  auto missing = ct({"query", "-x", w / "idx", "-p", "a", "-i", "2", "-e", "heavy"});
  CHECK(missing.code == cli::kFailure);
}

TEST_CASE("build rejects alpha 0") {
  Workspace w;
  auto b = ct({"build", "-c", w / "corpus.json", "-t", w / "tree.json", "-a", "0", "-o", w / "idx"});
  CHECK(b.code == cli::kFailure);
  CHECK(b.err.find("InvalidAlpha") != std::string::npos);
}

TEST_CASE("malformed index files exit with code 3") {
  Workspace w;
  REQUIRE(ct({"build", "-c", w / "corpus.json", "-t", w / "tree.json", "-e", "all", "-o", w / "idx"}).code == 0);
  std::ifstream in(w / "idx", std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), {});
  REQUIRE(bytes.size() > 100);

  std::string flipped = bytes;
  flipped[flipped.size() - 5] ^= 0x40;
  std::ofstream(w / "flipped", std::ios::binary) << flipped;
  CHECK(ct({"query", "-x", w / "flipped", "-p", "a", "-i", "2"}).code == cli::kMalformedIndex);

  std::ofstream(w / "short", std::ios::binary) << bytes.substr(0, bytes.size() / 2);
  CHECK(ct({"query", "-x", w / "short", "-p", "a", "-i", "2"}).code == cli::kMalformedIndex);

  std::ofstream(w / "magic", std::ios::binary) << "XXXX" << bytes.substr(4);
  CHECK(ct({"query", "-x", w / "magic", "-p", "a", "-i", "2"}).code == cli::kMalformedIndex);
}

TEST_CASE("heavy engine on a unary chain builds a single path") {
  Workspace w;
  std::ofstream(w / "chain.json") << tree_json(CategoryTree({kNoNode, 0, 1}, {2}, 1));
  std::ofstream(w / "one.json") << manifest_json(Corpus({"abc"}));
  REQUIRE(ct({"build", "-c", w / "one.json", "-t", w / "chain.json", "-e", "heavy", "-o", w / "idx"}).code == 0);
  const auto idx = CategoricalIndex::load(w / "idx");
  const auto& hp = dynamic_cast<const HeavyPathEngine&>(idx.engine(EngineKind::Heavy)).decomposition();
  CHECK(hp.paths().size() == 1);
  CHECK(ct({"query", "-x", w / "idx", "-p", "bc", "-i", "2"}).out == "1\n");
}

TEST_CASE("verify succeeds, is deterministic and catches an injected fault") {
  Workspace w;
  auto a = ct({"verify", "-c", w / "corpus.json", "-t", w / "tree.json", "-n", "1000", "--seed", "5"});
  CHECK(a.code == 0);
  auto b = ct({"verify", "-c", w / "corpus.json", "-t", w / "tree.json", "-n", "1000", "--seed", "5"});
  CHECK(a.out == b.out);
  auto f = ct({"verify", "-c", w / "corpus.json", "-t", w / "tree.json", "--inject-fault"});
  CHECK(f.code == cli::kFailure);
  CHECK(f.out.find("mismatch") != std::string::npos);
}

TEST_CASE("bench emits a stable CSV header") {
  Workspace w;
  auto a = ct({"bench", "-c", w / "corpus.json", "-t", w / "tree.json", "-a", "1", "-a", "4", "-n", "5"});
  auto b = ct({"bench", "-c", w / "corpus.json", "-t", w / "tree.json", "-n", "2", "-e", "heavy"});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  const auto header = a.out.substr(0, a.out.find('\n'));
  CHECK(header == b.out.substr(0, b.out.find('\n')));
  CHECK(header.rfind("engine,config,row,", 0) == 0);
  CHECK(a.out.find("colored(alpha=4)") != std::string::npos);
  CHECK(a.out.find("heavy,heavy(t*log^2 D),query") != std::string::npos);
}

TEST_CASE("gen writes loadable inputs") {
  Workspace w;
  auto g = ct({"gen", "--docs", "12", "--doc-len", "30", "--sigma", "3", "--height", "5", "--unary-density", "0.4",
               "--seed", "9", "-o", w / "gen"});
  REQUIRE(g.code == 0);
  const auto c = load_corpus(w / "gen/corpus.json");
  const auto t = load_tree(w / "gen/tree.json", c);
  CHECK(c.doc_count() == 12);
  CHECK(t.height() == 5);
  CHECK(ct({"verify", "-c", w / "gen/corpus.json", "-t", w / "gen/tree.json", "-n", "200"}).code == 0);
}

TEST_CASE("container round trip keeps every engine identical") {
  std::mt19937_64 rng(44);
  int mismatches = 0;
  for (int t = 0; t < 100; ++t) {
    SynthParams p;
    p.docs = 1 + rng() % 20;
    p.doc_len = 1 + rng() % 40;
    p.sigma = 1 + rng() % 26;
    p.height = p.docs == 1 ? 1 + rng() % 3 : 2 + rng() % 8;
    p.unary_density = 0.3;
    p.seed = rng();
    const auto inst = generate(p);
    BuildOptions o;
    o.engines = {EngineKind::Colored, EngineKind::Wavelet, EngineKind::Heavy};
    o.alpha = 1 + rng() % 4;
    o.doc_mode = t % 2 ? DocArrayMode::Compact : DocArrayMode::Stored;
    o.sample_rate = 1 + rng() % 6;
    const auto before = CategoricalIndex::build(inst.corpus, inst.tree, o);
    const auto after = CategoricalIndex::deserialize(before.serialize());
    auto c1 = before.make_context();
    auto c2 = after.make_context();
    for (int q = 0; q < 20; ++q) {
      const auto pat = sample_pattern(inst.corpus, rng, 4);
      const Level l = 1 + rng() % inst.tree.height();
      for (auto kind : before.engines()) mismatches += before.query(kind, pat, l, c1) != after.query(kind, pat, l, c2);
    }
  }
  CHECK(mismatches == 0);
}
