#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "fixtures.hpp"

#include "cattree/corpus.hpp"
#include "cattree/error.hpp"

using namespace cattree;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected cattree::Error");
  return Errc::MalformedIndex;
}

}  // namespace

TEST_CASE("concatenation of the running corpus") {
  const auto c = fixtures::running_corpus();
  CHECK(c.concat() == std::string("ab\0ba\0aa\0bb\0", 12));
  CHECK(c.n() == 8);
  CHECK(c.n_prime() == 12);
  CHECK(c.doc_count() == 4);
  CHECK(c.sigma() == 'b');
}

TEST_CASE("single document corpus") {
  const Corpus c({"a"});
  CHECK(c.concat() == std::string("a\0", 2));
  CHECK(c.n() == 1);
  CHECK(c.n_prime() == 2);
}

TEST_CASE("corpus validation") {
  CHECK(code_of([] { Corpus({}); }) == Errc::EmptyCorpus);
  CHECK(code_of([] { Corpus({"a", ""}); }) == Errc::EmptyDocument);
  CHECK(code_of([] { Corpus({std::string("a\0b", 3)}); }) == Errc::InvalidSymbol);
  CHECK(code_of([] { Corpus({"abc"}, 98); }) == Errc::InvalidSymbol);
  CHECK(Corpus({"abc"}, 200).sigma() == 200);
}

TEST_CASE("manifest parsing") {
  const auto c = parse_manifest(R"({"documents":[{"id":2,"text":"ba"},{"id":1,"text":"ab"}]})");
  CHECK(c.document(1) == "ab");
  CHECK(c.document(2) == "ba");
  CHECK(code_of([] { parse_manifest(R"({"documents":[]})"); }) == Errc::EmptyCorpus);
  CHECK(code_of([] { parse_manifest("not json"); }) == Errc::MalformedManifest);
  CHECK(code_of([] { parse_manifest(R"({"documents":[{"id":1,"text":"a"},{"id":3,"text":"b"}]})"); }) ==
        Errc::MalformedManifest);
  CHECK(code_of([] { parse_manifest(R"({"documents":[{"id":1,"path":"nope.txt"}]})", "/nonexistent"); }) ==
        Errc::MissingFile);
}

TEST_CASE("manifest with document files reproduces the bytes") {
  const auto dir = std::filesystem::temp_directory_path() / "cattree_manifest_test";
  std::filesystem::create_directories(dir);
  const std::string raw = "line one\nline \x01two\xff";
  std::ofstream(dir / "d1.bin", std::ios::binary) << raw;
  std::ofstream(dir / "m.json") << R"({"documents":[{"id":1,"path":"d1.bin"},{"id":2,"text":"xy"}]})";
  const auto c = load_corpus(dir / "m.json");
  CHECK(c.document(1) == raw);
  CHECK(c.document(2) == "xy");
  CHECK(c.sigma() == 0xff);
  std::filesystem::remove_all(dir);
}

TEST_CASE("running tree") {
  const auto t = fixtures::running_tree();
  CHECK(t.height() == 3);
  CHECK(t.node_count() == 7);
  CHECK(t.root() == fixtures::r);
  CHECK(t.level(fixtures::v) == 2);
  CHECK(t.leaf_of(3) == fixtures::l3);
  CHECK(t.level_size(2) == 2);
  CHECK(t.level_rank(fixtures::v) == 1);
  CHECK(t.children(fixtures::r).size() == 2);
}

TEST_CASE("unary chain tree") {
  const CategoryTree t({kNoNode, 0, 1}, {2}, 1);
  CHECK(t.height() == 3);
  CHECK(t.node_count() == 3);
}

TEST_CASE("tree validation") {
  // leaves at levels 2 and 3
  CHECK(code_of([] { CategoryTree({kNoNode, 0, 0, 1}, {2, 3}, 2); }) == Errc::RaggedLeaves);
  CHECK(code_of([] { CategoryTree({kNoNode, kNoNode}, {0, 1}, 2); }) == Errc::MultipleRoots);
  CHECK(code_of([] { CategoryTree({kNoNode, 2, 1}, {0}, 1); }) == Errc::CyclicTree);
  CHECK(code_of([] { CategoryTree({kNoNode, 0, 0}, {1, 2}, 3); }) == Errc::LeafCountMismatch);
  CHECK(code_of([] { CategoryTree({kNoNode, 0, 0}, {1, 1}, 2); }) == Errc::MalformedTree);
  CHECK(code_of([] { CategoryTree({kNoNode, 0, 0}, {0, 1}, 2); }) == Errc::MalformedTree);
}

TEST_CASE("tree file parsing") {
  const auto t = parse_tree(
      R"({"nodes":[{"id":0,"parent":null},{"id":1,"parent":0},{"id":2,"parent":0}],"leaves":[2,1]})", 2);
  CHECK(t.leaf_of(1) == 2);
  CHECK(code_of([] { parse_tree(R"({"nodes":[{"id":0,"parent":null}],"leaves":[0]})", 2); }) ==
        Errc::LeafCountMismatch);
  CHECK(code_of([] { parse_tree(R"({"nodes":[{"id":0,"parent":null},{"id":0,"parent":null}],"leaves":[0]})", 1); }) ==
        Errc::MalformedTree);
  CHECK(code_of([] { parse_tree("[1,2]", 1); }) == Errc::MalformedTree);
}

TEST_CASE("every leaf reaches the root in h-1 steps") {
  const auto t = fixtures::running_tree();
  for (NodeId leaf : t.leaves()) CHECK(fixtures::walk_level(t.parents(), leaf) == t.height());
}

TEST_CASE("json round trips") {
  const auto c = fixtures::running_corpus();
  const auto t = fixtures::running_tree();
  CHECK(parse_manifest(manifest_json(c)).documents() == c.documents());
  const auto t2 = parse_tree(tree_json(t), 4);
  CHECK(t2.parents() == t.parents());
  CHECK(std::equal(t2.leaves().begin(), t2.leaves().end(), t.leaves().begin(), t.leaves().end()));
  BinaryWriter w;
  t.save(w);
  BinaryReader r(w.data());
  CHECK(CategoryTree::load(r).parents() == t.parents());
}
