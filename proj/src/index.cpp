#include "cattree/index.hpp"

#include <fstream>
#include <sstream>

#include "cattree/error.hpp"

namespace cattree {

namespace {

constexpr char kMagic[4] = {'C', 'T', 'I', 'X'};

std::string section_name(EngineKind kind) { return std::string("engine.") + engine_name(kind); }

}  // namespace

CategoricalIndex CategoricalIndex::build(const Corpus& corpus, const CategoryTree& tree, const BuildOptions& options) {
  if (tree.doc_count() != corpus.doc_count()) {
    throw Error(Errc::LeafCountMismatch, "tree and corpus disagree on the number of documents");
  }
  if (options.alpha && *options.alpha < 1) throw Error(Errc::InvalidAlpha, "alpha must be at least 1");
  const auto sa = build_suffix_array(corpus.concat());
  const std::size_t rate =
      options.sample_rate ? options.sample_rate : SuffixIndex::default_sample_rate(corpus.n_prime());
  const auto a = DocumentArray::materialize(corpus, sa);

  CategoricalIndex index;
  index.core_ = std::make_shared<IndexCore>(tree, SuffixIndex(corpus, sa, rate),
                                            DocumentArray(corpus, sa, options.doc_mode), corpus.n(), corpus.sigma());
  for (EngineKind kind : options.engines) {
    if (index.has(kind)) continue;
    switch (kind) {
      case EngineKind::Colored: {
        const std::uint32_t alpha =
            options.alpha.value_or(ColoredEngine::default_alpha(options.doc_mode, tree.height(), corpus.sigma()));
        index.engines_[kind] = std::make_unique<ColoredEngine>(index.core_, a, alpha);
        break;
      }
      case EngineKind::Wavelet:
        index.engines_[kind] = std::make_unique<ShapedWaveletEngine>(index.core_, a);
        break;
      case EngineKind::Heavy:
        index.engines_[kind] = std::make_unique<HeavyPathEngine>(index.core_, a);
        break;
    }
  }
  return index;
}

const Engine& CategoricalIndex::engine(EngineKind kind) const {
  auto it = engines_.find(kind);
  if (it == engines_.end()) {
    throw Error(Errc::EngineUnavailable, std::string("index has no ") + engine_name(kind) + " engine");
  }
  return *it->second;
}

std::vector<EngineKind> CategoricalIndex::engines() const {
  std::vector<EngineKind> kinds;
  for (const auto& [kind, engine] : engines_) kinds.push_back(kind);
  return kinds;
}

QueryContext CategoricalIndex::make_context() const {
  QueryContext ctx;
  ctx.scratch.ensure(core_->tree.max_level_size());
  return ctx;
}

SpaceReport CategoricalIndex::space() const {
  SpaceReport report = core_->space();
  for (const auto& [kind, engine] : engines_) {
    auto part = engine->space();
    report.insert(report.end(), part.begin(), part.end());
  }
  return report;
}

std::string CategoricalIndex::serialize() const {
  std::vector<std::pair<std::string, std::string>> sections;
  {
    BinaryWriter w;
    w.u64(core_->n);
    w.u32(core_->sigma);
    sections.emplace_back("meta", w.take());
  }
  {
    BinaryWriter w;
    core_->tree.save(w);
    sections.emplace_back("tree", w.take());
  }
  {
    BinaryWriter w;
    core_->text.save(w);
    sections.emplace_back("text", w.take());
  }
  {
    BinaryWriter w;
    core_->docs.save(w);
    sections.emplace_back("docs", w.take());
  }
  std::uint32_t mask = 0;
  for (const auto& [kind, engine] : engines_) {
    mask |= 1U << static_cast<unsigned>(kind);
    BinaryWriter w;
    engine->save(w);
    sections.emplace_back(section_name(kind), w.take());
  }

  std::uint64_t header = 4 + 4 + 4 + 4;
  for (const auto& [name, payload] : sections) header += 8 + name.size() + 8 * 3;
  BinaryWriter out;
  for (char c : kMagic) out.u8(static_cast<std::uint8_t>(c));
  out.u32(kFormatVersion);
  out.u32(mask);
  out.u32(static_cast<std::uint32_t>(sections.size()));
  std::uint64_t offset = header;
  for (const auto& [name, payload] : sections) {
    out.bytes(name);
    out.u64(offset);
    out.u64(payload.size());
    out.u64(fnv1a64(payload));
    offset += payload.size();
  }
  std::string bytes = out.take();
  for (const auto& [name, payload] : sections) bytes += payload;
  return bytes;
}

CategoricalIndex CategoricalIndex::deserialize(std::string_view bytes) {
  BinaryReader in(bytes);
  for (char c : kMagic) {
    if (in.u8() != static_cast<std::uint8_t>(c)) BinaryReader::fail("bad magic");
  }
  if (in.u32() != kFormatVersion) BinaryReader::fail("unsupported format version");
  const std::uint32_t mask = in.u32();
  const std::uint32_t count = in.u32();
  if (count > 64) BinaryReader::fail("too many sections");
  std::map<std::string, std::string_view> sections;
  for (std::uint32_t k = 0; k < count; ++k) {
    std::string name = in.bytes();
    const std::uint64_t offset = in.u64();
    const std::uint64_t length = in.u64();
    const std::uint64_t checksum = in.u64();
    if (offset > bytes.size() || length > bytes.size() - offset) BinaryReader::fail("section " + name + " out of bounds");
    const std::string_view payload = bytes.substr(offset, length);
    if (fnv1a64(payload) != checksum) BinaryReader::fail("checksum mismatch in section " + name);
    sections.emplace(std::move(name), payload);
  }
  auto section = [&](const std::string& name) {
    auto it = sections.find(name);
    if (it == sections.end()) BinaryReader::fail("missing section " + name);
    return BinaryReader(it->second);
  };
  auto finish = [](BinaryReader& r, const char* name) {
    if (!r.done()) BinaryReader::fail(std::string("trailing bytes in section ") + name);
  };

  auto meta = section("meta");
  const std::uint64_t n = meta.u64();
  const std::uint32_t sigma = meta.u32();
  finish(meta, "meta");
  auto tree_in = section("tree");
  auto tree = CategoryTree::load(tree_in);
  finish(tree_in, "tree");
  auto text_in = section("text");
  auto text = SuffixIndex::load(text_in);
  finish(text_in, "text");
  auto docs_in = section("docs");
  auto docs = DocumentArray::load(docs_in);
  finish(docs_in, "docs");
  if (docs.size() != text.size() || text.doc_count() != tree.doc_count() || n + tree.doc_count() != text.size()) {
    BinaryReader::fail("core sections disagree on sizes");
  }
  text.verify(docs.separators());

  CategoricalIndex index;
  index.core_ = std::make_shared<IndexCore>(std::move(tree), std::move(text), std::move(docs), n, sigma);
  for (EngineKind kind : {EngineKind::Colored, EngineKind::Wavelet, EngineKind::Heavy}) {
    if (!(mask & (1U << static_cast<unsigned>(kind)))) continue;
    auto in_engine = section(section_name(kind));
    switch (kind) {
      case EngineKind::Colored: index.engines_[kind] = ColoredEngine::load(index.core_, in_engine); break;
      case EngineKind::Wavelet: index.engines_[kind] = ShapedWaveletEngine::load(index.core_, in_engine); break;
      case EngineKind::Heavy: index.engines_[kind] = HeavyPathEngine::load(index.core_, in_engine); break;
    }
    finish(in_engine, engine_name(kind));
  }
  if (mask >> 3) BinaryReader::fail("unknown engine tag");
  return index;
}

void CategoricalIndex::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::MissingFile, "cannot write " + path.string());
  const std::string bytes = serialize();
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::MissingFile, "write failed for " + path.string());
}

CategoricalIndex CategoricalIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MissingFile, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

}  // namespace cattree
