#include "cattree/suffix_index.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "cattree/error.hpp"

namespace cattree {

std::vector<std::uint32_t> build_suffix_array(std::string_view text) {
  const std::size_t n = text.size();
  std::vector<std::uint32_t> sa(n), rank(n), tmp(n), next_rank(n);
  if (n == 0) return sa;

  // Pass 0: counting sort by first byte.
  {
    std::vector<std::size_t> bucket(257, 0);
    for (unsigned char c : text) ++bucket[c + 1];
    for (std::size_t c = 1; c < bucket.size(); ++c) bucket[c] += bucket[c - 1];
    for (std::size_t i = 0; i < n; ++i) sa[bucket[static_cast<unsigned char>(text[i])]++] = static_cast<std::uint32_t>(i);
    std::uint32_t cls = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0 && text[sa[k]] != text[sa[k - 1]]) ++cls;
      rank[sa[k]] = cls;
    }
    if (cls + 1 == n) {
      for (auto& v : sa) ++v;
      return sa;
    }
  }

  std::vector<std::size_t> count(n + 1);
  for (std::size_t k = 1;; k <<= 1) {
    // Order by second key: suffixes shorter than k + 1 (key "past the end") first.
    std::size_t fill = 0;
    for (std::size_t i = n - std::min(n, k); i < n; ++i) tmp[fill++] = static_cast<std::uint32_t>(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (sa[j] >= k) tmp[fill++] = static_cast<std::uint32_t>(sa[j] - k);
    }
    // Stable counting sort by first key.
    std::fill(count.begin(), count.end(), 0);
    for (std::size_t i = 0; i < n; ++i) ++count[rank[i] + 1];
    for (std::size_t c = 1; c <= n; ++c) count[c] += count[c - 1];
    for (std::size_t j = 0; j < n; ++j) sa[count[rank[tmp[j]]]++] = tmp[j];

    auto second = [&](std::uint32_t i) -> std::int64_t { return i + k < n ? rank[i + k] : -1; };
    std::uint32_t cls = 0;
    next_rank[sa[0]] = 0;
    for (std::size_t j = 1; j < n; ++j) {
      if (rank[sa[j]] != rank[sa[j - 1]] || second(sa[j]) != second(sa[j - 1])) ++cls;
      next_rank[sa[j]] = cls;
    }
    rank.swap(next_rank);
    if (cls + 1 == n) break;
  }
  for (auto& v : sa) ++v;
  return sa;
}

std::size_t SuffixIndex::default_sample_rate(std::size_t n_prime) noexcept {
  return n_prime <= 2 ? 1 : static_cast<std::size_t>(std::bit_width(n_prime - 1));
}

SuffixIndex::SuffixIndex(const Corpus& corpus, std::size_t sample_rate)
    : SuffixIndex(corpus, build_suffix_array(corpus.concat()), sample_rate) {}

void SuffixIndex::init_alphabet(const std::vector<unsigned char>& present) {
  code_.fill(kAbsent);
  alphabet_ = present;
  for (std::size_t c = 0; c < alphabet_.size(); ++c) code_[alphabet_[c]] = static_cast<std::uint16_t>(c);
}

SuffixIndex::SuffixIndex(const Corpus& corpus, std::span<const std::uint32_t> sa, std::size_t sample_rate)
    : sample_rate_(sample_rate), doc_count_(corpus.doc_count()) {
  if (sample_rate == 0) throw Error(Errc::InvalidSampleRate, "sample rate must be at least 1");
  const std::string& text = corpus.concat();
  const std::size_t n = text.size();
  if (sa.size() != n) throw std::invalid_argument("suffix array length does not match the text");

  std::array<std::uint64_t, 256> freq{};
  for (unsigned char c : text) ++freq[c];
  std::vector<unsigned char> present;
  for (unsigned b = 0; b < 256; ++b) {
    if (freq[b]) present.push_back(static_cast<unsigned char>(b));
  }
  init_alphabet(present);
  c_table_.assign(alphabet_.size(), 0);
  for (std::size_t c = 1; c < alphabet_.size(); ++c) c_table_[c] = c_table_[c - 1] + freq[alphabet_[c - 1]];

  std::vector<Symbol> bwt(n);
  BitVectorBuilder sampled(n);
  std::vector<std::uint64_t> samples;
  for (std::size_t row = 0; row < n; ++row) {
    const std::size_t pos = sa[row];
    bwt[row] = code_[static_cast<unsigned char>(pos > 1 ? text[pos - 2] : text[n - 1])];
    if (pos == 1) primary_ = row + 1;
    if ((pos - 1) % sample_rate_ == 0) {
      sampled.set(row);
      samples.push_back(pos);
    }
  }
  occ_ = WaveletTree(bwt, WaveletShape::balanced(0, static_cast<Symbol>(alphabet_.size() - 1)));
  sampled_ = std::move(sampled).build();
  samples_ = PackedVector::pack(samples);
}

SuffixInterval SuffixIndex::count(std::string_view pattern) const {
  if (pattern.empty()) throw Error(Errc::InvalidPattern, "empty pattern");
  if (pattern.find(kSeparator) != std::string_view::npos) {
    throw Error(Errc::InvalidPattern, "pattern contains the separator byte");
  }
  std::size_t b = 0, e = size();
  for (auto it = pattern.rbegin(); it != pattern.rend(); ++it) {
    const std::uint16_t code = code_[static_cast<unsigned char>(*it)];
    if (code == kAbsent) return {};
    b = c_table_[code] + occ_.rank_unchecked(code, b);
    e = c_table_[code] + occ_.rank_unchecked(code, e);
    if (b >= e) return {};
  }
  return {b + 1, e};
}

std::size_t SuffixIndex::lf(std::size_t row) const noexcept {
  const auto [code, before] = occ_.access_rank(row - 1);
  if (code != 0) return c_table_[code] + before + 1;
  if (row == primary_) return 1;
  // Real separators precede every separator suffix except the terminator at row 1.
  const std::size_t real_before = before - (primary_ < row ? 1 : 0);
  return real_before + 2;
}

unsigned char SuffixIndex::bwt(std::size_t row) const noexcept { return alphabet_[occ_.access_rank(row - 1).first]; }

std::size_t SuffixIndex::locate_unchecked(std::size_t row, QueryStats* stats) const noexcept {
  std::size_t steps = 0;
  while (!sampled_.get(row - 1)) {
    row = lf(row);
    ++steps;
  }
  if (stats) stats->lf_steps += steps;
  return samples_[sampled_.rank1(row - 1)] + steps;
}

std::size_t SuffixIndex::locate(std::size_t row, QueryStats* stats) const {
  if (row == 0 || row > size()) throw std::out_of_range("suffix array row " + std::to_string(row) + " out of range");
  return locate_unchecked(row, stats);
}

void SuffixIndex::save(BinaryWriter& out) const {
  out.u64(sample_rate_);
  out.u64(doc_count_);
  out.u64(primary_);
  out.vec(std::vector<std::uint8_t>(alphabet_.begin(), alphabet_.end()));
  out.vec(c_table_);
  occ_.save(out);
  sampled_.save(out);
  samples_.save(out);
}

SuffixIndex SuffixIndex::load(BinaryReader& in) {
  SuffixIndex idx;
  idx.sample_rate_ = in.u64();
  idx.doc_count_ = in.u64();
  idx.primary_ = in.u64();
  const auto alphabet = in.vec<std::uint8_t>();
  if (alphabet.empty() || alphabet[0] != 0 || !std::is_sorted(alphabet.begin(), alphabet.end()) ||
      std::adjacent_find(alphabet.begin(), alphabet.end()) != alphabet.end()) {
    BinaryReader::fail("text alphabet");
  }
  idx.init_alphabet(std::vector<unsigned char>(alphabet.begin(), alphabet.end()));
  idx.c_table_ = in.vec<std::uint64_t>();
  idx.occ_ = WaveletTree::load(in);
  idx.sampled_ = BitVector::load(in);
  idx.samples_ = PackedVector::load(in);
  const std::size_t n = idx.occ_.size();
  if (idx.sample_rate_ == 0 || idx.c_table_.size() != alphabet.size() || idx.primary_ == 0 || idx.primary_ > n ||
      idx.sampled_.size() != n || idx.samples_.size() != idx.sampled_.count(true) || idx.doc_count_ > n ||
      idx.occ_.shape().nodes[0].hi + 1 != alphabet.size() || alphabet.size() < 2) {
    BinaryReader::fail("text index tables inconsistent");
  }
  // C must count the smaller symbols of the BWT itself, and symbol 0 must
  // occur once per document.
  std::uint64_t below = 0;
  for (std::size_t c = 0; c < alphabet.size(); ++c) {
    if (idx.c_table_[c] != below) BinaryReader::fail("text index C table");
    const std::size_t occurrences = idx.occ_.rank_unchecked(static_cast<Symbol>(c), n);
    if (occurrences == 0 || (c == 0 && occurrences != idx.doc_count_)) BinaryReader::fail("text index symbol counts");
    below += occurrences;
  }
  if (idx.occ_.access_rank(idx.primary_ - 1).first != 0) BinaryReader::fail("text index primary row");
  return idx;
}

void SuffixIndex::verify(const BitVector& separators) const {
  const std::size_t n = size();
  if (separators.size() != n) BinaryReader::fail("separator bitmap length");
  std::vector<bool> seen(n + 1, false);
  std::size_t row = primary_;
  std::size_t pos = 1;  // text position of row's suffix
  for (std::size_t step = 0; step < n; ++step) {
    if (seen[row]) BinaryReader::fail("LF is not a single cycle");
    seen[row] = true;
    const bool sampled = sampled_.get(row - 1);
    if (sampled != ((pos - 1) % sample_rate_ == 0)) BinaryReader::fail("suffix array sampling pattern");
    if (sampled && samples_[sampled_.rank1(row - 1)] != pos) BinaryReader::fail("suffix array sample value");
    const std::size_t before = pos == 1 ? n : pos - 1;
    if (separators.get(before - 1) != (occ_.access_rank(row - 1).first == 0)) {
      BinaryReader::fail("separator bitmap disagrees with the text");
    }
    row = lf(row);
    pos = before;
  }
  if (row != primary_) BinaryReader::fail("LF does not close its cycle");
}

std::vector<DocId> DocumentArray::materialize(const Corpus& corpus, std::span<const std::uint32_t> sa) {
  const std::string& text = corpus.concat();
  std::vector<DocId> doc_at_pos(text.size());
  DocId doc = 1;
  for (std::size_t p = 0; p < text.size(); ++p) {
    doc_at_pos[p] = text[p] == kSeparator ? 0 : doc;
    if (text[p] == kSeparator) ++doc;
  }
  std::vector<DocId> a(sa.size());
  for (std::size_t row = 0; row < sa.size(); ++row) a[row] = doc_at_pos[sa[row] - 1];
  return a;
}

DocumentArray::DocumentArray(const Corpus& corpus, std::span<const std::uint32_t> sa, DocArrayMode mode)
    : mode_(mode), doc_count_(corpus.doc_count()) {
  BitVectorBuilder seps(corpus.n_prime());
  const std::string& text = corpus.concat();
  for (std::size_t p = 0; p < text.size(); ++p) {
    if (text[p] == kSeparator) seps.set(p);
  }
  separators_ = std::move(seps).build();
  if (mode_ == DocArrayMode::Stored) {
    const auto a = materialize(corpus, sa);
    stored_ = PackedVector::pack(std::span<const std::uint32_t>(a));
  }
}

DocId DocumentArray::at(std::size_t row, const SuffixIndex& text, QueryStats* stats) const {
  if (row == 0 || row > size()) throw std::out_of_range("document array row " + std::to_string(row) + " out of range");
  return at_unchecked(row, text, stats);
}

void DocumentArray::save(BinaryWriter& out) const {
  out.u8(mode_ == DocArrayMode::Stored ? 0 : 1);
  out.u64(doc_count_);
  separators_.save(out);
  if (mode_ == DocArrayMode::Stored) stored_.save(out);
}

DocumentArray DocumentArray::load(BinaryReader& in) {
  DocumentArray da;
  const auto mode = in.u8();
  if (mode > 1) BinaryReader::fail("document array mode");
  da.mode_ = mode == 0 ? DocArrayMode::Stored : DocArrayMode::Compact;
  da.doc_count_ = in.u64();
  da.separators_ = BitVector::load(in);
  if (da.separators_.count(true) != da.doc_count_) BinaryReader::fail("separator bitmap");
  if (da.mode_ == DocArrayMode::Stored) {
    da.stored_ = PackedVector::load(in);
    if (da.stored_.size() != da.separators_.size()) BinaryReader::fail("document array length");
    for (std::size_t row = 0; row < da.stored_.size(); ++row) {
      const std::uint64_t doc = da.stored_[row];
      if ((row < da.doc_count_) != (doc == 0) || doc > da.doc_count_) BinaryReader::fail("document array value");
    }
  }
  return da;
}

}  // namespace cattree
