#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cattree/bit_vector.hpp"
#include "cattree/corpus.hpp"
#include "cattree/packed_vector.hpp"
#include "cattree/query.hpp"
#include "cattree/wavelet_tree.hpp"

namespace cattree {

// Suffix array of text by prefix doubling with radix-sorted rank pairs.
// Values are 1-based text positions; a suffix that is a proper prefix of
// another sorts first.
std::vector<std::uint32_t> build_suffix_array(std::string_view text);

// Inclusive range of 1-based suffix-array rows; empty when first > last.
struct SuffixInterval {
  std::size_t first = 1;
  std::size_t last = 0;

  bool empty() const noexcept { return first > last; }
  std::size_t size() const noexcept { return empty() ? 0 : last - first + 1; }
};

// BWT index over the corpus concatenation with sampled suffix-array access.
//
// The BWT is stored as a balanced wavelet tree over the alphabet compacted
// to the bytes that occur (separator -> 0). The row whose suffix starts at
// text position 1 wraps around to the final separator; LF treats that one
// separator as a terminator smaller than every other, which keeps LF a
// single n'-cycle. Rows whose suffix starts at a position p with
// (p - 1) % sample_rate == 0 keep their SA value, so locate takes at most
// sample_rate - 1 LF steps.
class SuffixIndex {
 public:
  SuffixIndex() = default;
  SuffixIndex(const Corpus& corpus, std::span<const std::uint32_t> sa, std::size_t sample_rate);
  SuffixIndex(const Corpus& corpus, std::size_t sample_rate);

  // max(1, ceil(log2 n')).
  static std::size_t default_sample_rate(std::size_t n_prime) noexcept;

  std::size_t size() const noexcept { return occ_.size(); }
  std::size_t doc_count() const noexcept { return doc_count_; }
  std::size_t sample_rate() const noexcept { return sample_rate_; }
  std::size_t alphabet_size() const noexcept { return alphabet_.size(); }  // including the separator

  // Rows whose suffixes start with p. Throws Error(InvalidPattern) for an
  // empty pattern or one containing the separator; bytes that never occur
  // yield an empty interval.
  SuffixInterval count(std::string_view pattern) const;

  // SA[row], 1 <= row <= n'; throws std::out_of_range.
  std::size_t locate(std::size_t row, QueryStats* stats = nullptr) const;
  std::size_t locate_unchecked(std::size_t row, QueryStats* stats = nullptr) const noexcept;

  // Row of the suffix one position to the left (cyclically).
  std::size_t lf(std::size_t row) const noexcept;
  // BWT byte at a row.
  unsigned char bwt(std::size_t row) const noexcept;

  std::uint64_t occ_bits() const noexcept { return occ_.size_in_bits(); }
  std::uint64_t sample_bits() const noexcept { return sampled_.size_in_bits() + samples_.size_in_bits(); }
  std::uint64_t table_bits() const noexcept { return 64ULL * (c_table_.size() + code_.size() / 4); }
  std::uint64_t size_in_bits() const noexcept { return occ_bits() + sample_bits() + table_bits(); }

  void save(BinaryWriter& out) const;
  // load() checks the tables against each other; verify() additionally walks
  // LF over all n' rows, checking that it is one cycle, that every sample
  // holds the right position and that `separators` marks exactly the
  // separator positions. Both raise Error(MalformedIndex).
  static SuffixIndex load(BinaryReader& in);
  void verify(const BitVector& separators) const;

 private:
  static constexpr std::uint16_t kAbsent = 0xffff;

  void init_alphabet(const std::vector<unsigned char>& present);

  std::array<std::uint16_t, 256> code_{};
  std::vector<unsigned char> alphabet_;  // code -> byte
  std::vector<std::uint64_t> c_table_;   // code -> count of smaller symbols in the text
  WaveletTree occ_;
  std::size_t primary_ = 1;  // row whose suffix starts at text position 1
  BitVector sampled_;
  PackedVector samples_;
  std::size_t sample_rate_ = 1;
  std::size_t doc_count_ = 0;
};

enum class DocArrayMode { Stored, Compact };

// Document array: row -> id of the document its suffix starts in, 0 for
// separator suffixes (exactly rows 1..D). Stored mode keeps the values
// bit-packed; compact mode derives them from locate and a separator bitmap.
class DocumentArray {
 public:
  DocumentArray() = default;
  DocumentArray(const Corpus& corpus, std::span<const std::uint32_t> sa, DocArrayMode mode);

  // Full array A[1..n'] (index 0 holds A[1]) straight from the suffix array.
  static std::vector<DocId> materialize(const Corpus& corpus, std::span<const std::uint32_t> sa);

  DocArrayMode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept { return separators_.size(); }

  // A[row]; throws std::out_of_range.
  DocId at(std::size_t row, const SuffixIndex& text, QueryStats* stats = nullptr) const;
  DocId at_unchecked(std::size_t row, const SuffixIndex& text, QueryStats* stats = nullptr) const noexcept {
    if (mode_ == DocArrayMode::Stored) return static_cast<DocId>(stored_[row - 1]);
    if (row <= doc_count_) return 0;
    return static_cast<DocId>(separators_.rank1(text.locate_unchecked(row, stats)) + 1);
  }

  const BitVector& separators() const noexcept { return separators_; }
  std::uint64_t stored_bits() const noexcept { return stored_.size_in_bits(); }
  std::uint64_t size_in_bits() const noexcept { return stored_bits() + separators_.size_in_bits(); }

  void save(BinaryWriter& out) const;
  static DocumentArray load(BinaryReader& in);

 private:
  DocArrayMode mode_ = DocArrayMode::Stored;
  PackedVector stored_;
  BitVector separators_;
  std::size_t doc_count_ = 0;
};

}  // namespace cattree
