#pragma once

#include <cstdint>
#include <vector>

#include "cattree/corpus.hpp"

namespace cattree {

struct QueryResult {
  Level level = 0;
  std::vector<NodeId> nodes;  // strictly ascending

  std::size_t t() const noexcept { return nodes.size(); }
  friend bool operator==(const QueryResult&, const QueryResult&) = default;
};

// Work counters filled in by the engines.
struct QueryStats {
  std::uint64_t rmq_calls = 0;
  std::uint64_t array_accesses = 0;  // A_i reads
  std::uint64_t wavelet_visits = 0;  // bitvector nodes touched
  std::uint64_t lf_steps = 0;
  std::uint64_t path_depth = 0;  // deepest heavy-path recursion

  void reset() noexcept { *this = QueryStats{}; }
};

// Writable bitvector that must read all-zero between queries; set bits are
// tracked so the reset costs O(t).
class QueryScratch {
 public:
  QueryScratch() = default;
  explicit QueryScratch(std::size_t capacity) : words_((capacity + 63) / 64, 0), capacity_(capacity) {}

  std::size_t capacity() const noexcept { return capacity_; }
  void ensure(std::size_t capacity);

  // Sets bit i; returns false if it was already set.
  bool test_and_set(std::size_t i) {
    std::uint64_t& w = words_[i >> 6];
    const std::uint64_t bit = 1ULL << (i & 63);
    if (w & bit) return false;
    w |= bit;
    touched_.push_back(i);
    return true;
  }

  void reset() noexcept {
    for (auto i : touched_) words_[i >> 6] &= ~(1ULL << (i & 63));
    touched_.clear();
  }

  bool all_zero() const noexcept;

 private:
  std::vector<std::uint64_t> words_;
  std::vector<std::size_t> touched_;
  std::size_t capacity_ = 0;
};

// Per-query private state; one per concurrent caller.
struct QueryContext {
  QueryScratch scratch;
  QueryStats stats;
};

}  // namespace cattree
