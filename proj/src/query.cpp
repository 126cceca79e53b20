#include "cattree/query.hpp"

#include <algorithm>

namespace cattree {

void QueryScratch::ensure(std::size_t capacity) {
  if (capacity <= capacity_) return;
  words_.resize((capacity + 63) / 64, 0);
  capacity_ = capacity;
}

bool QueryScratch::all_zero() const noexcept {
  return touched_.empty() && std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

}  // namespace cattree
