#pragma once

#include <iosfwd>

namespace cattree::cli {

// Exit codes besides 0.
inline constexpr int kFailure = 1;
inline constexpr int kBadLevel = 2;
inline constexpr int kMalformedIndex = 3;

// Entry point of the `ct` tool; results go to out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cattree::cli
