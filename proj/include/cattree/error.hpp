#pragma once

#include <stdexcept>
#include <string>

namespace cattree {

enum class Errc {
  EmptyCorpus,
  EmptyDocument,
  MissingFile,
  InvalidSymbol,
  MalformedManifest,
  MalformedTree,
  LeafCountMismatch,
  RaggedLeaves,
  CyclicTree,
  MultipleRoots,
  InvalidAlpha,
  InvalidSampleRate,
  InvalidPattern,
  InvalidLevel,
  MalformedIndex,
  EngineUnavailable,
};

const char* errc_name(Errc code) noexcept;

// Domain error carrying a machine-checkable code; primitive index
// violations (rank/select/rmq bounds) throw std::out_of_range instead.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cattree
