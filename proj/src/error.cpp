#include "cattree/error.hpp"

namespace cattree {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::EmptyDocument: return "EmptyDocument";
    case Errc::MissingFile: return "MissingFile";
    case Errc::InvalidSymbol: return "InvalidSymbol";
    case Errc::MalformedManifest: return "MalformedManifest";
    case Errc::MalformedTree: return "MalformedTree";
    case Errc::LeafCountMismatch: return "LeafCountMismatch";
    case Errc::RaggedLeaves: return "RaggedLeaves";
    case Errc::CyclicTree: return "CyclicTree";
    case Errc::MultipleRoots: return "MultipleRoots";
    case Errc::InvalidAlpha: return "InvalidAlpha";
    case Errc::InvalidSampleRate: return "InvalidSampleRate";
    case Errc::InvalidPattern: return "InvalidPattern";
    case Errc::InvalidLevel: return "InvalidLevel";
    case Errc::MalformedIndex: return "MalformedIndex";
    case Errc::EngineUnavailable: return "EngineUnavailable";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

}  // namespace cattree
