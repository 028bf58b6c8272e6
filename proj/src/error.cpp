#include "emseq/error.hpp"

namespace emseq {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::capacity: return "capacity";
    case Errc::state_mismatch: return "state-mismatch";
    case Errc::malformed_header: return "malformed-header";
    case Errc::truncated_payload: return "truncated-payload";
    case Errc::version_mismatch: return "version-mismatch";
    case Errc::empty_word: return "empty-word";
    case Errc::word_too_long: return "word-too-long";
    case Errc::range: return "range";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::io: return "io";
  }
  return "unknown";
}

}  // namespace emseq
