#pragma once

#include <stdexcept>
#include <string>

namespace emseq {

enum class Errc {
  capacity,
  state_mismatch,
  malformed_header,
  truncated_payload,
  version_mismatch,
  empty_word,
  word_too_long,
  range,
  invalid_argument,
  io,
};

const char* to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the Errc categories so
/// callers (and the CLI exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace emseq
