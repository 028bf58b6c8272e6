#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "emseq/bit_sequence.hpp"
#include "emseq/word.hpp"

namespace emseq {

/// Suffix array and LCP array over a frozen bit string.
///
/// Suffixes are 0-based text offsets. lcp()[r] is the longest common prefix
/// of the suffixes at ranks r-1 and r (lcp()[0] == 0).
class SuffixArray {
 public:
  SuffixArray() = default;
  explicit SuffixArray(const BitSequence& text);

  const BitSequence& text() const noexcept { return text_; }
  std::size_t size() const noexcept { return sa_.size(); }
  std::span<const std::uint32_t> sa() const noexcept { return sa_; }
  std::span<const std::uint32_t> lcp() const noexcept { return lcp_; }

  /// Half-open rank interval of suffixes starting with w.
  std::pair<std::size_t, std::size_t> range(const Word& w) const;

 private:
  BitSequence text_;
  std::vector<std::uint32_t> sa_;
  std::vector<std::uint32_t> lcp_;
};

/// For every offset i, the longest common prefix of suffix i with any
/// suffix starting before i (toward_start) or after i (toward_end).
/// toward_start yields the longest-previous-factor array.
enum class FactorDirection { toward_start, toward_end };
std::vector<std::uint32_t> longest_factor(const SuffixArray& sa,
                                          FactorDirection direction);

/// Reverses letters 1..n of `seq`.
BitSequence reversed(const BitSequence& seq);

}  // namespace emseq
