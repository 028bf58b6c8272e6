#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string_view>

#include "emseq/bit_sequence.hpp"
#include "emseq/word.hpp"

// Bit-parallel window matching over packed sequences.
//
// For a word w of length l, the match mask has bit p set iff letters
// p+1..p+l of the sequence spell w. A block of 64 mask bits is the AND over
// j < l of (sequence shifted by j) XNOR (broadcast of w[j]), so one pass
// costs O(l) word operations per 64 positions. The AVX2 variant runs four
// blocks per instruction; both variants produce identical masks.

namespace emseq::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa) noexcept;

/// Signature shared by every variant. Writes `count` mask blocks for blocks
/// first..first+count-1. `blocks` must be readable up to first+count
/// inclusive (BitSequence keeps a trailing zero block). Positions whose
/// window runs past the payload are not masked here.
using MatchBlocksFn = void (*)(const std::uint64_t* blocks, std::uint64_t word,
                               unsigned len, std::size_t first,
                               std::size_t count, std::uint64_t* out);

void match_blocks_scalar(const std::uint64_t* blocks, std::uint64_t word,
                         unsigned len, std::size_t first, std::size_t count,
                         std::uint64_t* out);
#if defined(__x86_64__) || defined(_M_X64)
void match_blocks_avx2(const std::uint64_t* blocks, std::uint64_t word,
                       unsigned len, std::size_t first, std::size_t count,
                       std::uint64_t* out);
#endif

bool cpu_supports(Isa isa) noexcept;
/// Best supported variant, unless EMSEQ_ISA=scalar is set in the
/// environment or set_isa() overrode it.
Isa active_isa() noexcept;
/// Throws invalid_argument when the CPU lacks the requested variant.
void set_isa(Isa isa);
MatchBlocksFn match_blocks_for(Isa isa);

/// Number of (overlapping) occurrences of `w` inside positions first..last
/// (1-based, inclusive). Zero when the range is shorter than w.
std::size_t count_matches(const BitSequence& seq, const Word& w,
                          std::size_t first, std::size_t last,
                          Isa isa = active_isa());

/// Calls fn(start) for each occurrence inside first..last in increasing
/// start order; stops early when fn returns false.
template <typename Fn>
void for_each_match(const BitSequence& seq, const Word& w, std::size_t first,
                    std::size_t last, Fn&& fn, Isa isa = active_isa());

namespace detail {
// Mask for payload block b restricted to starts in [lo, hi] (0-based).
inline std::uint64_t range_mask(std::size_t b, std::size_t lo,
                                std::size_t hi) noexcept {
  const std::size_t base = b * 64;
  std::uint64_t m = ~std::uint64_t{0};
  if (lo > base) m = lo - base >= 64 ? 0 : m << (lo - base);
  if (hi < base + 63) m &= hi < base ? 0 : low_mask(hi - base + 1);
  return m;
}
}  // namespace detail

template <typename Fn>
void for_each_match(const BitSequence& seq, const Word& w, std::size_t first,
                    std::size_t last, Fn&& fn, Isa isa) {
  if (w.empty() || first < 1 || last > seq.size() || first > last) return;
  if (last - first + 1 < w.size()) return;
  const std::size_t lo = first - 1;
  const std::size_t hi = last - w.size();  // last valid 0-based start
  const std::size_t b0 = lo / 64, b1 = hi / 64;
  const MatchBlocksFn kernel = match_blocks_for(isa);
  constexpr std::size_t kChunk = 64;
  std::uint64_t buf[kChunk];
  for (std::size_t b = b0; b <= b1; b += kChunk) {
    const std::size_t n = std::min(kChunk, b1 - b + 1);
    kernel(seq.blocks().data(), w.bits(), static_cast<unsigned>(w.size()), b,
           n, buf);
    for (std::size_t k = 0; k < n; ++k) {
      std::uint64_t m = buf[k] & detail::range_mask(b + k, lo, hi);
      while (m != 0) {
        const unsigned r = static_cast<unsigned>(__builtin_ctzll(m));
        if (!fn((b + k) * 64 + r + 1)) return;
        m &= m - 1;
      }
    }
  }
}

}  // namespace emseq::kernels
