// Compiled with -mavx2; only reached after a runtime CPU check.
#include "emseq/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace emseq::kernels {

void match_blocks_avx2(const std::uint64_t* blocks, std::uint64_t word,
                       unsigned len, std::size_t first, std::size_t count,
                       std::uint64_t* out) {
  std::size_t k = 0;
  const __m256i ones = _mm256_set1_epi64x(-1);
  for (; k + 4 <= count; k += 4) {
    const std::size_t b = first + k;
    const __m256i lo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(blocks + b));
    const __m256i hi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(blocks + b + 1));
    __m256i acc = ones;
    for (unsigned j = 0; j < len; ++j) {
      // Shift counts of 64 yield zero, so j == 0 needs no special case.
      const __m128i right = _mm_cvtsi32_si128(static_cast<int>(j));
      const __m128i left = _mm_cvtsi32_si128(static_cast<int>(64 - j));
      const __m256i shifted =
          _mm256_or_si256(_mm256_srl_epi64(lo, right), _mm256_sll_epi64(hi, left));
      const __m256i want = ((word >> j) & 1u) ? ones : _mm256_setzero_si256();
      acc = _mm256_andnot_si256(_mm256_xor_si256(shifted, want), acc);
      if ((j & 7) == 7 && _mm256_testz_si256(acc, acc)) break;
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + k), acc);
  }
  if (k < count) match_blocks_scalar(blocks, word, len, first + k, count - k, out + k);
}

}  // namespace emseq::kernels
#endif
