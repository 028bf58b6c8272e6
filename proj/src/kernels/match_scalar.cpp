#include "emseq/kernels.hpp"

namespace emseq::kernels {

void match_blocks_scalar(const std::uint64_t* blocks, std::uint64_t word,
                         unsigned len, std::size_t first, std::size_t count,
                         std::uint64_t* out) {
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t b = first + k;
    const std::uint64_t lo = blocks[b];
    const std::uint64_t hi = blocks[b + 1];
    std::uint64_t acc = ~std::uint64_t{0};
    for (unsigned j = 0; j < len && acc != 0; ++j) {
      const std::uint64_t shifted = j == 0 ? lo : (lo >> j) | (hi << (64 - j));
      const std::uint64_t want = ((word >> j) & 1u) ? ~std::uint64_t{0} : 0;
      acc &= ~(shifted ^ want);
    }
    out[k] = acc;
  }
}

}  // namespace emseq::kernels
