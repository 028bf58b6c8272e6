#include <atomic>
#include <bit>
#include <cstdlib>
#include <string>

#include "emseq/error.hpp"
#include "emseq/kernels.hpp"

namespace emseq::kernels {

namespace {

Isa detect() noexcept {
  if (const char* env = std::getenv("EMSEQ_ISA"); env != nullptr) {
    if (std::string(env) == "scalar") return Isa::scalar;
  }
  return cpu_supports(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<int>& selected() {
  static std::atomic<int> isa{static_cast<int>(detect())};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

bool cpu_supports(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept { return static_cast<Isa>(selected().load()); }

void set_isa(Isa isa) {
  if (!cpu_supports(isa)) {
    throw Error(Errc::invalid_argument,
                std::string("CPU does not support ") + std::string(to_string(isa)));
  }
  selected().store(static_cast<int>(isa));
}

MatchBlocksFn match_blocks_for(Isa isa) {
#if defined(__x86_64__) || defined(_M_X64)
  if (isa == Isa::avx2 && cpu_supports(Isa::avx2)) return &match_blocks_avx2;
#endif
  (void)isa;
  return &match_blocks_scalar;
}

std::size_t count_matches(const BitSequence& seq, const Word& w,
                          std::size_t first, std::size_t last, Isa isa) {
  if (w.empty() || first < 1 || last > seq.size() || first > last) return 0;
  if (last - first + 1 < w.size()) return 0;
  const std::size_t lo = first - 1;
  const std::size_t hi = last - w.size();
  const std::size_t b0 = lo / 64, b1 = hi / 64;
  const MatchBlocksFn kernel = match_blocks_for(isa);
  constexpr std::size_t kChunk = 256;
  std::uint64_t buf[kChunk];
  std::size_t total = 0;
  for (std::size_t b = b0; b <= b1; b += kChunk) {
    const std::size_t n = std::min(kChunk, b1 - b + 1);
    kernel(seq.blocks().data(), w.bits(), static_cast<unsigned>(w.size()), b, n, buf);
    for (std::size_t k = 0; k < n; ++k) {
      std::uint64_t m = buf[k];
      if (b + k == b0 || b + k == b1) m &= detail::range_mask(b + k, lo, hi);
      total += static_cast<std::size_t>(std::popcount(m));
    }
  }
  return total;
}

}  // namespace emseq::kernels
