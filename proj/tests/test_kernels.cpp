#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "emseq/bit_sequence.hpp"
#include "emseq/kernels.hpp"
#include "oracles.hpp"

using namespace emseq;
using kernels::Isa;

namespace {

std::vector<Isa> available() {
  std::vector<Isa> out{Isa::scalar};
  if (kernels::cpu_supports(Isa::avx2)) out.push_back(Isa::avx2);
  return out;
}

}  // namespace

TEST(Kernels, MaskBlocksAgreeAcrossVariants) {
  if (!kernels::cpu_supports(Isa::avx2)) GTEST_SKIP() << "no AVX2 on this CPU";
  std::mt19937_64 rng(5);
  for (int round = 0; round < 200; ++round) {
    const std::string text = oracle::random_bits(rng, 64 + rng() % 2000);
    const BitSequence s = BitSequence::from_string(text);
    const std::size_t len = 1 + rng() % 64;
    const std::uint64_t word = rng();
    const std::size_t blocks = s.payload_blocks();
    const std::size_t first = rng() % blocks;
    const std::size_t count = blocks - first;
    std::vector<std::uint64_t> a(count), b(count);
    kernels::match_blocks_scalar(s.blocks().data(), word & low_mask(len), static_cast<unsigned>(len),
                                 first, count, a.data());
    kernels::match_blocks_avx2(s.blocks().data(), word & low_mask(len), static_cast<unsigned>(len),
                               first, count, b.data());
    ASSERT_EQ(a, b) << "len=" << len << " first=" << first;
  }
}

TEST(Kernels, CountsMatchBruteForce) {
  std::mt19937_64 rng(9);
  for (const Isa isa : available()) {
    for (int round = 0; round < 300; ++round) {
      const std::string text = oracle::random_bits(rng, 1 + rng() % 600);
      const BitSequence s = BitSequence::from_string(text);
      const std::size_t len = 1 + rng() % std::min<std::size_t>(12, text.size());
      const std::size_t at = 1 + rng() % (text.size() - len + 1);
      const std::string w = rng() % 4 == 0 ? oracle::random_bits(rng, len) : text.substr(at - 1, len);
      const std::size_t k = 1 + rng() % text.size();
      const std::size_t n = k + rng() % (text.size() - k + 1);
      EXPECT_EQ(kernels::count_matches(s, Word::parse(w), k, n, isa), oracle::count(text, w, k, n))
          << kernels::to_string(isa) << " w=" << w << " k=" << k << " n=" << n;
    }
  }
}

TEST(Kernels, ForEachMatchInOrderAndStopsEarly) {
  std::mt19937_64 rng(13);
  const std::string text = oracle::random_bits(rng, 5000);
  const BitSequence s = BitSequence::from_string(text);
  for (const Isa isa : available()) {
    for (const char* w : {"0", "01", "1101", "0000000"}) {
      std::vector<std::size_t> got;
      kernels::for_each_match(s, Word::parse(w), 1, text.size(),
                              [&](std::size_t p) { got.push_back(p); return true; }, isa);
      EXPECT_EQ(got, oracle::starts(text, w));
      std::size_t calls = 0;
      kernels::for_each_match(s, Word::parse(w), 1, text.size(),
                              [&](std::size_t) { return ++calls < 3; }, isa);
      EXPECT_EQ(calls, std::min<std::size_t>(3, got.size()));
    }
  }
}

TEST(Kernels, EmptyAndShortRanges) {
  const BitSequence s = BitSequence::from_string("0101");
  EXPECT_EQ(kernels::count_matches(s, Word::parse("0101"), 2, 4), 0u);
  EXPECT_EQ(kernels::count_matches(s, Word::parse("0101"), 1, 4), 1u);
  EXPECT_EQ(kernels::count_matches(s, Word(), 1, 4), 0u);
  EXPECT_EQ(kernels::count_matches(BitSequence(), Word::parse("0"), 1, 0), 0u);
}

TEST(Kernels, DispatchHonoursOverride) {
  const Isa before = kernels::active_isa();
  kernels::set_isa(Isa::scalar);
  EXPECT_EQ(kernels::active_isa(), Isa::scalar);
  if (kernels::cpu_supports(Isa::avx2)) {
    kernels::set_isa(Isa::avx2);
    EXPECT_EQ(kernels::active_isa(), Isa::avx2);
  }
  kernels::set_isa(before);
}
