#include "emseq/suffix_index.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <tuple>

#include "emseq/error.hpp"

namespace emseq {

namespace {

std::uint64_t reverse_bits(std::uint64_t v) noexcept {
  v = ((v >> 1) & 0x5555555555555555ull) | ((v & 0x5555555555555555ull) << 1);
  v = ((v >> 2) & 0x3333333333333333ull) | ((v & 0x3333333333333333ull) << 2);
  v = ((v >> 4) & 0x0F0F0F0F0F0F0F0Full) | ((v & 0x0F0F0F0F0F0F0F0Full) << 4);
  return __builtin_bswap64(v);
}

// Compares the suffix at 0-based offset p with w: <0, 0 when w is a prefix
// of the suffix, >0.
int compare_prefix(const BitSequence& text, std::size_t p, const Word& w) {
  const std::size_t avail = text.size() - p;
  const std::size_t k = std::min(avail, w.size());
  const std::uint64_t s = k == 0 ? 0 : text.window(p + 1, k);
  const std::uint64_t diff = (s ^ w.bits()) & low_mask(k);
  if (diff != 0) {
    const unsigned j = static_cast<unsigned>(std::countr_zero(diff));
    return ((s >> j) & 1u) ? 1 : -1;
  }
  return k < w.size() ? -1 : 0;
}

}  // namespace

SuffixArray::SuffixArray(const BitSequence& text) : text_(text) {
  const std::size_t m = text.size();
  if (m >= std::numeric_limits<std::uint32_t>::max()) {
    throw Error(Errc::capacity, "suffix array limited to 2^32-1 letters");
  }
  sa_.resize(m);
  lcp_.assign(m, 0);
  if (m == 0) return;

  // Round zero: order by the first 64 letters, shorter tails first.
  std::vector<std::uint64_t> key(m);
  std::vector<std::uint32_t> rank(m), tmp(m);
  for (std::size_t p = 0; p < m; ++p) {
    const std::size_t len = std::min<std::size_t>(64, m - p);
    key[p] = reverse_bits(text.window(p + 1, len));
  }
  std::iota(sa_.begin(), sa_.end(), 0u);
  auto tail = [m](std::uint32_t p) { return std::min<std::size_t>(64, m - p); };
  std::sort(sa_.begin(), sa_.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::pair(key[a], tail(a)) < std::pair(key[b], tail(b));
  });
  std::size_t classes = 1;
  rank[sa_[0]] = 0;
  for (std::size_t r = 1; r < m; ++r) {
    const std::uint32_t a = sa_[r - 1], b = sa_[r];
    if (key[a] != key[b] || tail(a) != tail(b)) ++classes;
    rank[b] = static_cast<std::uint32_t>(classes - 1);
  }

  // Prefix doubling; repeats longer than 64 letters are rare for EM data.
  for (std::size_t h = 64; classes < m; h *= 2) {
    auto second = [&](std::uint32_t p) -> std::int64_t {
      return p + h < m ? static_cast<std::int64_t>(rank[p + h]) : -1;
    };
    std::sort(sa_.begin(), sa_.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (rank[a] != rank[b]) return rank[a] < rank[b];
      return second(a) < second(b);
    });
    classes = 1;
    tmp[sa_[0]] = 0;
    for (std::size_t r = 1; r < m; ++r) {
      const std::uint32_t a = sa_[r - 1], b = sa_[r];
      if (rank[a] != rank[b] || second(a) != second(b)) ++classes;
      tmp[b] = static_cast<std::uint32_t>(classes - 1);
    }
    rank.swap(tmp);
  }

  // Kasai.
  for (std::size_t r = 0; r < m; ++r) rank[sa_[r]] = static_cast<std::uint32_t>(r);
  std::size_t h = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa_[rank[i] - 1];
    while (i + h < m && j + h < m && text[i + h + 1] == text[j + h + 1]) ++h;
    lcp_[rank[i]] = static_cast<std::uint32_t>(h);
    if (h > 0) --h;
  }
}

std::pair<std::size_t, std::size_t> SuffixArray::range(const Word& w) const {
  const auto lo = std::partition_point(sa_.begin(), sa_.end(), [&](std::uint32_t p) {
    return compare_prefix(text_, p, w) < 0;
  });
  const auto hi = std::partition_point(lo, sa_.end(), [&](std::uint32_t p) {
    return compare_prefix(text_, p, w) == 0;
  });
  return {static_cast<std::size_t>(lo - sa_.begin()),
          static_cast<std::size_t>(hi - sa_.begin())};
}

std::vector<std::uint32_t> longest_factor(const SuffixArray& index,
                                          FactorDirection direction) {
  const auto sa = index.sa();
  const auto lcp = index.lcp();
  const std::size_t m = sa.size();
  std::vector<std::uint32_t> out(m, 0);
  constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
  const bool earlier = direction == FactorDirection::toward_start;
  // A stack entry is a candidate neighbour; `down` is the minimum LCP
  // between it and the entry beneath it.
  struct Entry {
    std::uint32_t pos;
    std::uint32_t down;
  };
  std::vector<Entry> stack;
  auto dominated = [earlier](std::uint32_t cur, std::uint32_t top) {
    return earlier ? cur < top : cur > top;
  };
  auto visit = [&](std::size_t r, std::uint32_t& run) {
    std::uint32_t cur = run;
    while (!stack.empty() && dominated(sa[r], stack.back().pos)) {
      cur = std::min(cur, stack.back().down);
      stack.pop_back();
    }
    if (!stack.empty()) out[sa[r]] = std::max(out[sa[r]], cur);
    stack.push_back({sa[r], cur});
    run = kInf;
  };

  std::uint32_t run = kInf;
  for (std::size_t r = 0; r < m; ++r) {
    if (r > 0) run = std::min(run, lcp[r]);
    visit(r, run);
  }
  stack.clear();
  run = kInf;
  for (std::size_t r = m; r-- > 0;) {
    if (r + 1 < m) run = std::min(run, lcp[r + 1]);
    visit(r, run);
  }
  return out;
}

BitSequence reversed(const BitSequence& seq) {
  const std::size_t n = seq.size();
  std::vector<std::uint64_t> blocks((n + 63) / 64 + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    if (seq[n + 1 - i]) blocks[(i - 1) >> 6] |= std::uint64_t{1} << ((i - 1) & 63);
  }
  return BitSequence(std::move(blocks), n);
}

}  // namespace emseq
