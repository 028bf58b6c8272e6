#include "emseq/generator.hpp"

#include <cassert>
#include <string>
#include <unordered_map>

#include "emseq/error.hpp"

namespace emseq {

std::string_view to_string(Engine engine) noexcept {
  return engine == Engine::naive ? "naive" : "fast";
}

Engine parse_engine(std::string_view name) {
  if (name == "naive") return Engine::naive;
  if (name == "fast") return Engine::fast;
  throw Error(Errc::invalid_argument, "unknown engine '" + std::string(name) + "'");
}

namespace detail {

struct Match {
  std::size_t len = 0;
  std::size_t source_end = 0;
};

class Matcher {
 public:
  virtual ~Matcher() = default;
  /// Longest suffix of x_1^{t-1} ending earlier, at its last earlier end.
  /// `last_len` is the match length used for step t-1.
  virtual Match find(const BitBuffer& bits, std::size_t t, std::size_t last_len) = 0;
};

namespace {

// Scans every candidate end j from t-2 downward and keeps the first (so
// latest) end achieving a strictly longer common suffix.
class NaiveMatcher final : public Matcher {
 public:
  Match find(const BitBuffer& bits, std::size_t t, std::size_t) override {
    Match best;
    for (std::size_t j = t - 2; j >= 1 && j > best.len; --j) {
      std::size_t l = 0;
      while (l < j && bits[j - l] == bits[t - 1 - l]) ++l;
      if (l > best.len) best = {l, j};
    }
    return best;
  }
};

// Last-end dictionary keyed by (length, packed word). Holds every
// occurrence of every length <= cap_ ending at or before inserted_.
class FastMatcher final : public Matcher {
 public:
  Match find(const BitBuffer& bits, std::size_t t, std::size_t last_len) override {
    while (inserted_ < t - 2) insert_end(bits, ++inserted_);
    const std::size_t want = std::min(last_len + 1, t - 2);
    while (cap_ < want) grow(bits);
    for (std::size_t len = want; len >= 1; --len) {
      const std::uint64_t w = bits.window(t - len, len);
      if (const std::uint32_t end = lookup(len, w); end != 0) return {len, end};
    }
    return {};
  }

 private:
  static constexpr std::size_t kDenseMax = 22;

  std::uint32_t lookup(std::size_t len, std::uint64_t w) const {
    if (len <= kDenseMax) return dense_[len][w];
    const auto& m = sparse_[len - kDenseMax - 1];
    const auto it = m.find(w);
    return it == m.end() ? 0 : it->second;
  }

  void store(std::size_t len, std::uint64_t w, std::size_t end) {
    if (len <= kDenseMax) {
      dense_[len][w] = static_cast<std::uint32_t>(end);
    } else {
      sparse_[len - kDenseMax - 1][w] = static_cast<std::uint32_t>(end);
    }
  }

  void insert_end(const BitBuffer& bits, std::size_t end) {
    const std::size_t top = std::min(cap_, end);
    if (top == 0) return;
    const std::uint64_t win = bits.window(end - top + 1, top);
    for (std::size_t len = 1; len <= top; ++len) store(len, win >> (top - len), end);
  }

  void grow(const BitBuffer& bits) {
    const std::size_t len = ++cap_;
    if (len <= kDenseMax) {
      dense_.resize(len + 1);
      dense_[len].assign(std::size_t{1} << len, 0);
    } else {
      sparse_.emplace_back();
    }
    for (std::size_t end = len; end <= inserted_; ++end) {
      store(len, bits.window(end - len + 1, len), end);
    }
  }

  std::size_t cap_ = 0;
  std::size_t inserted_ = 0;
  std::vector<std::vector<std::uint32_t>> dense_{1};
  std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> sparse_;
};

}  // namespace
}  // namespace detail

Generator::Generator(Engine engine, std::size_t capacity)
    : engine_(engine), capacity_(std::min(capacity, kMaxCapacity)) {
  if (engine == Engine::naive) {
    matcher_ = std::make_unique<detail::NaiveMatcher>();
  } else {
    matcher_ = std::make_unique<detail::FastMatcher>();
  }
}

Generator::~Generator() = default;
Generator::Generator(Generator&&) noexcept = default;
Generator& Generator::operator=(Generator&&) noexcept = default;

std::vector<StepTrace> Generator::advance(std::size_t extra) {
  if (extra > capacity_ || bits_.size() > capacity_ - extra) {
    throw Error(Errc::capacity, "requested " + std::to_string(bits_.size() + extra) +
                                    " bits; storage limit is " +
                                    std::to_string(capacity_));
  }
  static constexpr int kSeed[3] = {0, 1, 0};
  std::vector<StepTrace> trace;
  const std::size_t target = bits_.size() + extra;
  if (target > 3) trace.reserve(target - std::max<std::size_t>(bits_.size(), 3));
  while (bits_.size() < target) {
    const std::size_t t = bits_.size() + 1;
    if (t <= 3) {
      bits_.push_back(kSeed[t - 1]);
      continue;
    }
    const detail::Match m = matcher_->find(bits_, t, last_len_);
    // The seed guarantees "0" recurs, so the fallback never fires past t=3.
    assert(m.len > 0);
    const int emitted = m.len > 0 ? 1 - bits_[m.source_end + 1] : 0;
    bits_.push_back(emitted);
    trace.push_back({t, t - m.len, m.len, m.source_end, emitted});
    last_len_ = m.len;
    alpha_ = std::max(alpha_, m.len);
  }
  return trace;
}

Generation generate(std::size_t n, Engine engine, std::size_t capacity) {
  if (n == 0) throw Error(Errc::invalid_argument, "n must be positive");
  Generator gen(engine, capacity);
  auto trace = gen.advance(n);
  return {gen.sequence(), std::move(trace)};
}

Generation extend(const BitSequence& seq, Generator& state, std::size_t extra) {
  if (!state.corresponds_to(seq)) {
    throw Error(Errc::state_mismatch,
                "engine state holds " + std::to_string(state.size()) +
                    " bits that do not match the given sequence of " +
                    std::to_string(seq.size()));
  }
  auto trace = state.advance(extra);
  return {state.sequence(), std::move(trace)};
}

}  // namespace emseq
