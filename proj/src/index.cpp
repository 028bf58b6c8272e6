#include "emseq/index.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "emseq/error.hpp"
#include "emseq/kernels.hpp"

namespace emseq {

std::string_view to_string(WordClassKind kind) noexcept {
  switch (kind) {
    case WordClassKind::good: return "good";
    case WordClassKind::bad: return "bad";
    case WordClassKind::boundary: return "boundary";
    case WordClassKind::undetermined: return "undetermined";
  }
  return "undetermined";
}

namespace {

void require_word(const Word& w) {
  if (w.empty()) throw Error(Errc::empty_word, "word must be nonempty");
}

void require_bounds(const BitSequence& seq, std::size_t k, std::size_t n) {
  if (k < 1 || k > n || n > seq.size()) {
    throw Error(Errc::range, "invalid range " + std::to_string(k) + ".." +
                                 std::to_string(n) + " for a sequence of " +
                                 std::to_string(seq.size()) + " bits");
  }
}

WordClass classify_from(const Word& w, std::span<const std::size_t> starts,
                        const BitSequence& seq) {
  WordClass c{w, WordClassKind::undetermined, std::nullopt};
  if (starts.size() < 2) return c;
  if (starts[0] == 1) {
    c.kind = WordClassKind::boundary;
    return c;
  }
  const int p1 = seq[starts[0] - 1];
  const int p2 = seq[starts[1] - 1];
  c.first_two_preceding = std::pair{p1, p2};
  c.kind = p1 != p2 ? WordClassKind::good : WordClassKind::bad;
  return c;
}

}  // namespace

std::size_t count_occurrences(const BitSequence& seq, const Word& w,
                              std::size_t k, std::size_t n) {
  require_word(w);
  require_bounds(seq, k, n);
  return kernels::count_matches(seq, w, k, n);
}

std::vector<Occurrence> occurrences_of(const BitSequence& seq, const Word& w,
                                       std::size_t limit) {
  require_word(w);
  if (limit == 0) throw Error(Errc::invalid_argument, "limit must be positive");
  std::vector<Occurrence> out;
  if (seq.empty()) return out;
  kernels::for_each_match(seq, w, 1, seq.size(), [&](std::size_t start) {
    out.push_back({w, start, start + w.size() - 1});
    return out.size() < limit;
  });
  return out;
}

MatchView b_plus(const BitSequence& seq, std::size_t i) {
  if (i < 1 || i > seq.size()) {
    throw Error(Errc::range, "position " + std::to_string(i) + " outside the sequence");
  }
  std::size_t best = 0;
  for (std::size_t j = 1; j < i; ++j) {
    std::size_t l = 0;
    while (i + l <= seq.size() && seq[j + l] == seq[i + l]) ++l;
    best = std::max(best, l);
  }
  return {i, seq.word(i, best), best};
}

std::vector<std::uint32_t> match_lengths(const BitSequence& seq, std::size_t n) {
  if (n > seq.size()) throw Error(Errc::range, "n exceeds sequence length");
  std::vector<std::uint32_t> out(n + 1, 0);
  if (n <= 3) return out;
  // Step t matches a suffix of x_1^{t-1}; in the reversed prefix of length
  // n-1 that suffix starts at offset n-t and earlier ends become later
  // offsets.
  const SuffixArray sa(reversed(seq.prefix(n - 1)));
  const auto next = longest_factor(sa, FactorDirection::toward_end);
  for (std::size_t t = 4; t <= n; ++t) out[t] = next[n - t];
  return out;
}

std::size_t alpha(const BitSequence& seq, std::size_t n) {
  const auto lengths = match_lengths(seq, n);
  return lengths.empty() ? 0 : *std::max_element(lengths.begin(), lengths.end());
}

std::size_t alpha(std::span<const StepTrace> trace, std::size_t n) {
  std::size_t best = 0;
  for (const StepTrace& s : trace) {
    if (s.t <= n) best = std::max(best, s.match_len);
  }
  return best;
}

WordClass classify_word(const BitSequence& seq, const Word& w) {
  require_word(w);
  std::vector<std::size_t> starts;
  for (const Occurrence& o : occurrences_of(seq, w, 2)) starts.push_back(o.start);
  return classify_from(w, starts, seq);
}

bool proximity_degenerate(const Occurrence& a, const Occurrence& b) noexcept {
  return a.start == b.start;
}

std::size_t proximity(const BitSequence& seq, const Occurrence& a,
                      const Occurrence& b) {
  const std::size_t x = std::min(a.start, b.start) - 1;
  const std::size_t y = std::max(a.start, b.start) - 1;
  if (x == y) return x;
  std::size_t l = 0;
  while (l < x && seq[x - l] == seq[y - l]) ++l;
  return l;
}

FirstOccurrences::FirstOccurrences(const BitSequence& seq, std::size_t n,
                                   std::size_t max_len, std::size_t per_word)
    : n_(n), max_len_(std::min(max_len, Word::kMaxLength)), per_word_(per_word) {
  if (n > seq.size()) throw Error(Errc::range, "n exceeds sequence length");
  for (std::size_t len = 1; len <= max_len_ && len <= n; ++len) {
    for (std::size_t i = 1; i + len - 1 <= n; ++i) {
      auto& starts = table_[Word(seq.window(i, len), len)];
      if (starts.size() < per_word_) starts.push_back(static_cast<std::uint32_t>(i));
    }
  }
}

std::span<const std::uint32_t> FirstOccurrences::starts(const Word& w) const {
  const auto it = table_.find(w);
  if (it == table_.end()) return {};
  return it->second;
}

std::vector<Word> FirstOccurrences::words() const {
  std::vector<Word> out;
  out.reserve(table_.size());
  for (const auto& [w, _] : table_) out.push_back(w);
  std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

SequenceIndex::SequenceIndex(BitSequence seq) : sa_(seq) {
  const auto lf = longest_factor(sa_, FactorDirection::toward_start);
  lpf_.assign(lf.size() + 1, 0);
  std::copy(lf.begin(), lf.end(), lpf_.begin() + 1);
}

std::size_t SequenceIndex::count(const Word& w, std::size_t k, std::size_t n) const {
  require_word(w);
  require_bounds(sequence(), k, n);
  const auto [lo, hi] = sa_.range(w);
  std::size_t total = 0;
  for (std::size_t r = lo; r < hi; ++r) {
    const std::size_t start = sa_.sa()[r] + 1;
    if (start >= k && start + w.size() - 1 <= n) ++total;
  }
  return total;
}

std::vector<Occurrence> SequenceIndex::occurrences(const Word& w,
                                                   std::size_t limit) const {
  require_word(w);
  if (limit == 0) throw Error(Errc::invalid_argument, "limit must be positive");
  const auto [lo, hi] = sa_.range(w);
  std::vector<std::uint32_t> starts(sa_.sa().begin() + static_cast<std::ptrdiff_t>(lo),
                                    sa_.sa().begin() + static_cast<std::ptrdiff_t>(hi));
  const std::size_t keep = std::min(limit, starts.size());
  std::partial_sort(starts.begin(), starts.begin() + static_cast<std::ptrdiff_t>(keep),
                    starts.end());
  std::vector<Occurrence> out;
  out.reserve(keep);
  for (std::size_t k = 0; k < keep; ++k) {
    out.push_back({w, starts[k] + std::size_t{1}, starts[k] + w.size()});
  }
  return out;
}

MatchView SequenceIndex::b_plus(std::size_t i) const {
  if (i < 1 || i > size()) {
    throw Error(Errc::range, "position " + std::to_string(i) + " outside the sequence");
  }
  const std::size_t len = lpf_[i];
  return {i, sequence().word(i, len), len};
}

WordClass SequenceIndex::classify(const Word& w) const {
  std::vector<std::size_t> starts;
  for (const Occurrence& o : occurrences(w, 2)) starts.push_back(o.start);
  return classify_from(w, starts, sequence());
}

void write_occurrences_csv(std::span<const Occurrence> occ, std::ostream& out) {
  out << "word,start,end\n";
  for (const Occurrence& o : occ) {
    out << o.word.str() << ',' << o.start << ',' << o.end << '\n';
  }
}

void write_classes_csv(std::span<const WordClass> classes, std::ostream& out) {
  out << "word,class,pre1,pre2\n";
  for (const WordClass& c : classes) {
    out << c.word.str() << ',' << to_string(c.kind) << ',';
    if (c.first_two_preceding) {
      out << c.first_two_preceding->first << ',' << c.first_two_preceding->second;
    } else {
      out << ',';
    }
    out << '\n';
  }
}

}  // namespace emseq
