#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "emseq/bit_sequence.hpp"
#include "emseq/generator.hpp"
#include "emseq/suffix_index.hpp"
#include "emseq/word.hpp"

namespace emseq {

/// One placement of a word; 1-based, end = start + |word| - 1.
struct Occurrence {
  Word word;
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

enum class WordClassKind { good, bad, boundary, undetermined };
std::string_view to_string(WordClassKind kind) noexcept;

struct WordClass {
  Word word;
  WordClassKind kind = WordClassKind::undetermined;
  /// Bits just before the first two occurrences, when both exist.
  std::optional<std::pair<int, int>> first_two_preceding;
};

/// b+(i): the longest word whose occurrence at i is at least its second.
struct MatchView {
  std::size_t i = 0;
  Word b_plus;
  std::size_t length = 0;
};

// -- Direct queries over a sequence (kernel-backed scans). --

/// N_k^n(w): overlapping occurrences of w fully inside positions k..n.
/// Throws empty_word, or range unless 1 <= k <= n <= |seq|.
std::size_t count_occurrences(const BitSequence& seq, const Word& w,
                              std::size_t k, std::size_t n);
/// First `limit` occurrences in start order.
std::vector<Occurrence> occurrences_of(const BitSequence& seq, const Word& w,
                                       std::size_t limit);

/// Direct double scan; O(i * L). Use SequenceIndex for batches.
MatchView b_plus(const BitSequence& seq, std::size_t i);

/// Match length used at every step t (index t, entries 0..3 are zero) for
/// the prefix x_1^n, recovered from the bits alone via a suffix array over
/// the reversed prefix.
std::vector<std::uint32_t> match_lengths(const BitSequence& seq, std::size_t n);
/// alpha(n): largest match length over steps t <= n; 0 for n <= 3.
std::size_t alpha(const BitSequence& seq, std::size_t n);
std::size_t alpha(std::span<const StepTrace> trace, std::size_t n);

/// Boundary when the first occurrence starts at 1; undetermined with fewer
/// than two occurrences (checked first).
WordClass classify_word(const BitSequence& seq, const Word& w);

/// Longest common suffix of x_1^{a.start-1} and x_1^{b.start-1}. Argument
/// order does not matter. Identical starts return start-1 (degenerate).
std::size_t proximity(const BitSequence& seq, const Occurrence& a,
                      const Occurrence& b);
bool proximity_degenerate(const Occurrence& a, const Occurrence& b) noexcept;

/// Up to `per_word` earliest starts of every word of length 1..max_len
/// occurring in x_1^n. Starts are increasing.
class FirstOccurrences {
 public:
  FirstOccurrences(const BitSequence& seq, std::size_t n, std::size_t max_len,
                   std::size_t per_word);

  std::size_t n() const noexcept { return n_; }
  std::size_t max_len() const noexcept { return max_len_; }
  std::span<const std::uint32_t> starts(const Word& w) const;
  /// Distinct words seen, sorted (length, then lexicographic).
  std::vector<Word> words() const;

 private:
  std::size_t n_;
  std::size_t max_len_;
  std::size_t per_word_;
  std::unordered_map<Word, std::vector<std::uint32_t>, WordHash> table_;
};

/// Frozen analysis session over x_1^n backed by a suffix array. Safe for
/// concurrent readers once constructed.
class SequenceIndex {
 public:
  explicit SequenceIndex(BitSequence seq);

  const BitSequence& sequence() const noexcept { return sa_.text(); }
  std::size_t size() const noexcept { return sa_.size(); }
  const SuffixArray& suffix_array() const noexcept { return sa_; }

  std::size_t count(const Word& w, std::size_t k, std::size_t n) const;
  std::vector<Occurrence> occurrences(const Word& w, std::size_t limit) const;
  MatchView b_plus(std::size_t i) const;
  /// L_i for i = 1..n at index i (entry 0 unused).
  std::span<const std::uint32_t> b_plus_lengths() const noexcept { return lpf_; }
  WordClass classify(const Word& w) const;

 private:
  SuffixArray sa_;
  std::vector<std::uint32_t> lpf_;
};

void write_occurrences_csv(std::span<const Occurrence> occ, std::ostream& out);
void write_classes_csv(std::span<const WordClass> classes, std::ostream& out);

}  // namespace emseq
