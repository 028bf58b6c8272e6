#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "emseq/bit_sequence.hpp"
#include "emseq/index.hpp"
#include "emseq/word.hpp"

namespace emseq {

/// R_n: the nonempty words occurring at least twice in x_1^n, each with the
/// starts of its first two occurrences.
class RnSet {
 public:
  struct Entry {
    Word word;
    std::uint32_t first = 0;
    std::uint32_t second = 0;
    WordClassKind kind = WordClassKind::undetermined;
  };

  RnSet() = default;
  RnSet(std::size_t n, std::vector<Entry> entries, std::optional<std::size_t> x);

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return entries_.size(); }
  /// Sorted lexicographically.
  std::span<const Entry> entries() const noexcept { return entries_; }
  std::vector<Word> words() const;
  bool contains(const Word& w) const;
  const Entry* find(const Word& w) const;

  /// Largest 1-based i with i + L_i - 1 <= n, where L_i is measured on
  /// x_1^{n+1}. Present only when the source sequence had more than n bits.
  std::optional<std::size_t> x() const noexcept { return x_; }

  std::size_t count_ending_with(const Word& tail) const;
  std::size_t count_with_min_length(std::size_t len) const;
  /// Bad words: first two occurrences preceded by equal bits. Words whose
  /// first occurrence starts at 1 are excluded.
  std::size_t bad_word_count() const noexcept { return bad_; }

 private:
  std::size_t n_ = 0;
  std::vector<Entry> entries_;
  std::unordered_map<Word, std::uint32_t, WordHash> lookup_;
  std::optional<std::size_t> x_;
  std::size_t bad_ = 0;

  friend RnSet build_rn(const BitSequence& seq, std::size_t n);
};

/// Builds R_n from a suffix array over x_1^n. Throws range if n > |seq|.
RnSet build_rn(const BitSequence& seq, std::size_t n);

inline constexpr std::int32_t kNoVertex = -1;

struct TnVertex {
  Word word;
  std::int32_t parent = kNoVertex;
  std::array<std::int32_t, 2> child{kNoVertex, kNoVertex};
  /// Both left extensions 0w and 1w are in R_n (two children).
  bool balanced = false;
  /// T_n*: both right extensions w0 and w1 are in R_n.
  bool in_core = false;
  /// Z with Z00, Z01, Z10, Z11 all in R_n.
  bool in_zeta = false;
  std::int32_t strand = kNoVertex;
  std::uint32_t subtree = 1;

  int child_count() const noexcept {
    return (child[0] != kNoVertex) + (child[1] != kNoVertex);
  }
};

/// Trie over reversed R_n words: the parent of a·w is w and the edge between
/// them is labelled a, so reading labels from a vertex up to the root spells
/// its word. Vertex 0 is the root (the empty word).
class TnTree {
 public:
  std::size_t n() const noexcept { return n_; }
  /// Non-root vertices; equals |R_n|.
  std::size_t size() const noexcept { return vertices_.size() - 1; }
  std::span<const TnVertex> vertices() const noexcept { return vertices_; }
  const TnVertex& root() const noexcept { return vertices_[0]; }
  std::optional<std::size_t> find(const Word& w) const;
  std::size_t bad_word_count() const noexcept { return bad_words_; }
  /// Vertex ids ordered by word (lexicographic).
  std::vector<std::size_t> ordered() const;

 private:
  std::size_t n_ = 0;
  std::size_t bad_words_ = 0;
  std::vector<TnVertex> vertices_;
  std::unordered_map<Word, std::uint32_t, WordHash> lookup_;

  friend TnTree build_tn(const RnSet& rn);
};

TnTree build_tn(const RnSet& rn);

/// |T_n(x)|: number of R_n words ending with x.
std::size_t subtree_count(const TnTree& tree, const Word& x);

/// A spaghetti strand is a maximal chain of unary vertices; its edges are
/// the child edges of those vertices.
struct Strand {
  std::size_t top = 0;
  std::size_t edges = 0;
};

struct StrandDecomposition {
  std::vector<Strand> strands;
  std::map<std::size_t, std::size_t> histogram;
  std::size_t long_strands = 0;
  /// Sum over strands of max(0, edges - 2).
  std::size_t excess_edges = 0;
};

StrandDecomposition strands(const TnTree& tree);

struct TreeStats {
  std::size_t n = 0;
  std::size_t gamma = 0;
  std::size_t leaves = 0;
  std::size_t unary = 0;
  /// j_xy keyed "00", "01", "10", "11".
  std::map<std::string, std::int64_t> j;
  std::map<std::string, std::size_t> t_xy;
  std::map<std::size_t, std::size_t> strand_histogram;
  std::size_t strand_count = 0;
  std::size_t excess_edges = 0;
  std::size_t bad_word_count = 0;
  std::size_t vertex_count = 0;
  /// Largest (j_xy - 7 gamma) / n clamped at zero.
  double j_bound_residual = 0.0;
  bool gamma_identity = true;
};

TreeStats zeta_stats(const TnTree& tree);

struct DotOptions {
  bool color_balance = true;
  /// Vertices deeper than this are omitted; 0 means unlimited.
  std::size_t max_depth = 0;
};

std::string export_dot(const TnTree& tree, const DotOptions& options = {});
/// {n, gamma, leaves, unary, j, strand_histogram, bad_word_count, ...}
std::string tree_stats_json(const TreeStats& stats);

}  // namespace emseq
