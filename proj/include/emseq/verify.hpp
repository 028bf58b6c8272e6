#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "emseq/bit_sequence.hpp"
#include "emseq/generator.hpp"

namespace emseq::verify {

/// Finite proxies for the o(n) statements. Every field maps to a key of the
/// same name in the key=value config format.
struct Thresholds {
  double theorem1_max_residual = 0.05;
  double prop31_max_residual = 0.05;
  double j_bound_max_residual = 0.05;
  /// Residual series must be nonincreasing over this many final checkpoints.
  std::size_t trend_window = 3;
  /// |R_n| >= n - alpha(n) - slack at every checkpoint.
  std::size_t rn_alpha_slack = 2;
  double freq_l1_min = 0.25;
  double freq_l1_max = 0.75;
  double freq_l2_min = 1.0 / 25.0;
  double freq_l2_max = 8.0 / 11.0;
  double growth_ik_min_ratio = 1.0;
  double alpha_log_min = 0.5;
  double alpha_log_max = 3.0;
};

/// Sets the field named `key`; false when no such field exists. Throws
/// invalid_argument for unparsable values.
bool set_threshold(Thresholds& th, std::string_view key, std::string_view value);
/// key = value lines in field order.
std::string thresholds_text(const Thresholds& th);

struct Violation {
  std::string word;
  std::vector<std::size_t> positions;
  std::string pattern;
};

struct Series {
  std::string name;
  std::vector<double> values;
};

struct VerdictReport {
  std::string check;
  std::size_t population = 0;
  std::vector<Violation> violations;
  std::vector<Series> residuals;
  std::vector<std::size_t> checkpoints;
  std::vector<std::string> notes;
  double worst_residual = 0.0;
  bool pass = true;

  const Series* series(std::string_view name) const;
};

enum class Lemma { l41, l42, l43, l44 };
std::string_view lemma_id(Lemma lemma) noexcept;
/// "4.1".."4.4"; throws invalid_argument otherwise.
Lemma parse_lemma(std::string_view text);
inline constexpr Lemma kAllLemmas[] = {Lemma::l41, Lemma::l42, Lemma::l43,
                                       Lemma::l44};

/// Forbidden following-bit pattern of a lemma, one entry per occurrence:
/// {next, second-next} where 'a'/'A' stand for a1/ā1 and 'b'/'B' for a2/ā2
/// ('.' when the second bit is unconstrained).
std::span<const std::string_view> lemma_pattern(Lemma lemma);

VerdictReport scan_lemma(const BitSequence& seq, Lemma lemma,
                         std::size_t max_word_len, std::size_t n);
VerdictReport check_prop41(const BitSequence& seq, std::size_t max_word_len,
                           std::size_t n);
/// Bits following the first two occurrences differ, for every word of
/// length <= max_word_len whose second occurrence has a following bit.
VerdictReport check_first_two_complement(const BitSequence& seq,
                                         std::size_t max_word_len,
                                         std::size_t n);
VerdictReport check_proximity_triangle(const BitSequence& seq,
                                       std::size_t samples,
                                       std::uint64_t rng_seed,
                                       std::size_t max_word_len = 10);
/// Every triple of occurrences of `w` within x_1^n.
VerdictReport check_proximity_exhaustive(const BitSequence& seq, const Word& w,
                                         std::size_t n);

VerdictReport prop31_residuals(const BitSequence& seq,
                               std::span<const std::size_t> checkpoints,
                               const Thresholds& th = {});
VerdictReport theorem1_residuals(const BitSequence& seq, std::size_t word_len,
                                 std::span<const std::size_t> checkpoints,
                                 const Thresholds& th = {});
VerdictReport balance_report(const BitSequence& seq, std::size_t word_len,
                             std::span<const std::size_t> checkpoints,
                             const Thresholds& th = {});
/// Strand excess against 3 B_n + 2 * strands at each checkpoint.
VerdictReport corollary41_report(const BitSequence& seq,
                                 std::span<const std::size_t> checkpoints);
/// gamma = 2L + U - 1, |T_n(xy)| = gamma + j_xy, and j_xy <= 7 gamma
/// up to a residual, at each checkpoint.
VerdictReport zeta_report(const BitSequence& seq,
                          std::span<const std::size_t> checkpoints,
                          const Thresholds& th = {});

struct GrowthRow {
  std::size_t k = 0;
  std::size_t i_k = 0;
  double ratio = 0.0;
};
/// i_k: start of the second occurrence of x_1^k, for k = 1, 2, ... while
/// one exists that is followed by another bit.
std::vector<GrowthRow> initial_recurrences(const BitSequence& seq);
VerdictReport growth_report(const BitSequence& seq,
                            std::span<const std::size_t> checkpoints,
                            const Thresholds& th = {});

/// Re-checks a violation record of a scanner check (lemmas, Prop 4.1,
/// first-two-complement, proximity, balance) against the raw bits with a
/// string scan independent of the kernels. False for other checks.
bool revalidate(const BitSequence& seq, const VerdictReport& report,
                const Violation& v);

struct SuiteConfig {
  std::size_t n = 100000;
  std::vector<Lemma> lemmas{std::begin(kAllLemmas), std::end(kAllLemmas)};
  std::size_t max_word_len = 10;
  std::size_t samples = 10000;
  std::uint64_t rng_seed = 1;
  std::vector<std::size_t> checkpoints{1000, 3000, 10000, 30000, 100000};
  bool residuals = true;
  Thresholds thresholds;
};

/// Runs every configured check. Reports are ordered by check id.
std::vector<VerdictReport> run_suite(const BitSequence& seq,
                                     const SuiteConfig& config);

std::string to_json(const VerdictReport& report);
/// {"config": {...}, "reports": [...], "pass": bool}
std::string suite_json(const std::vector<VerdictReport>& reports,
                       const SuiteConfig& config);
/// check,population,violations,worst_residual,pass
void write_summary_csv(std::span<const VerdictReport> reports, std::ostream& out);

bool all_pass(std::span<const VerdictReport> reports) noexcept;

}  // namespace emseq::verify
