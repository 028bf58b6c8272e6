#include "emseq/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "emseq/error.hpp"
#include "emseq/index.hpp"
#include "emseq/kernels.hpp"
#include "emseq/rtree.hpp"
#include "json.hpp"

namespace emseq::verify {

using json = nlohmann::ordered_json;

const Series* VerdictReport::series(std::string_view name) const {
  for (const Series& s : residuals) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Thresholds

namespace {

struct ThresholdField {
  std::string_view key;
  double Thresholds::*real = nullptr;
  std::size_t Thresholds::*count = nullptr;
};

constexpr ThresholdField kFields[] = {
    {"theorem1_max_residual", &Thresholds::theorem1_max_residual, nullptr},
    {"prop31_max_residual", &Thresholds::prop31_max_residual, nullptr},
    {"j_bound_max_residual", &Thresholds::j_bound_max_residual, nullptr},
    {"trend_window", nullptr, &Thresholds::trend_window},
    {"rn_alpha_slack", nullptr, &Thresholds::rn_alpha_slack},
    {"freq_l1_min", &Thresholds::freq_l1_min, nullptr},
    {"freq_l1_max", &Thresholds::freq_l1_max, nullptr},
    {"freq_l2_min", &Thresholds::freq_l2_min, nullptr},
    {"freq_l2_max", &Thresholds::freq_l2_max, nullptr},
    {"growth_ik_min_ratio", &Thresholds::growth_ik_min_ratio, nullptr},
    {"alpha_log_min", &Thresholds::alpha_log_min, nullptr},
    {"alpha_log_max", &Thresholds::alpha_log_max, nullptr},
};

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

bool set_threshold(Thresholds& th, std::string_view key, std::string_view value) {
  for (const ThresholdField& f : kFields) {
    if (f.key != key) continue;
    const std::string text(value);
    try {
      std::size_t used = 0;
      if (f.real != nullptr) {
        th.*f.real = std::stod(text, &used);
      } else {
        const long long v = std::stoll(text, &used);
        if (v < 0) throw std::invalid_argument("negative");
        th.*f.count = static_cast<std::size_t>(v);
      }
      if (used != text.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(Errc::invalid_argument,
                  "bad value '" + text + "' for " + std::string(key));
    }
    return true;
  }
  return false;
}

std::string thresholds_text(const Thresholds& th) {
  std::string out;
  for (const ThresholdField& f : kFields) {
    out += f.key;
    out += " = ";
    out += f.real != nullptr ? format_double(th.*f.real) : std::to_string(th.*f.count);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lemma patterns

namespace {

constexpr std::string_view kPattern41[] = {"A.", "ab", "aB", "ab", "ab"};
constexpr std::string_view kPattern42[] = {"aB", "A.", "ab", "ab"};
constexpr std::string_view kPattern43[] = {"ab", "A.", "aB", "ab", "ab"};
constexpr std::string_view kPattern44[] = {"A.", "aB", "ab", "ab"};

int resolve(char sym, int a1, int a2) {
  switch (sym) {
    case 'a': return a1;
    case 'A': return 1 - a1;
    case 'b': return a2;
    case 'B': return 1 - a2;
    default: return -1;
  }
}

// Bits following an occurrence [start, start+len) within x_1^n; -1 past n.
int next_bit(const BitSequence& seq, std::size_t start, std::size_t len,
             std::size_t k, std::size_t n) {
  const std::size_t p = start + len - 1 + k;
  return p <= n ? seq[p] : -1;
}

std::string following(const BitSequence& seq, std::span<const std::uint32_t> starts,
                      std::size_t len, std::size_t n) {
  std::string out;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    if (k > 0) out += ',';
    for (std::size_t j = 1; j <= 2; ++j) {
      const int b = next_bit(seq, starts[k], len, j, n);
      if (b >= 0) out += static_cast<char>('0' + b);
    }
  }
  return out;
}

bool trend_ok(const std::vector<double>& v, std::size_t window) {
  if (v.size() < 2 || window < 2) return true;
  const std::size_t from = v.size() > window ? v.size() - window : 0;
  for (std::size_t i = from + 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1]) return false;
  }
  return true;
}

std::vector<std::size_t> sorted_checkpoints(const BitSequence& seq,
                                            std::span<const std::size_t> cps) {
  std::vector<std::size_t> out(cps.begin(), cps.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (const std::size_t n : out) {
    if (n < 1 || n > seq.size()) {
      throw Error(Errc::range, "checkpoint " + std::to_string(n) +
                                   " outside 1.." + std::to_string(seq.size()));
    }
  }
  return out;
}

std::vector<Word> all_words(std::size_t len) {
  std::vector<Word> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) out.emplace_back(v, len);
  std::sort(out.begin(), out.end());
  return out;
}

double ratio(std::size_t a, std::size_t n) {
  return static_cast<double>(a) / static_cast<double>(n);
}

void require_n(const BitSequence& seq, std::size_t n) {
  if (n > seq.size()) {
    throw Error(Errc::range, "n=" + std::to_string(n) + " exceeds sequence length " +
                                 std::to_string(seq.size()));
  }
}

}  // namespace

std::string_view lemma_id(Lemma lemma) noexcept {
  switch (lemma) {
    case Lemma::l41: return "4.1";
    case Lemma::l42: return "4.2";
    case Lemma::l43: return "4.3";
    case Lemma::l44: return "4.4";
  }
  return "4.1";
}

Lemma parse_lemma(std::string_view text) {
  for (const Lemma l : kAllLemmas) {
    if (lemma_id(l) == text) return l;
  }
  throw Error(Errc::invalid_argument, "unknown lemma '" + std::string(text) + "'");
}

std::span<const std::string_view> lemma_pattern(Lemma lemma) {
  switch (lemma) {
    case Lemma::l41: return kPattern41;
    case Lemma::l42: return kPattern42;
    case Lemma::l43: return kPattern43;
    case Lemma::l44: return kPattern44;
  }
  return kPattern41;
}

// ---------------------------------------------------------------------------
// Forbidden-pattern scanners

VerdictReport scan_lemma(const BitSequence& seq, Lemma lemma, std::size_t max_word_len,
                         std::size_t n) {
  require_n(seq, n);
  const auto pattern = lemma_pattern(lemma);
  const std::size_t k = pattern.size();
  VerdictReport rep;
  rep.check = "lemma" + std::string(lemma_id(lemma));
  const FirstOccurrences first(seq, n, max_word_len, k);
  std::size_t not_good = 0, truncated = 0;
  for (const Word& w : first.words()) {
    const auto starts = first.starts(w);
    if (starts.size() < k) continue;
    if (lemma == Lemma::l42) {
      if (starts[0] == 1 || seq[starts[0] - 1] == seq[starts[1] - 1]) {
        ++not_good;
        continue;
      }
    }
    bool complete = true;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t need = pattern[i][1] == '.' ? 1 : 2;
      if (next_bit(seq, starts[i], w.size(), need, n) < 0) complete = false;
    }
    if (!complete) {
      ++truncated;
      continue;
    }
    ++rep.population;
    for (int a1 = 0; a1 < 2; ++a1) {
      for (int a2 = 0; a2 < 2; ++a2) {
        bool hit = true;
        for (std::size_t i = 0; i < k && hit; ++i) {
          for (std::size_t j = 0; j < 2; ++j) {
            const int want = resolve(pattern[i][j], a1, a2);
            if (want >= 0 && next_bit(seq, starts[i], w.size(), j + 1, n) != want) {
              hit = false;
            }
          }
        }
        if (hit) {
          rep.violations.push_back({w.str(), {starts.begin(), starts.end()},
                                    following(seq, starts, w.size(), n)});
        }
      }
    }
  }
  if (lemma == Lemma::l42) rep.notes.push_back("excluded_not_good=" + std::to_string(not_good));
  rep.notes.push_back("excluded_truncated=" + std::to_string(truncated));
  if (rep.population == 0) rep.notes.push_back("warning: insufficient prefix");
  rep.pass = rep.violations.empty();
  return rep;
}

VerdictReport check_prop41(const BitSequence& seq, std::size_t max_word_len,
                           std::size_t n) {
  require_n(seq, n);
  VerdictReport rep;
  rep.check = "prop4.1";
  const FirstOccurrences first(seq, n, max_word_len, 5);
  for (const Word& w : first.words()) {
    const auto starts = first.starts(w);
    if (starts.size() < 5) continue;
    if (starts[0] == 1 || seq[starts[0] - 1] == seq[starts[1] - 1]) continue;
    bool complete = true;
    int u_balance = 0, v_balance = 0;
    for (const std::uint32_t s : starts) {
      const int u = next_bit(seq, s, w.size(), 1, n);
      const int v = next_bit(seq, s, w.size(), 2, n);
      if (v < 0) complete = false;
      u_balance += u == 1 ? 1 : -1;
      v_balance += v == 1 ? 1 : -1;
    }
    if (!complete) continue;
    ++rep.population;
    if (std::abs(u_balance) > 1 && std::abs(v_balance) > 1) {
      rep.violations.push_back({w.str(), {starts.begin(), starts.end()},
                                following(seq, starts, w.size(), n)});
    }
  }
  if (rep.population == 0) rep.notes.push_back("warning: insufficient prefix");
  rep.pass = rep.violations.empty();
  return rep;
}

VerdictReport check_first_two_complement(const BitSequence& seq,
                                         std::size_t max_word_len, std::size_t n) {
  require_n(seq, n);
  VerdictReport rep;
  rep.check = "first_two_complement";
  const FirstOccurrences first(seq, n, max_word_len, 2);
  for (const Word& w : first.words()) {
    const auto starts = first.starts(w);
    if (starts.size() < 2) continue;
    const int b1 = next_bit(seq, starts[0], w.size(), 1, n);
    const int b2 = next_bit(seq, starts[1], w.size(), 1, n);
    if (b2 < 0) continue;
    ++rep.population;
    if (b1 == b2) {
      rep.violations.push_back({w.str(), {starts.begin(), starts.end()},
                                std::string{static_cast<char>('0' + b1), ',',
                                            static_cast<char>('0' + b2)}});
    }
  }
  rep.pass = rep.violations.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// Proximity

namespace {

void triangle(const BitSequence& seq, const Occurrence& x, const Occurrence& y,
              const Occurrence& z, VerdictReport& rep, std::size_t& applicable) {
  const std::size_t pxy = proximity(seq, x, y);
  const std::size_t pxz = proximity(seq, x, z);
  if (pxy == pxz) return;
  ++applicable;
  const std::size_t pyz = proximity(seq, y, z);
  if (pyz != std::min(pxy, pxz)) {
    rep.violations.push_back(
        {x.word.str(), {x.start, y.start, z.start},
         "p(X,Y)=" + std::to_string(pxy) + " p(X,Z)=" + std::to_string(pxz) +
             " p(Y,Z)=" + std::to_string(pyz)});
  }
}

}  // namespace

VerdictReport check_proximity_triangle(const BitSequence& seq, std::size_t samples,
                                       std::uint64_t rng_seed, std::size_t max_word_len) {
  VerdictReport rep;
  rep.check = "proximity_min";
  if (samples == 0) throw Error(Errc::invalid_argument, "samples must be positive");
  const std::size_t n = seq.size();
  const std::size_t top = std::min({max_word_len, Word::kMaxLength, n});
  if (top == 0) {
    rep.notes.push_back("warning: empty sequence");
    return rep;
  }
  // Modulo reduction keeps the sampled triples identical across standard
  // library implementations.
  std::mt19937_64 rng(rng_seed);
  std::size_t applicable = 0, attempts = 0;
  const std::size_t max_attempts = samples * 64;
  while (rep.population < samples && attempts < max_attempts) {
    ++attempts;
    const std::size_t len = 1 + rng() % top;
    const std::size_t at = 1 + rng() % (n - len + 1);
    const Word w = seq.word(at, len);
    const std::size_t total = kernels::count_matches(seq, w, 1, n);
    if (total < 3) continue;
    std::size_t pick[3];
    pick[0] = rng() % total;
    do pick[1] = rng() % total; while (pick[1] == pick[0]);
    do pick[2] = rng() % total; while (pick[2] == pick[0] || pick[2] == pick[1]);
    const std::size_t last = std::max({pick[0], pick[1], pick[2]});
    std::vector<std::size_t> starts;
    kernels::for_each_match(seq, w, 1, n, [&](std::size_t s) {
      starts.push_back(s);
      return starts.size() <= last;
    });
    const Occurrence x{w, starts[pick[0]], starts[pick[0]] + len - 1};
    const Occurrence y{w, starts[pick[1]], starts[pick[1]] + len - 1};
    const Occurrence z{w, starts[pick[2]], starts[pick[2]] + len - 1};
    ++rep.population;
    triangle(seq, x, y, z, rep, applicable);
  }
  rep.notes.push_back("rng_seed=" + std::to_string(rng_seed));
  rep.notes.push_back("precondition_met=" + std::to_string(applicable));
  if (rep.population < samples) rep.notes.push_back("warning: too few repeated words");
  rep.pass = rep.violations.empty();
  return rep;
}

VerdictReport check_proximity_exhaustive(const BitSequence& seq, const Word& w,
                                         std::size_t n) {
  require_n(seq, n);
  VerdictReport rep;
  rep.check = "proximity_exhaustive";
  std::vector<Occurrence> occ;
  kernels::for_each_match(seq, w, 1, n, [&](std::size_t s) {
    occ.push_back({w, s, s + w.size() - 1});
    return true;
  });
  std::size_t applicable = 0;
  for (std::size_t a = 0; a < occ.size(); ++a) {
    for (std::size_t b = 0; b < occ.size(); ++b) {
      for (std::size_t c = 0; c < occ.size(); ++c) {
        if (a == b || a == c || b == c) continue;
        ++rep.population;
        triangle(seq, occ[a], occ[b], occ[c], rep, applicable);
      }
    }
  }
  rep.notes.push_back("precondition_met=" + std::to_string(applicable));
  rep.pass = rep.violations.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// Residual reports

VerdictReport prop31_residuals(const BitSequence& seq,
                               std::span<const std::size_t> checkpoints,
                               const Thresholds& th) {
  VerdictReport rep;
  rep.check = "prop3.1";
  rep.checkpoints = sorted_checkpoints(seq, checkpoints);
  if (rep.checkpoints.empty()) return rep;
  const auto lengths = match_lengths(seq, rep.checkpoints.back());
  Series deficit{"rn_deficit", {}}, end0{"end0", {}}, end1{"end1", {}},
      bad{"bad_fraction", {}}, alpha_frac{"alpha_over_n", {}};
  std::size_t a = 0, t = 0;
  for (const std::size_t n : rep.checkpoints) {
    for (; t <= n && t < lengths.size(); ++t) a = std::max<std::size_t>(a, lengths[t]);
    const RnSet rn = build_rn(seq, n);
    const std::size_t ones = kernels::count_matches(seq, Word(1, 1), 1, n);
    const std::size_t zeros = n - ones;
    const std::size_t r0 = rn.count_ending_with(Word(0, 1));
    const std::size_t r1 = rn.count_ending_with(Word(1, 1));
    ++rep.population;
    deficit.values.push_back(ratio(n - rn.size(), n));
    end0.values.push_back(ratio(r0 > zeros ? r0 - zeros : zeros - r0, n));
    end1.values.push_back(ratio(r1 > ones ? r1 - ones : ones - r1, n));
    bad.values.push_back(ratio(rn.bad_word_count(), n));
    alpha_frac.values.push_back(ratio(a, n));
    if (r0 + r1 != rn.size()) {
      rep.violations.push_back({"", {n}, "end-bit partition does not cover R_n"});
    }
    if (n >= 2 && rn.x() && rn.size() + 2 != *rn.x()) {
      rep.violations.push_back(
          {"", {n}, "|R_n|=" + std::to_string(rn.size()) + " but x=" + std::to_string(*rn.x())});
    }
    if (rn.size() + a + th.rn_alpha_slack < n) {
      rep.violations.push_back({"", {n}, "|R_n| below n - alpha(n) - slack"});
    }
  }
  for (Series* s : {&deficit, &end0, &end1}) {
    rep.worst_residual = std::max(rep.worst_residual, s->values.back());
    if (s->values.back() >= th.prop31_max_residual) {
      rep.violations.push_back({"", {rep.checkpoints.back()}, s->name + " above threshold"});
    }
    if (!trend_ok(s->values, th.trend_window)) {
      rep.violations.push_back({"", {rep.checkpoints.back()}, s->name + " not nonincreasing"});
    }
  }
  rep.residuals = {deficit, end0, end1, bad, alpha_frac};
  rep.notes.push_back("identity: |R_n| = x - 2 with 1-based x");
  rep.pass = rep.violations.empty();
  return rep;
}

VerdictReport theorem1_residuals(const BitSequence& seq, std::size_t word_len,
                                 std::span<const std::size_t> checkpoints,
                                 const Thresholds& th) {
  if (word_len < 1 || word_len > 2) {
    throw Error(Errc::invalid_argument, "word length must be 1 or 2");
  }
  VerdictReport rep;
  rep.check = "theorem1_l" + std::to_string(word_len);
  rep.checkpoints = sorted_checkpoints(seq, checkpoints);
  const auto words = all_words(word_len);
  std::vector<Series> per(words.size());
  for (std::size_t k = 0; k < words.size(); ++k) per[k].name = "x=" + words[k].str();
  Series worst{"max", {}};
  for (const std::size_t n : rep.checkpoints) {
    const RnSet rn = build_rn(seq, n);
    std::size_t sum_r = 0, sum_n = 0;
    double m = 0.0;
    for (std::size_t k = 0; k < words.size(); ++k) {
      const std::size_t r = rn.count_ending_with(words[k]);
      const std::size_t c = kernels::count_matches(seq, words[k], 1, n);
      sum_r += r;
      sum_n += c;
      const double v = ratio(r > c ? r - c : c - r, n);
      per[k].values.push_back(v);
      m = std::max(m, v);
      ++rep.population;
    }
    worst.values.push_back(m);
    if (sum_r != rn.count_with_min_length(word_len)) {
      rep.violations.push_back({"", {n}, "sum of |R_n(x)| differs from R_n words of length >= l"});
    }
    if (n + 1 >= word_len && sum_n != n - word_len + 1) {
      rep.violations.push_back({"", {n}, "sliding-window counts do not sum to n - l + 1"});
    }
  }
  if (!worst.values.empty()) {
    rep.worst_residual = worst.values.back();
    if (worst.values.back() >= th.theorem1_max_residual) {
      rep.violations.push_back({"", {rep.checkpoints.back()}, "final residual above threshold"});
    }
    for (const Series& s : per) {
      if (!trend_ok(s.values, th.trend_window)) {
        rep.violations.push_back({s.name.substr(2), {rep.checkpoints.back()}, "not nonincreasing"});
      }
    }
  }
  rep.residuals = std::move(per);
  rep.residuals.push_back(worst);
  rep.pass = rep.violations.empty();
  return rep;
}

VerdictReport balance_report(const BitSequence& seq, std::size_t word_len,
                             std::span<const std::size_t> checkpoints,
                             const Thresholds& th) {
  if (word_len < 1 || word_len > 2) {
    throw Error(Errc::invalid_argument, "word length must be 1 or 2");
  }
  VerdictReport rep;
  rep.check = "balance_l" + std::to_string(word_len);
  rep.checkpoints = sorted_checkpoints(seq, checkpoints);
  const double lo = word_len == 1 ? th.freq_l1_min : th.freq_l2_min;
  const double hi = word_len == 1 ? th.freq_l1_max : th.freq_l2_max;
  const double ideal = std::ldexp(1.0, -static_cast<int>(word_len));
  const auto words = all_words(word_len);
  std::vector<Series> freq(words.size()), dist(words.size());
  for (std::size_t k = 0; k < words.size(); ++k) {
    freq[k].name = "freq_" + words[k].str();
    dist[k].name = "dist_" + words[k].str();
  }
  for (const std::size_t n : rep.checkpoints) {
    for (std::size_t k = 0; k < words.size(); ++k) {
      const double f = ratio(kernels::count_matches(seq, words[k], 1, n), n);
      freq[k].values.push_back(f);
      dist[k].values.push_back(std::abs(f - ideal));
      rep.worst_residual = std::max(rep.worst_residual, std::abs(f - ideal));
      ++rep.population;
      if (f < lo || f > hi) {
        rep.violations.push_back({words[k].str(), {n}, "freq=" + format_double(f)});
      }
    }
  }
  rep.residuals = std::move(freq);
  rep.residuals.insert(rep.residuals.end(), dist.begin(), dist.end());
  rep.notes.push_back("band=[" + format_double(lo) + ", " + format_double(hi) + "]");
  rep.pass = rep.violations.empty();
  return rep;
}

VerdictReport corollary41_report(const BitSequence& seq,
                                 std::span<const std::size_t> checkpoints) {
  VerdictReport rep;
  rep.check = "corollary4.1";
  rep.checkpoints = sorted_checkpoints(seq, checkpoints);
  Series excess{"excess_edges", {}}, bound{"bound_3B_plus_2S", {}},
      count{"strands", {}}, longer{"strands_over_2_edges", {}}, bad{"bad_words", {}};
  for (const std::size_t n : rep.checkpoints) {
    const TnTree tree = build_tn(build_rn(seq, n));
    const StrandDecomposition dec = strands(tree);
    const std::size_t limit = 3 * tree.bad_word_count() + 2 * dec.strands.size();
    rep.population += dec.strands.size();
    excess.values.push_back(static_cast<double>(dec.excess_edges));
    bound.values.push_back(static_cast<double>(limit));
    count.values.push_back(static_cast<double>(dec.strands.size()));
    longer.values.push_back(static_cast<double>(dec.long_strands));
    bad.values.push_back(static_cast<double>(tree.bad_word_count()));
    rep.worst_residual = std::max(rep.worst_residual, ratio(dec.excess_edges, n));
    if (dec.excess_edges > limit) {
      rep.violations.push_back({"", {n}, "excess " + std::to_string(dec.excess_edges) +
                                             " > " + std::to_string(limit)});
    }
  }
  rep.residuals = {excess, bound, count, longer, bad};
  rep.notes.push_back("finite gate: excess <= 3*B_n + 2*strands");
  rep.pass = rep.violations.empty();
  return rep;
}

VerdictReport zeta_report(const BitSequence& seq,
                          std::span<const std::size_t> checkpoints,
                          const Thresholds& th) {
  VerdictReport rep;
  rep.check = "zeta_j_bound";
  rep.checkpoints = sorted_checkpoints(seq, checkpoints);
  Series gamma{"gamma", {}}, leaves{"leaves", {}}, unary{"unary", {}},
      resid{"j_bound_residual", {}}, cover{"n_over_gamma", {}};
  std::vector<Series> js;
  for (const char* xy : {"00", "01", "10", "11"}) js.push_back({std::string("j_") + xy, {}});
  for (const std::size_t n : rep.checkpoints) {
    const TnTree tree = build_tn(build_rn(seq, n));
    const TreeStats st = zeta_stats(tree);
    ++rep.population;
    gamma.values.push_back(static_cast<double>(st.gamma));
    leaves.values.push_back(static_cast<double>(st.leaves));
    unary.values.push_back(static_cast<double>(st.unary));
    resid.values.push_back(st.j_bound_residual);
    cover.values.push_back(st.gamma == 0 ? 0.0 : ratio(n, st.gamma));
    std::size_t k = 0;
    for (const auto& [xy, j] : st.j) {
      js[k++].values.push_back(static_cast<double>(j));
      if (static_cast<std::int64_t>(st.t_xy.at(xy)) !=
          static_cast<std::int64_t>(st.gamma) + j) {
        rep.violations.push_back({xy, {n}, "|T_n(xy)| != gamma + j_xy"});
      }
    }
    if (!st.gamma_identity) {
      rep.violations.push_back({"", {n}, "gamma != 2L + U - 1"});
    }
    rep.worst_residual = std::max(rep.worst_residual, st.j_bound_residual);
    if (st.j_bound_residual > th.j_bound_max_residual) {
      rep.violations.push_back({"", {n}, "j_xy exceeds 7 gamma beyond threshold"});
    }
  }
  rep.residuals = {gamma, leaves, unary};
  rep.residuals.insert(rep.residuals.end(), js.begin(), js.end());
  rep.residuals.push_back(resid);
  rep.residuals.push_back(cover);
  rep.pass = rep.violations.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// Growth

std::vector<GrowthRow> initial_recurrences(const BitSequence& seq) {
  const std::size_t n = seq.size();
  std::vector<GrowthRow> rows;
  for (std::size_t k = 1; k <= Word::kMaxLength && k < n; ++k) {
    std::size_t at = 0;
    // The recurrence must be followed by at least one more bit.
    kernels::for_each_match(seq, seq.word(1, k), 2, n - 1, [&](std::size_t s) {
      at = s;
      return false;
    });
    if (at == 0) break;
    rows.push_back({k, at, static_cast<double>(at) / std::pow(2.0, static_cast<double>(k) / 2.0)});
  }
  return rows;
}

VerdictReport growth_report(const BitSequence& seq,
                            std::span<const std::size_t> checkpoints,
                            const Thresholds& th) {
  if (seq.size() < 100) {
    throw Error(Errc::invalid_argument, "growth report needs at least 100 bits");
  }
  VerdictReport rep;
  rep.check = "growth";
  rep.checkpoints = sorted_checkpoints(seq, checkpoints);
  const auto rows = initial_recurrences(seq);
  Series ks{"k", {}}, iks{"i_k", {}}, ratios{"i_k_over_2^(k/2)", {}};
  double min_ratio = rows.empty() ? 0.0 : rows.front().ratio;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    ks.values.push_back(static_cast<double>(rows[r].k));
    iks.values.push_back(static_cast<double>(rows[r].i_k));
    ratios.values.push_back(rows[r].ratio);
    min_ratio = std::min(min_ratio, rows[r].ratio);
    if (r > 0 && (rows[r].k != rows[r - 1].k + 1 || rows[r].i_k <= rows[r - 1].i_k)) {
      rep.violations.push_back({"", {rows[r].k}, "i_k not strictly increasing over consecutive k"});
    }
  }
  rep.population = rows.size();
  if (rows.empty() || min_ratio < th.growth_ik_min_ratio) {
    rep.violations.push_back({"", {}, "min i_k/2^(k/2)=" + format_double(min_ratio)});
  }
  Series band{"alpha_over_log2n", {}}, alphas{"alpha", {}};
  if (!rep.checkpoints.empty()) {
    const auto lengths = match_lengths(seq, rep.checkpoints.back());
    std::size_t a = 0, t = 0;
    for (const std::size_t n : rep.checkpoints) {
      for (; t <= n && t < lengths.size(); ++t) a = std::max<std::size_t>(a, lengths[t]);
      const double r = n > 1 ? static_cast<double>(a) / std::log2(static_cast<double>(n)) : 0.0;
      alphas.values.push_back(static_cast<double>(a));
      band.values.push_back(r);
      if (r < th.alpha_log_min || r > th.alpha_log_max) {
        rep.violations.push_back({"", {n}, "alpha/log2(n)=" + format_double(r)});
      }
    }
  }
  rep.worst_residual = min_ratio;
  rep.residuals = {ks, iks, ratios, alphas, band};
  rep.notes.push_back("worst_residual holds min i_k/2^(k/2)");
  rep.pass = rep.violations.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// Revalidation: plain string scans only.

namespace {

std::vector<std::size_t> string_starts(const std::string& text, const std::string& w,
                                       std::size_t limit) {
  std::vector<std::size_t> out;
  for (std::size_t p = text.find(w); p != std::string::npos && out.size() < limit;
       p = text.find(w, p + 1)) {
    out.push_back(p + 1);
  }
  return out;
}

int char_bit(const std::string& text, std::size_t pos) {
  return pos >= 1 && pos <= text.size() ? text[pos - 1] - '0' : -1;
}

}  // namespace

bool revalidate(const BitSequence& seq, const VerdictReport& report, const Violation& v) {
  const std::string text = seq.str();
  const std::string& w = v.word;
  if (report.check.rfind("lemma", 0) == 0) {
    const auto pattern = lemma_pattern(parse_lemma(report.check.substr(5)));
    const auto starts = string_starts(text, w, pattern.size());
    if (starts != v.positions) return false;
    for (int a1 = 0; a1 < 2; ++a1) {
      for (int a2 = 0; a2 < 2; ++a2) {
        bool hit = true;
        for (std::size_t i = 0; i < pattern.size(); ++i) {
          for (std::size_t j = 0; j < 2; ++j) {
            const int want = resolve(pattern[i][j], a1, a2);
            if (want >= 0 && char_bit(text, starts[i] + w.size() - 1 + j + 1) != want) hit = false;
          }
        }
        if (hit) return true;
      }
    }
    return false;
  }
  if (report.check == "prop4.1") {
    const auto starts = string_starts(text, w, 5);
    if (starts != v.positions || starts.size() < 5) return false;
    int ub = 0, vb = 0;
    for (const std::size_t s : starts) {
      ub += char_bit(text, s + w.size()) == 1 ? 1 : -1;
      vb += char_bit(text, s + w.size() + 1) == 1 ? 1 : -1;
    }
    return std::abs(ub) > 1 && std::abs(vb) > 1;
  }
  if (report.check == "first_two_complement") {
    const auto starts = string_starts(text, w, 2);
    return starts == v.positions && starts.size() == 2 &&
           char_bit(text, starts[0] + w.size()) == char_bit(text, starts[1] + w.size());
  }
  if (report.check == "proximity_min" || report.check == "proximity_exhaustive") {
    if (v.positions.size() != 3) return false;
    auto p = [&](std::size_t a, std::size_t b) {
      std::string x = text.substr(0, std::min(a, b) - 1);
      std::string y = text.substr(0, std::max(a, b) - 1);
      std::size_t l = 0;
      while (l < x.size() && x[x.size() - 1 - l] == y[y.size() - 1 - l]) ++l;
      return l;
    };
    const std::size_t pxy = p(v.positions[0], v.positions[1]);
    const std::size_t pxz = p(v.positions[0], v.positions[2]);
    return pxy != pxz && p(v.positions[1], v.positions[2]) != std::min(pxy, pxz);
  }
  if (report.check.rfind("balance_l", 0) == 0) {
    if (v.positions.size() != 1) return false;
    const std::size_t n = v.positions[0];
    const std::string prefix = text.substr(0, n);
    std::size_t c = 0;
    for (std::size_t p = prefix.find(w); p != std::string::npos; p = prefix.find(w, p + 1)) ++c;
    const double f = ratio(c, n);
    return v.pattern == "freq=" + format_double(f);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Suite

std::vector<VerdictReport> run_suite(const BitSequence& seq, const SuiteConfig& config) {
  require_n(seq, config.n);
  const BitSequence prefix = seq.prefix(config.n);
  std::vector<VerdictReport> out;
  for (const Lemma l : config.lemmas) {
    out.push_back(scan_lemma(seq, l, config.max_word_len, config.n));
  }
  out.push_back(check_prop41(seq, config.max_word_len, config.n));
  out.push_back(check_first_two_complement(seq, config.max_word_len, config.n));
  if (config.samples > 0) {
    out.push_back(check_proximity_triangle(prefix, config.samples, config.rng_seed,
                                           config.max_word_len));
  }
  if (config.residuals) {
    std::vector<std::size_t> cps;
    for (const std::size_t c : config.checkpoints) {
      if (c <= config.n) cps.push_back(c);
    }
    out.push_back(prop31_residuals(seq, cps, config.thresholds));
    for (const std::size_t l : {1, 2}) {
      out.push_back(theorem1_residuals(seq, l, cps, config.thresholds));
      out.push_back(balance_report(seq, l, cps, config.thresholds));
    }
    out.push_back(corollary41_report(seq, cps));
    out.push_back(zeta_report(seq, cps, config.thresholds));
  }
  std::stable_sort(out.begin(), out.end(), [](const VerdictReport& a, const VerdictReport& b) {
    return a.check < b.check;
  });
  return out;
}

bool all_pass(std::span<const VerdictReport> reports) noexcept {
  return std::all_of(reports.begin(), reports.end(),
                     [](const VerdictReport& r) { return r.pass; });
}

namespace {

json report_json(const VerdictReport& r) {
  json j;
  j["check"] = r.check;
  j["pass"] = r.pass;
  j["population"] = r.population;
  j["worst_residual"] = r.worst_residual;
  j["checkpoints"] = r.checkpoints;
  json res = json::object();
  for (const Series& s : r.residuals) res[s.name] = s.values;
  j["residuals"] = res;
  json viol = json::array();
  for (const Violation& v : r.violations) {
    json jv;
    jv["word"] = v.word;
    jv["positions"] = v.positions;
    jv["pattern"] = v.pattern;
    viol.push_back(jv);
  }
  j["violations"] = viol;
  j["notes"] = r.notes;
  return j;
}

}  // namespace

std::string to_json(const VerdictReport& report) { return report_json(report).dump(2) + "\n"; }

std::string suite_json(const std::vector<VerdictReport>& reports, const SuiteConfig& config) {
  json cfg;
  cfg["n"] = config.n;
  json lemmas = json::array();
  for (const Lemma l : config.lemmas) lemmas.push_back(std::string(lemma_id(l)));
  cfg["lemmas"] = lemmas;
  cfg["max_word_len"] = config.max_word_len;
  cfg["samples"] = config.samples;
  cfg["rng_seed"] = config.rng_seed;
  cfg["checkpoints"] = config.checkpoints;
  cfg["residuals"] = config.residuals;
  json th;
  for (const ThresholdField& f : kFields) {
    if (f.real != nullptr) {
      th[std::string(f.key)] = config.thresholds.*f.real;
    } else {
      th[std::string(f.key)] = config.thresholds.*f.count;
    }
  }
  cfg["thresholds"] = th;
  json j;
  j["config"] = cfg;
  j["pass"] = all_pass(reports);
  json arr = json::array();
  for (const VerdictReport& r : reports) arr.push_back(report_json(r));
  j["reports"] = arr;
  return j.dump(2) + "\n";
}

void write_summary_csv(std::span<const VerdictReport> reports, std::ostream& out) {
  out << "check,population,violations,worst_residual,pass\n";
  for (const VerdictReport& r : reports) {
    out << r.check << ',' << r.population << ',' << r.violations.size() << ','
        << format_double(r.worst_residual) << ',' << (r.pass ? "true" : "false") << '\n';
  }
}

}  // namespace emseq::verify
