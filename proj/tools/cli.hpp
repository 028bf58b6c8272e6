#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "emseq/generator.hpp"
#include "emseq/verify.hpp"

// emseq command-line front end.
//
// Every flag has a config key of the same name (dashes become underscores),
// so a run can be replayed from a key=value file:
//
//   # comments and blank lines are ignored
//   command = verify
//   n = 100000
//   checkpoints = 1000,10000,100000
//   theorem1_max_residual = 0.05
//
// Precedence: built-in defaults, then --config, then explicit flags.

namespace emseq::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitGateFailure = 1;
inline constexpr int kExitUsage = 2;

/// Above this the naive engine needs --force.
inline constexpr std::size_t kNaiveLimit = 100000;

struct RunConfig {
  std::string command;
  std::size_t n = 0;  // 0: command default
  Engine engine = Engine::fast;
  std::string format = "text";
  std::vector<std::string> words;
  std::vector<std::size_t> word_lens{1, 2};
  std::size_t max_word_len = 10;
  std::vector<verify::Lemma> lemmas{std::begin(verify::kAllLemmas),
                                    std::end(verify::kAllLemmas)};
  std::vector<std::size_t> checkpoints;  // empty: command default
  std::size_t samples = 10000;
  std::uint64_t rng_seed = 1;
  bool residuals = true;
  bool force = false;
  std::size_t max_depth = 0;
  std::string input;
  std::string output;
  std::string csv;
  std::string trace;
  std::string dot;
  verify::Thresholds thresholds;
};

std::size_t default_n(std::string_view command);

/// Applies one key=value pair. Throws emseq::Error(invalid_argument) for
/// unknown keys or unparsable values.
void set_key(RunConfig& cfg, std::string_view key, std::string_view value);
/// Applies every assignment of a config file body.
void apply_config_text(RunConfig& cfg, std::string_view text);
/// Serializes the fully resolved config in key=value form.
std::string config_text(const RunConfig& cfg);

/// Entry point; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace emseq::cli
