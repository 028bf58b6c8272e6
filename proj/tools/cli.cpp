#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "emseq/error.hpp"
#include "emseq/index.hpp"
#include "emseq/io.hpp"
#include "emseq/kernels.hpp"
#include "emseq/rtree.hpp"
#include "json.hpp"

namespace emseq::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw Error(Errc::invalid_argument,
              "bad value '" + std::string(value) + "' for " + std::string(key));
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t from = 0;
  while (from <= text.size()) {
    const std::size_t comma = std::min(text.find(',', from), text.size());
    std::string item = trim(text.substr(from, comma - from));
    if (!item.empty()) out.push_back(std::move(item));
    from = comma + 1;
  }
  return out;
}

std::uint64_t parse_uint(std::string_view key, std::string_view value) {
  const std::string v = trim(value);
  std::uint64_t out = 0;
  // Accept 1e5-style shorthands as long as they are exact integers.
  if (v.find_first_of("eE") != std::string::npos) {
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size() || d < 0 || d > 1.8e19 || d != static_cast<double>(static_cast<std::uint64_t>(d))) {
      bad_value(key, value);
    }
    return static_cast<std::uint64_t>(d);
  }
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) bad_value(key, value);
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  const std::string v = trim(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad_value(key, value);
}

std::vector<std::size_t> parse_uint_list(std::string_view key, std::string_view value) {
  std::vector<std::size_t> out;
  for (const std::string& item : split_list(value)) out.push_back(parse_uint(key, item));
  return out;
}

template <typename T>
std::string join(const std::vector<T>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ',';
    if constexpr (std::is_same_v<T, std::string>) {
      out += items[i];
    } else {
      out += std::to_string(items[i]);
    }
  }
  return out;
}

constexpr std::string_view kCommands[] = {"gen", "stats", "rn", "tree", "verify", "growth"};

}  // namespace

std::size_t default_n(std::string_view command) {
  if (command == "verify") return 100000;
  if (command == "growth") return 1000000;
  if (command == "stats") return 10000;
  return 1000;
}

void set_key(RunConfig& cfg, std::string_view key, std::string_view value) {
  const std::string v = trim(value);
  if (key == "command") {
    if (std::find(std::begin(kCommands), std::end(kCommands), v) == std::end(kCommands)) {
      bad_value(key, value);
    }
    cfg.command = v;
  } else if (key == "n") {
    cfg.n = parse_uint(key, v);
    if (cfg.n == 0) throw Error(Errc::invalid_argument, "n must be positive");
  } else if (key == "engine") {
    cfg.engine = parse_engine(v);
  } else if (key == "format") {
    if (v != "text" && v != "emsq") bad_value(key, value);
    cfg.format = v;
  } else if (key == "words") {
    cfg.words = split_list(v);
    for (const std::string& w : cfg.words) (void)Word::parse(w);
  } else if (key == "word_lens") {
    cfg.word_lens = parse_uint_list(key, v);
    for (const std::size_t l : cfg.word_lens) {
      if (l < 1 || l > 2) bad_value(key, value);
    }
  } else if (key == "max_word_len") {
    cfg.max_word_len = parse_uint(key, v);
    if (cfg.max_word_len < 1 || cfg.max_word_len > Word::kMaxLength) bad_value(key, value);
  } else if (key == "lemmas") {
    cfg.lemmas.clear();
    for (const std::string& item : split_list(v)) {
      if (item == "all") {
        cfg.lemmas.assign(std::begin(verify::kAllLemmas), std::end(verify::kAllLemmas));
      } else if (item == "none") {
        cfg.lemmas.clear();
      } else {
        const verify::Lemma l = verify::parse_lemma(item);
        if (std::find(cfg.lemmas.begin(), cfg.lemmas.end(), l) == cfg.lemmas.end()) {
          cfg.lemmas.push_back(l);
        }
      }
    }
  } else if (key == "checkpoints") {
    cfg.checkpoints = parse_uint_list(key, v);
  } else if (key == "samples") {
    cfg.samples = parse_uint(key, v);
  } else if (key == "rng_seed") {
    cfg.rng_seed = parse_uint(key, v);
  } else if (key == "residuals") {
    cfg.residuals = parse_bool(key, v);
  } else if (key == "force") {
    cfg.force = parse_bool(key, v);
  } else if (key == "max_depth") {
    cfg.max_depth = parse_uint(key, v);
  } else if (key == "input") {
    cfg.input = v;
  } else if (key == "output") {
    cfg.output = v;
  } else if (key == "csv") {
    cfg.csv = v;
  } else if (key == "trace") {
    cfg.trace = v;
  } else if (key == "dot") {
    cfg.dot = v;
  } else if (!verify::set_threshold(cfg.thresholds, key, v)) {
    throw Error(Errc::invalid_argument, "unknown config key '" + std::string(key) + "'");
  }
}

void apply_config_text(RunConfig& cfg, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw Error(Errc::invalid_argument,
                  "config line " + std::to_string(lineno) + ": expected key = value");
    }
    set_key(cfg, trim(body.substr(0, eq)), body.substr(eq + 1));
  }
}

std::string config_text(const RunConfig& cfg) {
  std::vector<std::string> lemmas;
  for (const verify::Lemma l : cfg.lemmas) lemmas.emplace_back(verify::lemma_id(l));
  std::ostringstream out;
  out << "command = " << cfg.command << '\n'
      << "n = " << cfg.n << '\n'
      << "engine = " << to_string(cfg.engine) << '\n'
      << "format = " << cfg.format << '\n'
      << "words = " << join(cfg.words) << '\n'
      << "word_lens = " << join(cfg.word_lens) << '\n'
      << "max_word_len = " << cfg.max_word_len << '\n'
      << "lemmas = " << (lemmas.empty() ? std::string("none") : join(lemmas)) << '\n'
      << "checkpoints = " << join(cfg.checkpoints) << '\n'
      << "samples = " << cfg.samples << '\n'
      << "rng_seed = " << cfg.rng_seed << '\n'
      << "residuals = " << (cfg.residuals ? "true" : "false") << '\n'
      << "force = " << (cfg.force ? "true" : "false") << '\n'
      << "max_depth = " << cfg.max_depth << '\n'
      << "input = " << cfg.input << '\n'
      << "output = " << cfg.output << '\n'
      << "csv = " << cfg.csv << '\n'
      << "trace = " << cfg.trace << '\n'
      << "dot = " << cfg.dot << '\n'
      << verify::thresholds_text(cfg.thresholds);
  return out.str();
}

namespace {

// Raised for gate-independent usage problems detected after parsing.
struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, std::string_view data, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << data;
  } else {
    io::write_file_atomic(path, data);
  }
}

void check_engine(const RunConfig& cfg, std::size_t bits) {
  if (cfg.engine == Engine::naive && bits > kNaiveLimit && !cfg.force) {
    throw Usage("naive engine is quadratic; refusing n=" + std::to_string(bits) +
                " > " + std::to_string(kNaiveLimit) + " without --force");
  }
}

// At least `bits` letters: from --input, the cache, or a fresh generation.
BitSequence acquire(const RunConfig& cfg, std::size_t bits, std::ostream& err) {
  if (!cfg.input.empty()) {
    BitSequence seq = io::load_sequence_file(cfg.input);
    if (seq.size() < cfg.n) {
      throw Usage("input holds " + std::to_string(seq.size()) + " bits, need " +
                  std::to_string(cfg.n));
    }
    return seq;
  }
  check_engine(cfg, bits);
  const char* dir = std::getenv("EMSEQ_CACHE_DIR");
  fs::path cached;
  if (dir != nullptr && *dir != '\0') {
    cached = fs::path(dir) / ("em_" + std::to_string(bits) + ".emsq");
    std::error_code ec;
    if (fs::exists(cached, ec)) {
      try {
        BitSequence seq = io::load_sequence_file(cached);
        if (seq.size() == bits) return seq;
      } catch (const Error& e) {
        err << "emseq: ignoring unreadable cache file " << cached << ": " << e.what() << '\n';
      }
    }
  }
  BitSequence seq = generate(bits, cfg.engine).bits;
  if (!cached.empty()) {
    std::error_code ec;
    fs::create_directories(cached.parent_path(), ec);
    io::write_file_atomic(cached, io::to_binary(seq));
  }
  return seq;
}

std::vector<std::size_t> checkpoints_for(const RunConfig& cfg, std::vector<std::size_t> defaults) {
  std::vector<std::size_t> cps = cfg.checkpoints.empty() ? std::move(defaults) : cfg.checkpoints;
  if (cfg.checkpoints.empty()) {
    std::erase_if(cps, [&](std::size_t c) { return c > cfg.n; });
    if (cps.empty() || cps.back() != cfg.n) cps.push_back(cfg.n);
  }
  for (const std::size_t c : cps) {
    if (c == 0 || c > cfg.n) {
      throw Usage("checkpoint " + std::to_string(c) + " outside 1..n");
    }
  }
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  return cps;
}

std::vector<std::size_t> decades() {
  return {1000, 10000, 100000, 1000000, 10000000};
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  check_engine(cfg, cfg.n);
  const Generation g = generate(cfg.n, cfg.engine);
  if (cfg.format == "emsq") {
    emit(cfg.output, io::to_binary(g.bits), out);
  } else {
    std::ostringstream text;
    io::write_text(g.bits, text);
    emit(cfg.output, text.str(), out);
  }
  if (!cfg.trace.empty()) {
    std::ostringstream csv;
    io::write_trace_csv(g.trace, csv);
    io::write_file_atomic(cfg.trace, csv.str());
  }
  return kExitPass;
}

int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const BitSequence seq = acquire(cfg, cfg.n, err);
  const auto cps = checkpoints_for(cfg, decades());
  json j;
  j["n"] = cfg.n;
  j["alpha"] = alpha(seq, cfg.n);
  j["ones"] = count_occurrences(seq, Word(1, 1), 1, cfg.n);
  json counts = json::object();
  for (const std::string& w : cfg.words) {
    counts[w] = count_occurrences(seq, Word::parse(w), 1, cfg.n);
  }
  j["counts"] = counts;
  std::vector<verify::VerdictReport> reports;
  for (const std::size_t l : cfg.word_lens) {
    reports.push_back(verify::balance_report(seq, l, cps, cfg.thresholds));
  }
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(json::parse(verify::to_json(r)));
  j["balance"] = arr;
  j["pass"] = verify::all_pass(reports);
  emit(cfg.output, j.dump(2) + "\n", out);
  if (!cfg.csv.empty()) {
    std::ostringstream csv;
    verify::write_summary_csv(reports, csv);
    io::write_file_atomic(cfg.csv, csv.str());
  }
  return verify::all_pass(reports) ? kExitPass : kExitGateFailure;
}

int cmd_rn(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  // One extra bit lets x (the last position whose match stays inside x_1^n)
  // be measured.
  const BitSequence seq = acquire(cfg, cfg.n + 1, err);
  const RnSet rn = build_rn(seq, cfg.n);
  const bool identity = !rn.x() || rn.size() + 2 == *rn.x();
  json j;
  j["n"] = cfg.n;
  j["size"] = rn.size();
  j["x"] = rn.x() ? json(*rn.x()) : json(nullptr);
  j["identity_size_eq_x_minus_2"] = identity;
  j["alpha"] = alpha(seq, cfg.n);
  j["ending_0"] = rn.count_ending_with(Word(0, 1));
  j["ending_1"] = rn.count_ending_with(Word(1, 1));
  j["bad_words"] = rn.bad_word_count();
  emit(cfg.output, j.dump(2) + "\n", out);
  if (!cfg.csv.empty()) {
    std::ostringstream csv;
    csv << "word,first,second,kind\n";
    for (const auto& e : rn.entries()) {
      csv << e.word.str() << ',' << e.first << ',' << e.second << ',' << to_string(e.kind) << '\n';
    }
    io::write_file_atomic(cfg.csv, csv.str());
  }
  return identity ? kExitPass : kExitGateFailure;
}

int cmd_tree(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const BitSequence seq = acquire(cfg, cfg.n, err);
  const TnTree tree = build_tn(build_rn(seq, cfg.n));
  const TreeStats st = zeta_stats(tree);
  emit(cfg.output, tree_stats_json(st), out);
  if (!cfg.dot.empty()) {
    DotOptions opt;
    opt.max_depth = cfg.max_depth;
    io::write_file_atomic(cfg.dot, export_dot(tree, opt));
  }
  return st.gamma_identity ? kExitPass : kExitGateFailure;
}

verify::SuiteConfig suite_config(const RunConfig& cfg) {
  verify::SuiteConfig sc;
  sc.n = cfg.n;
  sc.lemmas = cfg.lemmas;
  sc.max_word_len = cfg.max_word_len;
  sc.samples = cfg.samples;
  sc.rng_seed = cfg.rng_seed;
  sc.checkpoints = checkpoints_for(cfg, sc.checkpoints);
  sc.residuals = cfg.residuals;
  sc.thresholds = cfg.thresholds;
  return sc;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const verify::SuiteConfig sc = suite_config(cfg);
  const BitSequence seq = acquire(cfg, cfg.n + 1, err);
  const auto reports = verify::run_suite(seq, sc);
  emit(cfg.output, verify::suite_json(reports, sc), out);
  if (!cfg.csv.empty()) {
    std::ostringstream csv;
    verify::write_summary_csv(reports, csv);
    io::write_file_atomic(cfg.csv, csv.str());
  }
  for (const auto& r : reports) {
    if (!r.pass) err << "emseq: " << r.check << " failed (" << r.violations.size() << " violations)\n";
  }
  return verify::all_pass(reports) ? kExitPass : kExitGateFailure;
}

int cmd_growth(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const BitSequence full = acquire(cfg, cfg.n, err);
  const BitSequence seq = full.size() == cfg.n ? full : full.prefix(cfg.n);
  const auto cps = checkpoints_for(cfg, decades());
  const auto report = verify::growth_report(seq, cps, cfg.thresholds);
  emit(cfg.output, verify::to_json(report), out);
  if (!cfg.csv.empty()) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "k,i_k,ratio\n";
    for (const auto& row : verify::initial_recurrences(seq)) {
      csv << row.k << ',' << row.i_k << ',' << row.ratio << '\n';
    }
    io::write_file_atomic(cfg.csv, csv.str());
  }
  return report.pass ? kExitPass : kExitGateFailure;
}

struct Binding {
  std::string key;
  std::string value;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ehrenfeucht-Mycielski sequence generator and analysis toolkit", "emseq"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "emseq 0.1.0");

  std::vector<Binding> given;
  std::string config_path;
  bool dump = false;

  auto option = [&](CLI::App* sub, const std::string& flags, const std::string& key,
                    const std::string& help) {
    sub->add_option_function<std::string>(
        flags, [&given, key](const std::string& v) { given.push_back({key, v}); },
        help + " [key: " + key + "]");
  };
  auto flag = [&](CLI::App* sub, const std::string& flags, const std::string& key,
                  const std::string& value, const std::string& help) {
    sub->add_flag_callback(
        flags, [&given, key, value] { given.push_back({key, value}); },
        help + " [key: " + key + "]");
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value file applied before flags");
    sub->add_flag("--dump-config", dump, "print the resolved config and exit");
    option(sub, "-o,--output", "output", "output path (default: stdout)");
  };
  auto analysis = [&](CLI::App* sub) {
    option(sub, "--input", "input", "read bits from a .emsq or text file instead of generating");
    option(sub, "--engine", "engine", "engine used when generating: fast|naive (default fast)");
    flag(sub, "--force", "force", "true", "allow the naive engine above 100000 bits");
  };
  auto thresholds = [&](CLI::App* sub) {
    sub->add_option_function<std::vector<std::string>>(
        "--threshold",
        [&given](const std::vector<std::string>& items) {
          for (const std::string& item : items) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) {
              throw CLI::ValidationError("--threshold", "expected key=value");
            }
            given.push_back({item.substr(0, eq), item.substr(eq + 1)});
          }
        },
        "override a gate threshold, e.g. theorem1_max_residual=0.05");
  };

  CLI::App* gen = app.add_subcommand("gen", "emit the first n bits and optionally the step trace");
  common(gen);
  option(gen, "-n", "n", "number of bits (required, > 0)");
  option(gen, "--engine", "engine", "fast|naive (default fast)");
  option(gen, "--format", "format", "text|emsq (default text)");
  option(gen, "--trace", "trace", "write the step trace as CSV");
  flag(gen, "--force", "force", "true", "allow the naive engine above 100000 bits");

  CLI::App* stats = app.add_subcommand("stats", "occurrence counts, alpha and balance report");
  common(stats);
  analysis(stats);
  thresholds(stats);
  option(stats, "-n", "n", "prefix length (default 10000)");
  option(stats, "-w,--word", "words", "comma-separated words to count");
  option(stats, "--word-lens", "word_lens", "balance word lengths (default 1,2)");
  option(stats, "--checkpoints", "checkpoints", "comma-separated (default powers of ten up to n, and n)");
  option(stats, "--csv", "csv", "write the balance summary as CSV");

  CLI::App* rn = app.add_subcommand("rn", "summary of the words occurring at least twice");
  common(rn);
  analysis(rn);
  option(rn, "-n", "n", "prefix length (default 1000)");
  option(rn, "--csv", "csv", "write every word with its first two starts as CSV");

  CLI::App* tree = app.add_subcommand("tree", "build the reversed-word tree, its statistics and DOT");
  common(tree);
  analysis(tree);
  option(tree, "-n", "n", "prefix length (default 1000)");
  option(tree, "--dot", "dot", "write the tree as Graphviz DOT");
  option(tree, "--max-depth", "max_depth", "omit vertices deeper than this in DOT (0 = all)");

  CLI::App* ver = app.add_subcommand("verify", "run the verification suite");
  common(ver);
  analysis(ver);
  thresholds(ver);
  option(ver, "-n", "n", "prefix length (default 100000)");
  option(ver, "--lemma", "lemmas", "all|none|4.1,4.2,4.3,4.4 (default all)");
  option(ver, "--maxlen", "max_word_len", "longest scanned word (default 10)");
  option(ver, "--samples", "samples", "sampled proximity triples, 0 disables (default 10000)");
  option(ver, "--seed", "rng_seed", "sampling seed (default 1)");
  option(ver, "--checkpoints", "checkpoints", "residual checkpoints (default 1000,3000,10000,30000,100000 up to n, and n)");
  flag(ver, "--no-residuals", "residuals", "false", "skip the residual reports");
  option(ver, "--csv", "csv", "write the per-check summary as CSV");

  CLI::App* growth = app.add_subcommand("growth", "initial recurrences i_k and alpha growth");
  common(growth);
  analysis(growth);
  thresholds(growth);
  option(growth, "-n", "n", "prefix length (default 1000000)");
  option(growth, "--checkpoints", "checkpoints", "alpha checkpoints (default powers of ten up to n, and n)");
  option(growth, "--csv", "csv", "write k,i_k,ratio rows as CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  RunConfig cfg;
  try {
    for (CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (!config_path.empty()) {
      RunConfig file;
      apply_config_text(file, io::read_file(config_path));
      if (!file.command.empty() && file.command != cfg.command) {
        throw Usage("config is for '" + file.command + "', not '" + cfg.command + "'");
      }
      file.command = cfg.command;
      cfg = std::move(file);
    }
    for (const Binding& b : given) set_key(cfg, b.key, b.value);
    if (cfg.n == 0) {
      if (cfg.command == "gen") throw Usage("gen needs -n");
      cfg.n = default_n(cfg.command);
    }
    if (dump) {
      out << config_text(cfg);
      return kExitPass;
    }
    if (cfg.command == "gen") return cmd_gen(cfg, out);
    if (cfg.command == "stats") return cmd_stats(cfg, out, err);
    if (cfg.command == "rn") return cmd_rn(cfg, out, err);
    if (cfg.command == "tree") return cmd_tree(cfg, out, err);
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    return cmd_growth(cfg, out, err);
  } catch (const Usage& e) {
    err << "emseq: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "emseq: " << to_string(e.code()) << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "emseq: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace emseq::cli
