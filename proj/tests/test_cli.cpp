#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "dot_reader.hpp"
#include "emseq/io.hpp"
#include "json.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using emseq::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("emseq_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    ::unsetenv("EMSEQ_CACHE_DIR");
  }
  void TearDown() override {
    ::unsetenv("EMSEQ_CACHE_DIR");
    fs::remove_all(dir_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenPrintsPrefix) {
  const Result r = call({"gen", "-n", "30", "--format", "text"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, std::string(oracle::kPrefix30) + "\n");
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(call({"gen", "-n", "0"}).code, 2);
  EXPECT_EQ(call({"gen"}).code, 2);
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"bogus"}).code, 2);
  EXPECT_EQ(call({"gen", "-n", "abc"}).code, 2);
  EXPECT_EQ(call({"gen", "-n", "10", "--engine", "slow"}).code, 2);
  EXPECT_EQ(call({"gen", "-n", "10", "--format", "png"}).code, 2);
  EXPECT_EQ(call({"verify", "--lemma", "4.9"}).code, 2);
  EXPECT_EQ(call({"verify", "-n", "2000", "--checkpoints", "5000"}).code, 2);
  EXPECT_EQ(call({"stats", "--word", "01x"}).code, 2);
  EXPECT_EQ(call({"rn", "--input", path("missing.emsq")}).code, 2);
  const Result r = call({"gen", "-n", "0"});
  EXPECT_FALSE(r.err.empty());
  EXPECT_TRUE(r.out.empty());
}

TEST_F(Cli, HelpExitsZero) {
  const Result r = call({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
  EXPECT_EQ(call({"verify", "--help"}).code, 0);
}

TEST_F(Cli, NaiveEngineGuard) {
  const Result r = call({"gen", "-n", "100001", "--engine", "naive"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--force"), std::string::npos);
  EXPECT_EQ(call({"rn", "-n", "100001", "--engine", "naive"}).code, 2);
}

TEST_F(Cli, EnginesWriteIdenticalArtifacts) {
  ASSERT_EQ(call({"gen", "-n", "3000", "--engine", "naive", "--format", "emsq", "-o", path("a.emsq"),
                  "--trace", path("a.csv")}).code, 0);
  ASSERT_EQ(call({"gen", "-n", "3000", "--engine", "fast", "--format", "emsq", "-o", path("b.emsq"),
                  "--trace", path("b.csv")}).code, 0);
  EXPECT_EQ(emseq::io::read_file(path("a.emsq")), emseq::io::read_file(path("b.emsq")));
  EXPECT_EQ(emseq::io::read_file(path("a.csv")), emseq::io::read_file(path("b.csv")));
  EXPECT_EQ(emseq::io::load_sequence_file(path("a.emsq")).size(), 3000u);
  EXPECT_FALSE(fs::exists(path("a.emsq.tmp")));
}

TEST_F(Cli, ConfigRoundTripAndPrecedence) {
  emseq::io::write_file_atomic(path("run.cfg"),
                               "# replay\ncommand = verify\nn = 4000\nsamples = 50\n"
                               "checkpoints = 1000, 4000\ntheorem1_max_residual = 0.2\n");
  const Result dump = call({"verify", "--config", path("run.cfg"), "--seed", "9", "--dump-config"});
  ASSERT_EQ(dump.code, 0);
  EXPECT_NE(dump.out.find("n = 4000\n"), std::string::npos);
  EXPECT_NE(dump.out.find("rng_seed = 9\n"), std::string::npos);
  EXPECT_NE(dump.out.find("theorem1_max_residual = 0.20000000000000001\n"), std::string::npos);
  emseq::io::write_file_atomic(path("dumped.cfg"), dump.out);
  const Result again = call({"verify", "--config", path("dumped.cfg"), "--dump-config"});
  EXPECT_EQ(again.out, dump.out);
  EXPECT_EQ(call({"growth", "--config", path("run.cfg")}).code, 2);
  emseq::io::write_file_atomic(path("bad.cfg"), "colour = red\n");
  EXPECT_EQ(call({"rn", "--config", path("bad.cfg")}).code, 2);
  emseq::io::write_file_atomic(path("bad2.cfg"), "n 10\n");
  EXPECT_EQ(call({"rn", "--config", path("bad2.cfg")}).code, 2);
}

TEST_F(Cli, VerifyPassesAndIsReproducible) {
  const std::vector<std::string> args = {"verify", "-n", "20000", "--samples", "300",
                                         "--checkpoints", "2000,10000,20000"};
  const Result a = call(args);
  const Result b = call(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::ordered_json::parse(a.out);
  EXPECT_TRUE(j.at("pass").get<bool>());
  for (const auto& r : j.at("reports")) EXPECT_TRUE(r.at("violations").empty());
}

TEST_F(Cli, VerifyGateFailureExitsOne) {
  const Result r = call({"verify", "-n", "5000", "--samples", "0", "--lemma", "none",
                         "--threshold", "theorem1_max_residual=0.0001"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("theorem1"), std::string::npos);
}

TEST_F(Cli, VerifyWritesFiles) {
  ASSERT_EQ(call({"verify", "-n", "3000", "--samples", "100", "-o", path("v.json"), "--csv",
                  path("v.csv")}).code, 0);
  EXPECT_TRUE(nlohmann::json::parse(emseq::io::read_file(path("v.json"))).at("pass").get<bool>());
  EXPECT_EQ(emseq::io::read_file(path("v.csv")).rfind("check,", 0), 0u);
}

TEST_F(Cli, CacheIsPopulatedAndReused) {
  ::setenv("EMSEQ_CACHE_DIR", path("cache").c_str(), 1);
  const Result a = call({"rn", "-n", "500"});
  ASSERT_EQ(a.code, 0);
  ASSERT_TRUE(fs::exists(path("cache/em_501.emsq")));
  const Result b = call({"rn", "-n", "500"});
  EXPECT_EQ(a.out, b.out);
  // A damaged cache entry is reported and replaced.
  emseq::io::write_file_atomic(path("cache/em_501.emsq"), "EMSQ");
  const Result c = call({"rn", "-n", "500"});
  EXPECT_EQ(c.out, a.out);
  EXPECT_NE(c.err.find("cache"), std::string::npos);
  EXPECT_EQ(emseq::io::load_sequence_file(path("cache/em_501.emsq")).size(), 501u);
}

TEST_F(Cli, RnSummary) {
  const Result r = call({"rn", "-n", "1000", "--csv", path("rn.csv")});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("size"), 990);
  EXPECT_EQ(j.at("x"), 992);
  EXPECT_EQ(j.at("alpha"), 10);
  const std::string csv = emseq::io::read_file(path("rn.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 991);
}

TEST_F(Cli, RnFromInputFile) {
  ASSERT_EQ(call({"gen", "-n", "1000", "-o", path("x.txt")}).code, 0);
  const Result r = call({"rn", "-n", "1000", "--input", path("x.txt")});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(r.out).at("x").is_null());
  EXPECT_EQ(call({"rn", "-n", "1001", "--input", path("x.txt")}).code, 2);
}

TEST_F(Cli, StatsCountsWords) {
  const Result r = call({"stats", "-n", "30", "--word", "0,1001"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("counts").at("0"), 15);
  EXPECT_EQ(j.at("counts").at("1001"), 2);
  EXPECT_EQ(j.at("alpha"), 4);
}

TEST_F(Cli, TreeWritesDot) {
  const Result r = call({"tree", "-n", "1000", "--dot", path("t.dot"), "--max-depth", "4"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("gamma"), 220);
  const dot::Graph g = dot::read(emseq::io::read_file(path("t.dot")));
  EXPECT_EQ(g.nodes.size(), 31u);
}

TEST_F(Cli, GrowthGate) {
  const Result r = call({"growth", "-n", "20000", "--csv", path("g.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = emseq::io::read_file(path("g.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "k,i_k,ratio");
  EXPECT_NE(csv.find("\n14,10335,"), std::string::npos);
  EXPECT_EQ(call({"growth", "-n", "20000", "--threshold", "growth_ik_min_ratio=3"}).code, 1);
  EXPECT_EQ(call({"growth", "-n", "50"}).code, 2);
}
