#include <gtest/gtest.h>

#include <string>

#include "emseq/error.hpp"
#include "emseq/generator.hpp"
#include "emseq/index.hpp"
#include "oracles.hpp"

using namespace emseq;

TEST(Generator, GoldenPrefix) {
  for (const Engine e : {Engine::naive, Engine::fast}) {
    const Generation g = generate(31, e);
    EXPECT_EQ(g.bits.prefix(30).str(), oracle::kPrefix30);
    EXPECT_EQ(g.bits[31], 0);
    ASSERT_EQ(g.trace.size(), 28u);
    const StepTrace& last = g.trace.back();
    EXPECT_EQ(last.t, 31u);
    EXPECT_EQ(last.match_len, 4u);
    EXPECT_EQ(last.match_start, 27u);
    EXPECT_EQ(last.source_end, 5u);
    EXPECT_EQ(g.bits.word(27, 4).str(), "1001");
    EXPECT_EQ(last.emitted, 0);
  }
}

TEST(Generator, SeedOnlyPrefixes) {
  EXPECT_EQ(generate(1, Engine::fast).bits.str(), "0");
  EXPECT_EQ(generate(3, Engine::fast).bits.str(), "010");
  EXPECT_TRUE(generate(3, Engine::fast).trace.empty());
}

TEST(Generator, MatchesLiteralRule) {
  const std::string want = oracle::em(1500);
  EXPECT_EQ(generate(1500, Engine::fast).bits.str(), want);
  EXPECT_EQ(generate(1500, Engine::naive).bits.str(), want);
}

TEST(Generator, EnginesAgreeOnBitsAndTrace) {
  const Generation a = generate(5000, Engine::naive);
  const Generation b = generate(5000, Engine::fast);
  ASSERT_EQ(a.bits, b.bits);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    ASSERT_EQ(a.trace[i], b.trace[i]) << "t=" << a.trace[i].t;
  }
}

// Every trace entry is maximal and latest: the suffix occurs ending at
// source_end, the one-longer suffix has no earlier occurrence, and no later
// end also matches.
TEST(Generator, TraceIsMaximalAndLatest) {
  const Generation g = generate(800, Engine::fast);
  const std::string s = g.bits.str();
  for (const StepTrace& st : g.trace) {
    const std::size_t t = st.t;
    ASSERT_EQ(st.match_start + st.match_len, t);
    const std::string suf = s.substr(t - 1 - st.match_len, st.match_len);
    ASSERT_EQ(s.compare(st.source_end - st.match_len, st.match_len, suf), 0);
    for (std::size_t end = st.source_end + 1; end <= t - 2; ++end) {
      ASSERT_NE(s.compare(end - st.match_len, st.match_len, suf), 0) << "t=" << t;
    }
    if (st.match_len + 1 <= t - 2) {
      const std::string longer = s.substr(t - 2 - st.match_len, st.match_len + 1);
      for (std::size_t end = st.match_len + 1; end <= t - 2; ++end) {
        ASSERT_NE(s.compare(end - st.match_len - 1, st.match_len + 1, longer), 0) << "t=" << t;
      }
    }
    ASSERT_EQ(st.emitted, 1 - (s[st.source_end] - '0'));
    ASSERT_EQ(s[t - 1] - '0', st.emitted);
  }
}

TEST(Generator, MatchLengthGrowsByAtMostOne) {
  const Generation g = generate(20000, Engine::fast);
  for (std::size_t i = 1; i < g.trace.size(); ++i) {
    ASSERT_LE(g.trace[i].match_len, g.trace[i - 1].match_len + 1);
  }
}

TEST(Generator, ExtendContinuesExactly) {
  for (const Engine e : {Engine::naive, Engine::fast}) {
    Generator state(e);
    state.advance(1000);
    const BitSequence head = state.sequence();
    const Generation more = extend(head, state, 500);
    const Generation whole = generate(1500, e);
    EXPECT_EQ(more.bits, whole.bits);
    ASSERT_EQ(more.trace.size(), 500u);
    EXPECT_EQ(more.trace.front(), whole.trace[1000 - 3]);
    EXPECT_EQ(state.alpha(), alpha(whole.trace, 1500));
  }
}

TEST(Generator, ExtendRejectsForeignState) {
  Generator state(Engine::fast);
  state.advance(100);
  const BitSequence other = generate(101, Engine::fast).bits;
  try {
    extend(other, state, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::state_mismatch);
  }
}

TEST(Generator, CapacityIsEnforcedBeforeEmitting) {
  Generator state(Engine::fast, 50);
  state.advance(40);
  try {
    state.advance(11);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::capacity);
  }
  EXPECT_EQ(state.size(), 40u);
  state.advance(10);
  EXPECT_EQ(state.size(), 50u);
  try {
    generate(0, Engine::fast);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_argument);
  }
}

TEST(Generator, EngineNames) {
  EXPECT_EQ(parse_engine("naive"), Engine::naive);
  EXPECT_EQ(parse_engine("fast"), Engine::fast);
  EXPECT_EQ(to_string(Engine::fast), "fast");
  EXPECT_THROW(parse_engine("slow"), Error);
}
