#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "emseq/error.hpp"
#include "emseq/generator.hpp"
#include "emseq/index.hpp"
#include "oracles.hpp"

using namespace emseq;

namespace {

const BitSequence& em20k() {
  static const BitSequence seq = generate(20000, Engine::fast).bits;
  return seq;
}

}  // namespace

TEST(Index, CountFrozenAndBruteForce) {
  const BitSequence& seq = em20k();
  EXPECT_EQ(count_occurrences(seq, Word::parse("0"), 1, 30), 15u);
  const std::string text = seq.prefix(4000).str();
  const SequenceIndex index(seq.prefix(4000));
  std::mt19937_64 rng(4);
  for (int k = 0; k < 300; ++k) {
    const std::string w = oracle::random_bits(rng, 1 + rng() % 12);
    const std::size_t a = 1 + rng() % 4000;
    const std::size_t b = a + rng() % (4000 - a + 1);
    const std::size_t want = oracle::count(text, w, a, b);
    EXPECT_EQ(count_occurrences(seq, Word::parse(w), a, b), want);
    EXPECT_EQ(index.count(Word::parse(w), a, b), want);
  }
}

TEST(Index, CountErrors) {
  const BitSequence& seq = em20k();
  auto code = [&](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::io;
  };
  EXPECT_EQ(code([&] { count_occurrences(seq, Word(), 1, 5); }), Errc::empty_word);
  EXPECT_EQ(code([&] { count_occurrences(seq, Word::parse("0"), 0, 5); }), Errc::range);
  EXPECT_EQ(code([&] { count_occurrences(seq, Word::parse("0"), 6, 5); }), Errc::range);
  EXPECT_EQ(code([&] { count_occurrences(seq, Word::parse("0"), 1, 20001); }), Errc::range);
  EXPECT_EQ(code([&] { occurrences_of(seq, Word::parse("0"), 0); }), Errc::invalid_argument);
}

TEST(Index, OccurrencesInStartOrder) {
  const BitSequence& seq = em20k();
  const std::string text = seq.str();
  const SequenceIndex index(seq);
  for (const char* w : {"1", "0110", "10001", "0000000"}) {
    const auto want = oracle::starts(text, w);
    const auto a = occurrences_of(seq, Word::parse(w), 5);
    const auto b = index.occurrences(Word::parse(w), 5);
    ASSERT_EQ(a, b);
    for (std::size_t k = 0; k < a.size(); ++k) {
      EXPECT_EQ(a[k].start, want[k]);
      EXPECT_EQ(a[k].end, want[k] + std::string(w).size() - 1);
    }
  }
}

TEST(Index, BPlusDirectAndIndexed) {
  const BitSequence seq = em20k().prefix(1500);
  const SequenceIndex index(seq);
  const auto ref = oracle::lpf(seq.str());
  for (std::size_t i = 1; i <= seq.size(); i += 7) {
    const MatchView direct = b_plus(seq, i);
    const MatchView fast = index.b_plus(i);
    EXPECT_EQ(direct.length, ref[i - 1]);
    EXPECT_EQ(fast.length, ref[i - 1]);
    EXPECT_EQ(fast.b_plus, direct.b_plus);
    EXPECT_EQ(fast.b_plus, seq.word(i, fast.length));
  }
  EXPECT_THROW(b_plus(seq, 0), Error);
  EXPECT_THROW(index.b_plus(1501), Error);
}

TEST(Index, MatchLengthsFromBitsEqualTrace) {
  const Generation g = generate(20000, Engine::fast);
  const auto lengths = match_lengths(g.bits, 20000);
  for (const StepTrace& st : g.trace) ASSERT_EQ(lengths[st.t], st.match_len) << st.t;
  EXPECT_EQ(alpha(g.bits, 1000), 10u);
  EXPECT_EQ(alpha(g.trace, 1000), 10u);
  EXPECT_EQ(alpha(g.bits, 3), 0u);
  EXPECT_EQ(alpha(g.bits, 4175), 12u);
  EXPECT_EQ(alpha(g.bits, 4176), 13u);
}

TEST(Index, ClassifyWords) {
  const BitSequence s = BitSequence::from_string("0110110");
  // "11" starts at 2 and 5, preceded by 0 and 0: bad.
  EXPECT_EQ(classify_word(s, Word::parse("11")).kind, WordClassKind::bad);
  // "10" starts at 3 and 6, preceded by 1 and 1: bad.
  EXPECT_EQ(classify_word(s, Word::parse("10")).kind, WordClassKind::bad);
  // "0" starts at 1: boundary.
  EXPECT_EQ(classify_word(s, Word::parse("0")).kind, WordClassKind::boundary);
  // Single occurrence: undetermined even though it starts at 1.
  EXPECT_EQ(classify_word(s, Word::parse("0110110")).kind, WordClassKind::undetermined);
  const BitSequence t = BitSequence::from_string("00111");
  // "1" starts at 3 and 4, preceded by 0 and 1: good.
  const WordClass c = classify_word(t, Word::parse("1"));
  EXPECT_EQ(c.kind, WordClassKind::good);
  ASSERT_TRUE(c.first_two_preceding);
  EXPECT_EQ(*c.first_two_preceding, std::make_pair(0, 1));
  EXPECT_EQ(SequenceIndex(t).classify(Word::parse("1")).kind, WordClassKind::good);
}

TEST(Index, ProximityIsCommonSuffixOfPrefixes) {
  const BitSequence seq = em20k().prefix(3000);
  const std::string text = seq.str();
  std::mt19937_64 rng(6);
  for (int k = 0; k < 500; ++k) {
    const Word w = Word::parse("0");
    const std::size_t a = 1 + rng() % 3000, b = 1 + rng() % 3000;
    const Occurrence x{w, a, a}, y{w, b, b};
    const std::size_t want = a == b ? a - 1
                                    : oracle::common_suffix(text.substr(0, a - 1), text.substr(0, b - 1));
    EXPECT_EQ(proximity(seq, x, y), want);
    EXPECT_EQ(proximity(seq, y, x), want);
    EXPECT_EQ(proximity_degenerate(x, y), a == b);
  }
}

TEST(Index, FirstOccurrencesTable) {
  const BitSequence seq = em20k().prefix(2000);
  const std::string text = seq.str();
  const FirstOccurrences first(seq, 2000, 6, 3);
  const auto words = first.words();
  EXPECT_EQ(words.size(), 2u + 4u + 8u + 16u + 32u + 64u);
  for (const Word& w : words) {
    auto want = oracle::starts(text, w.str());
    want.resize(std::min<std::size_t>(3, want.size()));
    const auto got = first.starts(w);
    ASSERT_TRUE(std::equal(want.begin(), want.end(), got.begin(), got.end())) << w.str();
  }
  EXPECT_TRUE(first.starts(Word::parse("0000000")).empty());
}

TEST(Index, CsvWriters) {
  std::ostringstream occ, cls;
  const BitSequence s = BitSequence::from_string("0110110");
  write_occurrences_csv(occurrences_of(s, Word::parse("11"), 4), occ);
  EXPECT_EQ(occ.str(), "word,start,end\n11,2,3\n11,5,6\n");
  const WordClass c[] = {classify_word(s, Word::parse("11")), classify_word(s, Word::parse("0110110"))};
  write_classes_csv(c, cls);
  EXPECT_EQ(cls.str(), "word,class,pre1,pre2\n11,bad,0,0\n0110110,undetermined,,\n");
}
