#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "affect/emotion.hpp"
#include "affect/errors.hpp"

using namespace affect;

namespace {

Lexicon pair_lexicon() { return Lexicon({{"war", 2.08, 7.49, 6.38}, {"love", 8.72, 6.44, 6.93}}); }

MonthlyBucket bucket(Month m, std::initializer_list<std::pair<const char*, std::int64_t>> counts, std::int64_t threads) {
  MonthlyBucket b;
  b.month = m;
  for (const auto& [w, c] : counts) b.token_counts[w] = c;
  b.thread_count = threads;
  return b;
}

}  // namespace

TEST(ScoreMonth, FrequencyWeightedAgainstHandValues) {
  const auto e = score_month(bucket(Month(2001, 9), {{"war", 3}, {"love", 1}, {"the", 9}}, 2), pair_lexicon());
  EXPECT_EQ(e.match_count, 4);
  EXPECT_EQ(e.distinct_words, 2);
  EXPECT_EQ(e.thread_count, 2);
  // Valence: (3*2.08 + 8.72) / 4 = 3.74; deviations 1.66 (x3) and 4.98.
  EXPECT_NEAR(*e[Dimension::kValence].mean, 3.74, 1e-12);
  EXPECT_NEAR(*e[Dimension::kValence].std_dev, std::sqrt((3 * 1.66 * 1.66 + 4.98 * 4.98) / 4), 1e-12);
  EXPECT_NEAR(*e[Dimension::kArousal].mean, (3 * 7.49 + 6.44) / 4, 1e-12);
}

TEST(ScoreMonth, SingleWordHasZeroSpread) {
  const auto e = score_month(bucket(Month(2001, 9), {{"war", 5}}, 1), pair_lexicon());
  EXPECT_EQ(*e[Dimension::kDominance].mean, 6.38);
  EXPECT_EQ(*e[Dimension::kDominance].std_dev, 0.0);
}

TEST(ScoreMonth, NoMatchesIsMissingNotZero) {
  const auto e = score_month(bucket(Month(2001, 9), {{"the", 2}}, 1), pair_lexicon());
  EXPECT_EQ(e.match_count, 0);
  for (Dimension d : kDimensions) {
    EXPECT_FALSE(e[d].mean);
    EXPECT_FALSE(e[d].std_dev);
  }
}

TEST(ScoreMonth, AgreesWithExpandedTokens) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> score(1.0, 9.0);
  std::uniform_int_distribution<int> count(1, 50);
  std::vector<LexiconEntry> entries;
  for (int i = 0; i < 20; ++i) entries.push_back({"w" + std::string(1, static_cast<char>('a' + i)), score(rng), score(rng), score(rng)});
  const Lexicon lex(entries);
  for (int trial = 0; trial < 200; ++trial) {
    MonthlyBucket b;
    b.month = Month(2000, 1);
    std::vector<std::pair<double, std::int64_t>> val;
    for (const auto& e : entries) {
      if (rng() % 3 == 0) continue;
      const int c = count(rng);
      b.token_counts[e.word] = c;
      val.emplace_back(e.valence, c);
    }
    if (val.empty()) continue;
    const auto got = score_month(b, lex);
    const auto want = oracle::expanded_mean_std(val);
    EXPECT_NEAR(*got[Dimension::kValence].mean, want.mean, 1e-12 * want.mean);
    EXPECT_NEAR(*got[Dimension::kValence].std_dev, want.std_dev, 1e-12 * std::max(1.0, want.std_dev));
  }
}

TEST(BuildSeries, RejectsNonContiguousBuckets) {
  std::vector<MonthlyBucket> b = {bucket(Month(2001, 9), {{"war", 1}}, 1), bucket(Month(2001, 11), {{"war", 1}}, 1)};
  EXPECT_THROW(build_series(b, pair_lexicon()), PreconditionError);
}

TEST(BuildSeries, KeepsAxisAndGaps) {
  std::vector<MonthlyBucket> b = {bucket(Month(2001, 9), {{"war", 1}}, 1), bucket(Month(2001, 10), {}, 0),
                                  bucket(Month(2001, 11), {{"love", 2}}, 1)};
  const auto s = build_series(b, pair_lexicon());
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.first_month().str(), "2001-09");
  EXPECT_FALSE(s.months[1][Dimension::kValence].mean);
  EXPECT_EQ(*s.months[2][Dimension::kValence].mean, 8.72);
}

TEST(TopWords, TwentyOfTwentyFive) {
  std::vector<LexiconEntry> entries;
  MonthlyBucket a, b;
  a.month = Month(2002, 1);
  b.month = Month(2002, 2);
  for (int i = 0; i < 25; ++i) {
    const std::string w = std::string("word") + static_cast<char>('a' + i);
    entries.push_back({w, 5, 5, 5});
    // Total count of word i is i + 1, split over the two months.
    a.token_counts[w] = (i + 1) / 2;
    if (i + 1 - (i + 1) / 2 > 0) b.token_counts[w] = i + 1 - (i + 1) / 2;
  }
  a.token_counts["unscored"] = 1000;
  const Lexicon lex(entries);
  const auto top = top_lexicon_words({a, b}, lex, {Month(2002, 1), Month(2002, 2)}, 20);
  ASSERT_EQ(top.size(), 20u);
  for (int r = 0; r < 20; ++r) {
    EXPECT_EQ(top[r].word, std::string("word") + static_cast<char>('a' + 24 - r));
    EXPECT_EQ(top[r].occurrences, 25 - r);
    EXPECT_DOUBLE_EQ(top[r].display_weight, std::sqrt(25.0 - r));
  }
}

TEST(TopWords, TiesAlphabeticalAndPeriodChecked) {
  const std::vector<MonthlyBucket> b = {bucket(Month(2001, 9), {{"war", 2}, {"love", 2}}, 1)};
  const auto top = top_lexicon_words(b, pair_lexicon(), {Month(2001, 9), Month(2001, 9)}, 5);
  ASSERT_EQ(top.size(), 2u);
  EXPECT_EQ(top[0].word, "love");
  EXPECT_THROW(top_lexicon_words(b, pair_lexicon(), {Month(2001, 9), Month(2001, 9)}, 0), PreconditionError);
  EXPECT_THROW(top_lexicon_words(b, pair_lexicon(), {Month(2001, 9), Month(2001, 10)}, 5), PreconditionError);
}
