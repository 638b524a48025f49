#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "affect/ingest.hpp"
#include "affect/lexicon.hpp"
#include "affect/month.hpp"

namespace affect {

/// Frequency-weighted summary of one dimension for one month. Both fields are
/// empty exactly when the month had no lexicon matches.
struct DimensionStats {
  std::optional<double> mean;
  std::optional<double> std_dev;  // population deviation (divides by the match count)
};

struct MonthEmotion {
  Month month;
  std::array<DimensionStats, 3> dims;
  std::int64_t match_count = 0;
  std::int64_t distinct_words = 0;
  std::int64_t thread_count = 0;

  const DimensionStats& operator[](Dimension d) const { return dims[static_cast<std::size_t>(d)]; }
  DimensionStats& operator[](Dimension d) { return dims[static_cast<std::size_t>(d)]; }
};

struct EmotionSeries {
  std::vector<MonthEmotion> months;

  Month first_month() const { return months.front().month; }
  std::size_t size() const { return months.size(); }
};

struct WeightedWord {
  std::string word;
  std::int64_t occurrences = 0;
  double display_weight = 0.0;  // sqrt(occurrences)
};

MonthEmotion score_month(const MonthlyBucket& bucket, const Lexicon& lexicon);

/// Scores each bucket in axis order. Throws PreconditionError when the
/// bucket months are not contiguous and increasing.
EmotionSeries build_series(const std::vector<MonthlyBucket>& buckets, const Lexicon& lexicon);

/// The `k` lexicon words with the most occurrences over `period`, ties broken
/// alphabetically. `period` must lie on the bucket axis.
std::vector<WeightedWord> top_lexicon_words(const std::vector<MonthlyBucket>& buckets, const Lexicon& lexicon,
                                            MonthRange period, std::int64_t k = 20);

}  // namespace affect
