#include "affect/emotion.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "affect/errors.hpp"

namespace affect {

MonthEmotion score_month(const MonthlyBucket& bucket, const Lexicon& lexicon) {
  struct Match {
    const LexiconEntry* entry;
    double freq;
  };
  std::vector<Match> matches;
  std::int64_t total = 0;
  for (const auto& [word, count] : bucket.token_counts) {
    if (count <= 0) continue;
    if (const LexiconEntry* e = lexicon.find(word)) {
      matches.push_back({e, static_cast<double>(count)});
      total += count;
    }
  }

  MonthEmotion out;
  out.month = bucket.month;
  out.thread_count = bucket.thread_count;
  out.match_count = total;
  out.distinct_words = static_cast<std::int64_t>(matches.size());
  if (total == 0) return out;

  const double weight = static_cast<double>(total);
  for (Dimension d : kDimensions) {
    double lo = matches.front().entry->score(d);
    double hi = lo;
    double sum = 0.0;
    for (const auto& m : matches) {
      const double s = m.entry->score(d);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
      sum += m.freq * s;
    }
    DimensionStats& stats = out[d];
    if (lo == hi) {
      // Identical scores: report them exactly rather than through rounding.
      stats.mean = lo;
      stats.std_dev = 0.0;
      continue;
    }
    const double mean = std::clamp(sum / weight, lo, hi);
    double ss = 0.0;
    for (const auto& m : matches) {
      const double dev = m.entry->score(d) - mean;
      ss += m.freq * dev * dev;
    }
    stats.mean = mean;
    stats.std_dev = std::sqrt(ss / weight);
  }
  return out;
}

EmotionSeries build_series(const std::vector<MonthlyBucket>& buckets, const Lexicon& lexicon) {
  EmotionSeries series;
  series.months.reserve(buckets.size());
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    if (i > 0 && buckets[i].month != buckets[i - 1].month + 1) {
      throw PreconditionError("bucket months not contiguous at " + buckets[i].month.str());
    }
    series.months.push_back(score_month(buckets[i], lexicon));
  }
  return series;
}

std::vector<WeightedWord> top_lexicon_words(const std::vector<MonthlyBucket>& buckets, const Lexicon& lexicon,
                                            MonthRange period, std::int64_t k) {
  if (k < 1) throw PreconditionError("k must be at least 1, got " + std::to_string(k));
  if (period.last < period.first) throw PreconditionError("empty period");
  if (buckets.empty() || period.first < buckets.front().month || period.last > buckets.back().month) {
    throw PreconditionError("period " + period.first.str() + ".." + period.last.str() + " outside the bucket axis");
  }

  std::map<std::string_view, std::int64_t> totals;
  for (const auto& b : buckets) {
    if (!period.contains(b.month)) continue;
    for (const auto& [word, count] : b.token_counts) {
      if (count > 0 && lexicon.contains(word)) totals[word] += count;
    }
  }

  std::vector<WeightedWord> words;
  words.reserve(totals.size());
  for (const auto& [word, count] : totals) {
    words.push_back({std::string(word), count, std::sqrt(static_cast<double>(count))});
  }
  std::stable_sort(words.begin(), words.end(), [](const WeightedWord& a, const WeightedWord& b) {
    if (a.occurrences != b.occurrences) return a.occurrences > b.occurrences;
    return a.word < b.word;
  });
  if (words.size() > static_cast<std::size_t>(k)) words.resize(static_cast<std::size_t>(k));
  return words;
}

}  // namespace affect
