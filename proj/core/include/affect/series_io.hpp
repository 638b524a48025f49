#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "affect/analysis.hpp"
#include "affect/emotion.hpp"
#include "affect/forecast.hpp"
#include "affect/ingest.hpp"

namespace affect {

// Plot-ready artifact formats. Numbers are written in their shortest
// round-trip form so files reload bit-exactly and reruns are byte-identical.
// Missing CSV values are empty fields.

inline constexpr const char* kSeriesCsvHeader =
    "month,valence_mean,valence_std,arousal_mean,arousal_std,dominance_mean,dominance_std,match_count,thread_count";
inline constexpr const char* kCorrelationCsvHeader = "month,r,n_window,p_value,significant";

/// Rows of the emotion series CSV: six channels plus per-month counts.
struct SeriesTable {
  std::vector<NumericSeries> channels;  // kChannelNames order
  std::vector<std::int64_t> match_count;
  std::vector<std::int64_t> thread_count;

  Month first_month() const { return channels.front().first_month; }
  std::size_t size() const { return channels.front().size(); }
};

SeriesTable to_table(const EmotionSeries& series);

/// Replaces the channels of `table` with `channels` (kChannelNames order,
/// any sub-range of the table's axis), keeping the counts of the matching months.
SeriesTable with_channels(const SeriesTable& table, std::vector<NumericSeries> channels);

void write_series_csv(std::ostream& out, const SeriesTable& table);
SeriesTable read_series_csv(std::istream& in);

void write_attitude_csv(std::ostream& out, const NumericSeries& series);
void write_discussions_csv(std::ostream& out, const std::vector<MonthlyBucket>& buckets);
void write_threads_csv(std::ostream& out, const std::vector<ThreadSummary>& threads);

void write_buckets_jsonl(std::ostream& out, const std::vector<MonthlyBucket>& buckets);
std::vector<MonthlyBucket> read_buckets_jsonl(std::istream& in);

struct TopWordsPeriod {
  MonthRange period;
  std::vector<WeightedWord> words;
};
void write_top_words_csv(std::ostream& out, const std::vector<TopWordsPeriod>& periods);

void write_correlation_csv(std::ostream& out, const CorrelationTrack& track);

/// One model report: name, spec, coefficients (B row-major by series then
/// lag), fit diagnostics, MAE, signed errors and the cumulative curve.
std::string model_report_json(const SuiteEntry& entry, bool holdout = false);
/// `{"models": [...]}` holding each entry in order.
std::string suite_report_json(std::span<const SuiteEntry> entries);

struct ModelSummary {
  std::string name;
  double mae = 0.0;
  double sse = 0.0;
  std::vector<std::string> warnings;
};
std::vector<ModelSummary> read_suite_summary(std::istream& in);

std::string surrogate_report_json(const SurrogateReport& report, const std::string& model, bool include_all);

struct SurrogateSummary {
  std::string model;
  std::uint64_t seed = 0;
  int n_surrogates = 0;
  double empirical_mae = 0.0;
  double p_hat = 0.0;
};
SurrogateSummary read_surrogate_summary(std::istream& in);

/// Linear-interpolation quantile (type 7) of unsorted values.
double quantile(std::vector<double> values, double prob);

}  // namespace affect
