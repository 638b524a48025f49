#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "affect/analysis.hpp"
#include "affect/emotion.hpp"
#include "affect/forecast.hpp"
#include "affect/ingest.hpp"
#include "affect/lexicon.hpp"
#include "affect/series_io.hpp"

namespace affect {

enum class GapPolicy { kFail, kLinearInterpolate };

std::string_view gap_policy_name(GapPolicy policy);
/// Accepts `fail` and `linear-interpolate`.
GapPolicy parse_gap_policy(std::string_view name);

enum ExitCode : int { kExitOk = 0, kExitInput = 2, kExitPrecondition = 3, kExitInternal = 4 };

/// Exit code for an exception escaping a stage: InputError -> 2,
/// PreconditionError -> 3, anything else -> 4.
int exit_code_for(const std::exception& e);

/// Failure of a named pipeline stage.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, int exit_code, const std::string& message)
      : std::runtime_error("stage '" + stage + "': " + message), stage_(std::move(stage)), exit_code_(exit_code) {}

  const std::string& stage() const { return stage_; }
  int exit_code() const { return exit_code_; }

 private:
  std::string stage_;
  int exit_code_;
};

/// Defaults reproduce the reference configuration: threads of at least three
/// messages, 4-month Hamming smoothing, 13-month correlation windows at
/// alpha 0.05, p = 1, q = 3 and 1000 surrogates.
struct PipelineConfig {
  std::filesystem::path lexicon;
  std::filesystem::path messages;
  std::filesystem::path attitude;
  std::filesystem::path out;
  std::int64_t min_messages = 3;
  int smooth_window = 4;
  int corr_window = 13;
  double alpha = 0.05;
  int p = 1;
  int q = 3;
  int n_surrogates = 1000;
  std::uint64_t seed = 1;
  GapPolicy gap_policy = GapPolicy::kFail;
  /// Model tested against surrogates; empty picks the lowest-MAE model with
  /// exogenous inputs.
  std::string surrogate_model;
  bool all_surrogate_maes = false;
  unsigned workers = 1;
};

// ---------------------------------------------------------------------------
// Stage building blocks, shared by `run` and the single-stage subcommands.

Lexicon read_lexicon_file(const std::filesystem::path& path);
AttitudeSeries read_attitude_file(const std::filesystem::path& path);
SeriesTable read_series_file(const std::filesystem::path& path);
std::vector<MonthlyBucket> read_buckets_file(const std::filesystem::path& path);

struct IngestResult {
  std::vector<ThreadSummary> threads;
  std::vector<ThreadSummary> kept;
  std::vector<MonthlyBucket> buckets;
};
IngestResult ingest_messages(const std::filesystem::path& messages, std::int64_t min_messages);

/// Consecutive 12-month periods from the first bucket month; the last one
/// may be shorter.
std::vector<TopWordsPeriod> yearly_top_words(const std::vector<MonthlyBucket>& buckets, const Lexicon& lexicon,
                                             std::int64_t k = 20);

/// Gap-resolved emotion channels and the attitude series on one month axis.
struct PreparedSeries {
  std::vector<NumericSeries> channels;  // kChannelNames order
  NumericSeries attitude;
  std::vector<std::string> notes;

  /// The seven series in correlation order: six channels, then the attitude.
  std::vector<NumericSeries> all() const;
};

/// Applies the gap policy to each channel (fail names the first zero-match
/// month), then aligns everything to the months shared with the attitude.
PreparedSeries prepare_series(const SeriesTable& table, const NumericSeries& attitude, GapPolicy policy);
PreparedSeries smooth_series(const PreparedSeries& series, int window_len);

/// Every pair (i < j) among PreparedSeries::all().
std::vector<CorrelationTrack> correlation_matrix(const PreparedSeries& series, int window, double alpha);
std::string correlation_file_name(const CorrelationTrack& track);

/// Name of the lowest-MAE entry other than `ar` (first wins ties).
std::string best_exogenous_model(std::span<const SuiteEntry> entries);

// ---------------------------------------------------------------------------
// Commands. Each writes its artifacts under `out` and throws StageError.

void run_ingest_command(const std::filesystem::path& messages, std::int64_t min_messages,
                        const std::filesystem::path& out);
void run_score_command(const std::filesystem::path& lexicon, const std::filesystem::path& buckets,
                       const std::filesystem::path& out);
void run_smooth_command(const std::filesystem::path& series, const std::filesystem::path& attitude, int smooth_window,
                        GapPolicy policy, const std::filesystem::path& out);
void run_correlate_command(const std::filesystem::path& series, const std::filesystem::path& attitude, int window,
                           double alpha, GapPolicy policy, const std::string& label, const std::filesystem::path& out);
/// Writes model_<name>.json (model_<name>_holdout.json when holdout > 0).
void run_forecast_command(const std::filesystem::path& series, const std::filesystem::path& attitude,
                          const std::string& model, int p, int q, int holdout, const std::filesystem::path& out);
void run_suite_command(const std::filesystem::path& series, const std::filesystem::path& attitude, int p, int q,
                       const std::filesystem::path& out);
void run_surrogate_command(const std::filesystem::path& series, const std::filesystem::path& attitude,
                           const std::string& model, const PipelineConfig& config);
/// Summarizes models.json and surrogate.json in `dir`; also writes
/// mae_summary.csv there. Returns the human-readable table.
std::string run_report_command(const std::filesystem::path& dir);

struct RunResult {
  std::vector<std::filesystem::path> artifacts;  // relative to config.out
  std::vector<std::string> warnings;
  std::string surrogate_model;
};

/// Full pipeline: ingest, score, gap policy, smoothing, correlations, model
/// suite and surrogate test, plus manifest.json. On failure leaves a
/// `.failed` marker in the output directory and throws StageError.
RunResult run_pipeline(const PipelineConfig& config);

}  // namespace affect
