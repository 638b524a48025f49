// affect: monthly valence/arousal/dominance series from a discussion archive,
// rolling correlations against an attitude series, and exogenous-input
// autoregressive forecasts of that series.
//
// Exit codes: 0 success, 2 input/parse error, 3 analysis precondition error,
// 4 internal error.

#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "affect/pipeline.hpp"
#include "affect/version.hpp"

namespace {

namespace fs = std::filesystem;
using affect::PipelineConfig;

struct Options {
  PipelineConfig config;
  std::string gap_policy = "fail";
  fs::path series;
  fs::path buckets;
  std::string model;
  std::string label = "raw";
  int holdout = 0;
};

void add_out(CLI::App* cmd, Options& o) { cmd->add_option("--out", o.config.out, "Output directory")->required(); }

void add_gap_policy(CLI::App* cmd, Options& o) {
  cmd->add_option("--gap-policy", o.gap_policy, "Months without lexicon matches: fail | linear-interpolate")
      ->check(CLI::IsMember({"fail", "linear-interpolate"}))
      ->capture_default_str();
}

void add_orders(CLI::App* cmd, Options& o) {
  cmd->add_option("--p", o.config.p, "Autoregressive order")->capture_default_str();
  cmd->add_option("--q", o.config.q, "Exogenous lag order")->capture_default_str();
}

void add_series_inputs(CLI::App* cmd, Options& o, const char* series_help) {
  cmd->add_option("--series", o.series, series_help)->required()->check(CLI::ExistingFile);
  cmd->add_option("--attitude", o.config.attitude, "Attitude CSV (month,rate)")->required()->check(CLI::ExistingFile);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affective time series and attitude forecasting"};
  app.set_version_flag("--version", std::string(affect::kVersion));
  app.require_subcommand(1);

  Options o;
  PipelineConfig& c = o.config;

  auto* run = app.add_subcommand("run", "Full pipeline: ingest, score, smooth, correlate, forecast, surrogate");
  run->add_option("--lexicon", c.lexicon, "Lexicon CSV")->required()->check(CLI::ExistingFile);
  run->add_option("--messages", c.messages, "Message JSONL archive")->required()->check(CLI::ExistingFile);
  run->add_option("--attitude", c.attitude, "Attitude CSV (month,rate)")->required()->check(CLI::ExistingFile);
  add_out(run, o);
  run->add_option("--min-messages", c.min_messages, "Minimum messages per thread")->capture_default_str();
  run->add_option("--smooth-window", c.smooth_window, "Hamming smoothing window (months)")->capture_default_str();
  run->add_option("--corr-window", c.corr_window, "Centred correlation window (odd, months)")->capture_default_str();
  run->add_option("--alpha", c.alpha, "Significance level")->capture_default_str();
  add_orders(run, o);
  run->add_option("--surrogates", c.n_surrogates, "Number of permutation surrogates")->capture_default_str();
  run->add_option("--seed", c.seed, "Seed for all randomness")->capture_default_str();
  add_gap_policy(run, o);
  run->add_option("--surrogate-model", c.surrogate_model, "Model for the surrogate test (default: best by MAE)");
  run->add_flag("--all-surrogate-maes", c.all_surrogate_maes, "Include every surrogate MAE in surrogate.json");
  run->add_option("--workers", c.workers, "Threads for the surrogate batch (0 = all cores)")->capture_default_str();

  auto* ingest = app.add_subcommand("ingest", "Thread, filter and bucket a message archive");
  ingest->add_option("--messages", c.messages, "Message JSONL archive")->required()->check(CLI::ExistingFile);
  ingest->add_option("--min-messages", c.min_messages, "Minimum messages per thread")->capture_default_str();
  add_out(ingest, o);

  auto* score = app.add_subcommand("score", "Score monthly buckets into the emotion series");
  score->add_option("--lexicon", c.lexicon, "Lexicon CSV")->required()->check(CLI::ExistingFile);
  score->add_option("--buckets", o.buckets, "buckets.jsonl from `ingest`")->required()->check(CLI::ExistingFile);
  add_out(score, o);

  auto* smooth = app.add_subcommand("smooth", "Resolve gaps, align with the attitude series and smooth");
  add_series_inputs(smooth, o, "Emotion series CSV");
  smooth->add_option("--smooth-window", c.smooth_window, "Hamming smoothing window (months)")->capture_default_str();
  add_gap_policy(smooth, o);
  add_out(smooth, o);

  auto* correlate = app.add_subcommand("correlate", "Rolling correlations among all seven series");
  add_series_inputs(correlate, o, "Emotion series CSV (raw or smoothed)");
  correlate->add_option("--corr-window", c.corr_window, "Centred correlation window (odd, months)")
      ->capture_default_str();
  correlate->add_option("--alpha", c.alpha, "Significance level")->capture_default_str();
  correlate->add_option("--label", o.label, "Subdirectory under correlations/")->capture_default_str();
  add_gap_policy(correlate, o);
  add_out(correlate, o);

  auto* forecast = app.add_subcommand("forecast", "Fit and evaluate one named model");
  add_series_inputs(forecast, o, "Smoothed emotion series CSV");
  forecast->add_option("--model", o.model, "Model name (ar, mean-valence, ..., both-dominance)")->required();
  add_orders(forecast, o);
  forecast->add_option("--holdout", o.holdout,
                       "Fit on all but the last N months and evaluate those (out-of-sample, off by default)")
      ->capture_default_str();
  add_out(forecast, o);

  auto* suite = app.add_subcommand("suite", "Fit and evaluate all ten models");
  add_series_inputs(suite, o, "Smoothed emotion series CSV");
  add_orders(suite, o);
  add_out(suite, o);

  auto* surrogate = app.add_subcommand("surrogate", "Permutation-surrogate significance test");
  add_series_inputs(surrogate, o, "Smoothed emotion series CSV");
  surrogate->add_option("--model", o.model, "Model to test (default: best by MAE)");
  add_orders(surrogate, o);
  surrogate->add_option("--surrogates", c.n_surrogates, "Number of permutation surrogates")->capture_default_str();
  surrogate->add_option("--seed", c.seed, "Seed")->capture_default_str();
  surrogate->add_flag("--all-surrogate-maes", c.all_surrogate_maes, "Include every surrogate MAE");
  surrogate->add_option("--workers", c.workers, "Threads (0 = all cores)")->capture_default_str();
  add_out(surrogate, o);

  auto* report = app.add_subcommand("report", "Summarize models.json and surrogate.json of a run directory");
  add_out(report, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return affect::kExitInput;
  }

  try {
    c.gap_policy = affect::parse_gap_policy(o.gap_policy);
    if (run->parsed()) {
      const auto result = affect::run_pipeline(c);
      for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
      std::cout << "wrote " << result.artifacts.size() << " artifacts to " << c.out.string() << '\n';
    } else if (ingest->parsed()) {
      affect::run_ingest_command(c.messages, c.min_messages, c.out);
    } else if (score->parsed()) {
      affect::run_score_command(c.lexicon, o.buckets, c.out);
    } else if (smooth->parsed()) {
      affect::run_smooth_command(o.series, c.attitude, c.smooth_window, c.gap_policy, c.out);
    } else if (correlate->parsed()) {
      affect::run_correlate_command(o.series, c.attitude, c.corr_window, c.alpha, c.gap_policy, o.label, c.out);
    } else if (forecast->parsed()) {
      affect::run_forecast_command(o.series, c.attitude, o.model, c.p, c.q, o.holdout, c.out);
    } else if (suite->parsed()) {
      affect::run_suite_command(o.series, c.attitude, c.p, c.q, c.out);
    } else if (surrogate->parsed()) {
      affect::run_surrogate_command(o.series, c.attitude, o.model, c);
    } else if (report->parsed()) {
      std::cout << affect::run_report_command(c.out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return affect::exit_code_for(e);
  }
  return affect::kExitOk;
}
