#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "affect/analysis.hpp"
#include "affect/month.hpp"

namespace affect {

/// Orders of the one-step predictor
///
///   X(t) = sum_{i=1..p} A_i X(t-i) + sum_{j=1..m} sum_{i=1..q} B_{j,i} Y_j(t-i) [+ c]
///
/// where X is the target and Y_1..Y_m are the exogenous series named in
/// `exogenous_names`. The first fittable month is always max(p, q) months
/// into the axis, even when m = 0, so models sharing (p, q) are evaluated
/// over the same months.
struct ArmaSpec {
  int p = 1;
  int q = 3;
  std::vector<std::string> exogenous_names;
  bool include_intercept = false;

  std::size_t m() const { return exogenous_names.size(); }
  int max_lag() const { return std::max(p, q); }
  std::size_t columns() const {
    return static_cast<std::size_t>(p) + m() * static_cast<std::size_t>(q) + (include_intercept ? 1 : 0);
  }
  /// Throws PreconditionError unless the orders describe a usable model.
  void validate() const;
};

/// Least-squares system for one spec: one row per fittable month.
/// Columns are [X(t-1)..X(t-p), Y_1(t-1)..Y_1(t-q), ..., Y_m(t-1)..Y_m(t-q), 1?].
struct DesignSystem {
  Eigen::MatrixXd regressors;
  Eigen::VectorXd response;
  std::vector<Month> row_months;
};

DesignSystem assemble_regression(const ArmaSpec& spec, const NumericSeries& target,
                                 std::span<const NumericSeries> exogenous);

struct ArmaModel {
  ArmaSpec spec;
  std::vector<double> ar;                // A_1..A_p
  std::vector<std::vector<double>> exo;  // exo[j][i-1] = B_{j,i}, one row per exogenous series
  double intercept = 0.0;
  MonthRange training;
  double sse = 0.0;
  int rank = 0;
  std::vector<std::string> warnings;

  /// Coefficients in design-column order.
  Eigen::VectorXd coefficients() const;
};

/// Ordinary least squares via complete orthogonal decomposition. A
/// rank-deficient design yields the minimum-norm solution and a warning.
ArmaModel fit_arma(const ArmaSpec& spec, const NumericSeries& target, std::span<const NumericSeries> exogenous);

/// Evaluates the fitted predictor for month `t` from lagged values of the
/// histories. `t` itself need not be on the history axis.
double predict_one_step(const ArmaModel& model, const NumericSeries& target_history,
                        std::span<const NumericSeries> exogenous_history, Month t);

struct EvaluationReport {
  MonthRange evaluated;
  std::vector<double> actual;
  std::vector<double> predicted;
  std::vector<double> errors;      // actual - predicted
  std::vector<double> cumulative;  // running mean of |errors|
  double mae = 0.0;
};

/// One-step-ahead errors over every fittable month of the given series.
EvaluationReport evaluate(const ArmaModel& model, const NumericSeries& target,
                          std::span<const NumericSeries> exogenous);

/// One-step-ahead errors over `months`, which must lie on the target axis at
/// or after its first fittable month.
EvaluationReport evaluate(const ArmaModel& model, const NumericSeries& target,
                          std::span<const NumericSeries> exogenous, MonthRange months);

inline constexpr std::array<std::string_view, 10> kSuiteModels = {
    "ar",          "mean-valence", "mean-arousal", "mean-dominance", "std-valence",
    "std-arousal", "std-dominance", "both-valence", "both-arousal",  "both-dominance"};

/// Spec of a named suite model: `ar` has no exogenous input, `mean-X` and
/// `std-X` use one channel, `both-X` uses mean-X then std-X.
ArmaSpec suite_spec(std::string_view model, int p = 1, int q = 3);

struct SuiteEntry {
  std::string name;
  ArmaModel model;
  EvaluationReport report;
};

/// Fits and evaluates one named model. `channels` are looked up by name.
SuiteEntry run_suite_model(std::string_view model, const NumericSeries& target,
                           std::span<const NumericSeries> channels, int p = 1, int q = 3);

/// Out-of-sample variant: fits on all but the last `holdout` months and
/// evaluates only those. Not part of the in-sample comparison.
SuiteEntry run_suite_model_holdout(std::string_view model, const NumericSeries& target,
                                   std::span<const NumericSeries> channels, int holdout, int p = 1, int q = 3);

/// All ten models in kSuiteModels order.
std::vector<SuiteEntry> model_suite(const NumericSeries& target, std::span<const NumericSeries> channels,
                                    int p = 1, int q = 3);

struct SurrogateReport {
  std::uint64_t seed = 0;
  int n_surrogates = 0;
  double empirical_mae = 0.0;
  std::vector<double> surrogate_maes;
  int at_or_below = 0;  // surrogates with mae <= empirical_mae
  double p_hat = 0.0;
};

/// Exogenous inputs of surrogate `index`: each series' values shuffled by a
/// Fisher-Yates pass driven by an mt19937_64 stream seeded from (seed, index).
std::vector<NumericSeries> surrogate_inputs(std::span<const NumericSeries> exogenous, std::uint64_t seed,
                                            std::uint64_t index);

/// Refits the model on `n_surrogates` permuted copies of the exogenous inputs
/// and reports the fraction whose in-sample MAE is at most the empirical one.
/// Results do not depend on `workers` (0 picks the hardware concurrency).
SurrogateReport surrogate_test(const ArmaSpec& spec, const NumericSeries& target,
                               std::span<const NumericSeries> exogenous, int n_surrogates, std::uint64_t seed,
                               unsigned workers = 1);

}  // namespace affect
