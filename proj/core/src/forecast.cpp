#include "affect/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "affect/errors.hpp"

namespace affect {
namespace {

void check_inputs(const ArmaSpec& spec, const NumericSeries& target, std::span<const NumericSeries> exogenous) {
  spec.validate();
  if (exogenous.size() != spec.m()) {
    throw PreconditionError("spec expects " + std::to_string(spec.m()) + " exogenous series, got " +
                            std::to_string(exogenous.size()));
  }
  for (std::size_t j = 0; j < exogenous.size(); ++j) {
    if (exogenous[j].name != spec.exogenous_names[j]) {
      throw PreconditionError("exogenous series " + std::to_string(j) + " is '" + exogenous[j].name +
                              "', spec expects '" + spec.exogenous_names[j] + "'");
    }
    if (!exogenous[j].same_axis(target)) {
      throw PreconditionError("series '" + exogenous[j].name + "' is not on the target's month axis");
    }
  }
  const auto need = static_cast<std::size_t>(spec.max_lag() + 2);
  if (target.size() < need) {
    throw PreconditionError("series of length " + std::to_string(target.size()) + " too short for max lag " +
                            std::to_string(spec.max_lag()) + " (need " + std::to_string(need) + ")");
  }
  auto check_gaps = [](const NumericSeries& s) {
    if (const auto gap = first_gap(s)) {
      throw PreconditionError("series '" + s.name + "' has a missing value at " + gap->str());
    }
  };
  check_gaps(target);
  for (const auto& s : exogenous) check_gaps(s);
}

// Value of `s` at month `m`, or NaN when outside the axis.
double value_at(const NumericSeries& s, Month m) {
  const std::int32_t i = m - s.first_month;
  if (i < 0 || static_cast<std::size_t>(i) >= s.size()) return kMissing;
  return s.values[static_cast<std::size_t>(i)];
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

}  // namespace

void ArmaSpec::validate() const {
  if (p < 0 || q < 0) throw PreconditionError("orders p and q must be nonnegative");
  if (p < 1 && q < 1) throw PreconditionError("at least one of p, q must be positive");
  if (m() >= 1 && q < 1) throw PreconditionError("exogenous inputs need q >= 1");
  if (columns() == 0) throw PreconditionError("model has no regressors");
}

DesignSystem assemble_regression(const ArmaSpec& spec, const NumericSeries& target,
                                 std::span<const NumericSeries> exogenous) {
  check_inputs(spec, target, exogenous);
  const auto start = static_cast<std::size_t>(spec.max_lag());
  const std::size_t rows = target.size() - start;
  const auto cols = static_cast<Eigen::Index>(spec.columns());

  DesignSystem sys;
  sys.regressors.resize(static_cast<Eigen::Index>(rows), cols);
  sys.response.resize(static_cast<Eigen::Index>(rows));
  sys.row_months.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t t = start + r;
    const auto row = static_cast<Eigen::Index>(r);
    Eigen::Index c = 0;
    for (int i = 1; i <= spec.p; ++i) sys.regressors(row, c++) = target.values[t - static_cast<std::size_t>(i)];
    for (const auto& y : exogenous) {
      for (int i = 1; i <= spec.q; ++i) sys.regressors(row, c++) = y.values[t - static_cast<std::size_t>(i)];
    }
    if (spec.include_intercept) sys.regressors(row, c++) = 1.0;
    sys.response(row) = target.values[t];
    sys.row_months.push_back(target.month_at(t));
  }
  return sys;
}

Eigen::VectorXd ArmaModel::coefficients() const {
  Eigen::VectorXd beta(static_cast<Eigen::Index>(spec.columns()));
  Eigen::Index c = 0;
  for (double a : ar) beta(c++) = a;
  for (const auto& row : exo) {
    for (double b : row) beta(c++) = b;
  }
  if (spec.include_intercept) beta(c++) = intercept;
  return beta;
}

ArmaModel fit_arma(const ArmaSpec& spec, const NumericSeries& target, std::span<const NumericSeries> exogenous) {
  const DesignSystem sys = assemble_regression(spec, target, exogenous);
  const Eigen::Index rows = sys.regressors.rows();
  const Eigen::Index cols = sys.regressors.cols();
  if (rows < cols) {
    throw PreconditionError("design has " + std::to_string(rows) + " rows but " + std::to_string(cols) +
                            " coefficients");
  }

  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sys.regressors);
  const Eigen::VectorXd beta = cod.solve(sys.response);

  ArmaModel model;
  model.spec = spec;
  model.rank = static_cast<int>(cod.rank());
  if (cod.rank() < cols) {
    model.warnings.push_back("rank-deficient design (rank " + std::to_string(cod.rank()) + " of " +
                             std::to_string(cols) + "); minimum-norm solution used");
  }
  Eigen::Index c = 0;
  model.ar.resize(static_cast<std::size_t>(spec.p));
  for (auto& a : model.ar) a = beta(c++);
  model.exo.assign(spec.m(), std::vector<double>(static_cast<std::size_t>(spec.q)));
  for (auto& row : model.exo) {
    for (auto& b : row) b = beta(c++);
  }
  if (spec.include_intercept) model.intercept = beta(c++);
  model.training = {sys.row_months.front(), sys.row_months.back()};
  model.sse = (sys.response - sys.regressors * beta).squaredNorm();
  return model;
}

double predict_one_step(const ArmaModel& model, const NumericSeries& target_history,
                        std::span<const NumericSeries> exogenous_history, Month t) {
  const ArmaSpec& spec = model.spec;
  if (exogenous_history.size() != spec.m()) {
    throw PreconditionError("model expects " + std::to_string(spec.m()) + " exogenous histories");
  }
  auto lagged = [&](const NumericSeries& s, int lag) {
    const double v = value_at(s, t - lag);
    if (is_missing(v)) {
      throw PreconditionError("history '" + s.name + "' lacks month " + (t - lag).str() + " to predict " + t.str());
    }
    return v;
  };
  double out = 0.0;
  for (int i = 1; i <= spec.p; ++i) out += model.ar[static_cast<std::size_t>(i - 1)] * lagged(target_history, i);
  for (std::size_t j = 0; j < spec.m(); ++j) {
    for (int i = 1; i <= spec.q; ++i) {
      out += model.exo[j][static_cast<std::size_t>(i - 1)] * lagged(exogenous_history[j], i);
    }
  }
  if (spec.include_intercept) out += model.intercept;
  return out;
}

EvaluationReport evaluate(const ArmaModel& model, const NumericSeries& target,
                          std::span<const NumericSeries> exogenous) {
  check_inputs(model.spec, target, exogenous);
  return evaluate(model, target, exogenous,
                  {target.month_at(static_cast<std::size_t>(model.spec.max_lag())), target.range().last});
}

EvaluationReport evaluate(const ArmaModel& model, const NumericSeries& target,
                          std::span<const NumericSeries> exogenous, MonthRange months) {
  check_inputs(model.spec, target, exogenous);
  const Month first_fittable = target.month_at(static_cast<std::size_t>(model.spec.max_lag()));
  if (months.last < months.first || months.first < first_fittable || months.last > target.range().last) {
    throw PreconditionError("evaluation months " + months.first.str() + ".." + months.last.str() +
                            " outside the fittable range " + first_fittable.str() + ".." + target.range().last.str());
  }

  EvaluationReport report;
  report.evaluated = months;
  const std::size_t n = months.size();
  report.actual.reserve(n);
  report.predicted.reserve(n);
  report.errors.reserve(n);
  report.cumulative.reserve(n);
  double abs_sum = 0.0;
  for (Month m = months.first; m <= months.last; ++m) {
    const double actual = value_at(target, m);
    const double predicted = predict_one_step(model, target, exogenous, m);
    const double error = actual - predicted;
    abs_sum += std::abs(error);
    report.actual.push_back(actual);
    report.predicted.push_back(predicted);
    report.errors.push_back(error);
    report.cumulative.push_back(abs_sum / static_cast<double>(report.cumulative.size() + 1));
  }
  report.mae = report.cumulative.back();
  return report;
}

ArmaSpec suite_spec(std::string_view model, int p, int q) {
  ArmaSpec spec;
  spec.p = p;
  spec.q = q;
  if (model == "ar") return spec;
  for (const char* channel : kChannelNames) {
    if (model == channel) {
      spec.exogenous_names = {channel};
      return spec;
    }
  }
  if (model.starts_with("both-")) {
    const std::string dim(model.substr(5));
    if (dim == "valence" || dim == "arousal" || dim == "dominance") {
      spec.exogenous_names = {"mean-" + dim, "std-" + dim};
      return spec;
    }
  }
  throw PreconditionError("unknown model '" + std::string(model) + "'");
}

SuiteEntry run_suite_model(std::string_view model, const NumericSeries& target,
                           std::span<const NumericSeries> channels, int p, int q) {
  const ArmaSpec spec = suite_spec(model, p, q);
  std::vector<NumericSeries> inputs;
  for (const auto& name : spec.exogenous_names) {
    const auto it = std::find_if(channels.begin(), channels.end(), [&](const auto& s) { return s.name == name; });
    if (it == channels.end()) throw PreconditionError("model '" + std::string(model) + "' needs channel '" + name + "'");
    inputs.push_back(*it);
  }
  SuiteEntry entry;
  entry.name = std::string(model);
  entry.model = fit_arma(spec, target, inputs);
  entry.report = evaluate(entry.model, target, inputs);
  return entry;
}

SuiteEntry run_suite_model_holdout(std::string_view model, const NumericSeries& target,
                                   std::span<const NumericSeries> channels, int holdout, int p, int q) {
  if (holdout < 1 || static_cast<std::size_t>(holdout) >= target.size()) {
    throw PreconditionError("holdout must lie in [1, " + std::to_string(target.size() - 1) + "]");
  }
  const ArmaSpec spec = suite_spec(model, p, q);
  std::vector<NumericSeries> inputs;
  for (const auto& name : spec.exogenous_names) {
    const auto it = std::find_if(channels.begin(), channels.end(), [&](const auto& s) { return s.name == name; });
    if (it == channels.end()) throw PreconditionError("model '" + std::string(model) + "' needs channel '" + name + "'");
    inputs.push_back(*it);
  }
  const MonthRange train{target.first_month, target.range().last - holdout};
  std::vector<NumericSeries> train_inputs;
  for (const auto& s : inputs) train_inputs.push_back(slice(s, train));

  SuiteEntry entry;
  entry.name = std::string(model);
  entry.model = fit_arma(spec, slice(target, train), train_inputs);
  entry.report = evaluate(entry.model, target, inputs, {train.last + 1, target.range().last});
  return entry;
}

std::vector<SuiteEntry> model_suite(const NumericSeries& target, std::span<const NumericSeries> channels, int p,
                                    int q) {
  std::vector<SuiteEntry> entries;
  entries.reserve(kSuiteModels.size());
  for (std::string_view name : kSuiteModels) entries.push_back(run_suite_model(name, target, channels, p, q));
  return entries;
}

std::vector<NumericSeries> surrogate_inputs(std::span<const NumericSeries> exogenous, std::uint64_t seed,
                                            std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::vector<NumericSeries> out(exogenous.begin(), exogenous.end());
  for (auto& s : out) {
    auto& v = s.values;
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[uniform_below(rng, i)]);
    }
  }
  return out;
}

SurrogateReport surrogate_test(const ArmaSpec& spec, const NumericSeries& target,
                               std::span<const NumericSeries> exogenous, int n_surrogates, std::uint64_t seed,
                               unsigned workers) {
  if (n_surrogates < 1) throw PreconditionError("need at least one surrogate, got " + std::to_string(n_surrogates));
  if (spec.m() < 1) throw PreconditionError("surrogate test needs at least one exogenous series");

  SurrogateReport report;
  report.seed = seed;
  report.n_surrogates = n_surrogates;
  {
    const ArmaModel model = fit_arma(spec, target, exogenous);
    report.empirical_mae = evaluate(model, target, exogenous).mae;
  }

  report.surrogate_maes.assign(static_cast<std::size_t>(n_surrogates), 0.0);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto inputs = surrogate_inputs(exogenous, seed, i);
      const ArmaModel model = fit_arma(spec, target, inputs);
      report.surrogate_maes[i] = evaluate(model, target, inputs).mae;
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n = report.surrogate_maes.size();
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    run_range(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t begin = 0; begin < n; begin += chunk) {
      pool.emplace_back(run_range, begin, std::min(n, begin + chunk));
    }
  }

  report.at_or_below = static_cast<int>(std::count_if(report.surrogate_maes.begin(), report.surrogate_maes.end(),
                                                      [&](double mae) { return mae <= report.empirical_mae; }));
  report.p_hat = static_cast<double>(report.at_or_below) / static_cast<double>(n_surrogates);
  return report;
}

}  // namespace affect
