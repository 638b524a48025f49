#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "affect/emotion.hpp"
#include "affect/ingest.hpp"
#include "affect/month.hpp"

namespace affect {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
inline bool is_missing(double v) { return std::isnan(v); }

/// A named monthly series on a contiguous axis. Missing values are NaN.
struct NumericSeries {
  std::string name;
  Month first_month;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  Month month_at(std::size_t i) const { return first_month + static_cast<std::int32_t>(i); }
  MonthRange range() const { return {first_month, month_at(values.size() - 1)}; }
  bool same_axis(const NumericSeries& other) const {
    return first_month == other.first_month && values.size() == other.values.size();
  }
};

/// Channel names, in the order emotion_channels() returns them.
inline constexpr const char* kChannelNames[6] = {"mean-valence", "mean-arousal", "mean-dominance",
                                                 "std-valence",  "std-arousal",  "std-dominance"};

/// Splits an emotion series into its six mean/std channels.
std::vector<NumericSeries> emotion_channels(const EmotionSeries& series);

NumericSeries to_series(const AttitudeSeries& attitude, std::string name = "approval");

/// First month holding a missing value, if any.
std::optional<Month> first_gap(const NumericSeries& series);

/// Fills interior gaps by linear interpolation between the nearest observed
/// neighbours; leading and trailing gaps take the nearest observed value.
/// Throws PreconditionError when the series has no observed value at all.
NumericSeries interpolate_gaps(const NumericSeries& series);

/// The part of `series` inside `months`; throws PreconditionError when
/// `months` is not on the series axis.
NumericSeries slice(const NumericSeries& series, MonthRange months);

/// Restricts every series to the months they all cover.
std::vector<NumericSeries> align(const std::vector<NumericSeries>& series);

// ---------------------------------------------------------------------------
// Smoothing

/// w_k = 0.54 - 0.46 cos(2 pi k / (L - 1)), k = 0..L-1 (k = 0 is the current
/// month). A one-point window is the identity weight {1}.
std::vector<double> hamming_weights(int window_len);

/// Causal Hamming-weighted moving average over the current and previous
/// window_len - 1 months. Early months use the available history with the
/// weights renormalized. Rejects missing values.
NumericSeries hamming_smooth(const NumericSeries& series, int window_len = 4);

// ---------------------------------------------------------------------------
// Correlation

struct Significance {
  double p_value = 1.0;
  bool significant = false;
};

/// Two-sided test of zero correlation: t = r sqrt(n-2) / sqrt(1-r^2) against
/// Student's t with n-2 degrees of freedom. Requires |r| < 1 and n >= 3.
Significance fisher_significance(double r, int n, double alpha);

/// Pearson coefficient, or nullopt when a value is missing, fewer than two
/// pairs are given, or either side has zero variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

struct CorrelationPoint {
  Month month;
  std::optional<double> r;
  int n_window = 0;
  std::optional<double> p_value;  // absent when r is
  bool significant = false;
};

struct CorrelationTrack {
  std::string x_name;
  std::string y_name;
  int window = 0;
  double alpha = 0.0;
  std::vector<CorrelationPoint> points;
};

/// Number of months in the centred window at index t, truncated at both ends.
int window_size_at(std::size_t t, std::size_t length, int window);

/// Centred, edge-truncated rolling Pearson correlation. `window` must be odd
/// and at least 3; x and y must share one month axis.
CorrelationTrack rolling_correlation(const NumericSeries& x, const NumericSeries& y, int window = 13,
                                     double alpha = 0.05);

}  // namespace affect
