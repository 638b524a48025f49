#include "affect/analysis.hpp"

#include <algorithm>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>

#include "affect/errors.hpp"

namespace affect {

std::vector<NumericSeries> emotion_channels(const EmotionSeries& series) {
  std::vector<NumericSeries> channels(6);
  for (std::size_t c = 0; c < 6; ++c) {
    channels[c].name = kChannelNames[c];
    channels[c].first_month = series.months.empty() ? Month{} : series.first_month();
    channels[c].values.reserve(series.size());
  }
  for (const auto& m : series.months) {
    for (Dimension d : kDimensions) {
      const auto i = static_cast<std::size_t>(d);
      channels[i].values.push_back(m[d].mean.value_or(kMissing));
      channels[3 + i].values.push_back(m[d].std_dev.value_or(kMissing));
    }
  }
  return channels;
}

NumericSeries to_series(const AttitudeSeries& attitude, std::string name) {
  return {std::move(name), attitude.first_month, attitude.values};
}

std::optional<Month> first_gap(const NumericSeries& series) {
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (is_missing(series.values[i])) return series.month_at(i);
  }
  return std::nullopt;
}

NumericSeries interpolate_gaps(const NumericSeries& series) {
  NumericSeries out = series;
  std::vector<std::size_t> observed;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!is_missing(series.values[i])) observed.push_back(i);
  }
  if (observed.empty()) throw PreconditionError("series '" + series.name + "' has no observed values");

  for (std::size_t i = 0; i < observed.front(); ++i) out.values[i] = series.values[observed.front()];
  for (std::size_t i = observed.back() + 1; i < series.size(); ++i) out.values[i] = series.values[observed.back()];
  for (std::size_t k = 0; k + 1 < observed.size(); ++k) {
    const std::size_t a = observed[k];
    const std::size_t b = observed[k + 1];
    const double va = series.values[a];
    const double vb = series.values[b];
    for (std::size_t i = a + 1; i < b; ++i) {
      const double frac = static_cast<double>(i - a) / static_cast<double>(b - a);
      out.values[i] = va + frac * (vb - va);
    }
  }
  return out;
}

NumericSeries slice(const NumericSeries& series, MonthRange months) {
  if (series.values.empty() || months.last < months.first || months.first < series.first_month ||
      months.last > series.range().last) {
    throw PreconditionError("months " + months.first.str() + ".." + months.last.str() + " not on the axis of '" +
                            series.name + "'");
  }
  const auto begin = series.values.begin() + (months.first - series.first_month);
  return {series.name, months.first, std::vector<double>(begin, begin + static_cast<std::ptrdiff_t>(months.size()))};
}

std::vector<NumericSeries> align(const std::vector<NumericSeries>& series) {
  if (series.empty()) return {};
  Month first = series.front().first_month;
  Month last = series.front().range().last;
  for (const auto& s : series) {
    if (s.values.empty()) throw PreconditionError("series '" + s.name + "' is empty");
    first = std::max(first, s.first_month);
    last = std::min(last, s.range().last);
  }
  if (last < first) throw PreconditionError("series have no months in common");

  std::vector<NumericSeries> out;
  out.reserve(series.size());
  for (const auto& s : series) {
    const auto begin = s.values.begin() + (first - s.first_month);
    out.push_back({s.name, first, std::vector<double>(begin, begin + (last - first + 1))});
  }
  return out;
}

std::vector<double> hamming_weights(int window_len) {
  if (window_len < 1) throw PreconditionError("smoothing window must be at least 1, got " + std::to_string(window_len));
  if (window_len == 1) return {1.0};
  std::vector<double> w(static_cast<std::size_t>(window_len));
  const double denom = static_cast<double>(window_len - 1);
  for (int k = 0; k < window_len; ++k) {
    w[static_cast<std::size_t>(k)] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * k / denom);
  }
  return w;
}

NumericSeries hamming_smooth(const NumericSeries& series, int window_len) {
  const std::vector<double> w = hamming_weights(window_len);
  if (const auto gap = first_gap(series)) {
    throw PreconditionError("series '" + series.name + "' has a missing value at " + gap->str() +
                            "; resolve gaps (e.g. linear interpolation) before smoothing");
  }
  NumericSeries out{series.name, series.first_month, std::vector<double>(series.size())};
  for (std::size_t t = 0; t < series.size(); ++t) {
    const std::size_t lags = std::min(w.size(), t + 1);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < lags; ++k) {
      num += w[k] * series.values[t - k];
      den += w[k];
    }
    out.values[t] = num / den;
  }
  return out;
}

Significance fisher_significance(double r, int n, double alpha) {
  if (n < 3) throw PreconditionError("significance needs at least 3 pairs, got " + std::to_string(n));
  if (!(std::abs(r) < 1.0)) throw PreconditionError("significance needs |r| < 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("alpha must lie in (0, 1)");
  // P(|T| > t) for T ~ t(df) equals I_{df/(df+t^2)}(df/2, 1/2), and
  // df/(df+t^2) reduces to 1 - r^2.
  const double df = static_cast<double>(n - 2);
  const double x = (1.0 - r) * (1.0 + r);
  const double p = r == 0.0 ? 1.0 : boost::math::ibeta(df / 2.0, 0.5, x);
  return {p, p < alpha};
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (is_missing(x[i]) || is_missing(y[i])) return std::nullopt;
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

int window_size_at(std::size_t t, std::size_t length, int window) {
  const std::size_t half = static_cast<std::size_t>(window - 1) / 2;
  const std::size_t before = std::min(t, half);
  const std::size_t after = std::min(length - 1 - t, half);
  return static_cast<int>(before + after + 1);
}

CorrelationTrack rolling_correlation(const NumericSeries& x, const NumericSeries& y, int window, double alpha) {
  if (!x.same_axis(y)) {
    throw PreconditionError("series '" + x.name + "' and '" + y.name + "' are on different month axes");
  }
  if (window < 3 || window % 2 == 0) {
    throw PreconditionError("correlation window must be odd and at least 3, got " + std::to_string(window));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("alpha must lie in (0, 1)");

  CorrelationTrack track{x.name, y.name, window, alpha, {}};
  track.points.reserve(x.size());
  const std::size_t half = static_cast<std::size_t>(window - 1) / 2;
  const std::span<const double> xs(x.values);
  const std::span<const double> ys(y.values);
  for (std::size_t t = 0; t < x.size(); ++t) {
    const std::size_t lo = t >= half ? t - half : 0;
    const int n = window_size_at(t, x.size(), window);
    CorrelationPoint pt;
    pt.month = x.month_at(t);
    pt.n_window = n;
    pt.r = pearson(xs.subspan(lo, static_cast<std::size_t>(n)), ys.subspan(lo, static_cast<std::size_t>(n)));
    if (pt.r && n >= 3) {
      if (std::abs(*pt.r) >= 1.0) {
        pt.p_value = 0.0;
        pt.significant = true;
      } else {
        const Significance s = fisher_significance(*pt.r, n, alpha);
        pt.p_value = s.p_value;
        pt.significant = s.significant;
      }
    }
    track.points.push_back(pt);
  }
  return track;
}

}  // namespace affect
