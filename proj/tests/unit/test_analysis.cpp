#include <gtest/gtest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "affect/analysis.hpp"
#include "affect/errors.hpp"

using namespace affect;

namespace {

NumericSeries series(std::vector<double> v, Month first = Month(2000, 1), std::string name = "s") {
  return NumericSeries{std::move(name), first, std::move(v)};
}

}  // namespace

TEST(Hamming, FourPointWeights) {
  const auto w = hamming_weights(4);
  ASSERT_EQ(w.size(), 4u);
  EXPECT_NEAR(w[0], 0.08, 1e-15);
  EXPECT_NEAR(w[1], 0.77, 1e-15);
  EXPECT_NEAR(w[2], 0.77, 1e-15);
  EXPECT_NEAR(w[3], 0.08, 1e-15);
  EXPECT_EQ(hamming_weights(1), std::vector<double>{1.0});
  EXPECT_THROW(hamming_weights(0), PreconditionError);
}

TEST(Hamming, EarlyMonthsRenormalize) {
  const auto s = hamming_smooth(series({1, 2, 3, 4, 5}), 4);
  // t=0: only the current month. t=1: (0.08*2 + 0.77*1) / 0.85.
  EXPECT_DOUBLE_EQ(s.values[0], 1.0);
  EXPECT_NEAR(s.values[1], (0.08 * 2 + 0.77 * 1) / 0.85, 1e-14);
  EXPECT_NEAR(s.values[2], (0.08 * 3 + 0.77 * 2 + 0.77 * 1) / 1.62, 1e-14);
  EXPECT_NEAR(s.values[4], (0.08 * 5 + 0.77 * 4 + 0.77 * 3 + 0.08 * 2) / 1.7, 1e-14);
  EXPECT_EQ(s.first_month, Month(2000, 1));
}

TEST(Hamming, WindowOneIsIdentity) {
  const auto s = series({3, 1, 4, 1, 5});
  EXPECT_EQ(hamming_smooth(s, 1).values, s.values);
}

TEST(Hamming, RejectsGaps) {
  EXPECT_THROW(hamming_smooth(series({1, kMissing, 3}), 4), PreconditionError);
}

TEST(Gaps, InterpolateInteriorAndEdges) {
  const auto s = interpolate_gaps(series({kMissing, 2, kMissing, kMissing, 8, kMissing}));
  EXPECT_EQ(s.values, (std::vector<double>{2, 2, 4, 6, 8, 8}));
  EXPECT_THROW(interpolate_gaps(series({kMissing, kMissing})), PreconditionError);
  EXPECT_EQ(first_gap(series({1, kMissing}, Month(2001, 1)))->str(), "2001-02");
  EXPECT_FALSE(first_gap(series({1, 2})));
}

TEST(Align, CommonOverlap) {
  const auto out = align({series({1, 2, 3, 4}, Month(2000, 1)), series({10, 20, 30}, Month(2000, 3))});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].first_month, Month(2000, 3));
  EXPECT_EQ(out[0].values, (std::vector<double>{3, 4}));
  EXPECT_EQ(out[1].values, (std::vector<double>{10, 20}));
  EXPECT_THROW(align({series({1}, Month(2000, 1)), series({1}, Month(2001, 1))}), PreconditionError);
  EXPECT_THROW(slice(series({1, 2}), {Month(1999, 12), Month(2000, 1)}), PreconditionError);
}

TEST(Pearson, KnownValueAndDegenerateCases) {
  const std::vector<double> x = {1, 2, 3, 4, 5, 6, 7};
  const std::vector<double> y = {2, 1, 4, 3, 6, 5, 8};
  EXPECT_NEAR(*pearson(x, y), 0.896258159530272, 1e-14);
  EXPECT_NEAR(*pearson(x, y), oracle::pearson(x, y), 1e-14);
  const std::vector<double> c = {3, 3, 3, 3, 3, 3, 3};
  EXPECT_FALSE(pearson(x, c));
  const std::vector<double> gap = {1, 2, kMissing, 4, 5, 6, 7};
  EXPECT_FALSE(pearson(gap, y));
}

// Frozen from independent evaluations (t-density quadrature, and 40-digit
// arithmetic for the far tail).
TEST(Significance, FrozenReferenceValues) {
  const auto a = fisher_significance(0.75, 13, 0.05);
  EXPECT_NEAR(a.p_value, 3.150837421021e-03, 1e-12);
  EXPECT_TRUE(a.significant);
  const auto b = fisher_significance(0.30, 7, 0.05);
  EXPECT_NEAR(b.p_value, 0.5133096913600, 1e-12);
  EXPECT_FALSE(b.significant);
  EXPECT_NEAR(fisher_significance(0.5, 20, 0.05).p_value, 2.476955880411e-02, 1e-12);
  EXPECT_NEAR(fisher_significance(-0.9, 66, 0.05).p_value, 9.151576433785623e-25, 1e-36);
  EXPECT_EQ(fisher_significance(0.0, 10, 0.05).p_value, 1.0);
}

TEST(Significance, OracleSelfCheck) {
  EXPECT_NEAR(oracle::t_test_p_value(0.75, 13), 3.150837421021e-03, 1e-10);
  EXPECT_NEAR(oracle::t_test_p_value(0.30, 7), 0.5133096913600, 1e-10);
}

TEST(Significance, RejectsInvalid) {
  EXPECT_THROW(fisher_significance(0.5, 2, 0.05), PreconditionError);
  EXPECT_THROW(fisher_significance(1.0, 10, 0.05), PreconditionError);
  EXPECT_THROW(fisher_significance(0.5, 10, 0.0), PreconditionError);
  EXPECT_THROW(fisher_significance(0.5, 10, 1.0), PreconditionError);
}

TEST(RollingCorrelation, EdgeWindowSizes) {
  std::vector<int> want;
  for (int i = 7; i <= 12; ++i) want.push_back(i);
  for (int i = 0; i < 54; ++i) want.push_back(13);
  for (int i = 12; i >= 7; --i) want.push_back(i);
  std::vector<double> x(66), y(66);
  for (int i = 0; i < 66; ++i) {
    x[i] = std::sin(0.3 * i);
    y[i] = std::cos(0.17 * i) + 0.01 * i;
  }
  const auto track = rolling_correlation(series(x, Month(1999, 9), "x"), series(y, Month(1999, 9), "y"));
  ASSERT_EQ(track.points.size(), 66u);
  for (int i = 0; i < 66; ++i) {
    EXPECT_EQ(track.points[i].n_window, want[i]) << i;
    EXPECT_EQ(window_size_at(i, 66, 13), want[i]);
  }
  EXPECT_EQ(track.points[0].month.str(), "1999-09");
  EXPECT_EQ(track.points[60].n_window, 12);
  EXPECT_EQ(track.points[59].n_window, 13);
}

TEST(RollingCorrelation, MatchesOracleOnEachWindow) {
  std::vector<double> x(30), y(30);
  for (int i = 0; i < 30; ++i) {
    x[i] = std::sin(0.4 * i) + 0.1 * i;
    y[i] = std::cos(0.23 * i * i);
  }
  const auto track = rolling_correlation(series(x), series(y), 7, 0.05);
  for (int t = 0; t < 30; ++t) {
    const int lo = std::max(0, t - 3);
    const int hi = std::min(29, t + 3);
    const std::vector<double> xs(x.begin() + lo, x.begin() + hi + 1);
    const std::vector<double> ys(y.begin() + lo, y.begin() + hi + 1);
    const auto& pt = track.points[t];
    ASSERT_TRUE(pt.r);
    EXPECT_NEAR(*pt.r, oracle::pearson(xs, ys), 1e-12);
    EXPECT_NEAR(*pt.p_value, oracle::t_test_p_value(*pt.r, pt.n_window), 1e-9);
    EXPECT_EQ(pt.significant, *pt.p_value < 0.05);
  }
}

TEST(RollingCorrelation, MissingAndConstantWindows) {
  std::vector<double> x = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<double> y = {5, 5, 5, 5, 5, 1, 7, 2, 9};
  x[8] = kMissing;
  const auto track = rolling_correlation(series(x), series(y), 3);
  EXPECT_FALSE(track.points[1].r);  // y constant over months 0..2
  EXPECT_FALSE(track.points[1].p_value);
  EXPECT_TRUE(track.points[5].r);
  EXPECT_FALSE(track.points[8].r);  // window holds the gap
  EXPECT_FALSE(track.points[7].r);
}

TEST(RollingCorrelation, PerfectCorrelationIsSignificant) {
  const auto track = rolling_correlation(series({1, 2, 3, 4, 5}), series({2, 4, 6, 8, 10}), 5);
  EXPECT_NEAR(*track.points[2].r, 1.0, 1e-15);
  EXPECT_EQ(*track.points[2].p_value, 0.0);
  EXPECT_TRUE(track.points[2].significant);
}

TEST(RollingCorrelation, RejectsBadArguments) {
  const auto a = series({1, 2, 3, 4});
  EXPECT_THROW(rolling_correlation(a, series({1, 2, 3}), 3), PreconditionError);
  EXPECT_THROW(rolling_correlation(a, a, 4), PreconditionError);
  EXPECT_THROW(rolling_correlation(a, a, 1), PreconditionError);
  EXPECT_THROW(rolling_correlation(a, series({1, 2, 3, 4}, Month(2000, 2)), 3), PreconditionError);
}
