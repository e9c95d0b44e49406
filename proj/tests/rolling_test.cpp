#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "cecp/error.hpp"
#include "cecp/rolling.hpp"
#include "support/oracles.hpp"

using namespace cecp;

TEST(WindowCount, Examples) {
  EXPECT_EQ(window_count(360, {360, 60}), 1U);
  EXPECT_EQ(window_count(419, {360, 60}), 1U);
  EXPECT_EQ(window_count(420, {360, 60}), 2U);
  EXPECT_EQ(window_count(16031, {360, 60}), 262U);
  EXPECT_THROW((void)window_count(359, {360, 60}), Error);
}

TEST(WindowParams, Validation) {
  const OrdinalConfig c(4, 1);
  EXPECT_THROW((WindowParams{360, 0}.validate(c)), Error);
  EXPECT_THROW((WindowParams{3, 1}.validate(c)), Error);
  EXPECT_NO_THROW((WindowParams{4, 1}.validate(c)));
}

TEST(RollingQuantifiers, ShortSeriesFails) {
  try {
    (void)rolling_quantifiers(TimeSeries(std::vector<double>(359, 1.0)), {}, OrdinalConfig(4, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::series_too_short);
  }
}

TEST(RollingQuantifiers, MonotoneSeriesGivesOrigin) {
  std::vector<double> v(480);
  std::iota(v.begin(), v.end(), 0.0);
  const auto r = rolling_quantifiers(TimeSeries(v), {360, 60}, OrdinalConfig(4, 1), "UP");
  ASSERT_EQ(r.points.size(), 3U);
  EXPECT_EQ(r.asset, "UP");
  EXPECT_EQ(r.window_starts, (std::vector<std::size_t>{0, 60, 120}));
  for (const auto& p : r.points) {
    EXPECT_EQ(p.entropy, 0.0);
    EXPECT_EQ(p.complexity, 0.0);
  }
  for (const auto& t : r.end_timestamps) EXPECT_FALSE(t.has_value());
}

TEST(RollingQuantifiers, EndTimestampIsLastObservation) {
  std::mt19937_64 rng(2);
  const auto v = oracle::random_series(rng, 500, false);
  std::vector<std::int64_t> ts(v.size());
  for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = 1000 + 300 * static_cast<std::int64_t>(i);
  const auto r = rolling_quantifiers(TimeSeries(v, ts), {360, 60}, OrdinalConfig(4, 1));
  ASSERT_EQ(r.end_timestamps.size(), 3U);
  EXPECT_EQ(r.end_timestamps[0], ts[359]);
  EXPECT_EQ(r.end_timestamps[2], ts[479]);
}

TEST(RollingQuantifiers, EachWindowMatchesStandaloneSlice) {
  std::mt19937_64 rng(3);
  const TimeSeries s(oracle::random_series(rng, 2000, true));
  const WindowParams w{300, 70};
  const OrdinalConfig c(4, 2);
  const auto r = rolling_quantifiers(s, w, c, "X", 3);
  ASSERT_EQ(r.points.size(), window_count(s.size(), w));
  for (std::size_t k = 0; k < r.points.size(); ++k) {
    EXPECT_EQ(r.points[k], cecp_point(s.slice(k * w.step, w.size), c)) << k;
  }
  const auto single = rolling_quantifiers(s, w, c, "X", 1);
  EXPECT_EQ(single.points, r.points);
}

TEST(RollingQuantifiers, NoiseWindowsNearRandom) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n;
  std::vector<double> v(3000);
  for (auto& x : v) x = n(rng);
  const auto r = rolling_quantifiers(TimeSeries(v), {360, 60}, OrdinalConfig(4, 1));
  for (const auto& p : r.points) {
    EXPECT_GT(p.entropy, 0.9);
    EXPECT_LT(p.complexity, 0.15);
  }
}

TEST(RollingQuantifiers, TracksRegimeChange) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> n;
  std::vector<double> v;
  for (int i = 0; i < 1200; ++i) v.push_back(n(rng));
  for (int i = 0; i < 1200; ++i) v.push_back(static_cast<double>(i) + 0.01 * n(rng));
  const auto r = rolling_quantifiers(TimeSeries(v), {360, 60}, OrdinalConfig(4, 1));
  EXPECT_GT(r.points.front().entropy, 0.9);
  EXPECT_LT(r.points.back().entropy, 0.1);
}
