#include <gtest/gtest.h>

#include <boost/math/distributions/fisher_f.hpp>
#include <cmath>
#include <map>
#include <random>

#include "cecp/error.hpp"
#include "cecp/stats.hpp"

using namespace cecp;

namespace {

RollingResult make_result(std::string asset, const std::vector<double>& h, const std::vector<double>& c) {
  RollingResult r;
  r.asset = std::move(asset);
  for (std::size_t i = 0; i < h.size(); ++i) {
    r.window_starts.push_back(i * 60);
    r.end_timestamps.emplace_back();
    r.points.push_back({h[i], c[i]});
  }
  return r;
}

const std::vector<LabeledDistance> kDistances = {
    {"BCH", 0.1477}, {"BTC", 0.1409}, {"DASH", 0.1306}, {"ETC", 0.1688},
    {"ETH", 0.1660}, {"IOT", 0.1480}, {"LTC", 0.1438}, {"NEO", 0.1481},
    {"XEM", 0.1244}, {"XMR", 0.1431}, {"XRP", 0.1431}, {"ZEC", 0.1482},
};

}  // namespace

TEST(Summarize, MeanAndSampleStd) {
  const auto s = summarize(make_result("A", {0.9, 1.0}, {0.1, 0.1}));
  EXPECT_NEAR(s.mean_entropy, 0.95, 1e-15);
  EXPECT_NEAR(s.std_entropy, std::sqrt(0.005), 1e-15);
  EXPECT_NEAR(s.std_entropy, 0.0707, 1e-4);
  EXPECT_EQ(s.std_complexity, 0.0);
  EXPECT_EQ(s.window_count, 2U);
  const auto one = summarize(make_result("B", {0.8}, {0.2}));
  EXPECT_EQ(one.std_entropy, 0.0);
  EXPECT_THROW(summarize(make_result("C", {}, {})), Error);
}

TEST(EfficiencyDistance, Examples) {
  AssetSummary s;
  s.window_count = 1;
  s.mean_entropy = 1.0;
  EXPECT_EQ(efficiency_distance(s), 0.0);
  s.mean_entropy = 0.9;
  s.mean_complexity = 0.1;
  EXPECT_NEAR(efficiency_distance(s), std::sqrt(0.02), 1e-15);
}

TEST(RankAssets, ReferenceEfficiencyTable) {
  const std::map<std::string, std::size_t> expected = {
      {"XEM", 1}, {"DASH", 2}, {"BTC", 3}, {"LTC", 6}, {"BCH", 7}, {"IOT", 8},
      {"NEO", 9}, {"ZEC", 10}, {"ETH", 11}, {"ETC", 12},
  };
  const auto ranking = rank_assets(kDistances);
  ASSERT_EQ(ranking.size(), 12U);
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    EXPECT_EQ(ranking[i].position, i + 1);
    const auto it = expected.find(ranking[i].asset);
    if (it != expected.end()) {
      EXPECT_EQ(ranking[i].rank, static_cast<double>(it->second)) << ranking[i].asset;
      EXPECT_FALSE(ranking[i].tied);
    } else {
      EXPECT_TRUE(ranking[i].asset == "XMR" || ranking[i].asset == "XRP");
      EXPECT_EQ(ranking[i].rank, 4.5);
      EXPECT_TRUE(ranking[i].tied);
    }
  }
}

TEST(RankAssets, InvariantUnderMonotoneTransform) {
  auto transformed = kDistances;
  for (auto& d : transformed) d.distance = std::exp(3.0 * d.distance) - 0.5;
  const auto a = rank_assets(kDistances);
  const auto b = rank_assets(transformed);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].asset, b[i].asset);
    EXPECT_EQ(a[i].rank, b[i].rank);
  }
}

TEST(RankAssets, RejectsDuplicatesAndEmpty) {
  const std::vector<LabeledDistance> dup = {{"A", 0.1}, {"A", 0.2}};
  try {
    (void)rank_assets(dup);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::duplicate_label);
  }
  EXPECT_THROW((void)rank_assets(std::span<const LabeledDistance>{}), Error);
}

TEST(OneWayAnova, HandComputedExample) {
  const std::vector<LabeledSample> g = {{"a", {1, 2, 3}}, {"b", {2, 3, 4}}};
  const auto r = one_way_anova(g);
  EXPECT_NEAR(r.ss_between, 1.5, 1e-12);
  EXPECT_NEAR(r.ss_within, 4.0, 1e-12);
  EXPECT_NEAR(r.ss_total, 5.5, 1e-12);
  EXPECT_EQ(r.df_between, 1U);
  EXPECT_EQ(r.df_within, 4U);
  EXPECT_EQ(r.df_total, 5U);
  EXPECT_NEAR(r.ms_within, 1.0, 1e-12);
  EXPECT_NEAR(r.f_stat, 1.5, 1e-12);
  const boost::math::fisher_f_distribution<double> f(1, 4);
  EXPECT_NEAR(r.p_value, boost::math::cdf(boost::math::complement(f, 1.5)), 1e-10);
  EXPECT_FALSE(r.degenerate);
}

TEST(OneWayAnova, DegenerateCases) {
  const std::vector<LabeledSample> same = {{"a", {2, 2, 2}}, {"b", {2, 2, 2}}};
  const auto r = one_way_anova(same);
  EXPECT_EQ(r.f_stat, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_TRUE(r.degenerate);
  const std::vector<LabeledSample> split = {{"a", {1, 1}}, {"b", {2, 2}}};
  const auto s = one_way_anova(split);
  EXPECT_TRUE(std::isinf(s.f_stat));
  EXPECT_EQ(s.p_value, 0.0);
  const std::vector<LabeledSample> equal_means = {{"a", {1, 2, 3}}, {"b", {1, 2, 3}}};
  EXPECT_EQ(one_way_anova(equal_means).f_stat, 0.0);
  EXPECT_EQ(one_way_anova(equal_means).p_value, 1.0);
}

TEST(OneWayAnova, Preconditions) {
  const std::vector<LabeledSample> one = {{"a", {1, 2, 3}}};
  EXPECT_THROW(one_way_anova(one), Error);
  const std::vector<LabeledSample> tiny = {{"a", {1}}, {"b", {1, 2}}};
  EXPECT_THROW(one_way_anova(tiny), Error);
}

TEST(OneWayAnova, SumOfSquaresIdentityAndInvariance) {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> n;
  std::uniform_int_distribution<int> groups(2, 8);
  std::uniform_int_distribution<int> sizes(2, 40);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<LabeledSample> g(static_cast<std::size_t>(groups(rng)));
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i].label = std::to_string(i);
      const double shift = 0.3 * n(rng);
      for (int k = sizes(rng); k > 0; --k) g[i].values.push_back(5.0 + shift + n(rng));
    }
    const auto r = one_way_anova(g);
    EXPECT_NEAR((r.ss_between + r.ss_within) / r.ss_total, 1.0, 1e-9);
    EXPECT_GE(r.p_value, 0.0);
    EXPECT_LE(r.p_value, 1.0);
    auto moved = g;
    for (auto& s : moved) {
      for (auto& x : s.values) x = 2.5 * x + 100.0;
    }
    EXPECT_NEAR(one_way_anova(moved).f_stat / r.f_stat, 1.0, 1e-9);
  }
}

TEST(PairwiseAnova, ShiftedAssetIsSignificant) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> n(0.0, 0.01);
  std::vector<double> hb;
  std::vector<double> hs;
  std::vector<double> cb;
  for (int i = 0; i < 50; ++i) {
    hb.push_back(0.9 + n(rng));
    hs.push_back(0.95 + n(rng));
    cb.push_back(0.1 + n(rng));
  }
  const std::vector<RollingResult> results = {make_result("BASE", hb, cb),
                                              make_result("SHIFT", hs, cb),
                                              make_result("COPY", hb, cb)};
  const auto cmp = pairwise_anova_vs_baseline(results, "BASE");
  ASSERT_EQ(cmp.size(), 4U);
  EXPECT_EQ(cmp[0].asset, "COPY");
  EXPECT_EQ(cmp[0].quantity, Quantity::entropy);
  EXPECT_EQ(cmp[0].anova.f_stat, 0.0);
  EXPECT_EQ(cmp[0].mean_difference, 0.0);
  EXPECT_FALSE(cmp[0].significant_5pct);
  EXPECT_EQ(cmp[2].asset, "SHIFT");
  EXPECT_EQ(cmp[2].quantity, Quantity::entropy);
  EXPECT_TRUE(cmp[2].significant_1pct);
  EXPECT_TRUE(cmp[2].significant_5pct);
  EXPECT_NEAR(cmp[2].mean_difference, 0.05, 0.01);
  EXPECT_EQ(cmp[3].quantity, Quantity::complexity);
  EXPECT_FALSE(cmp[3].significant_5pct);
  try {
    (void)pairwise_anova_vs_baseline(results, "NONE");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::missing_label);
  }
}

TEST(Spearman, AverageRanks) {
  const std::vector<double> v = {0.3, 0.1, 0.3, 0.2};
  EXPECT_EQ(average_ranks(v), (std::vector<double>{3.5, 1.0, 3.5, 2.0}));
}

TEST(Spearman, PerfectAssociation) {
  const std::vector<double> x = {1, 2, 3, 4, 5, 6};
  const std::vector<double> y = {10, 20, 25, 40, 41, 90};
  const auto r = spearman_rho(x, y);
  EXPECT_NEAR(r.rho, 1.0, 1e-15);
  EXPECT_EQ(r.p_value, 0.0);
  EXPECT_EQ(r.n, 6U);
  std::vector<double> rev(y.rbegin(), y.rend());
  EXPECT_NEAR(spearman_rho(x, rev).rho, -1.0, 1e-15);
}

TEST(Spearman, DistancesAgainstDailyVolume) {
  std::vector<double> d;
  for (const auto& e : kDistances) d.push_back(e.distance);
  const std::vector<double> volume = {678, 9128, 151, 765, 3143, 68, 2731, 265, 79, 123, 1702, 104};
  const auto r = spearman_rho(d, volume);
  EXPECT_NEAR(r.rho, 0.1225, 1e-3);
  EXPECT_NEAR(r.p_value, 0.7042, 5e-3);
}

TEST(Spearman, InvariantUnderMonotoneTransforms) {
  std::mt19937_64 rng(14);
  std::normal_distribution<double> n;
  std::vector<double> x(30);
  std::vector<double> y(30);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = n(rng);
    y[i] = x[i] + n(rng);
  }
  std::vector<double> tx(x.size());
  std::vector<double> ty(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    tx[i] = std::exp(x[i]);
    ty[i] = y[i] * y[i] * y[i] + y[i];
  }
  const auto a = spearman_rho(x, y);
  const auto b = spearman_rho(tx, ty);
  EXPECT_EQ(a.rho, b.rho);
  EXPECT_EQ(a.p_value, b.p_value);
}

TEST(Spearman, ExactPermutationPValue) {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  EXPECT_NEAR(spearman_exact_p(x, x), 2.0 / 120.0, 1e-15);
  const std::vector<double> y = {2, 1, 4, 3, 5};
  // rho = 0.8; pairings with |rho| >= 0.8 among the 120 permutations.
  EXPECT_NEAR(spearman_exact_p(x, y), 16.0 / 120.0, 1e-15);
  const std::vector<double> big(11, 0.0);
  EXPECT_THROW((void)spearman_exact_p(big, big), Error);
}

TEST(Spearman, Preconditions) {
  const std::vector<double> a = {1, 2, 3};
  const std::vector<double> b = {1, 2};
  EXPECT_THROW((void)spearman_rho(a, b), Error);
  EXPECT_THROW((void)spearman_rho(b, b), Error);
  const std::vector<double> flat = {1, 1, 1};
  EXPECT_THROW((void)spearman_rho(a, flat), Error);
}
