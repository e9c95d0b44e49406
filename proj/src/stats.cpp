#include "cecp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "cecp/detail/summation.hpp"
#include "cecp/error.hpp"
#include "cecp/special.hpp"

namespace cecp {

namespace {

double mean_of(std::span<const double> v) {
  detail::CompensatedSum s;
  for (const double x : v) s.add(x);
  return s.value() / static_cast<double>(v.size());
}

double sum_sq_dev(std::span<const double> v, double centre) {
  detail::CompensatedSum s;
  for (const double x : v) s.add((x - centre) * (x - centre));
  return s.value();
}

double sample_std(std::span<const double> v, double mean) {
  if (v.size() < 2) return 0.0;
  return std::sqrt(sum_sq_dev(v, mean) / static_cast<double>(v.size() - 1));
}

std::vector<double> entropies(const RollingResult& r) {
  std::vector<double> out;
  out.reserve(r.points.size());
  for (const auto& p : r.points) out.push_back(p.entropy);
  return out;
}

std::vector<double> complexities(const RollingResult& r) {
  std::vector<double> out;
  out.reserve(r.points.size());
  for (const auto& p : r.points) out.push_back(p.complexity);
  return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  const double mx = mean_of(x);
  const double my = mean_of(y);
  detail::CompensatedSum sxy;
  for (std::size_t i = 0; i < x.size(); ++i) sxy.add((x[i] - mx) * (y[i] - my));
  const double sxx = sum_sq_dev(x, mx);
  const double syy = sum_sq_dev(y, my);
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(Errc::insufficient_data, "rank correlation undefined: zero rank variance");
  }
  return std::clamp(sxy.value() / std::sqrt(sxx * syy), -1.0, 1.0);
}

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(Errc::dimension_mismatch, "rank correlation inputs differ in length (" +
                                              std::to_string(x.size()) + " vs " +
                                              std::to_string(y.size()) + ")");
  }
  if (x.size() < 3) throw Error(Errc::insufficient_data, "rank correlation needs n >= 3");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw Error(Errc::non_finite_value, "non-finite value at index " + std::to_string(i));
    }
  }
}

}  // namespace

AssetSummary summarize(const RollingResult& results) {
  if (results.points.empty()) {
    throw Error(Errc::insufficient_data, "asset '" + results.asset + "' has no windows");
  }
  const auto h = entropies(results);
  const auto c = complexities(results);
  AssetSummary s;
  s.asset = results.asset;
  s.mean_entropy = mean_of(h);
  s.mean_complexity = mean_of(c);
  s.std_entropy = sample_std(h, s.mean_entropy);
  s.std_complexity = sample_std(c, s.mean_complexity);
  s.window_count = results.points.size();
  return s;
}

double efficiency_distance(const AssetSummary& summary) {
  if (summary.window_count < 1 || !(summary.mean_entropy >= 0.0 && summary.mean_entropy <= 1.0) ||
      !(summary.mean_complexity >= 0.0 && summary.mean_complexity <= 1.0)) {
    throw Error(Errc::invalid_argument, "invalid summary for asset '" + summary.asset + "'");
  }
  return std::hypot(1.0 - summary.mean_entropy, summary.mean_complexity);
}

std::vector<RankingEntry> rank_assets(std::span<const LabeledDistance> distances) {
  if (distances.empty()) throw Error(Errc::insufficient_data, "nothing to rank");
  std::set<std::string_view> labels;
  for (const auto& d : distances) {
    if (!labels.insert(d.asset).second) {
      throw Error(Errc::duplicate_label, "duplicate asset label '" + d.asset + "'");
    }
    if (!std::isfinite(d.distance) || d.distance < 0.0) {
      throw Error(Errc::invalid_argument, "invalid distance for asset '" + d.asset + "'");
    }
  }
  std::vector<RankingEntry> out;
  out.reserve(distances.size());
  for (const auto& d : distances) out.push_back({d.asset, d.distance, 0.0, 0, false});
  std::sort(out.begin(), out.end(), [](const RankingEntry& a, const RankingEntry& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.asset < b.asset;
  });
  for (std::size_t i = 0; i < out.size();) {
    std::size_t j = i + 1;
    while (j < out.size() && out[j].distance == out[i].distance) ++j;
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      out[k].position = k + 1;
      out[k].rank = rank;
      out[k].tied = j - i > 1;
    }
    i = j;
  }
  return out;
}

std::vector<RankingEntry> rank_assets(std::span<const AssetSummary> summaries) {
  std::vector<LabeledDistance> distances;
  distances.reserve(summaries.size());
  for (const auto& s : summaries) distances.push_back({s.asset, efficiency_distance(s)});
  return rank_assets(distances);
}

AnovaResult one_way_anova(std::span<const LabeledSample> groups) {
  if (groups.size() < 2) {
    throw Error(Errc::insufficient_data, "ANOVA needs at least two groups (insufficient groups)");
  }
  std::size_t total_n = 0;
  detail::CompensatedSum grand_sum;
  for (const auto& g : groups) {
    if (g.values.size() < 2) {
      throw Error(Errc::insufficient_data,
                  "ANOVA group '" + g.label + "' needs at least two observations");
    }
    for (const double x : g.values) {
      if (!std::isfinite(x)) throw Error(Errc::non_finite_value, "non-finite value in group '" + g.label + "'");
      grand_sum.add(x);
    }
    total_n += g.values.size();
  }
  const double grand_mean = grand_sum.value() / static_cast<double>(total_n);

  detail::CompensatedSum between;
  detail::CompensatedSum within;
  detail::CompensatedSum total;
  for (const auto& g : groups) {
    const double m = mean_of(g.values);
    between.add(static_cast<double>(g.values.size()) * (m - grand_mean) * (m - grand_mean));
    within.add(sum_sq_dev(g.values, m));
    total.add(sum_sq_dev(g.values, grand_mean));
  }

  AnovaResult r;
  r.ss_between = between.value();
  r.ss_within = within.value();
  r.ss_total = total.value();
  r.df_between = groups.size() - 1;
  r.df_within = total_n - groups.size();
  r.df_total = total_n - 1;
  r.ms_between = r.ss_between / static_cast<double>(r.df_between);
  r.ms_within = r.ss_within / static_cast<double>(r.df_within);
  if (r.ss_within == 0.0) {
    r.degenerate = true;
    if (r.ss_between == 0.0) {
      r.f_stat = 0.0;
      r.p_value = 1.0;
    } else {
      r.f_stat = std::numeric_limits<double>::infinity();
      r.p_value = 0.0;
    }
    return r;
  }
  r.f_stat = r.ms_between / r.ms_within;
  r.p_value = f_survival(r.f_stat, static_cast<double>(r.df_between), static_cast<double>(r.df_within));
  return r;
}

std::string_view to_string(Quantity q) noexcept {
  return q == Quantity::entropy ? "entropy" : "complexity";
}

std::vector<PairwiseComparison> pairwise_anova_vs_baseline(std::span<const RollingResult> assets,
                                                           std::string_view baseline) {
  const auto base = std::find_if(assets.begin(), assets.end(),
                                 [&](const RollingResult& r) { return r.asset == baseline; });
  if (base == assets.end()) {
    throw Error(Errc::missing_label, "baseline asset '" + std::string(baseline) + "' not found");
  }
  std::vector<const RollingResult*> others;
  for (const auto& r : assets) {
    if (r.asset != baseline) others.push_back(&r);
  }
  std::sort(others.begin(), others.end(),
            [](const RollingResult* a, const RollingResult* b) { return a->asset < b->asset; });

  std::vector<PairwiseComparison> out;
  for (const RollingResult* asset : others) {
    for (const Quantity q : {Quantity::entropy, Quantity::complexity}) {
      const auto pick = q == Quantity::entropy ? entropies : complexities;
      const std::vector<LabeledSample> groups{{base->asset, pick(*base)}, {asset->asset, pick(*asset)}};
      PairwiseComparison c;
      c.asset = asset->asset;
      c.quantity = q;
      c.anova = one_way_anova(groups);
      c.mean_difference = mean_of(groups[1].values) - mean_of(groups[0].values);
      c.significant_1pct = c.anova.p_value < 0.01;
      c.significant_5pct = c.anova.p_value < 0.05;
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

SpearmanResult spearman_rho(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  SpearmanResult r;
  r.n = x.size();
  r.rho = pearson(rx, ry);
  if (std::fabs(r.rho) >= 1.0) {
    r.p_value = 0.0;
    return r;
  }
  const double dof = static_cast<double>(r.n - 2);
  const double t = r.rho * std::sqrt(dof / ((1.0 - r.rho) * (1.0 + r.rho)));
  r.p_value = std::clamp(student_t_two_sided(t, dof), 0.0, 1.0);
  return r;
}

double spearman_exact_p(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  if (x.size() > 10) throw Error(Errc::invalid_argument, "exact Spearman p-value limited to n <= 10");
  const auto rx = average_ranks(x);
  auto ry = average_ranks(y);
  const double observed = std::fabs(pearson(rx, ry));
  std::sort(ry.begin(), ry.end());
  std::size_t extreme = 0;
  std::size_t total = 0;
  do {
    ++total;
    if (std::fabs(pearson(rx, ry)) >= observed - 1e-12) ++extreme;
  } while (std::next_permutation(ry.begin(), ry.end()));
  // Tied ranks collapse equal pairings; next_permutation visits each
  // distinct arrangement once, and every one is equally likely.
  return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace cecp
