#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cecp/rolling.hpp"

namespace cecp {

struct AssetSummary {
  std::string asset;
  double mean_entropy = 0.0;
  double mean_complexity = 0.0;
  double std_entropy = 0.0;
  double std_complexity = 0.0;
  std::size_t window_count = 0;
};

/// Mean and sample standard deviation (n - 1 denominator, 0 for one window)
/// of the windowed entropy and complexity.
AssetSummary summarize(const RollingResult& results);

/// Euclidean distance from the mean (H, C) to the fully random point (1, 0).
double efficiency_distance(const AssetSummary& summary);

struct LabeledDistance {
  std::string asset;
  double distance = 0.0;
};

/// Assets sorted by ascending distance. `position` is the 1-based place in
/// that order (ties broken by label); `rank` is the average of the positions
/// spanned by a group of equal distances, and `tied` marks such groups.
struct RankingEntry {
  std::string asset;
  double distance = 0.0;
  double rank = 0.0;
  std::size_t position = 0;
  bool tied = false;
};

std::vector<RankingEntry> rank_assets(std::span<const LabeledDistance> distances);
std::vector<RankingEntry> rank_assets(std::span<const AssetSummary> summaries);

struct LabeledSample {
  std::string label;
  std::vector<double> values;
};

struct AnovaResult {
  double ss_between = 0.0;
  double ss_within = 0.0;
  double ss_total = 0.0;
  std::size_t df_between = 0;
  std::size_t df_within = 0;
  std::size_t df_total = 0;
  double ms_between = 0.0;
  double ms_within = 0.0;
  double f_stat = 0.0;
  double p_value = 1.0;
  /// Set when there is no within-group variation: F is reported as 0 (no
  /// between-group variation either) or +inf.
  bool degenerate = false;
};

/// Classical fixed-effects one-way ANOVA; needs >= 2 groups of >= 2 values.
AnovaResult one_way_anova(std::span<const LabeledSample> groups);

enum class Quantity { entropy, complexity };
std::string_view to_string(Quantity q) noexcept;

struct PairwiseComparison {
  std::string asset;
  Quantity quantity = Quantity::entropy;
  AnovaResult anova;
  /// Asset mean minus baseline mean.
  double mean_difference = 0.0;
  bool significant_1pct = false;
  bool significant_5pct = false;
};

/// Two-group ANOVA of each asset's windowed entropy and complexity against
/// the baseline asset, ordered by asset label then quantity.
std::vector<PairwiseComparison> pairwise_anova_vs_baseline(std::span<const RollingResult> assets,
                                                           std::string_view baseline);

struct SpearmanResult {
  double rho = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

/// 1-based ranks; tied values receive the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

/// Rank correlation with average-rank ties. The two-sided p-value uses
/// t = rho sqrt((n-2)/(1-rho^2)) with n - 2 degrees of freedom.
SpearmanResult spearman_rho(std::span<const double> x, std::span<const double> y);

/// Two-sided p-value by enumerating all n! pairings; n <= 10.
double spearman_exact_p(std::span<const double> x, std::span<const double> y);

}  // namespace cecp
