#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cecp/bounds.hpp"
#include "cecp/dataset.hpp"
#include "cecp/fbm.hpp"
#include "cecp/ordinal.hpp"
#include "cecp/rolling.hpp"
#include "cecp/stats.hpp"
#include "cecp/table_io.hpp"

namespace cecp {

inline constexpr std::string_view kToolName = "cecp";
inline constexpr std::string_view kToolVersion = "1.0.0";

enum class OutputFormat { csv, json };

struct RunConfig {
  OrdinalConfig ordinal{4, 1};
  WindowParams window{360, 60};
  /// Empty selects every asset column of the input.
  std::vector<std::string> assets;
  bool log_returns = false;
  bool forward_fill = false;
  std::uint64_t seed = 42;
  /// Asset for the pairwise ANOVA; no pairwise tests when unset.
  std::optional<std::string> baseline;
  std::size_t bound_resolution = 2000;
  /// Hurst exponents of the fBm reference clouds; none when empty.
  std::vector<double> fbm_hurst;
  std::size_t fbm_sims = 500;
  /// fBm path length; 0 means the window size.
  std::size_t fbm_length = 0;
  /// metric name -> asset -> value, correlated against efficiency distance.
  std::map<std::string, std::map<std::string, double>> metrics;
  OutputFormat format = OutputFormat::csv;
  unsigned threads = 0;

  void validate() const;
};

/// A statistical result that may be unavailable for the given data (for
/// instance ANOVA on a single asset); `status` is "ok" or the reason.
template <typename T>
struct Outcome {
  std::optional<T> result;
  std::string status = "ok";
};

struct SpearmanOutcome {
  std::string metric;
  Outcome<SpearmanResult> outcome;
};

struct Bundle {
  RunConfig config;
  bool iso_timestamps = false;
  std::vector<RollingResult> rolling;
  std::vector<AssetSummary> summaries;
  std::vector<RankingEntry> ranking;
  Outcome<AnovaResult> anova_entropy;
  Outcome<AnovaResult> anova_complexity;
  std::vector<PairwiseComparison> pairwise;
  std::vector<SpearmanOutcome> spearman;
  BoundCurve lower;
  BoundCurve upper;
  std::vector<BaselineCloud> clouds;
  std::vector<std::string> warnings;
};

Bundle run_pipeline(const RunConfig& config, const Dataset& data);

/// Stats stages that operate on already computed rolling output.
Outcome<AnovaResult> all_asset_anova(const std::vector<RollingResult>& rolling, Quantity quantity);
std::vector<SpearmanOutcome> spearman_against_metrics(
    const std::vector<RankingEntry>& ranking,
    const std::map<std::string, std::map<std::string, double>>& metrics);

// Result tables. Column layouts are part of the output contract.
CsvTable summary_table(const std::vector<AssetSummary>& summaries);
CsvTable ranking_table(const std::vector<RankingEntry>& ranking);
CsvTable anova_table(const Outcome<AnovaResult>& anova);
CsvTable pairwise_table(const std::vector<PairwiseComparison>& pairwise);
CsvTable spearman_table(const std::vector<SpearmanOutcome>& spearman);
CsvTable bounds_table(const BoundCurve& lower, const BoundCurve& upper, std::size_t resolution);
CsvTable cloud_table(const std::vector<BaselineCloud>& clouds);

enum class PlotKind { entropy_evolution, cecp_scatter, cecp_means, anova_intervals };
PlotKind parse_plot_kind(std::string_view name);
std::string_view to_string(PlotKind kind) noexcept;

/// One row per plotted mark, copied from the bundle without recomputation.
CsvTable plot_data(const Bundle& bundle, PlotKind kind);

/// JSON array with one object per row; numeric cells become numbers and
/// empty cells null.
std::string table_to_json_text(const CsvTable& table);

/// Writes `table` as <stem>.csv or <stem>.json under `dir`.
std::filesystem::path write_table(const std::filesystem::path& dir, std::string_view stem,
                                  const CsvTable& table, OutputFormat format);

struct ManifestInfo {
  std::string input_path;
  std::string input_digest;
  std::map<std::string, std::size_t> forward_fills;
};

/// Writes every table, all plot data, and manifest.json into `dir`.
void write_bundle(const Bundle& bundle, const std::filesystem::path& dir, const ManifestInfo& info);

/// Hex SHA-256 of a file's bytes.
std::string file_digest(const std::filesystem::path& path);

std::string config_to_json(const RunConfig& config);
RunConfig config_from_json(const std::string& text);

}  // namespace cecp
