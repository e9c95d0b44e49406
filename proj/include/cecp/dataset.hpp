#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cecp/time_series.hpp"

namespace cecp {

enum class TimeFormat { index, iso8601 };

/// Multi-asset price table: a timestamp column followed by one numeric
/// column per asset.
struct Dataset {
  std::string time_column = "timestamp";
  TimeFormat time_format = TimeFormat::index;
  /// Asset labels in file column order.
  std::vector<std::string> assets;
  std::map<std::string, TimeSeries> series;
  /// Forward-filled cells per asset (only assets with fills appear).
  std::map<std::string, std::size_t> fills;

  [[nodiscard]] std::size_t fill_count() const;
};

struct LoadOptions {
  /// Columns to load; empty selects every asset column.
  std::vector<std::string> assets;
  /// Replace missing or unparseable cells with the previous row's value.
  bool forward_fill = false;
};

/// Reads CSV with a header row. Timestamps are either all integers (a plain
/// sample index) or ISO-8601 instants ("2017-12-03T00:05:00Z", with or
/// without the trailing Z, 'T' or ' ' separator, seconds optional), and must
/// be evenly spaced.
Dataset load_dataset(const std::filesystem::path& path, const LoadOptions& options = {});
Dataset parse_dataset(std::istream& in, const LoadOptions& options = {},
                      const std::string& source = "<input>");

void write_dataset(const std::filesystem::path& path, const Dataset& dataset);
void write_dataset(std::ostream& out, const Dataset& dataset);

/// Seconds since the Unix epoch for an ISO-8601 UTC instant.
std::int64_t parse_iso8601(const std::string& text);
std::string format_iso8601(std::int64_t epoch_seconds);

struct SyntheticAsset {
  std::string label;
  double hurst = 0.5;
};

/// Deterministic fixture: exponentiated fBm price paths on a 5-minute grid
/// starting 2017-12-03T00:00:00Z, one column per asset.
Dataset synthetic_dataset(const std::vector<SyntheticAsset>& assets, std::size_t rows,
                          std::uint64_t seed);

/// Twelve assets labelled BCH ... ZEC with Hurst exponents spread over
/// [0.45, 0.75].
std::vector<SyntheticAsset> default_synthetic_assets();

}  // namespace cecp
