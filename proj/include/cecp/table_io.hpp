#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cecp/rolling.hpp"

namespace cecp {

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double x);

std::vector<std::string> split_csv_line(std::string_view line);
double parse_double(std::string_view text);

/// Minimal CSV table: header plus string cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  [[nodiscard]] std::size_t column(std::string_view name) const;
};

CsvTable read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const CsvTable& table);
void write_csv(std::ostream& out, const CsvTable& table);

/// Writes/reads the rolling output schema:
/// asset,window_index,start_offset,end_timestamp,entropy,complexity
CsvTable rolling_table(const std::vector<RollingResult>& results, bool iso_timestamps);
std::vector<RollingResult> read_rolling(const std::filesystem::path& path);

/// Per-asset size metrics: an `asset` column plus one numeric column per metric.
std::map<std::string, std::map<std::string, double>> read_metrics(const std::filesystem::path& path);

}  // namespace cecp
