#include "cecp/table_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <system_error>

#include "cecp/dataset.hpp"
#include "cecp/error.hpp"

namespace cecp {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::size_t parse_size(std::string_view text) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(Errc::parse_error, "expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw Error(Errc::io_error, "number formatting failed");
  return {buf, ptr};
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t begin = 0;
  while (true) {
    const auto comma = line.find(',', begin);
    auto cell = trim(line.substr(begin, comma == std::string_view::npos ? std::string_view::npos : comma - begin));
    if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') cell = cell.substr(1, cell.size() - 2);
    cells.emplace_back(cell);
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return cells;
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw Error(Errc::parse_error, "not a finite number: '" + std::string(text) + "'");
  }
  return v;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(Errc::missing_label, "missing column '" + std::string(name) + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path.string() + "'");
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_csv_line(line);
    if (table.header.empty()) {
      table.header = std::move(cells);
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw Error(Errc::parse_error, path.string() + ":" + std::to_string(line_no) + ": expected " +
                                         std::to_string(table.header.size()) + " cells, found " +
                                         std::to_string(cells.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (table.header.empty()) throw Error(Errc::parse_error, "'" + path.string() + "' has no header");
  return table;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  const auto write_row = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << row[i];
    }
    out << '\n';
  };
  write_row(table.header);
  for (const auto& row : table.rows) write_row(row);
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write '" + path.string() + "'");
  write_csv(out, table);
  if (!out) throw Error(Errc::io_error, "write failed for '" + path.string() + "'");
}

CsvTable rolling_table(const std::vector<RollingResult>& results, bool iso_timestamps) {
  CsvTable t;
  t.header = {"asset", "window_index", "start_offset", "end_timestamp", "entropy", "complexity"};
  for (const auto& r : results) {
    for (std::size_t k = 0; k < r.points.size(); ++k) {
      std::string ts;
      if (k < r.end_timestamps.size() && r.end_timestamps[k]) {
        ts = iso_timestamps ? format_iso8601(*r.end_timestamps[k]) : std::to_string(*r.end_timestamps[k]);
      }
      t.rows.push_back({r.asset, std::to_string(k), std::to_string(r.window_starts[k]), ts,
                        format_double(r.points[k].entropy), format_double(r.points[k].complexity)});
    }
  }
  return t;
}

std::vector<RollingResult> read_rolling(const std::filesystem::path& path) {
  const auto table = read_csv(path);
  const auto c_asset = table.column("asset");
  const auto c_index = table.column("window_index");
  const auto c_start = table.column("start_offset");
  const auto c_ts = table.column("end_timestamp");
  const auto c_h = table.column("entropy");
  const auto c_c = table.column("complexity");
  std::vector<RollingResult> out;
  std::map<std::string, std::size_t> slot;
  for (const auto& row : table.rows) {
    const auto& asset = row[c_asset];
    auto [it, inserted] = slot.try_emplace(asset, out.size());
    if (inserted) out.push_back(RollingResult{asset, {}, {}, {}});
    auto& r = out[it->second];
    if (parse_size(row[c_index]) != r.points.size()) {
      throw Error(Errc::parse_error, "window indices for asset '" + asset + "' are not consecutive");
    }
    r.window_starts.push_back(parse_size(row[c_start]));
    const auto& ts = row[c_ts];
    if (ts.empty()) {
      r.end_timestamps.emplace_back();
    } else if (ts.find('-', 1) != std::string::npos) {
      r.end_timestamps.emplace_back(parse_iso8601(ts));
    } else {
      r.end_timestamps.emplace_back(static_cast<std::int64_t>(parse_double(ts)));
    }
    r.points.push_back({parse_double(row[c_h]), parse_double(row[c_c])});
  }
  return out;
}

std::map<std::string, std::map<std::string, double>> read_metrics(const std::filesystem::path& path) {
  const auto table = read_csv(path);
  const auto c_asset = table.column("asset");
  std::map<std::string, std::map<std::string, double>> metrics;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c == c_asset) continue;
    auto& column = metrics[table.header[c]];
    for (const auto& row : table.rows) {
      if (!column.emplace(row[c_asset], parse_double(row[c])).second) {
        throw Error(Errc::duplicate_label, "duplicate asset '" + row[c_asset] + "' in metrics");
      }
    }
  }
  return metrics;
}

}  // namespace cecp
