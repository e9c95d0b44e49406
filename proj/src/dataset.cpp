#include "cecp/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "cecp/error.hpp"
#include "cecp/fbm.hpp"
#include "cecp/table_io.hpp"

namespace cecp {

namespace {

constexpr std::int64_t kFixtureStart = 1512259200;  // 2017-12-03T00:00:00Z
constexpr std::int64_t kFixtureSpacing = 300;       // five minutes

bool is_missing(const std::string& cell) {
  return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan" || cell == "null";
}

bool parse_int(std::string_view text, std::int64_t& out) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && !text.empty();
}

int take_digits(std::string_view text, std::size_t pos, std::size_t count) {
  if (pos + count > text.size()) throw Error(Errc::parse_error, "truncated timestamp");
  int v = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    if (text[i] < '0' || text[i] > '9') throw Error(Errc::parse_error, "bad digit in timestamp");
    v = v * 10 + (text[i] - '0');
  }
  return v;
}

}  // namespace

std::size_t Dataset::fill_count() const {
  std::size_t n = 0;
  for (const auto& [asset, count] : fills) n += count;
  return n;
}

std::int64_t parse_iso8601(const std::string& text) {
  std::string_view s = text;
  if (!s.empty() && (s.back() == 'Z' || s.back() == 'z')) s.remove_suffix(1);
  try {
    if (s.size() < 10 || s[4] != '-' || s[7] != '-') throw Error(Errc::parse_error, "bad date");
    const int year = take_digits(s, 0, 4);
    const int month = take_digits(s, 5, 2);
    const int day = take_digits(s, 8, 2);
    int hour = 0;
    int minute = 0;
    int second = 0;
    if (s.size() > 10) {
      if ((s[10] != 'T' && s[10] != ' ') || s.size() < 16 || s[13] != ':') {
        throw Error(Errc::parse_error, "bad time");
      }
      hour = take_digits(s, 11, 2);
      minute = take_digits(s, 14, 2);
      if (s.size() > 16) {
        if (s.size() != 19 || s[16] != ':') throw Error(Errc::parse_error, "bad seconds");
        second = take_digits(s, 17, 2);
      }
    }
    const std::chrono::year_month_day ymd{std::chrono::year(year), std::chrono::month(static_cast<unsigned>(month)),
                                          std::chrono::day(static_cast<unsigned>(day))};
    if (!ymd.ok() || hour > 23 || minute > 59 || second > 59) {
      throw Error(Errc::parse_error, "out-of-range field");
    }
    const auto days = std::chrono::sys_days(ymd).time_since_epoch().count();
    return static_cast<std::int64_t>(days) * 86400 + hour * 3600 + minute * 60 + second;
  } catch (const Error&) {
    throw Error(Errc::parse_error, "invalid ISO-8601 timestamp '" + text + "'");
  }
}

std::string format_iso8601(std::int64_t epoch_seconds) {
  const auto days = static_cast<int>(epoch_seconds >= 0 ? epoch_seconds / 86400 : (epoch_seconds - 86399) / 86400);
  const std::int64_t rem = epoch_seconds - static_cast<std::int64_t>(days) * 86400;
  const std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{days}}};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60), static_cast<int>(rem % 60));
  return buf;
}

Dataset parse_dataset(std::istream& in, const LoadOptions& options, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) header = split_csv_line(line);
  }
  if (header.size() < 2) {
    throw Error(Errc::parse_error, source + ": expected a header with a timestamp column and at least one asset");
  }

  Dataset ds;
  ds.time_column = header[0];
  std::vector<std::size_t> columns;
  if (options.assets.empty()) {
    for (std::size_t c = 1; c < header.size(); ++c) columns.push_back(c);
  } else {
    for (const auto& asset : options.assets) {
      const auto it = std::find(header.begin() + 1, header.end(), asset);
      if (it == header.end()) {
        throw Error(Errc::missing_label, source + ": asset column '" + asset + "' not found");
      }
      columns.push_back(static_cast<std::size_t>(it - header.begin()));
    }
  }
  std::set<std::string> seen;
  for (const auto c : columns) {
    if (!seen.insert(header[c]).second) {
      throw Error(Errc::duplicate_label, source + ": duplicate asset column '" + header[c] + "'");
    }
    ds.assets.push_back(header[c]);
  }

  std::vector<std::int64_t> times;
  std::vector<std::vector<double>> values(columns.size());
  std::vector<std::size_t> fills(columns.size(), 0);
  bool format_known = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    const std::string where = source + ":" + std::to_string(line_no);
    if (cells.size() != header.size()) {
      throw Error(Errc::parse_error, where + ": expected " + std::to_string(header.size()) +
                                         " cells, found " + std::to_string(cells.size()));
    }
    std::int64_t t = 0;
    const bool integer = parse_int(cells[0], t);
    if (!format_known) {
      ds.time_format = integer ? TimeFormat::index : TimeFormat::iso8601;
      format_known = true;
    }
    if (ds.time_format == TimeFormat::index) {
      if (!integer) throw Error(Errc::parse_error, where + ": timestamp '" + cells[0] + "' is not an integer index");
    } else {
      try {
        t = parse_iso8601(cells[0]);
      } catch (const Error& e) {
        throw Error(Errc::parse_error, where + ": " + e.what());
      }
    }
    if (times.size() >= 2 && t - times.back() != times[1] - times[0]) {
      throw Error(Errc::irregular_grid, where + ": timestamp breaks the even spacing of the grid");
    }
    if (!times.empty() && t <= times.back()) {
      throw Error(Errc::irregular_grid, where + ": timestamps must be strictly increasing");
    }
    times.push_back(t);

    for (std::size_t k = 0; k < columns.size(); ++k) {
      const auto& cell = cells[columns[k]];
      std::string problem;
      double v = 0.0;
      if (is_missing(cell)) {
        problem = "missing value";
      } else {
        try {
          v = parse_double(cell);
        } catch (const Error& e) {
          problem = e.what();
        }
      }
      if (!problem.empty()) {
        if (!options.forward_fill || values[k].empty()) {
          throw Error(Errc::parse_error, where + ", column '" + header[columns[k]] + "': " + problem +
                                             (options.forward_fill ? " (no earlier value to carry forward)" : ""));
        }
        v = values[k].back();
        ++fills[k];
      }
      values[k].push_back(v);
    }
  }
  if (times.empty()) throw Error(Errc::parse_error, source + ": no data rows");

  for (std::size_t k = 0; k < columns.size(); ++k) {
    ds.series.emplace(ds.assets[k], TimeSeries(std::move(values[k]), times));
    if (fills[k] > 0) ds.fills[ds.assets[k]] = fills[k];
  }
  return ds;
}

Dataset load_dataset(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open dataset '" + path.string() + "'");
  return parse_dataset(in, options, path.string());
}

void write_dataset(std::ostream& out, const Dataset& dataset) {
  if (dataset.assets.empty()) throw Error(Errc::invalid_argument, "dataset has no assets");
  const auto& first = dataset.series.at(dataset.assets.front());
  out << dataset.time_column;
  for (const auto& a : dataset.assets) out << ',' << a;
  out << '\n';
  for (std::size_t i = 0; i < first.size(); ++i) {
    const auto t = first.timestamp_at(i).value_or(static_cast<std::int64_t>(i));
    out << (dataset.time_format == TimeFormat::iso8601 ? format_iso8601(t) : std::to_string(t));
    for (const auto& a : dataset.assets) out << ',' << format_double(dataset.series.at(a).values()[i]);
    out << '\n';
  }
}

void write_dataset(const std::filesystem::path& path, const Dataset& dataset) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write dataset '" + path.string() + "'");
  write_dataset(out, dataset);
  if (!out) throw Error(Errc::io_error, "write failed for '" + path.string() + "'");
}

Dataset synthetic_dataset(const std::vector<SyntheticAsset>& assets, std::size_t rows,
                          std::uint64_t seed) {
  if (assets.empty()) throw Error(Errc::invalid_argument, "synthetic dataset needs at least one asset");
  std::vector<std::int64_t> times(rows);
  for (std::size_t i = 0; i < rows; ++i) times[i] = kFixtureStart + static_cast<std::int64_t>(i) * kFixtureSpacing;
  Dataset ds;
  ds.time_format = TimeFormat::iso8601;
  for (std::size_t k = 0; k < assets.size(); ++k) {
    const auto& spec = assets[k];
    auto path = FgnGenerator(spec.hurst, rows).sample(seed, k);
    double level = 0.0;
    for (auto& x : path) {
      level += x;
      x = 100.0 * std::exp(0.002 * level);
    }
    if (!ds.series.emplace(spec.label, TimeSeries(std::move(path), times)).second) {
      throw Error(Errc::duplicate_label, "duplicate synthetic asset '" + spec.label + "'");
    }
    ds.assets.push_back(spec.label);
  }
  return ds;
}

std::vector<SyntheticAsset> default_synthetic_assets() {
  return {{"BCH", 0.60}, {"BTC", 0.58}, {"DASH", 0.50}, {"ETC", 0.72}, {"ETH", 0.75}, {"IOT", 0.62},
          {"LTC", 0.57}, {"NEO", 0.63}, {"XEM", 0.45}, {"XMR", 0.55}, {"XRP", 0.56}, {"ZEC", 0.64}};
}

}  // namespace cecp
