#include "cecp/time_series.hpp"

#include <cmath>
#include <string>

#include "cecp/error.hpp"

namespace cecp {

namespace {

void check_values(const std::vector<double>& values) {
  if (values.empty()) {
    throw Error(Errc::series_too_short, "time series must contain at least one value");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(Errc::non_finite_value,
                  "time series value at index " + std::to_string(i) + " is not finite");
    }
  }
}

}  // namespace

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
  check_values(values_);
}

TimeSeries::TimeSeries(std::vector<double> values, std::vector<std::int64_t> timestamps)
    : values_(std::move(values)), timestamps_(std::move(timestamps)) {
  check_values(values_);
  if (timestamps_.empty()) return;
  if (timestamps_.size() != values_.size()) {
    throw Error(Errc::dimension_mismatch, "timestamp count " + std::to_string(timestamps_.size()) +
                                              " differs from value count " +
                                              std::to_string(values_.size()));
  }
  if (timestamps_.size() < 2) return;
  const std::int64_t gap = timestamps_[1] - timestamps_[0];
  if (gap <= 0) {
    throw Error(Errc::irregular_grid, "timestamps must be strictly increasing");
  }
  for (std::size_t i = 2; i < timestamps_.size(); ++i) {
    if (timestamps_[i] - timestamps_[i - 1] != gap) {
      throw Error(Errc::irregular_grid,
                  "irregular timestamp spacing at index " + std::to_string(i));
    }
  }
}

std::optional<std::int64_t> TimeSeries::timestamp_at(std::size_t i) const {
  if (timestamps_.empty()) return std::nullopt;
  return timestamps_.at(i);
}

TimeSeries TimeSeries::slice(std::size_t offset, std::size_t length) const {
  if (length == 0 || offset > values_.size() || length > values_.size() - offset) {
    throw Error(Errc::invalid_argument, "slice [" + std::to_string(offset) + ", " +
                                            std::to_string(offset + length) +
                                            ") outside series of length " +
                                            std::to_string(values_.size()));
  }
  const auto first = values_.begin() + static_cast<std::ptrdiff_t>(offset);
  std::vector<double> values(first, first + static_cast<std::ptrdiff_t>(length));
  if (timestamps_.empty()) return TimeSeries(std::move(values));
  const auto ts = timestamps_.begin() + static_cast<std::ptrdiff_t>(offset);
  return TimeSeries(std::move(values),
                    std::vector<std::int64_t>(ts, ts + static_cast<std::ptrdiff_t>(length)));
}

TimeSeries log_returns(const TimeSeries& series) {
  if (series.size() < 2) {
    throw Error(Errc::series_too_short, "log returns need at least two observations");
  }
  const auto v = series.values();
  std::vector<double> out;
  out.reserve(v.size() - 1);
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] <= 0.0 || v[i - 1] <= 0.0) {
      throw Error(Errc::invalid_argument,
                  "log returns need strictly positive values (index " + std::to_string(i) + ")");
    }
    out.push_back(std::log(v[i]) - std::log(v[i - 1]));
  }
  if (!series.has_timestamps()) return TimeSeries(std::move(out));
  const auto ts = series.timestamps();
  return TimeSeries(std::move(out), std::vector<std::int64_t>(ts.begin() + 1, ts.end()));
}

}  // namespace cecp
