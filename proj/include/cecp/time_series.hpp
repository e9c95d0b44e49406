#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cecp {

/// Evenly spaced univariate series of finite observations.
///
/// Timestamps are optional integer instants (seconds since the epoch for
/// calendar data, or a plain sample index); when present they must be
/// strictly increasing with a constant gap.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<double> values);
  TimeSeries(std::vector<double> values, std::vector<std::int64_t> timestamps);

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] bool has_timestamps() const noexcept { return !timestamps_.empty(); }
  [[nodiscard]] std::span<const std::int64_t> timestamps() const noexcept { return timestamps_; }
  [[nodiscard]] std::optional<std::int64_t> timestamp_at(std::size_t i) const;

  /// Contiguous sub-series [offset, offset + length), timestamps included.
  [[nodiscard]] TimeSeries slice(std::size_t offset, std::size_t length) const;

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  std::vector<double> values_;
  std::vector<std::int64_t> timestamps_;
};

/// log(x[t]) - log(x[t-1]); requires strictly positive values. Output is one
/// sample shorter and keeps the timestamps of the later observation.
TimeSeries log_returns(const TimeSeries& series);

}  // namespace cecp
