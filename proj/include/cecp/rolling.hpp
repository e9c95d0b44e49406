#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cecp/ordinal.hpp"
#include "cecp/quantifiers.hpp"
#include "cecp/time_series.hpp"

namespace cecp {

/// Sliding window of `size` samples advanced by `step` samples.
struct WindowParams {
  std::size_t size = 360;
  std::size_t step = 60;

  void validate(const OrdinalConfig& config) const;
};

/// floor((series_len - size) / step) + 1; trailing samples that do not fill
/// a whole window are dropped.
std::size_t window_count(std::size_t series_len, const WindowParams& params);

struct RollingResult {
  std::string asset;
  std::vector<std::size_t> window_starts;
  /// Timestamp of each window's last observation, when the series has them.
  std::vector<std::optional<std::int64_t>> end_timestamps;
  std::vector<CecpPoint> points;
};

/// Window k covers samples [k * step, k * step + size) and is quantified on
/// its own; no embedding vector crosses a window boundary.
RollingResult rolling_quantifiers(const TimeSeries& series, const WindowParams& params,
                                  const OrdinalConfig& config, std::string asset = {},
                                  unsigned threads = 0);

}  // namespace cecp
