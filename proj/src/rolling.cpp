#include "cecp/rolling.hpp"

#include <string>

#include "cecp/detail/parallel.hpp"
#include "cecp/error.hpp"

namespace cecp {

void WindowParams::validate(const OrdinalConfig& config) const {
  if (size < 2) throw Error(Errc::invalid_config, "window size must be >= 2");
  if (step < 1) throw Error(Errc::invalid_config, "window step must be >= 1");
  if (config.sample_count(size) == 0) {
    throw Error(Errc::invalid_config, "window size " + std::to_string(size) +
                                          " leaves no embedding vectors for D = " +
                                          std::to_string(config.dim()) +
                                          ", tau = " + std::to_string(config.delay()));
  }
}

std::size_t window_count(std::size_t series_len, const WindowParams& params) {
  if (params.size < 1 || params.step < 1) {
    throw Error(Errc::invalid_config, "window size and step must be positive");
  }
  if (series_len < params.size) {
    throw Error(Errc::series_too_short, "series of length " + std::to_string(series_len) +
                                            " is shorter than one window of " +
                                            std::to_string(params.size));
  }
  return (series_len - params.size) / params.step + 1;
}

RollingResult rolling_quantifiers(const TimeSeries& series, const WindowParams& params,
                                  const OrdinalConfig& config, std::string asset,
                                  unsigned threads) {
  params.validate(config);
  const std::size_t windows = window_count(series.size(), params);
  RollingResult result;
  result.asset = std::move(asset);
  result.window_starts.resize(windows);
  result.end_timestamps.resize(windows);
  result.points.resize(windows);
  const auto values = series.values();
  detail::parallel_for(windows, threads, [&](std::size_t k) {
    const std::size_t start = k * params.step;
    result.window_starts[k] = start;
    result.end_timestamps[k] = series.timestamp_at(start + params.size - 1);
    result.points[k] = cecp_point(values.subspan(start, params.size), config);
  });
  return result;
}

}  // namespace cecp
