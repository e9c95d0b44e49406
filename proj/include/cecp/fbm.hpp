#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "cecp/ordinal.hpp"
#include "cecp/quantifiers.hpp"
#include "cecp/time_series.hpp"

namespace cecp {

struct FbmSpec {
  double hurst = 0.5;
  std::size_t length = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// How fractional Gaussian noise is synthesized. `automatic` uses circulant
/// embedding and falls back to sequential conditional sampling (Hosking's
/// method) when the embedding has a significantly negative eigenvalue.
enum class FgnMethod { automatic, circulant, conditional };

/// gamma(k) = (|k+1|^2H - 2|k|^2H + |k-1|^2H) / 2, unit-variance fGn.
double fgn_autocovariance(double hurst, std::size_t lag);

/// Reusable exact fGn sampler for one (Hurst exponent, length) pair. The
/// embedding spectrum is computed once; sample() is thread-safe.
class FgnGenerator {
 public:
  FgnGenerator(double hurst, std::size_t length, FgnMethod method = FgnMethod::automatic);
  ~FgnGenerator();
  FgnGenerator(FgnGenerator&&) noexcept;
  FgnGenerator& operator=(FgnGenerator&&) noexcept;

  /// Independent draw for stream `stream` of `seed`; equal arguments give
  /// identical output.
  [[nodiscard]] std::vector<double> sample(std::uint64_t seed, std::uint64_t stream = 0) const;

  [[nodiscard]] double hurst() const noexcept;
  [[nodiscard]] std::size_t length() const noexcept;
  /// Method actually in use (never `automatic`).
  [[nodiscard]] FgnMethod method() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

TimeSeries generate_fgn(const FbmSpec& spec, FgnMethod method = FgnMethod::automatic);

/// Running sum of generate_fgn: element i is the sum of increments 0..i, so
/// the path starts from an implicit origin at 0.
TimeSeries generate_fbm(const FbmSpec& spec, FgnMethod method = FgnMethod::automatic);

struct BaselineCloud {
  double hurst = 0.0;
  CecpPoint mean_point;
  double std_entropy = 0.0;
  double std_complexity = 0.0;
  std::size_t sims = 0;
};

/// Mean and sample standard deviation of the CECP position of `sims` fBm
/// paths. Path i uses stream i of `seed`, so clouds for different Hurst
/// exponents share their underlying Gaussian draws, and the result does not
/// depend on `threads` (0 = all cores).
BaselineCloud baseline_cloud(double hurst, std::size_t sims, std::size_t length,
                             const OrdinalConfig& config, std::uint64_t seed,
                             unsigned threads = 0);

}  // namespace cecp
