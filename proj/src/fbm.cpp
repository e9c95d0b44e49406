#include "cecp/fbm.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <string>

#include "cecp/detail/parallel.hpp"
#include "cecp/detail/summation.hpp"
#include "cecp/error.hpp"

namespace cecp {

namespace {

// Eigenvalues above -kNegativeTolerance * max(lambda) are rounding noise
// and clamped to zero.
constexpr double kNegativeTolerance = 1e-10;

// FFTW's planner is not thread-safe; execution with fresh buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

ComplexBuffer make_buffer(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (p == nullptr) throw std::bad_alloc();
  return ComplexBuffer(p);
}

struct PlanDeleter {
  void operator()(fftw_plan p) const noexcept {
    const std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};
using Plan = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDeleter>;

std::size_t next_power_of_two(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1U;
  return m;
}

void check_hurst(double hurst) {
  if (!(hurst > 0.0 && hurst < 1.0)) {
    throw Error(Errc::invalid_argument, "Hurst exponent must lie in (0, 1), got " + std::to_string(hurst));
  }
}

std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32U)};
  return std::mt19937_64(seq);
}

}  // namespace

void FbmSpec::validate() const {
  check_hurst(hurst);
  if (length < 2) {
    throw Error(Errc::invalid_argument, "fBm length must be >= 2, got " + std::to_string(length));
  }
}

double fgn_autocovariance(double hurst, std::size_t lag) {
  check_hurst(hurst);
  const double k = static_cast<double>(lag);
  const double two_h = 2.0 * hurst;
  return 0.5 * (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) + std::pow(std::fabs(k - 1.0), two_h));
}

struct FgnGenerator::Impl {
  double hurst = 0.0;
  std::size_t length = 0;
  FgnMethod method = FgnMethod::circulant;

  // Circulant embedding: sqrt(lambda_k / m) and a reusable plan of size m.
  std::size_t embedding = 0;
  std::vector<double> scale;
  Plan plan;

  // Conditional sampling: autocovariance up to length - 1.
  std::vector<double> gamma;

  bool build_circulant() {
    embedding = next_power_of_two(2 * (length - 1));
    const std::size_t m = embedding;
    auto row = make_buffer(m);
    auto spectrum = make_buffer(m);
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t lag = j <= m / 2 ? j : m - j;
      row[j][0] = fgn_autocovariance(hurst, lag);
      row[j][1] = 0.0;
    }
    {
      const std::lock_guard lock(planner_mutex());
      fftw_plan p = fftw_plan_dft_1d(static_cast<int>(m), row.get(), spectrum.get(), FFTW_FORWARD,
                                     FFTW_ESTIMATE);
      fftw_execute(p);
      fftw_destroy_plan(p);
    }
    double largest = 0.0;
    for (std::size_t k = 0; k < m; ++k) largest = std::max(largest, spectrum[k][0]);
    scale.assign(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      const double lambda = spectrum[k][0];
      if (lambda < -kNegativeTolerance * largest) return false;
      scale[k] = std::sqrt(std::max(lambda, 0.0) / static_cast<double>(m));
    }
    auto in = make_buffer(m);
    auto out = make_buffer(m);
    const std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_1d(static_cast<int>(m), in.get(), out.get(), FFTW_FORWARD, FFTW_ESTIMATE));
    return plan != nullptr;
  }

  void build_conditional() {
    gamma.resize(length);
    for (std::size_t k = 0; k < length; ++k) gamma[k] = fgn_autocovariance(hurst, k);
  }

  std::vector<double> sample_circulant(std::mt19937_64& rng) const {
    const std::size_t m = embedding;
    auto in = make_buffer(m);
    auto out = make_buffer(m);
    std::normal_distribution<double> normal;
    for (std::size_t k = 0; k < m; ++k) {
      const double re = normal(rng);
      const double im = normal(rng);
      in[k][0] = scale[k] * re;
      in[k][1] = scale[k] * im;
    }
    fftw_execute_dft(plan.get(), in.get(), out.get());
    std::vector<double> x(length);
    for (std::size_t i = 0; i < length; ++i) x[i] = out[i][0];
    return x;
  }

  // Durbin-Levinson recursion: each sample is Gaussian given the past with
  // the exact conditional mean and variance.
  std::vector<double> sample_conditional(std::mt19937_64& rng) const {
    std::normal_distribution<double> normal;
    std::vector<double> x(length);
    std::vector<double> phi;
    std::vector<double> next;
    double variance = gamma[0];
    x[0] = std::sqrt(variance) * normal(rng);
    for (std::size_t t = 1; t < length; ++t) {
      double num = gamma[t];
      for (std::size_t j = 1; j < t; ++j) num -= phi[j - 1] * gamma[t - j];
      const double reflection = num / variance;
      next.assign(t, 0.0);
      for (std::size_t j = 1; j < t; ++j) next[j - 1] = phi[j - 1] - reflection * phi[t - j - 1];
      next[t - 1] = reflection;
      phi.swap(next);
      variance *= 1.0 - reflection * reflection;
      double mean = 0.0;
      for (std::size_t j = 1; j <= t; ++j) mean += phi[j - 1] * x[t - j];
      x[t] = mean + std::sqrt(std::max(variance, 0.0)) * normal(rng);
    }
    return x;
  }
};

FgnGenerator::FgnGenerator(double hurst, std::size_t length, FgnMethod method)
    : impl_(std::make_unique<Impl>()) {
  FbmSpec{hurst, length, 0}.validate();
  impl_->hurst = hurst;
  impl_->length = length;
  switch (method) {
    case FgnMethod::conditional:
      impl_->method = FgnMethod::conditional;
      impl_->build_conditional();
      break;
    case FgnMethod::circulant:
      if (!impl_->build_circulant()) {
        throw Error(Errc::embedding_failure, "circulant embedding is not non-negative definite for H = " +
                                                 std::to_string(hurst));
      }
      impl_->method = FgnMethod::circulant;
      break;
    case FgnMethod::automatic:
      if (impl_->build_circulant()) {
        impl_->method = FgnMethod::circulant;
      } else {
        impl_->method = FgnMethod::conditional;
        impl_->build_conditional();
      }
      break;
  }
}

FgnGenerator::~FgnGenerator() = default;
FgnGenerator::FgnGenerator(FgnGenerator&&) noexcept = default;
FgnGenerator& FgnGenerator::operator=(FgnGenerator&&) noexcept = default;

std::vector<double> FgnGenerator::sample(std::uint64_t seed, std::uint64_t stream) const {
  auto rng = stream_engine(seed, stream);
  return impl_->method == FgnMethod::circulant ? impl_->sample_circulant(rng)
                                               : impl_->sample_conditional(rng);
}

double FgnGenerator::hurst() const noexcept { return impl_->hurst; }
std::size_t FgnGenerator::length() const noexcept { return impl_->length; }
FgnMethod FgnGenerator::method() const noexcept { return impl_->method; }

TimeSeries generate_fgn(const FbmSpec& spec, FgnMethod method) {
  spec.validate();
  return TimeSeries(FgnGenerator(spec.hurst, spec.length, method).sample(spec.seed));
}

TimeSeries generate_fbm(const FbmSpec& spec, FgnMethod method) {
  spec.validate();
  auto path = FgnGenerator(spec.hurst, spec.length, method).sample(spec.seed);
  for (std::size_t i = 1; i < path.size(); ++i) path[i] += path[i - 1];
  return TimeSeries(std::move(path));
}

BaselineCloud baseline_cloud(double hurst, std::size_t sims, std::size_t length,
                             const OrdinalConfig& config, std::uint64_t seed, unsigned threads) {
  if (sims < 1) throw Error(Errc::invalid_argument, "baseline cloud needs at least one simulation");
  if (config.sample_count(length) == 0) {
    throw Error(Errc::series_too_short, "fBm length " + std::to_string(length) +
                                            " is too short for the ordinal configuration");
  }
  const FgnGenerator generator(hurst, length);
  std::vector<CecpPoint> points(sims);
  detail::parallel_for(sims, threads, [&](std::size_t i) {
    auto path = generator.sample(seed, i);
    for (std::size_t j = 1; j < path.size(); ++j) path[j] += path[j - 1];
    points[i] = cecp_point(std::span<const double>(path), config);
  });

  detail::CompensatedSum sum_h;
  detail::CompensatedSum sum_c;
  for (const auto& p : points) {
    sum_h.add(p.entropy);
    sum_c.add(p.complexity);
  }
  const auto n = static_cast<double>(sims);
  const CecpPoint mean{sum_h.value() / n, sum_c.value() / n};
  double std_h = 0.0;
  double std_c = 0.0;
  if (sims > 1) {
    detail::CompensatedSum ss_h;
    detail::CompensatedSum ss_c;
    for (const auto& p : points) {
      ss_h.add((p.entropy - mean.entropy) * (p.entropy - mean.entropy));
      ss_c.add((p.complexity - mean.complexity) * (p.complexity - mean.complexity));
    }
    std_h = std::sqrt(ss_h.value() / (n - 1.0));
    std_c = std::sqrt(ss_c.value() / (n - 1.0));
  }
  return {hurst, mean, std_h, std_c, sims};
}

}  // namespace cecp
