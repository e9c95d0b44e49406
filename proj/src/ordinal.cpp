#include "cecp/ordinal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <unordered_map>

#include "cecp/error.hpp"

namespace cecp {

namespace {

// Above this many patterns the histogram is accumulated in a hash map
// instead of a dense array (10! = 3628800 counters is the largest dense one).
constexpr std::uint64_t kDenseLimit = 3628800;

constexpr std::array<std::uint64_t, OrdinalConfig::kMaxDim + 1> kFactorials = [] {
  std::array<std::uint64_t, OrdinalConfig::kMaxDim + 1> f{};
  f[0] = 1;
  for (std::size_t i = 1; i < f.size(); ++i) f[i] = f[i - 1] * i;
  return f;
}();

// Lexicographic rank of the ordinal pattern whose lag-offset values are
// value(0) (newest) ... value(D-1) (oldest).
//
// For offset a, digit(a) counts the offsets b < a that sort below it and
// pos(a) is its position in pi (0 = largest). The rank is the Lehmer code
// sum of digit(a) * (D-1-pos(a))!.
template <typename ValueAt>
std::uint64_t rank_of(int dim, ValueAt value) {
  std::uint64_t rank = 0;
  for (int a = 0; a < dim; ++a) {
    const double xa = value(a);
    int digit = 0;
    int pos = 0;
    for (int b = 0; b < a; ++b) {
      const double xb = value(b);
      digit += xb <= xa;
      pos += xb > xa;
    }
    for (int b = a + 1; b < dim; ++b) pos += value(b) >= xa;
    rank += static_cast<std::uint64_t>(digit) * kFactorials[static_cast<std::size_t>(dim - 1 - pos)];
  }
  return rank;
}

void check_finite(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(Errc::non_finite_value, "value at index " + std::to_string(i) + " is not finite");
    }
  }
}

}  // namespace

OrdinalConfig::OrdinalConfig(int dim, int delay) : dim_(dim), delay_(delay) {
  if (dim < 2 || dim > kMaxDim) {
    throw Error(Errc::invalid_config, "embedding dimension must lie in [2, " +
                                          std::to_string(kMaxDim) + "], got " +
                                          std::to_string(dim));
  }
  if (delay < 1) {
    throw Error(Errc::invalid_config, "embedding delay must be >= 1, got " + std::to_string(delay));
  }
}

std::uint64_t OrdinalConfig::pattern_count() const noexcept {
  return kFactorials[static_cast<std::size_t>(dim_)];
}

std::size_t OrdinalConfig::span() const noexcept {
  return static_cast<std::size_t>(dim_ - 1) * static_cast<std::size_t>(delay_);
}

std::size_t OrdinalConfig::sample_count(std::size_t series_length) const noexcept {
  return series_length > span() ? series_length - span() : 0;
}

std::uint64_t factorial(int n) {
  if (n < 0 || n > OrdinalConfig::kMaxDim) {
    throw Error(Errc::invalid_argument, "factorial argument out of range: " + std::to_string(n));
  }
  return kFactorials[static_cast<std::size_t>(n)];
}

PatternId PatternId::from_permutation(std::vector<int> permutation) {
  const int dim = static_cast<int>(permutation.size());
  if (dim < 1 || dim > OrdinalConfig::kMaxDim) {
    throw Error(Errc::invalid_argument, "permutation length out of range");
  }
  std::vector<bool> seen(permutation.size(), false);
  for (const int r : permutation) {
    if (r < 0 || r >= dim || seen[static_cast<std::size_t>(r)]) {
      throw Error(Errc::invalid_argument, "not a permutation of {0, ..., D-1}");
    }
    seen[static_cast<std::size_t>(r)] = true;
  }
  std::uint64_t index = 0;
  for (int i = 0; i < dim; ++i) {
    int smaller_after = 0;
    for (int j = i + 1; j < dim; ++j) smaller_after += permutation[j] < permutation[i];
    index += static_cast<std::uint64_t>(smaller_after) * kFactorials[static_cast<std::size_t>(dim - 1 - i)];
  }
  return PatternId(std::move(permutation), index);
}

PatternId PatternId::from_index(std::uint64_t index, int dim) {
  if (dim < 1 || dim > OrdinalConfig::kMaxDim || index >= kFactorials[static_cast<std::size_t>(dim)]) {
    throw Error(Errc::invalid_argument, "pattern index " + std::to_string(index) +
                                            " out of range for dimension " + std::to_string(dim));
  }
  std::vector<int> remaining(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) remaining[static_cast<std::size_t>(i)] = i;
  std::vector<int> permutation;
  permutation.reserve(remaining.size());
  std::uint64_t rest = index;
  for (int i = dim - 1; i >= 0; --i) {
    const std::uint64_t f = kFactorials[static_cast<std::size_t>(i)];
    const auto digit = static_cast<std::ptrdiff_t>(rest / f);
    rest %= f;
    permutation.push_back(remaining[static_cast<std::size_t>(digit)]);
    remaining.erase(remaining.begin() + digit);
  }
  return PatternId(std::move(permutation), index);
}

PatternId encode_window(std::span<const double> window, const OrdinalConfig& config) {
  const int dim = config.dim();
  if (window.size() != static_cast<std::size_t>(dim)) {
    throw Error(Errc::dimension_mismatch, "window has " + std::to_string(window.size()) +
                                              " values, expected D = " + std::to_string(dim));
  }
  check_finite(window);
  const auto index = rank_of(dim, [&](int offset) {
    return window[static_cast<std::size_t>(dim - 1 - offset)];
  });
  return PatternId::from_index(index, dim);
}

PatternDistribution::PatternDistribution(OrdinalConfig config, std::vector<PatternCount> counts,
                                         std::uint64_t sample_count)
    : config_(config), counts_(std::move(counts)), sample_count_(sample_count) {
  if (sample_count_ == 0) {
    throw Error(Errc::series_too_short, "pattern distribution needs at least one sample");
  }
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    const auto& c = counts_[i];
    if (c.count == 0 || c.index >= config_.pattern_count() ||
        (i > 0 && counts_[i - 1].index >= c.index)) {
      throw Error(Errc::invalid_argument, "pattern counts must be sorted, unique and non-zero");
    }
    total += c.count;
  }
  if (total != sample_count_) {
    throw Error(Errc::invalid_argument, "pattern counts sum to " + std::to_string(total) +
                                            ", expected " + std::to_string(sample_count_));
  }
}

std::uint64_t PatternDistribution::count(std::uint64_t index) const {
  const auto it = std::lower_bound(counts_.begin(), counts_.end(), index,
                                   [](const PatternCount& c, std::uint64_t i) { return c.index < i; });
  return it != counts_.end() && it->index == index ? it->count : 0;
}

double PatternDistribution::probability(std::uint64_t index) const {
  return static_cast<double>(count(index)) / static_cast<double>(sample_count_);
}

std::vector<double> PatternDistribution::probabilities() const {
  std::vector<double> p(config_.pattern_count(), 0.0);
  for (const auto& c : counts_) {
    p[c.index] = static_cast<double>(c.count) / static_cast<double>(sample_count_);
  }
  return p;
}

PatternDistribution extract_pattern_distribution(const TimeSeries& series,
                                                 const OrdinalConfig& config) {
  return extract_pattern_distribution(series.values(), config);
}

PatternDistribution extract_pattern_distribution(std::span<const double> values,
                                                 const OrdinalConfig& config) {
  const std::size_t samples = config.sample_count(values.size());
  if (samples == 0) {
    throw Error(Errc::series_too_short,
                "series of length " + std::to_string(values.size()) + " is too short for D = " +
                    std::to_string(config.dim()) + ", tau = " + std::to_string(config.delay()));
  }
  check_finite(values);

  const int dim = config.dim();
  const auto delay = static_cast<std::size_t>(config.delay());
  const std::size_t first = config.span();
  const double* x = values.data();

  std::vector<PatternCount> counts;
  if (config.pattern_count() <= kDenseLimit) {
    std::vector<std::uint64_t> dense(config.pattern_count(), 0);
    for (std::size_t s = first; s < values.size(); ++s) {
      const double* newest = x + s;
      ++dense[rank_of(dim, [&](int offset) { return *(newest - static_cast<std::size_t>(offset) * delay); })];
    }
    for (std::size_t i = 0; i < dense.size(); ++i) {
      if (dense[i] != 0) counts.push_back({i, dense[i]});
    }
  } else {
    std::unordered_map<std::uint64_t, std::uint64_t> sparse;
    for (std::size_t s = first; s < values.size(); ++s) {
      const double* newest = x + s;
      ++sparse[rank_of(dim, [&](int offset) { return *(newest - static_cast<std::size_t>(offset) * delay); })];
    }
    counts.reserve(sparse.size());
    for (const auto& [index, count] : sparse) counts.push_back({index, count});
    std::sort(counts.begin(), counts.end(),
              [](const PatternCount& a, const PatternCount& b) { return a.index < b.index; });
  }
  return PatternDistribution(config, std::move(counts), samples);
}

}  // namespace cecp
