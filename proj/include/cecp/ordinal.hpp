#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cecp/time_series.hpp"

namespace cecp {

/// Embedding dimension D (pattern length) and embedding delay tau.
class OrdinalConfig {
 public:
  static constexpr int kMaxDim = 12;

  OrdinalConfig(int dim, int delay);

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] int delay() const noexcept { return delay_; }
  /// D!, the number of distinct ordinal patterns.
  [[nodiscard]] std::uint64_t pattern_count() const noexcept;
  /// (D - 1) * tau, the number of samples spanned beyond the first.
  [[nodiscard]] std::size_t span() const noexcept;
  /// N - (D - 1) * tau, or 0 when the series is too short.
  [[nodiscard]] std::size_t sample_count(std::size_t series_length) const noexcept;

  friend bool operator==(const OrdinalConfig&, const OrdinalConfig&) = default;

 private:
  int dim_;
  int delay_;
};

std::uint64_t factorial(int n);

/// Ordinal pattern pi = (r_0, ..., r_{D-1}) together with its lexicographic
/// rank among the D! permutations of {0, ..., D-1}.
class PatternId {
 public:
  static PatternId from_permutation(std::vector<int> permutation);
  static PatternId from_index(std::uint64_t index, int dim);

  [[nodiscard]] const std::vector<int>& permutation() const noexcept { return permutation_; }
  [[nodiscard]] std::uint64_t index() const noexcept { return index_; }
  [[nodiscard]] int dim() const noexcept { return static_cast<int>(permutation_.size()); }

  friend bool operator==(const PatternId&, const PatternId&) = default;

 private:
  PatternId(std::vector<int> permutation, std::uint64_t index)
      : permutation_(std::move(permutation)), index_(index) {}

  std::vector<int> permutation_;
  std::uint64_t index_;
};

/// Ordinal pattern of one embedding vector.
///
/// `window[k]` holds the observation at lag (D-1-k)*tau, so the window reads
/// oldest to newest. r_0 is the lag offset of the largest value and r_{D-1}
/// that of the smallest. Equal values are ordered so that the smaller offset
/// sorts lower, which makes the result unique.
PatternId encode_window(std::span<const double> window, const OrdinalConfig& config);

struct PatternCount {
  std::uint64_t index;
  std::uint64_t count;

  friend bool operator==(const PatternCount&, const PatternCount&) = default;
};

/// Histogram of ordinal patterns over a series, kept as exact integer counts.
/// Only non-zero patterns are stored; every other pattern has count zero.
class PatternDistribution {
 public:
  /// `counts` must be sorted by index, free of duplicates and zero entries,
  /// and sum to `sample_count`.
  PatternDistribution(OrdinalConfig config, std::vector<PatternCount> counts,
                      std::uint64_t sample_count);

  [[nodiscard]] const OrdinalConfig& config() const noexcept { return config_; }
  [[nodiscard]] std::uint64_t sample_count() const noexcept { return sample_count_; }
  [[nodiscard]] std::uint64_t pattern_count() const noexcept { return config_.pattern_count(); }
  [[nodiscard]] std::span<const PatternCount> nonzero() const noexcept { return counts_; }

  [[nodiscard]] std::uint64_t count(std::uint64_t index) const;
  [[nodiscard]] std::uint64_t count(const PatternId& pattern) const { return count(pattern.index()); }
  [[nodiscard]] double probability(std::uint64_t index) const;
  /// Dense probability vector of length D!.
  [[nodiscard]] std::vector<double> probabilities() const;

  friend bool operator==(const PatternDistribution&, const PatternDistribution&) = default;

 private:
  OrdinalConfig config_;
  std::vector<PatternCount> counts_;
  std::uint64_t sample_count_;
};

/// Counts every embedding vector s = (D-1)tau, ..., N-1 (zero-based) of the series.
PatternDistribution extract_pattern_distribution(const TimeSeries& series,
                                                 const OrdinalConfig& config);
PatternDistribution extract_pattern_distribution(std::span<const double> values,
                                                 const OrdinalConfig& config);

}  // namespace cecp
