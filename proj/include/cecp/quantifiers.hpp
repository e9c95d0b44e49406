#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cecp/ordinal.hpp"
#include "cecp/time_series.hpp"

namespace cecp {

/// Discrete distribution over M >= 2 states.
class ProbabilityVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit ProbabilityVector(std::vector<double> probs);

  static ProbabilityVector uniform(std::size_t states);
  static ProbabilityVector delta(std::size_t states, std::size_t hot = 0);

  [[nodiscard]] std::size_t states() const noexcept { return probs_.size(); }
  [[nodiscard]] std::span<const double> probs() const noexcept { return probs_; }
  [[nodiscard]] double operator[](std::size_t i) const { return probs_[i]; }

 private:
  std::vector<double> probs_;
};

/// Position in the complexity-entropy causality plane.
struct CecpPoint {
  double entropy = 0.0;
  double complexity = 0.0;

  friend bool operator==(const CecpPoint&, const CecpPoint&) = default;
};

/// -sum p ln p in nats, with 0 ln 0 = 0.
double shannon_entropy(const ProbabilityVector& p);

/// S[P] / ln M, in [0, 1].
double normalized_entropy(const ProbabilityVector& p);

/// Unnormalized Jensen-Shannon divergence S[(P+Q)/2] - S[P]/2 - S[Q]/2.
double jensen_shannon_divergence(const ProbabilityVector& p, const ProbabilityVector& q);

/// Normalization making the divergence between a delta and the uniform
/// distribution over M states equal to one.
double q0_constant(std::size_t states);

/// Q0-scaled Jensen-Shannon divergence, in [0, 1].
double jensen_shannon_disequilibrium(const ProbabilityVector& p,
                                     const ProbabilityVector& reference);

/// H_S[P] * Q_J[P, uniform].
double statistical_complexity(const ProbabilityVector& p);

CecpPoint cecp_point(const ProbabilityVector& p);

/// Same quantities evaluated from exact pattern counts over M = D! states.
/// Zero-count patterns are accounted for in closed form, so the dense
/// probability vector is never materialized.
CecpPoint cecp_point(const PatternDistribution& distribution);

CecpPoint cecp_point(const TimeSeries& series, const OrdinalConfig& config);
CecpPoint cecp_point(std::span<const double> values, const OrdinalConfig& config);

}  // namespace cecp
