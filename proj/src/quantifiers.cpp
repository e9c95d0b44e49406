#include "cecp/quantifiers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cecp/detail/summation.hpp"
#include "cecp/error.hpp"

namespace cecp {

namespace {

double plogp(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

void require_same_states(const ProbabilityVector& p, const ProbabilityVector& q) {
  if (p.states() != q.states()) {
    throw Error(Errc::dimension_mismatch, "distributions have " + std::to_string(p.states()) +
                                              " and " + std::to_string(q.states()) + " states");
  }
}

}  // namespace

ProbabilityVector::ProbabilityVector(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.size() < 2) {
    throw Error(Errc::invalid_argument, "a probability vector needs at least two states");
  }
  detail::CompensatedSum total;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double p = probs_[i];
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw Error(Errc::not_normalized,
                  "probability at index " + std::to_string(i) + " outside [0, 1]");
    }
    total.add(p);
  }
  if (std::fabs(total.value() - 1.0) > kSumTolerance) {
    throw Error(Errc::not_normalized, "probabilities sum to " + std::to_string(total.value()));
  }
}

ProbabilityVector ProbabilityVector::uniform(std::size_t states) {
  if (states < 2) throw Error(Errc::invalid_argument, "uniform distribution needs M >= 2");
  return ProbabilityVector(std::vector<double>(states, 1.0 / static_cast<double>(states)));
}

ProbabilityVector ProbabilityVector::delta(std::size_t states, std::size_t hot) {
  if (states < 2 || hot >= states) throw Error(Errc::invalid_argument, "invalid delta distribution");
  std::vector<double> p(states, 0.0);
  p[hot] = 1.0;
  return ProbabilityVector(std::move(p));
}

double shannon_entropy(const ProbabilityVector& p) {
  detail::CompensatedSum sum;
  for (const double pi : p.probs()) sum.add(-plogp(pi));
  return std::clamp(sum.value(), 0.0, std::log(static_cast<double>(p.states())));
}

double normalized_entropy(const ProbabilityVector& p) {
  return clamp_unit(shannon_entropy(p) / std::log(static_cast<double>(p.states())));
}

double jensen_shannon_divergence(const ProbabilityVector& p, const ProbabilityVector& q) {
  require_same_states(p, q);
  detail::CompensatedSum mixed;
  detail::CompensatedSum sp;
  detail::CompensatedSum sq;
  for (std::size_t i = 0; i < p.states(); ++i) {
    mixed.add(-plogp(0.5 * (p[i] + q[i])));
    sp.add(-plogp(p[i]));
    sq.add(-plogp(q[i]));
  }
  return std::max(0.0, mixed.value() - 0.5 * sp.value() - 0.5 * sq.value());
}

double q0_constant(std::size_t states) {
  if (states < 2) throw Error(Errc::invalid_argument, "Q0 needs M >= 2");
  const auto m = static_cast<double>(states);
  // Divergence between a delta and the uniform distribution, in closed form.
  const double divergence =
      std::log(2.0 * m) - (m + 1.0) / (2.0 * m) * std::log(m + 1.0) - 0.5 * std::log(m);
  return 1.0 / divergence;
}

double jensen_shannon_disequilibrium(const ProbabilityVector& p,
                                     const ProbabilityVector& reference) {
  require_same_states(p, reference);
  return clamp_unit(q0_constant(p.states()) * jensen_shannon_divergence(p, reference));
}

double statistical_complexity(const ProbabilityVector& p) {
  return cecp_point(p).complexity;
}

CecpPoint cecp_point(const ProbabilityVector& p) {
  const double h = normalized_entropy(p);
  const double q = jensen_shannon_disequilibrium(p, ProbabilityVector::uniform(p.states()));
  return {h, h * q};
}

CecpPoint cecp_point(const PatternDistribution& distribution) {
  const auto m = static_cast<double>(distribution.pattern_count());
  const auto n = static_cast<double>(distribution.sample_count());
  const double log_m = std::log(m);
  const double uniform = 1.0 / m;

  detail::CompensatedSum s_p;
  detail::CompensatedSum s_mixed;
  for (const auto& c : distribution.nonzero()) {
    const double p = static_cast<double>(c.count) / n;
    s_p.add(-plogp(p));
    s_mixed.add(-plogp(0.5 * (p + uniform)));
  }
  const auto empty = static_cast<double>(distribution.pattern_count() - distribution.nonzero().size());
  s_mixed.add(-empty * plogp(0.5 * uniform));

  const double entropy = std::clamp(s_p.value(), 0.0, log_m);
  const double divergence = std::max(0.0, s_mixed.value() - 0.5 * entropy - 0.5 * log_m);
  const double h = clamp_unit(entropy / log_m);
  const double q = clamp_unit(q0_constant(distribution.pattern_count()) * divergence);
  return {h, h * q};
}

CecpPoint cecp_point(const TimeSeries& series, const OrdinalConfig& config) {
  return cecp_point(extract_pattern_distribution(series, config));
}

CecpPoint cecp_point(std::span<const double> values, const OrdinalConfig& config) {
  return cecp_point(extract_pattern_distribution(values, config));
}

}  // namespace cecp
