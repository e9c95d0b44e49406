#pragma once

#include <cstddef>
#include <vector>

#include "cecp/quantifiers.hpp"

namespace cecp {

enum class BoundKind { lower, upper };

/// Piecewise-linear envelope of the statistical complexity over normalized
/// entropy for distributions over `states` outcomes. Points are sorted by
/// strictly increasing entropy and run from (0, 0) to (1, 0).
struct BoundCurve {
  BoundKind kind = BoundKind::lower;
  std::size_t states = 0;
  std::vector<CecpPoint> points;

  /// Linear interpolation of the complexity at entropy h in [0, 1].
  [[nodiscard]] double complexity_at(double h) const;
};

/// Both curves trace their families adaptively: consecutive nodes are at
/// most 1/resolution apart in entropy and close enough that linear
/// interpolation stays within 1e-10 of the family curve.

/// Minimum-complexity frontier, traced by P(q) = {q, (1-q)/(M-1), ...} for
/// q in [1/M, 1].
BoundCurve lower_bound_curve(std::size_t states, std::size_t resolution);

/// Maximum-complexity frontier, traced by the families with n zero entries,
/// one free entry q in [0, 1/(M-n)] and M-n-1 entries sharing 1-q equally.
BoundCurve upper_bound_curve(std::size_t states, std::size_t resolution);

bool within_bounds(const CecpPoint& point, const BoundCurve& lower, const BoundCurve& upper,
                   double tol);

}  // namespace cecp
