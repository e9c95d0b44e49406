#include "cecp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cecp/error.hpp"

namespace cecp {

namespace {

double plogp(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

struct Level {
  double value;
  double multiplicity;
};

// (H, C) of a distribution made of a few repeated levels; entries not
// covered by `levels` are zero.
CecpPoint point_from_levels(std::size_t states, std::initializer_list<Level> levels) {
  const auto m = static_cast<double>(states);
  const double uniform = 1.0 / m;
  double used = 0.0;
  double s_p = 0.0;
  double s_mixed = 0.0;
  for (const auto& level : levels) {
    if (level.multiplicity <= 0.0) continue;
    used += level.multiplicity;
    s_p -= level.multiplicity * plogp(level.value);
    s_mixed -= level.multiplicity * plogp(0.5 * (level.value + uniform));
  }
  s_mixed -= (m - used) * plogp(0.5 * uniform);
  const double log_m = std::log(m);
  const double h = std::clamp(s_p / log_m, 0.0, 1.0);
  const double q =
      std::clamp(q0_constant(states) * (s_mixed - 0.5 * s_p - 0.5 * log_m), 0.0, 1.0);
  return {h, h * q};
}

void validate(std::size_t states, std::size_t resolution) {
  if (states < 2) {
    throw Error(Errc::invalid_argument, "bound curves need M >= 2, got " + std::to_string(states));
  }
  if (resolution < 2) {
    throw Error(Errc::invalid_argument,
                "bound resolution must be >= 2, got " + std::to_string(resolution));
  }
}

// Chord deviation at which a family segment is split further.
constexpr double kChordTolerance = 1e-10;
constexpr int kMaxDepth = 48;

// Piecewise-linear trace of a one-parameter family q -> (H, C) on [q0, q1].
// Segments are bisected until they span at most `max_gap` in entropy and the
// curve midpoint lies within kChordTolerance of the chord.
template <typename Family>
void trace_family(const Family& family, double q0, double q1, double max_gap,
                  std::vector<CecpPoint>& out) {
  struct Node {
    double q;
    CecpPoint p;
  };
  const auto refine = [&](auto&& self, const Node& a, const Node& b, int depth) -> void {
    const double qm = 0.5 * (a.q + b.q);
    const Node m{qm, family(qm)};
    bool split = std::fabs(b.p.entropy - a.p.entropy) > max_gap;
    if (!split && b.p.entropy != a.p.entropy) {
      const double t = (m.p.entropy - a.p.entropy) / (b.p.entropy - a.p.entropy);
      const double chord = a.p.complexity + t * (b.p.complexity - a.p.complexity);
      split = std::fabs(m.p.complexity - chord) > kChordTolerance;
    }
    if (split && depth < kMaxDepth) {
      self(self, a, m, depth + 1);
      self(self, m, b, depth + 1);
    } else {
      out.push_back(b.p);
    }
  };
  const Node first{q0, family(q0)};
  out.push_back(first.p);
  refine(refine, first, Node{q1, family(q1)}, 0);
}

BoundCurve assemble(BoundKind kind, std::size_t states, std::vector<CecpPoint> points) {
  std::stable_sort(points.begin(), points.end(),
                   [](const CecpPoint& a, const CecpPoint& b) { return a.entropy < b.entropy; });
  BoundCurve curve{kind, states, {}};
  for (const auto& p : points) {
    if (!curve.points.empty() && p.entropy <= curve.points.back().entropy) {
      auto& last = curve.points.back();
      if (kind == BoundKind::upper ? p.complexity > last.complexity : p.complexity < last.complexity) {
        last.complexity = p.complexity;
      }
      continue;
    }
    curve.points.push_back(p);
  }
  curve.points.front() = {0.0, 0.0};
  curve.points.back() = {1.0, 0.0};
  return curve;
}

}  // namespace

double BoundCurve::complexity_at(double h) const {
  if (!(h >= 0.0 && h <= 1.0)) {
    throw Error(Errc::invalid_argument, "entropy " + std::to_string(h) + " outside [0, 1]");
  }
  if (points.empty()) throw Error(Errc::invalid_argument, "empty bound curve");
  const auto it = std::upper_bound(points.begin(), points.end(), h,
                                   [](double v, const CecpPoint& p) { return v < p.entropy; });
  if (it == points.begin()) return points.front().complexity;
  if (it == points.end()) return points.back().complexity;
  const auto& right = *it;
  const auto& left = *(it - 1);
  const double t = (h - left.entropy) / (right.entropy - left.entropy);
  return left.complexity + t * (right.complexity - left.complexity);
}

BoundCurve lower_bound_curve(std::size_t states, std::size_t resolution) {
  validate(states, resolution);
  const auto m = static_cast<double>(states);
  std::vector<CecpPoint> points;
  trace_family(
      [&](double q) {
        return point_from_levels(states, {{q, 1.0}, {(1.0 - q) / (m - 1.0), m - 1.0}});
      },
      1.0, 1.0 / m, 1.0 / static_cast<double>(resolution), points);
  return assemble(BoundKind::lower, states, std::move(points));
}

BoundCurve upper_bound_curve(std::size_t states, std::size_t resolution) {
  validate(states, resolution);
  std::vector<CecpPoint> points;
  for (std::size_t zeros = 0; zeros + 2 <= states; ++zeros) {
    // k = M - n entries carry mass: one free entry plus k-1 equal ones. The
    // family runs from uniform over k-1 states (q = 0) to uniform over k.
    const auto k = static_cast<double>(states - zeros);
    trace_family(
        [&](double q) {
          return point_from_levels(states, {{q, 1.0}, {(1.0 - q) / (k - 1.0), k - 1.0}});
        },
        0.0, 1.0 / k, 1.0 / static_cast<double>(resolution), points);
  }
  return assemble(BoundKind::upper, states, std::move(points));
}

bool within_bounds(const CecpPoint& point, const BoundCurve& lower, const BoundCurve& upper,
                   double tol) {
  if (!(point.entropy >= 0.0 && point.entropy <= 1.0)) {
    throw Error(Errc::invalid_argument,
                "entropy " + std::to_string(point.entropy) + " outside [0, 1]");
  }
  if (tol < 0.0) throw Error(Errc::invalid_argument, "tolerance must be non-negative");
  if (lower.states != upper.states || lower.kind != BoundKind::lower ||
      upper.kind != BoundKind::upper) {
    throw Error(Errc::invalid_argument, "mismatched bound curves");
  }
  return lower.complexity_at(point.entropy) - tol <= point.complexity &&
         point.complexity <= upper.complexity_at(point.entropy) + tol;
}

}  // namespace cecp
