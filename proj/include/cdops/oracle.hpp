#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>

#include "cdops/minkowski.hpp"
#include "cdops/sampling.hpp"
#include "cdops/shapes.hpp"

// Brute-force minimizers used to cross-check the closed-form margins.  The
// search is seeded multistart plus projected pattern descent; the reported
// minimum is an upper bound on the true infimum (the objectives here are
// continuous on compact sets, so the bound is tight up to search error).
// Runs are deterministic: same shapes, budget and seed give the same report.

namespace cdops {

struct SeparationReport {
  double min_value = std::numeric_limits<double>::infinity();
  Point witness_a;
  Point witness_b;
  long evaluations = 0;
};

namespace detail {

inline double& coord(Point& p, std::size_t i) { return i == 0 ? p.t : p.x[i - 1]; }

/// Radial pull-back into the closed shape, in the shape's own norm.
inline void project_into(Point& p, const Shape& s) {
  const double g = s.gauge(p);
  if (g <= s.radius) return;
  if (s.radius == 0 || g == 0) {
    p = s.center;
    return;
  }
  p = s.center + (s.radius / g) * (p - s.center);
}

template <class F>
SeparationReport pair_pattern_search(const Shape& a, const Shape& b, F objective,
                                     long budget, std::uint64_t seed) {
  Rng rng(seed);
  SeparationReport best;
  auto eval = [&](const Point& p, const Point& q) {
    ++best.evaluations;
    const double v = objective(p, q);
    if (v < best.min_value) {
      best.min_value = v;
      best.witness_a = p;
      best.witness_b = q;
    }
    return v;
  };

  if (a.radius == 0 && b.radius == 0) {
    eval(a.center, b.center);
    return best;
  }

  const std::size_t n = a.dim();
  const double step0 = std::max({a.radius, b.radius, 1e-6});
  // Structured starts before the random ones: centers, then the two
  // time-opposed pushes.  Axis descent from the centers can commit to the
  // wrong side of the light cone; starting with the time gap already opened
  // in either direction covers both basins.  Each descent gets a slice of
  // the budget so a single slow start cannot starve the rest.
  const long per_start = std::max<long>(600, budget / 8);
  long starts = 0;
  while (best.evaluations < budget) {
    Point p = a.center;
    Point q = b.center;
    if (starts == 1 || starts == 2) {
      const double dir = (starts == 1 ? 1.0 : -1.0) *
                         (b.center.t >= a.center.t ? 1.0 : -1.0);
      p.t -= dir * a.radius;
      q.t += dir * b.radius;
    } else if (starts >= 3) {
      p = sample_point_in_shape(rng, a);
      q = sample_point_in_shape(rng, b);
    }
    ++starts;
    const long cap = std::min(budget, best.evaluations + per_start);
    double cur = eval(p, q);
    double step = step0;
    while (step > 1e-12 && best.evaluations < cap) {
      bool improved = false;
      for (int side = 0; side < 2 && best.evaluations < cap; ++side) {
        Point& pt = side == 0 ? p : q;
        const Shape& sh = side == 0 ? a : b;
        if (sh.radius == 0) continue;
        for (std::size_t i = 0; i < n && best.evaluations < cap; ++i) {
          for (double sign : {1.0, -1.0}) {
            if (best.evaluations >= cap) break;
            Point trial = pt;
            coord(trial, i) += sign * step;
            project_into(trial, sh);
            const double v = side == 0 ? eval(trial, q) : eval(p, trial);
            if (v < cur) {
              pt = trial;
              cur = v;
              improved = true;
            }
          }
        }
      }
      // Two oblique probes per sweep; axis moves alone can stall on the
      // boundary of a ball.
      for (int k = 0; k < 2 && best.evaluations < cap; ++k) {
        Point tp = p;
        Point tq = q;
        for (std::size_t i = 0; i < n; ++i) {
          coord(tp, i) += step * rng.range(-1.0, 1.0);
          coord(tq, i) += step * rng.range(-1.0, 1.0);
        }
        project_into(tp, a);
        project_into(tq, b);
        const double v = eval(tp, tq);
        if (v < cur) {
          p = tp;
          q = tq;
          cur = v;
          improved = true;
        }
      }
      if (!improved) step *= 0.5;
    }
  }
  return best;
}

}  // namespace detail

/// min over p in a, q in b of |spatial(p - q)| - |time(p - q)|.  Negative or
/// zero iff some pair of points is causally related, so the sign decides
/// causal disjointness of the two closed shapes.
inline SeparationReport oracle_min_separation(const Shape& a, const Shape& b,
                                              long budget, std::uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("oracle_min_separation: budget must be >= 1");
  check_same_dim(a.center, b.center, "oracle_min_separation");
  return detail::pair_pattern_search(
      a, b, [](const Point& p, const Point& q) { return separation_value(p, q); },
      budget, seed);
}

/// min over p in a of (gauge_b(p) - r_b): signed distance from the boundary
/// of b in b's own norm.  Same sign as the interior-disjointness margin, and
/// equal to it whenever neither center lies inside the other shape.
inline SeparationReport oracle_min_signed_distance(const Shape& a, const Shape& b,
                                                   long budget, std::uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("oracle_min_signed_distance: budget must be >= 1");
  if (a.kind != b.kind)
    throw std::invalid_argument("oracle_min_signed_distance: shape kind mismatch");
  check_same_dim(a.center, b.center, "oracle_min_signed_distance");
  auto report = detail::pair_pattern_search(
      a, Shape::make(b.kind, b.center, 0.0, Boundary::Closed),
      [&b](const Point& p, const Point&) { return b.gauge(p) - b.radius; }, budget, seed);
  // Witness on b's side: boundary point along the ray toward the minimizer.
  const double g = b.gauge(report.witness_a);
  report.witness_b = g == 0 || b.radius == 0
                         ? b.center
                         : b.center + (b.radius / g) * (report.witness_a - b.center);
  return report;
}

}  // namespace cdops
