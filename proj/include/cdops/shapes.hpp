#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cdops/minkowski.hpp"

// Euclidean balls and causal diamonds, and the closed-form separation
// predicates on them.  Every predicate returns a ternary verdict with the
// signed margin that decided it; values inside the tolerance band are
// reported Marginal rather than being rounded to a side.
//
// Margin formulas (derived by minimizing over the Minkowski sum of the two
// shapes; re-validated against the brute-force oracle in the test suite):
//   balls,    causal:  a - b - sqrt(2)*(r1+r2)
//   diamonds, causal:  a - b - (r1+r2)
//   interiors, balls:    |c1-c2|_euclid - (r1+r2)
//   interiors, diamonds: (|dt|+|dx|)    - (r1+r2)
// where a = |c1.x - c2.x| (spatial) and b = |c1.t - c2.t|.

namespace cdops {

enum class ShapeKind { Ball, Diamond };
enum class Boundary { Open, Closed };

inline const char* to_string(ShapeKind k) {
  return k == ShapeKind::Ball ? "ball" : "diamond";
}

/// A Euclidean ball or a causal diamond, as (kind, center, radius).
/// Default boundary conventions: balls are closed (images of the closed
/// unit disc), diamonds are open (the standard diamond is open).
/// radius 0 is allowed as a degenerate singleton, used by the oracle.
struct Shape {
  ShapeKind kind;
  Point center;
  double radius;
  Boundary boundary;

  static Shape ball(Point c, double r, Boundary b = Boundary::Closed) {
    return make(ShapeKind::Ball, std::move(c), r, b);
  }
  static Shape diamond(Point c, double r, Boundary b = Boundary::Open) {
    return make(ShapeKind::Diamond, std::move(c), r, b);
  }
  static Shape make(ShapeKind k, Point c, double r, Boundary b) {
    require_finite(c, "Shape");
    if (!(r >= 0) || !std::isfinite(r))
      throw std::invalid_argument("Shape: radius must be finite and >= 0");
    return Shape{k, std::move(c), r, b};
  }

  std::size_t dim() const { return center.dim(); }

  bool operator==(const Shape&) const = default;

  /// Distance of p from the center in the shape's own norm.
  double gauge(const Point& p) const {
    const Point d = p - center;
    return kind == ShapeKind::Ball ? euclid_norm(d) : diamond_norm(d);
  }

  bool contains(const Point& p) const {
    const double g = gauge(p);
    return boundary == Boundary::Closed ? g <= radius : g < radius;
  }
};

inline void check_shape_pair(const Shape& s1, const Shape& s2, ShapeKind expect,
                             const char* where) {
  if (s1.kind != expect || s2.kind != expect)
    throw std::invalid_argument(std::string(where) + ": shape kind mismatch");
  if (s1.dim() != s2.dim())
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}

// -- ternary verdicts ----------------------------------------------------------

enum class Disjointness { Disjoint, NotDisjoint, Marginal };

/// Verdict plus the signed closed-form margin behind it.
/// Disjoint <=> margin > tol, NotDisjoint <=> margin < -tol, else Marginal.
struct Ternary {
  Disjointness state;
  double margin;
};

inline Ternary classify_margin(double margin, double tol = kDefaultTolerance) {
  if (tol < 0) throw std::invalid_argument("classify_margin: tolerance must be >= 0");
  if (margin > tol) return {Disjointness::Disjoint, margin};
  if (margin < -tol) return {Disjointness::NotDisjoint, margin};
  return {Disjointness::Marginal, margin};
}

inline const char* to_string(Disjointness d) {
  switch (d) {
    case Disjointness::Disjoint: return "disjoint";
    case Disjointness::NotDisjoint: return "not-disjoint";
    case Disjointness::Marginal: return "marginal";
  }
  return "?";
}

// -- causal disjointness -------------------------------------------------------

/// Causal disjointness of two Euclidean balls.  Margin a - b - sqrt(2)(r1+r2);
/// for closed balls disjoint <=> margin > 0.  For open balls margin = 0 still
/// means disjoint (the null contact is never attained); such cases land in the
/// Marginal band either way, so the verdict does not depend on the convention.
inline Ternary balls_causally_disjoint(const Shape& b1, const Shape& b2,
                                       double tol = kDefaultTolerance) {
  check_shape_pair(b1, b2, ShapeKind::Ball, "balls_causally_disjoint");
  const Point d = b1.center - b2.center;
  const double a = spatial_norm(d);
  const double b = std::abs(d.t);
  const double m = a - b - std::numbers::sqrt2 * (b1.radius + b2.radius);
  return classify_margin(m, tol);
}

/// Causal disjointness of two diamonds.  Margin a - b - (r1+r2); for the open
/// diamonds used here margin >= 0 means disjoint, with |margin| <= tol
/// reported Marginal.
inline Ternary diamonds_causally_disjoint(const Shape& d1, const Shape& d2,
                                          double tol = kDefaultTolerance) {
  check_shape_pair(d1, d2, ShapeKind::Diamond, "diamonds_causally_disjoint");
  const Point d = d1.center - d2.center;
  const double a = spatial_norm(d);
  const double b = std::abs(d.t);
  const double m = a - b - (d1.radius + d2.radius);
  return classify_margin(m, tol);
}

/// Causal disjointness dispatched on the (common) kind.
inline Ternary shapes_causally_disjoint(const Shape& s1, const Shape& s2,
                                        double tol = kDefaultTolerance) {
  return s1.kind == ShapeKind::Ball ? balls_causally_disjoint(s1, s2, tol)
                                    : diamonds_causally_disjoint(s1, s2, tol);
}

// -- set-theoretic disjointness --------------------------------------------------

/// Interior disjointness of two shapes of the same kind: distance of centers
/// in the kind's own norm minus the radius sum.  Margin >= 0 (tangency
/// included) means the interiors are disjoint.
inline Ternary set_interiors_disjoint(const Shape& s1, const Shape& s2,
                                      double tol = kDefaultTolerance) {
  if (s1.kind != s2.kind)
    throw std::invalid_argument("set_interiors_disjoint: shape kind mismatch");
  if (s1.dim() != s2.dim())
    throw std::invalid_argument("set_interiors_disjoint: dimension mismatch");
  const Point d = s1.center - s2.center;
  const double dist = s1.kind == ShapeKind::Ball ? euclid_norm(d) : diamond_norm(d);
  return classify_margin(dist - (s1.radius + s2.radius), tol);
}

/// Margin of containment in the unit shape of the same kind, centered at the
/// origin: positive means the shape sits strictly inside; 0 means it touches
/// the boundary (the identity embedding has margin exactly 0).
inline Ternary contained_in_unit(const Shape& s, double tol = kDefaultTolerance) {
  const double reach = s.kind == ShapeKind::Ball
                           ? euclid_norm(s.center) + s.radius
                           : diamond_norm(s.center) + s.radius;
  return classify_margin(1.0 - reach, tol);
}

// -- diamonds of point pairs ------------------------------------------------------

class EmptyDiamondError : public std::runtime_error {
 public:
  explicit EmptyDiamondError(const std::string& msg) : std::runtime_error(msg) {}
};

class NotAxisAlignedError : public std::runtime_error {
 public:
  explicit NotAxisAlignedError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The open causal diamond chronologically between two points.  Only the
/// axis-aligned case (equal spatial parts) is a rectilinear image of the
/// standard diamond, so anything else is rejected rather than approximated.
inline Shape diamond_between(const Point& past, const Point& future,
                             double tol = kDefaultTolerance) {
  check_same_dim(past, future, "diamond_between");
  const Point d = future - past;
  const CausalClass cc = causal_class(d, tol);
  if (cc.kind != CausalKind::Timelike || d.t <= 0)
    throw EmptyDiamondError("diamond_between: endpoints are not chronologically ordered");
  if (spatial_norm(d) > tol)
    throw NotAxisAlignedError(
        "diamond_between: endpoints differ spatially; the region is not a "
        "rectilinear image of the standard diamond");
  Point mid = past;
  mid.t = past.t + d.t / 2.0;
  return Shape::diamond(std::move(mid), d.t / 2.0, Boundary::Open);
}

// -- the shift toward the {t=0} plane ----------------------------------------------

enum class ShiftDirection { TowardZero, Up, Down };

/// Moves a shape's center by delta in the t-direction, radius unchanged.
/// Default direction is toward the {t=0} plane without overshooting; the
/// explicit directions allow arbitrary shifts.
inline Shape delta_shift(const Shape& s, double delta,
                         ShiftDirection dir = ShiftDirection::TowardZero) {
  if (!(delta >= 0) || !std::isfinite(delta))
    throw std::invalid_argument("delta_shift: delta must be finite and >= 0");
  Shape out = s;
  switch (dir) {
    case ShiftDirection::TowardZero: {
      const double mag = std::abs(s.center.t);
      if (delta > mag)
        throw std::invalid_argument("delta_shift: delta overshoots the {t=0} plane");
      out.center.t = s.center.t >= 0 ? s.center.t - delta : s.center.t + delta;
      break;
    }
    case ShiftDirection::Up:
      out.center.t = s.center.t + delta;
      break;
    case ShiftDirection::Down:
      out.center.t = s.center.t - delta;
      break;
  }
  return out;
}

}  // namespace cdops
