#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

// Core Lorentzian linear algebra on n-dimensional Minkowski space.
//
// Metric convention (fixed once, everything downstream depends on it):
// signature (-,+,...,+), so eta(v,v) = -t^2 + |x|^2 and causal vectors
// (timelike or null) are exactly those with eta(v,v) <= 0.

namespace cdops {

/// Tolerance used by every predicate unless the caller passes its own.
/// Results within the band [-tol, +tol] are reported Marginal / Null
/// instead of being forced to one side.
inline constexpr double kDefaultTolerance = 1e-9;

/// A point (equivalently a vector) of R^{1,n-1}: one time coordinate and
/// n-1 spatial coordinates.  The ambient dimension n = 1 + x.size() is
/// carried by the value; operations reject mixed dimensions.
template <class S>
struct MinkPoint {
  S t{};
  std::vector<S> x;

  MinkPoint() = default;
  MinkPoint(S time, std::vector<S> space) : t(std::move(time)), x(std::move(space)) {}

  std::size_t dim() const { return x.size() + 1; }

  friend bool operator==(const MinkPoint& a, const MinkPoint& b) {
    return a.t == b.t && a.x == b.x;
  }
};

using Point = MinkPoint<double>;

/// Zero point of ambient dimension n.
template <class S = double>
MinkPoint<S> zero_point(std::size_t n) {
  if (n < 1) throw std::invalid_argument("MinkPoint: dimension must be >= 1");
  return MinkPoint<S>(S(0), std::vector<S>(n - 1, S(0)));
}

template <class S>
void check_same_dim(const MinkPoint<S>& u, const MinkPoint<S>& v, const char* where) {
  if (u.dim() != v.dim())
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}

template <class S>
bool all_finite(const MinkPoint<S>& p) {
  if constexpr (std::is_floating_point_v<S>) {
    if (!std::isfinite(p.t)) return false;
    for (S c : p.x)
      if (!std::isfinite(c)) return false;
  }
  return true;
}

template <class S>
void require_finite(const MinkPoint<S>& p, const char* where) {
  if (!all_finite(p))
    throw std::invalid_argument(std::string(where) + ": non-finite coordinate");
}

// -- componentwise arithmetic ------------------------------------------------

template <class S>
MinkPoint<S> operator+(const MinkPoint<S>& a, const MinkPoint<S>& b) {
  check_same_dim(a, b, "MinkPoint::operator+");
  MinkPoint<S> r(a.t + b.t, a.x);
  for (std::size_t i = 0; i < r.x.size(); ++i) r.x[i] = a.x[i] + b.x[i];
  return r;
}

template <class S>
MinkPoint<S> operator-(const MinkPoint<S>& a, const MinkPoint<S>& b) {
  check_same_dim(a, b, "MinkPoint::operator-");
  MinkPoint<S> r(a.t - b.t, a.x);
  for (std::size_t i = 0; i < r.x.size(); ++i) r.x[i] = a.x[i] - b.x[i];
  return r;
}

template <class S>
MinkPoint<S> operator*(const S& c, const MinkPoint<S>& p) {
  MinkPoint<S> r(c * p.t, p.x);
  for (auto& coord : r.x) coord = c * coord;
  return r;
}

// -- metric and norms ---------------------------------------------------------

/// Lorentzian inner product: -u.t*v.t + <u.x, v.x>.  Bilinear, symmetric.
template <class S>
S mink_inner(const MinkPoint<S>& u, const MinkPoint<S>& v) {
  check_same_dim(u, v, "mink_inner");
  require_finite(u, "mink_inner");
  require_finite(v, "mink_inner");
  S acc = -(u.t * v.t);
  for (std::size_t i = 0; i < u.x.size(); ++i) acc += u.x[i] * v.x[i];
  return acc;
}

/// Euclidean norm of the spatial part only.
inline double spatial_norm(const Point& p) {
  double s = 0;
  for (double c : p.x) s += c * c;
  return std::sqrt(s);
}

/// Euclidean norm of the full n-vector (time treated as one more axis).
inline double euclid_norm(const Point& p) {
  double s = p.t * p.t;
  for (double c : p.x) s += c * c;
  return std::sqrt(s);
}

/// Diamond norm |t| + |x|.  The unit ball of this norm is the standard open
/// causal diamond; it is homogeneous and translation-equivariant like any norm.
inline double diamond_norm(const Point& p) {
  return std::abs(p.t) + spatial_norm(p);
}

// -- causal classification ----------------------------------------------------

enum class CausalKind { Timelike, Null, Spacelike };

/// Classification of a vector together with the signed value eta(v,v)
/// that decided it.  Timelike <=> margin < -tol, Null <=> |margin| <= tol,
/// Spacelike <=> margin > tol.
struct CausalClass {
  CausalKind kind;
  double margin;
};

inline CausalClass causal_class(const Point& v, double tol = kDefaultTolerance) {
  if (tol < 0) throw std::invalid_argument("causal_class: tolerance must be >= 0");
  require_finite(v, "causal_class");
  const double m = mink_inner(v, v);
  if (m < -tol) return {CausalKind::Timelike, m};
  if (m > tol) return {CausalKind::Spacelike, m};
  return {CausalKind::Null, m};
}

enum class Relatedness { Related, Unrelated, Marginal };

struct RelatednessResult {
  Relatedness rel;
  double margin;  // |dx| - |dt|; negative means a causal segment exists
};

/// Signed separation of a point pair: |dx| - |dt|.  Nonpositive exactly when
/// one point lies in the causal cone of the other.
inline double separation_value(const Point& p, const Point& q) {
  check_same_dim(p, q, "separation_value");
  const Point d = p - q;
  return spatial_norm(d) - std::abs(d.t);
}

/// Whether a causal curve joins p and q.  In flat space this reduces to the
/// cone inequality |dt| >= |dx|: when it holds the straight segment from p to
/// q is itself causal, and no curve can do better because |x'(s)| <= |t'(s)|
/// pointwise integrates to |dx| <= |dt| along any causal curve.
inline RelatednessResult points_causally_related(const Point& p, const Point& q,
                                                 double tol = kDefaultTolerance) {
  if (tol < 0) throw std::invalid_argument("points_causally_related: tolerance must be >= 0");
  require_finite(p, "points_causally_related");
  require_finite(q, "points_causally_related");
  const double m = separation_value(p, q);
  if (m < -tol) return {Relatedness::Related, m};
  if (m > tol) return {Relatedness::Unrelated, m};
  return {Relatedness::Marginal, m};
}

}  // namespace cdops
