#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cdops/minkowski.hpp"
#include "cdops/rect.hpp"

// Exact rational scalar for checking algebraic identities (associativity,
// unit laws, equivariance) without rounding noise.  Geometry never uses it.

namespace cdops {

using Rational = boost::multiprecision::cpp_rational;

using PointQ = MinkPoint<Rational>;
using RectMapQ = RectMap<Rational>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Point to_double(const PointQ& p) {
  Point out;
  out.t = to_double(p.t);
  out.x.reserve(p.x.size());
  for (const auto& xi : p.x) out.x.push_back(to_double(xi));
  return out;
}

inline RectMapD to_double(const RectMapQ& f) {
  return RectMapD(to_double(f.scale), to_double(f.translate));
}

/// Doubles are dyadic rationals, so these conversions are exact.
inline Rational to_rational(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("to_rational: non-finite value");
  return Rational(v);
}

inline PointQ to_rational(const Point& p) {
  PointQ out;
  out.t = Rational(p.t);
  out.x.reserve(p.x.size());
  for (double xi : p.x) out.x.emplace_back(xi);
  return out;
}

inline RectMapQ to_rational(const RectMapD& f) {
  return RectMapQ(Rational(f.scale), to_rational(f.translate));
}

/// Accepts "p/q" (q != 0) or a plain integer string.
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      if (text.empty()) throw std::invalid_argument("empty");
      return Rational(boost::multiprecision::cpp_int(text));
    }
    const std::string ns = text.substr(0, slash);
    const std::string ds = text.substr(slash + 1);
    if (ns.empty() || ds.empty()) throw std::invalid_argument("empty part");
    boost::multiprecision::cpp_int num(ns);
    boost::multiprecision::cpp_int den(ds);
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_rational: bad rational literal '" + text + "'");
  }
}

inline std::string to_string(const Rational& q) { return q.str(); }

}  // namespace cdops
