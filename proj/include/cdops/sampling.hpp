#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include "cdops/rect.hpp"
#include "cdops/shapes.hpp"

// Deterministic sampling utilities.  mt19937_64 has a standard-specified
// output sequence; the uniform doubles are derived by the fixed bit
// construction below rather than std::uniform_real_distribution, whose
// algorithm is implementation-defined.  Same seed, same stream, everywhere.

namespace cdops {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform in [0, 1) with 53 random mantissa bits.
  double unit() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  double range(double lo, double hi) {
    if (!(lo <= hi)) throw std::invalid_argument("Rng::range: lo > hi");
    return lo + (hi - lo) * unit();
  }

  /// Uniform in {0, ..., n-1} by rejection, so the result is unbiased and
  /// identical on every platform.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n == 0");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = bits();
    while (v >= limit) v = bits();
    return v % n;
  }

 private:
  std::mt19937_64 engine_;
};

/// Uniform point of the closed shape, by rejection from the bounding cube.
/// Acceptance is at worst ~0.08 for balls in dimension 4, fine for tests.
inline Point sample_point_in_shape(Rng& rng, const Shape& s) {
  const std::size_t n = s.dim();
  if (s.radius == 0) return s.center;
  for (;;) {
    Point p = zero_point<double>(n);
    p.t = s.center.t + rng.range(-s.radius, s.radius);
    for (std::size_t i = 0; i + 1 < n; ++i)
      p.x[i] = s.center.x[i] + rng.range(-s.radius, s.radius);
    if (s.gauge(p) <= s.radius) return p;
  }
}

/// Random map whose image of the unit shape lies strictly inside the unit
/// shape: radius in [rmin, rmax], center uniform in the concentric shape of
/// radius 1 - r.  Requires 0 < rmin <= rmax < 1.
inline RectMapD sample_self_embedding(Rng& rng, std::size_t dim, ShapeKind kind,
                                      double rmin, double rmax) {
  if (!(0 < rmin && rmin <= rmax && rmax < 1))
    throw std::invalid_argument("sample_self_embedding: need 0 < rmin <= rmax < 1");
  const double r = rng.range(rmin, rmax);
  const Shape room = Shape::make(kind, zero_point<double>(dim), 1.0 - r, Boundary::Closed);
  return RectMapD(r, sample_point_in_shape(rng, room));
}

}  // namespace cdops
