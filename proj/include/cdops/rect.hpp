#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cdops/minkowski.hpp"
#include "cdops/shapes.hpp"

// Rectilinear embeddings x -> scale*x + translate with scale > 0: the
// morphisms of every category in this library.  Rectilinear maps preserve
// causal structure (a translation is a Poincare element, a positive dilation
// is conformal), which is what makes all the margin formulas transform as
// m -> scale*m.
//
// The type is templated on the scalar so that algebraic laws can be checked
// in exact rational arithmetic; geometry always runs in double.  Conversion
// is explicit and lossy only in the rational -> double direction.

namespace cdops {

template <class S>
struct RectMap {
  S scale;
  MinkPoint<S> translate;

  RectMap(S s, MinkPoint<S> b) : scale(std::move(s)), translate(std::move(b)) {
    if (!(scale > S(0))) throw std::invalid_argument("RectMap: scale must be > 0");
    require_finite(translate, "RectMap");
    if constexpr (std::is_floating_point_v<S>) {
      if (!std::isfinite(scale)) throw std::invalid_argument("RectMap: non-finite scale");
    }
  }

  std::size_t dim() const { return translate.dim(); }

  static RectMap identity(std::size_t n) { return RectMap(S(1), zero_point<S>(n)); }

  friend bool operator==(const RectMap& a, const RectMap& b) {
    return a.scale == b.scale && a.translate == b.translate;
  }
};

using RectMapD = RectMap<double>;

template <class S>
MinkPoint<S> rect_apply(const RectMap<S>& f, const MinkPoint<S>& p) {
  if (f.dim() != p.dim()) throw std::invalid_argument("rect_apply: dimension mismatch");
  MinkPoint<S> out(f.scale * p.t + f.translate.t, p.x);
  for (std::size_t i = 0; i < out.x.size(); ++i)
    out.x[i] = f.scale * p.x[i] + f.translate.x[i];
  return out;
}

/// Composition f after g: (r_f r_g, r_f b_g + b_f).
template <class S>
RectMap<S> rect_compose(const RectMap<S>& f, const RectMap<S>& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("rect_compose: dimension mismatch");
  return RectMap<S>(f.scale * g.scale, rect_apply(f, g.translate));
}

/// Image of the unit shape: center = translate, radius = scale.  Works for
/// both kinds because the Euclidean and diamond norms are homogeneous and
/// translation-equivariant.  Boundary follows the kind's convention.
inline Shape rect_image(const RectMapD& f, ShapeKind kind) {
  return kind == ShapeKind::Ball ? Shape::ball(f.translate, f.scale)
                                 : Shape::diamond(f.translate, f.scale);
}

/// The unique rectilinear map whose image of the unit shape is s.
inline RectMapD rect_from_shape(const Shape& s) {
  if (!(s.radius > 0))
    throw std::invalid_argument("rect_from_shape: radius must be > 0");
  return RectMapD(s.radius, s.center);
}

}  // namespace cdops
