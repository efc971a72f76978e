#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "cdops/instances.hpp"
#include "cdops/ortho.hpp"

// Deformation of a causally disjoint configuration onto the image of the
// slice embedding, through configurations that stay causally disjoint.
//
// Stage 1 slides every center to the t = 0 slice at common speed; pairwise
// time gaps cannot grow, so margins never decrease.  Stage 2 first shrinks
// radii in place by the factor mu* that makes the unfolded configuration fit
// in the unit disc (substage A), then contracts centers and radii toward the
// origin by lambda running from 1 to 1/2 (substage B), which scales every
// pair margin by lambda and lands exactly on the image of the embedding.
//
// The composite is a retraction with certified margins along the way, not a
// strong deformation retraction: configurations already in the image are
// mapped back into the image, but stage 2 still contracts them by 1/2.

namespace cdops {

// -- stage 1 ---------------------------------------------------------------------

/// Largest |center time| of the tuple; the slide finishes after this span.
inline double stage1_slide_span(const std::vector<RectMapD>& maps) {
  double span = 0;
  for (const auto& f : maps) span = std::max(span, std::abs(f.translate.t));
  return span;
}

/// Moves each center time toward 0 by u * span, clamping at 0.  At u = 1
/// every time coordinate is exactly zero.  Radii and spatial centers are
/// untouched, so this is the identity whenever the span is zero.
inline std::vector<RectMapD> slide_to_time_zero(const std::vector<RectMapD>& maps,
                                                double u) {
  if (!(u >= 0 && u <= 1))
    throw std::invalid_argument("slide_to_time_zero: u outside [0, 1]");
  const double span = stage1_slide_span(maps);
  std::vector<RectMapD> out;
  out.reserve(maps.size());
  for (const auto& f : maps) {
    Point c = f.translate;
    const double mag = std::max(std::abs(c.t) - u * span, 0.0);
    c.t = std::copysign(mag, c.t);
    if (mag == 0) c.t = 0.0;  // never -0, keeps serialization stable
    out.emplace_back(f.scale, std::move(c));
  }
  return out;
}

// -- stage 2 ---------------------------------------------------------------------

/// Shrink factor mu* = min(1, min_j (1 - |x_j|) / (kappa * rho_j)) with
/// kappa = sqrt(2) for balls and 1 for diamonds: the largest uniform radius
/// factor for which the unfolded configuration fits in the unit disc.
inline double stage2_shrink_floor(const OrthoInstance& inst,
                                  const std::vector<RectMapD>& slice) {
  const double kappa = inst.kind == ShapeKind::Ball ? std::numbers::sqrt2 : 1.0;
  double mu = 1.0;
  for (const auto& f : slice) {
    const double room = 1.0 - spatial_norm(f.translate);
    mu = std::min(mu, room / (kappa * f.scale));
  }
  if (!(mu > 0))
    throw std::invalid_argument("stage2_shrink_floor: no shrink room (center outside unit shape)");
  return mu;
}

namespace detail {

/// v in [0, 1/2]: radii scale linearly from 1 to mu*, centers fixed.
/// v in [1/2, 1]: centers and radii contract by lambda from 1 to 1/2.
inline std::vector<RectMapD> stage2_maps(const std::vector<RectMapD>& slice,
                                         double mu_star, double v) {
  if (!(v >= 0 && v <= 1)) throw std::invalid_argument("stage2_maps: v outside [0, 1]");
  std::vector<RectMapD> out;
  out.reserve(slice.size());
  if (v <= 0.5) {
    const double mu = 1.0 + (mu_star - 1.0) * (2.0 * v);
    for (const auto& f : slice) out.emplace_back(mu * f.scale, f.translate);
    return out;
  }
  const double lambda = 1.0 - (2.0 * v - 1.0) / 2.0;
  for (const auto& f : slice) {
    const double rho_a = mu_star * f.scale;
    out.emplace_back(lambda * rho_a, lambda * f.translate);
  }
  return out;
}

}  // namespace detail

// -- certified paths ---------------------------------------------------------------

struct PathSample {
  double u = 0;
  std::vector<RectMapD> maps;
  double margin = 0;  // overall validity margin at u
};

class PathViolationError : public std::runtime_error {
 public:
  PathViolationError(const std::string& msg, double u, PairViolation v)
      : std::runtime_error(msg), u_(u), violation_(v) {}
  double u() const { return u_; }
  const PairViolation& violation() const { return violation_; }

 private:
  double u_;
  PairViolation violation_;
};

enum class PathKind { Stage2, Full };

struct HomotopyPath {
  OrthoInstance instance;
  PathKind kind = PathKind::Full;
  std::vector<RectMapD> start;
  std::vector<RectMapD> stage1_end;  // the slice configuration stage 2 runs on
  double slide_span = 0;             // 0 means stage 1 is constant
  double shrink_floor = 1;           // mu*
  std::vector<double> breakpoints;
  std::vector<PathSample> samples;

  std::vector<RectMapD> at(double u) const {
    if (!(u >= 0 && u <= 1))
      throw std::invalid_argument("HomotopyPath::at: u outside [0, 1]");
    if (kind == PathKind::Stage2)
      return detail::stage2_maps(stage1_end, shrink_floor, u);
    if (u <= 0.5) return slide_to_time_zero(start, 2.0 * u);
    return detail::stage2_maps(stage1_end, shrink_floor, 2.0 * u - 1.0);
  }

  const PathSample& endpoint() const { return samples.back(); }
};

namespace detail {

inline void check_causal_input(const MultiMorphism& psi, const char* where,
                               bool need_positive_pairs) {
  if (psi.instance.relation != Relation::CausallyDisjoint)
    throw std::invalid_argument(std::string(where) + ": input must be a causal instance");
  if (psi.validity.state == Disjointness::NotDisjoint)
    throw std::invalid_argument(std::string(where) + ": input tuple is invalid");
  if (need_positive_pairs && !(psi.detail.min_pair_margin > 0))
    throw std::invalid_argument(std::string(where) +
                                ": pairwise margins must be strictly positive");
}

inline void sample_and_check(HomotopyPath& path, long count) {
  if (count < 2) throw std::invalid_argument("retract: need at least 2 samples");
  const double tol = path.instance.tolerance;
  for (long i = 0; i < count; ++i) {
    PathSample s;
    s.u = static_cast<double>(i) / static_cast<double>(count - 1);
    s.maps = path.at(s.u);
    const Validity v = compute_validity(path.instance, s.maps);
    s.margin = v.overall();
    if (s.margin < -tol) {
      const bool containment = v.min_containment_margin <= v.min_pair_margin;
      PairViolation pv;
      pv.containment = containment;
      pv.i = containment ? v.worst_containment : v.worst_pair_i;
      pv.j = containment ? v.worst_containment : v.worst_pair_j;
      pv.margin = s.margin;
      std::ostringstream msg;
      msg << "retract: margin " << s.margin << " at u = " << s.u;
      throw PathViolationError(msg.str(), s.u, pv);
    }
    path.samples.push_back(std::move(s));
  }
}

}  // namespace detail

/// Stage 2 alone.  The input must already sit on the t = 0 slice (times
/// within tolerance are snapped to exact zeros) with strictly positive
/// pairwise margins.
inline HomotopyPath retract_stage2(const MultiMorphism& psi0, long samples = 17) {
  detail::check_causal_input(psi0, "retract_stage2", true);
  std::vector<RectMapD> slice;
  slice.reserve(psi0.arity());
  for (const auto& f : psi0.maps) {
    if (std::abs(f.translate.t) > psi0.instance.tolerance)
      throw std::invalid_argument("retract_stage2: input is not on the t = 0 slice");
    Point c = f.translate;
    c.t = 0.0;
    slice.emplace_back(f.scale, std::move(c));
  }
  HomotopyPath path;
  path.instance = psi0.instance;
  path.kind = PathKind::Stage2;
  path.start = psi0.maps;
  path.stage1_end = std::move(slice);
  path.slide_span = 0;
  path.shrink_floor = stage2_shrink_floor(psi0.instance, path.stage1_end);
  path.breakpoints = {0.0, 0.5, 1.0};
  detail::sample_and_check(path, samples);
  return path;
}

/// Full retraction: slide on [0, 1/2], shrink on [1/2, 3/4], contract on
/// [3/4, 1].  Every sampled configuration is revalidated; a margin below
/// -tolerance raises PathViolationError.  The endpoint lies in the image of
/// the slice embedding (extract_epsilon_preimage accepts it).
inline HomotopyPath retract_full(const MultiMorphism& psi, long samples = 33) {
  detail::check_causal_input(psi, "retract_full", true);
  HomotopyPath path;
  path.instance = psi.instance;
  path.kind = PathKind::Full;
  path.start = psi.maps;
  path.slide_span = stage1_slide_span(psi.maps);
  path.stage1_end = slide_to_time_zero(psi.maps, 1.0);
  path.shrink_floor = stage2_shrink_floor(psi.instance, path.stage1_end);
  path.breakpoints = {0.0, 0.5, 0.75, 1.0};
  detail::sample_and_check(path, samples);
  return path;
}

/// Validated stage-1 time slice at parameter u.
inline MultiMorphism retract_stage1(const MultiMorphism& psi, double u) {
  detail::check_causal_input(psi, "retract_stage1", false);
  try {
    return multi_validate(psi.instance, slide_to_time_zero(psi.maps, u));
  } catch (const ValidationError& e) {
    throw std::logic_error(std::string("retract_stage1: margin defect: ") + e.what());
  }
}

// -- spatial order (dimension 2) -----------------------------------------------------

/// Left-to-right order of the centers, as the permutation ord with
/// ord[rank] = map index.  Only defined for causal instances in dimension 2,
/// where causal disjointness forces distinct spatial coordinates.
inline std::vector<std::size_t> spatial_order(const OrthoInstance& inst,
                                              const std::vector<RectMapD>& maps) {
  if (inst.dimension != 2)
    throw std::invalid_argument("spatial_order: only defined in dimension 2");
  if (inst.relation != Relation::CausallyDisjoint)
    throw std::invalid_argument("spatial_order: only defined for causal instances");
  std::vector<std::size_t> order(maps.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return maps[a].translate.x[0] < maps[b].translate.x[0];
  });
  for (std::size_t r = 0; r + 1 < order.size(); ++r) {
    const double gap =
        maps[order[r + 1]].translate.x[0] - maps[order[r]].translate.x[0];
    if (gap <= inst.tolerance)
      throw std::runtime_error("spatial_order: centers too close to order");
  }
  return order;
}

inline std::vector<std::size_t> spatial_order(const MultiMorphism& psi) {
  return spatial_order(psi.instance, psi.maps);
}

}  // namespace cdops
