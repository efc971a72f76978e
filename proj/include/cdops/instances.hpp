#pragma once

#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "cdops/ortho.hpp"

// The three concrete instances and the maps between them.
//
//   cd(n)     closed Euclidean balls, causal disjointness      n >= 2
//   disc(n)   closed Euclidean balls, disjoint interiors       n >= 1
//   cdiam(n)  open causal diamonds, causal disjointness        n >= 2
//
// epsilon_embed realizes a disc(n-1) configuration inside cd(n): each disc is
// placed on the t = 0 slice at half its center offset, then shrunk so the
// ball fits inside the causal diamond over the halved disc.  Pairwise margins
// come out exactly halved and every image is causally disjoint because the
// diamonds over disjoint discs in the slice cannot reach each other.

namespace cdops {

inline constexpr double kEpsilonBallScale = 1.0 / (2.0 * std::numbers::sqrt2);
inline constexpr double kEpsilonDiamondScale = 0.5;

inline OrthoInstance cd_instance(std::size_t n, double tol = kDefaultTolerance) {
  if (n < 2) throw std::invalid_argument("cd_instance: dimension must be >= 2");
  return {"cd", n, ShapeKind::Ball, Relation::CausallyDisjoint, tol};
}

inline OrthoInstance disc_instance(std::size_t n, double tol = kDefaultTolerance) {
  if (n < 1) throw std::invalid_argument("disc_instance: dimension must be >= 1");
  return {"disc", n, ShapeKind::Ball, Relation::InteriorDisjoint, tol};
}

inline OrthoInstance cdiam_instance(std::size_t n, double tol = kDefaultTolerance) {
  if (n < 2) throw std::invalid_argument("cdiam_instance: dimension must be >= 2");
  return {"cdiam", n, ShapeKind::Diamond, Relation::CausallyDisjoint, tol};
}

inline OrthoInstance instance_by_name(const std::string& name, std::size_t n,
                                      double tol = kDefaultTolerance) {
  if (name == "cd") return cd_instance(n, tol);
  if (name == "disc") return disc_instance(n, tol);
  if (name == "cdiam") return cdiam_instance(n, tol);
  throw std::invalid_argument("instance_by_name: unknown instance '" + name + "'");
}

namespace detail {

/// (t', x') in dimension n-1 becomes the purely spatial vector
/// [t', x'...] in dimension n, scaled by 1/2 and placed on the t = 0 slice.
inline Point lift_center(const Point& b, std::size_t n) {
  Point c = zero_point<double>(n);
  c.x[0] = 0.5 * b.t;
  for (std::size_t i = 0; i < b.x.size(); ++i) c.x[i + 1] = 0.5 * b.x[i];
  return c;
}

inline MultiMorphism epsilon_embed_impl(const MultiMorphism& phi, ShapeKind target_kind,
                                        double scale_factor) {
  if (phi.instance.relation != Relation::InteriorDisjoint ||
      phi.instance.kind != ShapeKind::Ball)
    throw std::invalid_argument("epsilon_embed: input must live in a disc instance");
  if (phi.validity.state == Disjointness::NotDisjoint)
    throw std::invalid_argument("epsilon_embed: input tuple is invalid");
  const std::size_t n = phi.instance.dimension + 1;
  std::vector<RectMapD> maps;
  maps.reserve(phi.arity());
  for (const auto& f : phi.maps)
    maps.emplace_back(scale_factor * f.scale, lift_center(f.translate, n));
  const OrthoInstance target = target_kind == ShapeKind::Ball
                                   ? cd_instance(n, phi.instance.tolerance)
                                   : cdiam_instance(n, phi.instance.tolerance);
  try {
    return multi_validate(target, std::move(maps));
  } catch (const ValidationError& e) {
    throw std::logic_error(std::string("epsilon_embed: unexpected defect: ") + e.what());
  }
}

}  // namespace detail

/// disc(n-1) -> cd(n).  Pairwise margins are exactly halved; containment
/// margins end up at 1/2 or better, so valid input gives valid output.
inline MultiMorphism epsilon_embed(const MultiMorphism& phi) {
  return detail::epsilon_embed_impl(phi, ShapeKind::Ball, kEpsilonBallScale);
}

/// disc(n-1) -> cdiam(n).  Same slice construction without the inscribing
/// step, since the causal diamond over a disc is itself a diamond.
inline MultiMorphism epsilon_embed_diamond(const MultiMorphism& phi) {
  return detail::epsilon_embed_impl(phi, ShapeKind::Diamond, kEpsilonDiamondScale);
}

/// cd(n) -> disc(n): keep the maps, forget the causal structure.  Sound
/// because the interior margin of a ball pair always dominates its causal
/// margin, so validity can only improve.
inline MultiMorphism forget_omega(const MultiMorphism& psi) {
  if (psi.instance.kind != ShapeKind::Ball ||
      psi.instance.relation != Relation::CausallyDisjoint)
    throw std::invalid_argument("forget_omega: input must live in a cd instance");
  if (psi.validity.state == Disjointness::NotDisjoint)
    throw std::invalid_argument("forget_omega: input tuple is invalid");
  try {
    return multi_validate(disc_instance(psi.instance.dimension, psi.instance.tolerance),
                          psi.maps);
  } catch (const ValidationError& e) {
    throw std::logic_error(std::string("forget_omega: soundness defect: ") + e.what());
  }
}

inline MultiMorphism embed_then_forget(const MultiMorphism& phi) {
  return forget_omega(epsilon_embed(phi));
}

struct EpsilonExtraction {
  bool in_image = false;
  double max_coordinate_error = std::numeric_limits<double>::infinity();
  std::optional<MultiMorphism> preimage;
};

/// Decides membership in the image of the slice embedding and inverts it.
/// A tuple is accepted when rebuilding the forward image of the extracted
/// configuration reproduces every map coordinate within tol (this subsumes
/// the t = 0 requirement) and the extracted configuration itself validates.
inline EpsilonExtraction extract_epsilon_preimage(const MultiMorphism& psi,
                                                  double tol = kDefaultTolerance) {
  if (psi.instance.relation != Relation::CausallyDisjoint)
    throw std::invalid_argument("extract_epsilon_preimage: input must be a causal instance");
  if (tol < 0) throw std::invalid_argument("extract_epsilon_preimage: tolerance must be >= 0");
  const std::size_t n = psi.instance.dimension;
  const bool ball = psi.instance.kind == ShapeKind::Ball;
  const double scale_factor = ball ? kEpsilonBallScale : kEpsilonDiamondScale;

  std::vector<RectMapD> candidate;
  candidate.reserve(psi.arity());
  for (const auto& f : psi.maps) {
    Point b = zero_point<double>(n - 1);
    b.t = 2.0 * f.translate.x[0];
    for (std::size_t i = 0; i < b.x.size(); ++i) b.x[i] = 2.0 * f.translate.x[i + 1];
    candidate.emplace_back(f.scale / scale_factor, std::move(b));
  }

  EpsilonExtraction out;
  double err = 0;
  for (std::size_t j = 0; j < candidate.size(); ++j) {
    const RectMapD rebuilt(scale_factor * candidate[j].scale,
                           detail::lift_center(candidate[j].translate, n));
    const RectMapD& orig = psi.maps[j];
    err = std::max(err, std::abs(rebuilt.scale - orig.scale));
    err = std::max(err, std::abs(rebuilt.translate.t - orig.translate.t));
    for (std::size_t i = 0; i + 1 < n; ++i)
      err = std::max(err, std::abs(rebuilt.translate.x[i] - orig.translate.x[i]));
  }
  out.max_coordinate_error = err;
  try {
    MultiMorphism pre = multi_validate(
        disc_instance(n - 1, psi.instance.tolerance), std::move(candidate));
    out.in_image = err <= tol;
    out.preimage = std::move(pre);
  } catch (const ValidationError&) {
    out.in_image = false;
  }
  return out;
}

}  // namespace cdops
