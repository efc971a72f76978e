#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdops/rect.hpp"
#include "cdops/sampling.hpp"
#include "cdops/shapes.hpp"

// Orthogonality instances and the operad of disjoint tuples they generate.
//
// An instance fixes an ambient dimension, a shape kind and a binary relation
// on rectilinear self-embeddings of the unit shape.  A k-ary multimorphism
// is a tuple of maps whose images sit inside the unit shape and are pairwise
// related.  Composition substitutes tuples into the slots of an outer tuple;
// both pairwise and containment margins only improve under substitution
// (margins transform as m -> scale*m and sub-shapes inherit disjointness),
// which is what makes the operad close.

namespace cdops {

enum class Relation { CausallyDisjoint, InteriorDisjoint };

inline const char* to_string(Relation r) {
  return r == Relation::CausallyDisjoint ? "causally-disjoint" : "interior-disjoint";
}

struct OrthoInstance {
  std::string name;
  std::size_t dimension;
  ShapeKind kind;
  Relation relation;
  double tolerance = kDefaultTolerance;
};

inline bool same_instance(const OrthoInstance& a, const OrthoInstance& b) {
  return a.name == b.name && a.dimension == b.dimension && a.kind == b.kind &&
         a.relation == b.relation && a.tolerance == b.tolerance;
}

/// The instance's binary relation applied to the images of two maps.
inline Ternary is_orthogonal(const OrthoInstance& inst, const RectMapD& f,
                             const RectMapD& g) {
  if (f.dim() != inst.dimension || g.dim() != inst.dimension)
    throw std::invalid_argument("is_orthogonal: map dimension differs from instance");
  const Shape sf = rect_image(f, inst.kind);
  const Shape sg = rect_image(g, inst.kind);
  return inst.relation == Relation::CausallyDisjoint
             ? shapes_causally_disjoint(sf, sg, inst.tolerance)
             : set_interiors_disjoint(sf, sg, inst.tolerance);
}

// -- multimorphisms ------------------------------------------------------------

/// Worst margins over a tuple of maps.  Pair fields are meaningful when
/// arity >= 2, containment fields when arity >= 1; the untouched ones stay
/// at +infinity so overall() is correct for every arity.
struct Validity {
  double min_pair_margin = std::numeric_limits<double>::infinity();
  double min_containment_margin = std::numeric_limits<double>::infinity();
  std::size_t worst_pair_i = 0;
  std::size_t worst_pair_j = 0;
  std::size_t worst_containment = 0;

  double overall() const { return std::min(min_pair_margin, min_containment_margin); }
};

struct MultiMorphism {
  OrthoInstance instance;
  std::vector<RectMapD> maps;
  Ternary validity;  // classification of detail.overall() at the instance tolerance
  Validity detail;

  std::size_t arity() const { return maps.size(); }
};

/// "valid" / "invalid" / "marginal" for the validity field of a morphism.
inline const char* validity_label(Disjointness d) {
  switch (d) {
    case Disjointness::Disjoint: return "valid";
    case Disjointness::NotDisjoint: return "invalid";
    case Disjointness::Marginal: return "marginal";
  }
  return "?";
}

inline Validity compute_validity(const OrthoInstance& inst,
                                 const std::vector<RectMapD>& maps) {
  Validity v;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (maps[i].dim() != inst.dimension)
      throw std::invalid_argument("compute_validity: map dimension differs from instance");
    const double c = contained_in_unit(rect_image(maps[i], inst.kind), inst.tolerance).margin;
    if (c < v.min_containment_margin) {
      v.min_containment_margin = c;
      v.worst_containment = i;
    }
    for (std::size_t j = i + 1; j < maps.size(); ++j) {
      const double m = is_orthogonal(inst, maps[i], maps[j]).margin;
      if (m < v.min_pair_margin) {
        v.min_pair_margin = m;
        v.worst_pair_i = i;
        v.worst_pair_j = j;
      }
    }
  }
  return v;
}

struct PairViolation {
  std::size_t i = 0;
  std::size_t j = 0;
  double margin = 0;
  bool containment = false;  // true: map i leaves the unit shape, j unused
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& msg, PairViolation v)
      : std::runtime_error(msg), violation_(v) {}
  const PairViolation& violation() const { return violation_; }

 private:
  PairViolation violation_;
};

/// Builds a multimorphism, rejecting tuples whose worst margin is below
/// -tolerance.  Marginal tuples pass and carry the Marginal verdict.
inline MultiMorphism multi_validate(OrthoInstance inst, std::vector<RectMapD> maps) {
  const Validity detail = compute_validity(inst, maps);
  const Ternary verdict = classify_margin(detail.overall(), inst.tolerance);
  if (verdict.state == Disjointness::NotDisjoint) {
    const bool containment = detail.min_containment_margin <= detail.min_pair_margin;
    PairViolation v;
    v.containment = containment;
    v.i = containment ? detail.worst_containment : detail.worst_pair_i;
    v.j = containment ? detail.worst_containment : detail.worst_pair_j;
    v.margin = detail.overall();
    std::ostringstream msg;
    if (containment)
      msg << "multi_validate: image of map " << v.i << " is not inside the unit "
          << to_string(inst.kind) << " (margin " << v.margin << ")";
    else
      msg << "multi_validate: maps " << v.i << " and " << v.j << " are not "
          << to_string(inst.relation) << " (margin " << v.margin << ")";
    throw ValidationError(msg.str(), v);
  }
  MultiMorphism out;
  out.instance = std::move(inst);
  out.maps = std::move(maps);
  out.validity = verdict;
  out.detail = detail;
  return out;
}

inline MultiMorphism identity_multimorphism(const OrthoInstance& inst) {
  return multi_validate(inst, {RectMapD::identity(inst.dimension)});
}

// -- permutations ---------------------------------------------------------------

inline void check_permutation(const std::vector<std::size_t>& sigma, const char* where) {
  std::vector<bool> seen(sigma.size(), false);
  for (std::size_t s : sigma) {
    if (s >= sigma.size() || seen[s])
      throw std::invalid_argument(std::string(where) + ": not a permutation");
    seen[s] = true;
  }
}

/// out[i] = in[sigma[i]].
template <class T>
std::vector<T> apply_permutation(const std::vector<T>& in,
                                 const std::vector<std::size_t>& sigma) {
  if (sigma.size() != in.size())
    throw std::invalid_argument("apply_permutation: size mismatch");
  check_permutation(sigma, "apply_permutation");
  std::vector<T> out;
  out.reserve(in.size());
  for (std::size_t s : sigma) out.push_back(in[s]);
  return out;
}

/// Flat permutation induced by permuting blocks: output block j is input
/// block sigma[j], entries kept in order.  sizes[i] is the length of input
/// block i.
inline std::vector<std::size_t> block_permutation(const std::vector<std::size_t>& sigma,
                                                  const std::vector<std::size_t>& sizes) {
  if (sigma.size() != sizes.size())
    throw std::invalid_argument("block_permutation: size mismatch");
  check_permutation(sigma, "block_permutation");
  std::vector<std::size_t> offset(sizes.size(), 0);
  for (std::size_t i = 1; i < sizes.size(); ++i) offset[i] = offset[i - 1] + sizes[i - 1];
  std::vector<std::size_t> tau;
  tau.reserve(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}));
  for (std::size_t j : sigma)
    for (std::size_t l = 0; l < sizes[j]; ++l) tau.push_back(offset[j] + l);
  return tau;
}

// -- operad structure ------------------------------------------------------------

/// Raw substitution on map tuples, scalar-generic so the algebraic laws can
/// be checked over the rationals: the i-th outer map is composed onto every
/// map of the i-th block.
template <class S>
std::vector<RectMap<S>> flatten_compose(const std::vector<RectMap<S>>& outer,
                                        const std::vector<std::vector<RectMap<S>>>& blocks) {
  if (outer.size() != blocks.size())
    throw std::invalid_argument("flatten_compose: arity mismatch");
  std::vector<RectMap<S>> flat;
  for (std::size_t i = 0; i < outer.size(); ++i)
    for (const auto& g : blocks[i]) flat.push_back(rect_compose(outer[i], g));
  return flat;
}

/// Operadic composition.  Inputs must share the instance and the block count
/// must equal the outer arity.  The result is revalidated; a NotDisjoint
/// outcome would contradict the closure theorem, so it is reported as an
/// internal defect rather than bad input.
inline MultiMorphism multi_compose(const MultiMorphism& f,
                                   const std::vector<MultiMorphism>& gs) {
  if (gs.size() != f.arity())
    throw std::invalid_argument("multi_compose: need one inner morphism per outer slot");
  std::vector<std::vector<RectMapD>> blocks;
  blocks.reserve(gs.size());
  for (const auto& g : gs) {
    if (!same_instance(g.instance, f.instance))
      throw std::invalid_argument("multi_compose: instance mismatch");
    blocks.push_back(g.maps);
  }
  try {
    return multi_validate(f.instance, flatten_compose(f.maps, blocks));
  } catch (const ValidationError& e) {
    throw std::logic_error(std::string("multi_compose: closure defect: ") + e.what());
  }
}

/// Right action of the symmetric group: result.maps[i] = maps[sigma[i]].
/// Margins are permutation-invariant, so validity is carried over as is.
inline MultiMorphism multi_permute(const MultiMorphism& psi,
                                   const std::vector<std::size_t>& sigma) {
  MultiMorphism out = psi;
  out.maps = apply_permutation(psi.maps, sigma);
  // Re-point the worst indices through sigma so diagnostics stay accurate.
  std::vector<std::size_t> inv(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) inv[sigma[i]] = i;
  if (psi.arity() >= 1) out.detail.worst_containment = inv[psi.detail.worst_containment];
  if (psi.arity() >= 2) {
    out.detail.worst_pair_i = inv[psi.detail.worst_pair_i];
    out.detail.worst_pair_j = inv[psi.detail.worst_pair_j];
    if (out.detail.worst_pair_i > out.detail.worst_pair_j)
      std::swap(out.detail.worst_pair_i, out.detail.worst_pair_j);
  }
  return out;
}

// -- randomized morphisms ----------------------------------------------------------

class SamplingExhausted : public std::runtime_error {
 public:
  explicit SamplingExhausted(const std::string& msg) : std::runtime_error(msg) {}
};

/// Random valid k-ary multimorphism with every margin above min_margin.
/// Sequential placement: each map is retried against the ones already placed,
/// and the whole tuple restarts when a slot stays infeasible.  Radii shrink
/// with k, and for causal relations the time coordinate of each center is
/// compressed toward the t = 0 slice, where causal disjointness has room.
inline MultiMorphism sample_multimorphism(const OrthoInstance& inst, std::size_t k,
                                          std::uint64_t seed, double min_margin = 0.0,
                                          int map_retries = 800, int restarts = 200) {
  if (!(min_margin >= 0) || min_margin >= 0.5)
    throw std::invalid_argument("sample_multimorphism: min_margin out of range");
  Rng rng(seed);
  const bool interior = inst.relation == Relation::InteriorDisjoint;
  const double kk = static_cast<double>(std::max<std::size_t>(k, 1));
  const double rmax = interior ? std::min(0.35, 0.8 / kk) : std::min(0.25, 0.45 / kk);
  const double rmin = std::min(0.02, rmax / 4);
  const double squeeze = 0.3 / kk;  // causal room scales with the tuple size

  for (int attempt = 0; attempt < restarts; ++attempt) {
    std::vector<RectMapD> maps;
    bool stuck = false;
    while (maps.size() < k && !stuck) {
      bool placed = false;
      for (int r = 0; r < map_retries && !placed; ++r) {
        RectMapD cand = sample_self_embedding(rng, inst.dimension, inst.kind, rmin, rmax);
        if (inst.relation == Relation::CausallyDisjoint) cand.translate.t *= squeeze;
        if (contained_in_unit(rect_image(cand, inst.kind), inst.tolerance).margin <= min_margin)
          continue;
        bool fits = true;
        for (const auto& m : maps)
          if (is_orthogonal(inst, m, cand).margin <= min_margin) {
            fits = false;
            break;
          }
        if (fits) {
          maps.push_back(std::move(cand));
          placed = true;
        }
      }
      stuck = !placed;
    }
    if (!stuck) return multi_validate(inst, std::move(maps));
  }
  std::ostringstream msg;
  msg << "sample_multimorphism: no valid " << k << "-tuple for " << inst.name << "("
      << inst.dimension << ") after " << restarts << " restarts";
  throw SamplingExhausted(msg.str());
}

// -- law harnesses ------------------------------------------------------------------

struct HarnessReport {
  std::string property;
  long trials = 0;
  long violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::uint64_t first_bad_seed = 0;

  bool ok() const { return violations == 0; }
};

/// Orthogonality is stable under composition on both sides: if f and g are
/// related with positive margin, then f o h1 and g o h2 are related for all
/// self-embeddings h1, h2, and so are e o f and e o g for any post-map e.
inline HarnessReport perp_stability_harness(const OrthoInstance& inst, long trials,
                                            std::uint64_t seed) {
  HarnessReport rep;
  rep.property = "perp-stability";
  for (long trial = 0; trial < trials; ++trial) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(trial);
    const MultiMorphism pair =
        sample_multimorphism(inst, 2, s, 10 * inst.tolerance);
    Rng rng(s ^ 0x9e3779b97f4a7c15ull);
    const RectMapD h1 = sample_self_embedding(rng, inst.dimension, inst.kind, 0.1, 0.95);
    const RectMapD h2 = sample_self_embedding(rng, inst.dimension, inst.kind, 0.1, 0.95);
    const RectMapD post = sample_self_embedding(rng, inst.dimension, inst.kind, 0.1, 0.95);
    const Ternary pre = is_orthogonal(inst, rect_compose(pair.maps[0], h1),
                                      rect_compose(pair.maps[1], h2));
    const Ternary aft = is_orthogonal(inst, rect_compose(post, pair.maps[0]),
                                      rect_compose(post, pair.maps[1]));
    ++rep.trials;
    const double worst = std::min(pre.margin, aft.margin);
    if (worst < rep.worst_margin) rep.worst_margin = worst;
    if (pre.state == Disjointness::NotDisjoint || aft.state == Disjointness::NotDisjoint) {
      if (rep.violations == 0) rep.first_bad_seed = s;
      ++rep.violations;
    }
  }
  return rep;
}

/// The relation is symmetric, bit for bit: swapping the arguments changes
/// neither the verdict nor the margin.
inline HarnessReport symmetry_harness(const OrthoInstance& inst, long trials,
                                      std::uint64_t seed) {
  HarnessReport rep;
  rep.property = "symmetry";
  for (long trial = 0; trial < trials; ++trial) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(trial);
    Rng rng(s);
    const RectMapD f = sample_self_embedding(rng, inst.dimension, inst.kind, 0.05, 0.9);
    const RectMapD g = sample_self_embedding(rng, inst.dimension, inst.kind, 0.05, 0.9);
    const Ternary fg = is_orthogonal(inst, f, g);
    const Ternary gf = is_orthogonal(inst, g, f);
    ++rep.trials;
    if (fg.margin < rep.worst_margin) rep.worst_margin = fg.margin;
    if (fg.state != gf.state || fg.margin != gf.margin) {
      if (rep.violations == 0) rep.first_bad_seed = s;
      ++rep.violations;
    }
  }
  return rep;
}

}  // namespace cdops
