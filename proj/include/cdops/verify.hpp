#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cdops/homotopy.hpp"
#include "cdops/instances.hpp"
#include "cdops/oracle.hpp"
#include "cdops/ortho.hpp"
#include "cdops/rational.hpp"

// Randomized property suites behind the `verify` command.  Every suite is a
// pure function of (trials, seed): failures are reproducible from the seed
// they report.  `trials` is the per-combination count, so total work grows
// with the number of dimensions and instances a suite covers.

namespace cdops {

struct VerifyFailure {
  std::string detail;
  std::uint64_t seed = 0;
  double margin = 0;
};

struct VerifyReport {
  std::string suite;
  long checks = 0;
  long violations = 0;
  std::vector<VerifyFailure> failures;  // first 16, for diagnostics
  double wall_ms = 0;

  bool ok() const { return violations == 0; }
};

namespace verify_detail {

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t salt, long trial = 0) {
  return seed + 0x9e3779b97f4a7c15ull * (salt + 1) + static_cast<std::uint64_t>(trial);
}

inline void record(VerifyReport& rep, std::uint64_t seed, double margin,
                   std::string detail) {
  ++rep.violations;
  if (rep.failures.size() < 16)
    rep.failures.push_back({std::move(detail), seed, margin});
}

class Stopwatch {
 public:
  explicit Stopwatch(VerifyReport& rep) : rep_(rep), t0_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() {
    rep_.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0_)
                       .count();
  }

 private:
  VerifyReport& rep_;
  std::chrono::steady_clock::time_point t0_;
};

inline Shape sample_shape(Rng& rng, ShapeKind kind, std::size_t n) {
  Point c = zero_point<double>(n);
  c.t = rng.range(-1.2, 1.2);
  for (auto& xi : c.x) xi = rng.range(-1.2, 1.2);
  const Boundary b = kind == ShapeKind::Ball ? Boundary::Closed : Boundary::Open;
  return Shape::make(kind, std::move(c), rng.range(0.05, 0.6), b);
}

/// Classification agreement between a closed-form margin and a search bound,
/// outside a +-1e-6 marginal band.  When the formula reports disjoint, the
/// search minimum must also respect the claimed margin from below: the
/// reported minimum is an upper bound on the true one, so finding a value
/// below margin - 1e-9 would prove the formula wrong.
inline void differential_causal(VerifyReport& rep, ShapeKind kind, std::size_t n,
                                long trials, std::uint64_t seed, long budget) {
  for (long trial = 0; trial < trials; ++trial) {
    const std::uint64_t s = mix(seed, 100 + 10 * n + (kind == ShapeKind::Diamond ? 1 : 0), trial);
    Rng rng(s);
    const Shape a = sample_shape(rng, kind, n);
    const Shape b = sample_shape(rng, kind, n);
    const Ternary formula = shapes_causally_disjoint(a, b, 1e-6);
    SeparationReport orc = oracle_min_separation(a, b, budget, mix(s, 7));
    Ternary search = classify_margin(orc.min_value, 1e-6);
    ++rep.checks;
    if (formula.state != Disjointness::Marginal && search.state != Disjointness::Marginal &&
        formula.state != search.state) {
      // The search value is only an upper bound; retry hard before calling
      // a disagreement real.
      orc = oracle_min_separation(a, b, 20 * budget, mix(s, 8));
      search = classify_margin(orc.min_value, 1e-6);
    }
    if (formula.state != Disjointness::Marginal && search.state != Disjointness::Marginal &&
        formula.state != search.state) {
      std::ostringstream d;
      d << to_string(kind) << " causal n=" << n << ": formula " << to_string(formula.state)
        << " (" << formula.margin << ") vs search " << orc.min_value;
      record(rep, s, formula.margin, d.str());
    }
    if (formula.state == Disjointness::Disjoint && orc.min_value < formula.margin - 1e-9)
      record(rep, s, orc.min_value,
             "search found causal separation below the closed-form margin");
  }
}

inline void differential_interior(VerifyReport& rep, ShapeKind kind, std::size_t n,
                                  long trials, std::uint64_t seed, long budget) {
  for (long trial = 0; trial < trials; ++trial) {
    const std::uint64_t s = mix(seed, 200 + 10 * n + (kind == ShapeKind::Diamond ? 1 : 0), trial);
    Rng rng(s);
    const Shape a = sample_shape(rng, kind, n);
    const Shape b = sample_shape(rng, kind, n);
    const Ternary formula = set_interiors_disjoint(a, b, 1e-6);
    SeparationReport orc = oracle_min_signed_distance(a, b, budget, mix(s, 7));
    Ternary search = classify_margin(orc.min_value, 1e-6);
    ++rep.checks;
    if (formula.state != Disjointness::Marginal && search.state != Disjointness::Marginal &&
        formula.state != search.state) {
      orc = oracle_min_signed_distance(a, b, 20 * budget, mix(s, 8));
      search = classify_margin(orc.min_value, 1e-6);
    }
    if (formula.state != Disjointness::Marginal && search.state != Disjointness::Marginal &&
        formula.state != search.state) {
      std::ostringstream d;
      d << to_string(kind) << " interior n=" << n << ": formula "
        << to_string(formula.state) << " (" << formula.margin << ") vs search "
        << orc.min_value;
      record(rep, s, formula.margin, d.str());
    }
    if (formula.state == Disjointness::Disjoint && orc.min_value < formula.margin - 1e-9)
      record(rep, s, orc.min_value,
             "search found interior distance below the closed-form margin");
  }
}

/// Time shifts toward the slice: with one shape on t = 0 and the other at
/// time t1, shifting the latter toward zero by delta <= |t1| raises the
/// causal margin by exactly delta.
inline void delta_shift_block(VerifyReport& rep, ShapeKind kind, long trials,
                              std::uint64_t seed) {
  for (long trial = 0; trial < trials; ++trial) {
    const std::uint64_t s = mix(seed, 300 + (kind == ShapeKind::Diamond ? 1 : 0), trial);
    Rng rng(s);
    const std::size_t n = 2 + trial % 3;
    bool found = false;
    Shape a = sample_shape(rng, kind, n);
    Shape b = a;
    for (int att = 0; att < 500 && !found; ++att) {
      a = sample_shape(rng, kind, n);
      a.center.t = 0.0;
      b = sample_shape(rng, kind, n);
      found = shapes_causally_disjoint(a, b).margin > 1e-6 &&
              std::abs(b.center.t) > 1e-6;
    }
    if (!found) {
      record(rep, s, 0, "delta-shift: could not sample a disjoint pair");
      continue;
    }
    ++rep.checks;
    const double m0 = shapes_causally_disjoint(a, b).margin;
    for (int i = 0; i < 10; ++i) {
      const double delta = rng.unit() * std::abs(b.center.t);
      const Shape shifted = delta_shift(b, delta, ShiftDirection::TowardZero);
      const double m1 = shapes_causally_disjoint(a, shifted).margin;
      if (m1 < m0 - 1e-12)
        record(rep, s, m1, "delta-shift toward the slice decreased the margin");
      if (std::abs(m1 - (m0 + delta)) > 1e-9)
        record(rep, s, m1, "delta-shift margin increment differs from delta");
    }
  }
}

inline bool maps_close(const std::vector<RectMapD>& a, const std::vector<RectMapD>& b,
                       double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i].scale - b[i].scale) > tol) return false;
    if (std::abs(a[i].translate.t - b[i].translate.t) > tol) return false;
    for (std::size_t c = 0; c < a[i].translate.x.size(); ++c)
      if (std::abs(a[i].translate.x[c] - b[i].translate.x[c]) > tol) return false;
  }
  return true;
}

inline bool maps_equal(const std::vector<RectMapD>& a, const std::vector<RectMapD>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

inline std::vector<RectMapQ> to_rational_maps(const std::vector<RectMapD>& maps) {
  std::vector<RectMapQ> out;
  out.reserve(maps.size());
  for (const auto& f : maps) out.push_back(to_rational(f));
  return out;
}

inline std::vector<std::size_t> random_permutation(Rng& rng, std::size_t k) {
  std::vector<std::size_t> sigma(k);
  for (std::size_t i = 0; i < k; ++i) sigma[i] = i;
  for (std::size_t i = k; i > 1; --i) std::swap(sigma[i - 1], sigma[rng.below(i)]);
  return sigma;
}

inline std::vector<OrthoInstance> harness_instances() {
  return {cd_instance(2),    cd_instance(3),    cd_instance(4),   disc_instance(1),
          disc_instance(2),  disc_instance(3),  disc_instance(4), cdiam_instance(2),
          cdiam_instance(3), cdiam_instance(4)};
}

inline void harness_block(VerifyReport& rep, long trials, std::uint64_t seed) {
  const std::vector<OrthoInstance> insts = harness_instances();
  for (std::size_t i = 0; i < insts.size(); ++i) {
    const OrthoInstance& inst = insts[i];
    const HarnessReport sym = symmetry_harness(inst, trials, mix(seed, 400 + i));
    rep.checks += sym.trials;
    if (!sym.ok())
      record(rep, sym.first_bad_seed, sym.worst_margin,
             inst.name + "(" + std::to_string(inst.dimension) + "): " +
                 std::to_string(sym.violations) + " symmetry violations");
    const HarnessReport perp = perp_stability_harness(inst, trials, mix(seed, 420 + i));
    rep.checks += perp.trials;
    if (!perp.ok())
      record(rep, perp.first_bad_seed, perp.worst_margin,
             inst.name + "(" + std::to_string(inst.dimension) + "): " +
                 std::to_string(perp.violations) + " stability violations");
  }
}

inline void law_block(VerifyReport& rep, long trials, std::uint64_t seed) {
  const std::vector<OrthoInstance> law_insts = {cd_instance(2),   cd_instance(3),
                                                cd_instance(4),   disc_instance(2),
                                                disc_instance(3), cdiam_instance(2)};
  for (long trial = 0; trial < trials; ++trial) {
    const std::uint64_t s = mix(seed, 450, trial);
    const OrthoInstance inst = law_insts[trial % law_insts.size()];
    Rng rng(s);
    try {
      const std::size_t k = 1 + rng.below(4);
      const MultiMorphism f = sample_multimorphism(inst, k, mix(s, 1), 1e-9);
      std::vector<MultiMorphism> gs;
      std::vector<std::size_t> sizes;
      for (std::size_t i = 0; i < k; ++i) {
        gs.push_back(sample_multimorphism(inst, rng.below(4), mix(s, 2 + i), 1e-9));
        sizes.push_back(gs.back().arity());
      }
      const MultiMorphism fg = multi_compose(f, gs);  // also exercises closure
      ++rep.checks;

      // Unit laws.
      const MultiMorphism idm = identity_multimorphism(inst);
      if (!maps_equal(multi_compose(idm, {f}).maps, f.maps))
        record(rep, s, 0, "left unit law failed");
      if (!maps_equal(multi_compose(f, std::vector<MultiMorphism>(k, idm)).maps, f.maps))
        record(rep, s, 0, "right unit law failed");

      // Depth-2 associativity, float and exact rational.
      std::vector<MultiMorphism> hs;
      for (std::size_t j = 0; j < fg.arity(); ++j)
        hs.push_back(sample_multimorphism(inst, rng.below(3), mix(s, 40 + j), 1e-9));
      const MultiMorphism lhs = multi_compose(fg, hs);
      std::vector<MultiMorphism> ghs;
      std::size_t off = 0;
      for (std::size_t i = 0; i < k; ++i) {
        const std::vector<MultiMorphism> slice(hs.begin() + off,
                                               hs.begin() + off + gs[i].arity());
        ghs.push_back(multi_compose(gs[i], slice));
        off += gs[i].arity();
      }
      const MultiMorphism rhs = multi_compose(f, ghs);
      if (!maps_close(lhs.maps, rhs.maps, 1e-12))
        record(rep, s, 0, "associativity failed beyond 1e-12 in float");

      {
        std::vector<std::vector<RectMapQ>> gq, hq;
        for (const auto& g : gs) gq.push_back(to_rational_maps(g.maps));
        std::vector<RectMapQ> fgq = flatten_compose(to_rational_maps(f.maps), gq);
        std::vector<std::vector<RectMapQ>> hq_blocks;
        for (const auto& h : hs) hq_blocks.push_back(to_rational_maps(h.maps));
        const std::vector<RectMapQ> lq = flatten_compose(fgq, hq_blocks);
        std::vector<std::vector<RectMapQ>> ghq;
        std::size_t o2 = 0;
        for (std::size_t i = 0; i < k; ++i) {
          std::vector<std::vector<RectMapQ>> inner(hq_blocks.begin() + o2,
                                                   hq_blocks.begin() + o2 + sizes[i]);
          ghq.push_back(flatten_compose(gq[i], inner));
          o2 += sizes[i];
        }
        const std::vector<RectMapQ> rq = flatten_compose(to_rational_maps(f.maps), ghq);
        bool same = lq.size() == rq.size();
        for (std::size_t i = 0; same && i < lq.size(); ++i) same = lq[i] == rq[i];
        if (!same) record(rep, s, 0, "associativity failed in exact rational mode");
      }

      // Equivariance and the group action.
      const std::vector<std::size_t> sigma = random_permutation(rng, k);
      const MultiMorphism lhs_e =
          multi_compose(multi_permute(f, sigma), apply_permutation(gs, sigma));
      const MultiMorphism rhs_e =
          multi_permute(multi_compose(f, gs), block_permutation(sigma, sizes));
      if (!maps_equal(lhs_e.maps, rhs_e.maps))
        record(rep, s, 0, "equivariance failed");
      const std::vector<std::size_t> rho = random_permutation(rng, k);
      std::vector<std::size_t> composed(k);
      for (std::size_t i = 0; i < k; ++i) composed[i] = sigma[rho[i]];
      if (!maps_equal(multi_permute(multi_permute(f, sigma), rho).maps,
                      multi_permute(f, composed).maps))
        record(rep, s, 0, "permutation action is not functorial");
    } catch (const std::exception& e) {
      record(rep, s, 0, std::string("axiom trial raised: ") + e.what());
    }
  }
}

}  // namespace verify_detail

// -- axioms: category laws, harnesses, operad laws ----------------------------------

inline VerifyReport verify_axioms(long trials, std::uint64_t seed) {
  using namespace verify_detail;
  VerifyReport rep;
  rep.suite = "axioms";
  Stopwatch sw(rep);
  harness_block(rep, trials, seed);
  law_block(rep, trials, seed);
  return rep;
}

// -- predicates: differential against the search oracle -----------------------------

inline VerifyReport verify_predicates(long trials, std::uint64_t seed) {
  using namespace verify_detail;
  VerifyReport rep;
  rep.suite = "predicates";
  Stopwatch sw(rep);
  for (std::size_t n = 2; n <= 4; ++n) {
    differential_causal(rep, ShapeKind::Ball, n, trials, seed, 5000);
    differential_causal(rep, ShapeKind::Diamond, n, trials, seed, 5000);
    differential_interior(rep, ShapeKind::Ball, n, trials, seed, 2500);
    differential_interior(rep, ShapeKind::Diamond, n, trials, seed, 2500);
  }
  delta_shift_block(rep, ShapeKind::Ball, trials, seed);
  delta_shift_block(rep, ShapeKind::Diamond, trials, seed);
  return rep;
}

// -- epsilon: the slice embedding -----------------------------------------------------

namespace verify_detail {

inline void epsilon_block(VerifyReport& rep, bool diamond_target, long trials,
                          std::uint64_t seed) {
  for (long trial = 0; trial < trials; ++trial) {
    const std::uint64_t s = mix(seed, diamond_target ? 520 : 500, trial);
    Rng rng(s);
    const std::size_t n = 2 + trial % 3;
    const std::size_t k = 1 + rng.below(5);
    try {
      const MultiMorphism phi =
          sample_multimorphism(disc_instance(n - 1), k, mix(s, 1), 1e-6);
      const MultiMorphism psi =
          diamond_target ? epsilon_embed_diamond(phi) : epsilon_embed(phi);
      ++rep.checks;
      if (psi.validity.state != Disjointness::Disjoint || !(psi.detail.overall() > 0))
        record(rep, s, psi.detail.overall(), "embedding produced a non-positive margin");
      for (const auto& f : psi.maps)
        if (f.translate.t != 0.0)
          record(rep, s, f.translate.t, "embedded center left the t = 0 slice");
      if (k >= 2 &&
          std::abs(psi.detail.min_pair_margin - 0.5 * phi.detail.min_pair_margin) > 1e-12)
        record(rep, s, psi.detail.min_pair_margin,
               "pairwise margin is not exactly halved by the embedding");
      if (psi.detail.min_containment_margin < 0.5 - 1e-12)
        record(rep, s, psi.detail.min_containment_margin,
               "embedded containment margin fell below 1/2");

      const EpsilonExtraction ex = extract_epsilon_preimage(psi, 1e-9);
      if (!ex.in_image || ex.max_coordinate_error > 1e-12)
        record(rep, s, ex.max_coordinate_error, "embedding round trip failed");
      else if (!maps_close(ex.preimage->maps, phi.maps, 1e-12))
        record(rep, s, ex.max_coordinate_error, "extracted preimage differs from input");

      const std::vector<std::size_t> sigma = random_permutation(rng, k);
      const MultiMorphism lhs = diamond_target
                                    ? epsilon_embed_diamond(multi_permute(phi, sigma))
                                    : epsilon_embed(multi_permute(phi, sigma));
      if (!maps_equal(lhs.maps, multi_permute(psi, sigma).maps))
        record(rep, s, 0, "embedding does not commute with permutations");
    } catch (const std::exception& e) {
      record(rep, s, 0, std::string("epsilon trial raised: ") + e.what());
    }
  }
}

}  // namespace verify_detail

inline VerifyReport verify_epsilon(long trials, std::uint64_t seed) {
  using namespace verify_detail;
  VerifyReport rep;
  rep.suite = "epsilon";
  Stopwatch sw(rep);

  epsilon_block(rep, false, trials, seed);
  epsilon_block(rep, true, trials, seed);

  // Tangent intervals: a boundary input lands exactly on the null boundary.
  {
    const MultiMorphism tangent = multi_validate(
        disc_instance(1), {RectMapD(0.25, Point(-0.25, {})), RectMapD(0.25, Point(0.25, {}))});
    const MultiMorphism image = epsilon_embed(tangent);
    ++rep.checks;
    if (image.validity.state != Disjointness::Marginal ||
        std::abs(image.detail.min_pair_margin) > 1e-12)
      record(rep, 0, image.detail.min_pair_margin,
             "tangent intervals did not map to a null-touching pair");
  }

  // The embedding is not strictly compatible with substitution: composing
  // before or after differs by a fixed rescaling of the inner factor.
  {
    const double outer = 0.5, inner = 0.2;
    const double lhs = kEpsilonBallScale * (outer * inner);
    const double rhs = (kEpsilonBallScale * outer) * (kEpsilonBallScale * inner);
    ++rep.checks;
    if (std::abs(lhs / rhs - 2.0 * std::numbers::sqrt2) > 1e-12)
      record(rep, 0, lhs / rhs, "substitution mismatch ratio is not 2*sqrt(2)");
  }
  return rep;
}

// -- retraction -----------------------------------------------------------------------

namespace verify_detail {

inline void retraction_block(VerifyReport& rep, bool diamond, long trials,
                             std::uint64_t seed, long samples_per_path) {
  for (long trial = 0; trial < trials; ++trial) {
    const std::uint64_t s = mix(seed, diamond ? 620 : 600, trial);
    Rng rng(s);
    const std::size_t n = 2 + trial % 3;
    const std::size_t k = 1 + rng.below(5);
    const OrthoInstance inst = diamond ? cdiam_instance(n) : cd_instance(n);
    try {
      const MultiMorphism psi = sample_multimorphism(inst, k, mix(s, 1), 1e-6);
      HomotopyPath path;
      try {
        path = retract_full(psi, samples_per_path);
      } catch (const PathViolationError& e) {
        record(rep, s, e.violation().margin,
               std::string("path violation: ") + e.what());
        continue;
      }
      ++rep.checks;

      const MultiMorphism end = multi_validate(inst, path.endpoint().maps);
      const EpsilonExtraction ex = extract_epsilon_preimage(end, 1e-9);
      if (!ex.in_image)
        record(rep, s, ex.max_coordinate_error, "endpoint is not in the embedding image");

      for (std::size_t i = 0; i + 1 < path.samples.size(); ++i) {
        if (path.samples[i + 1].u > 0.5 + 1e-12) break;
        if (path.samples[i + 1].margin < path.samples[i].margin - 1e-12)
          record(rep, s, path.samples[i + 1].margin,
                 "stage-1 margin decreased between samples");
      }

      const double bound =
          std::min(psi.detail.overall(), psi.detail.min_pair_margin / 2) - 1e-9;
      for (const auto& smp : path.samples)
        if (smp.margin < bound)
          record(rep, s, smp.margin, "path margin fell below half the initial margin");

      if (n == 2 && k >= 2) {
        const std::vector<std::size_t> order0 = spatial_order(inst, path.samples[0].maps);
        for (const auto& smp : path.samples)
          if (spatial_order(inst, smp.maps) != order0) {
            record(rep, s, smp.margin, "spatial order changed along the path");
            break;
          }
      }
    } catch (const std::exception& e) {
      record(rep, s, 0, std::string("retraction trial raised: ") + e.what());
    }
  }

  // Inputs already in the embedding image: stage 1 must be constant and the
  // endpoint must be the input contracted by exactly one half.
  for (long trial = 0; trial < trials; ++trial) {
    const std::uint64_t s = mix(seed, diamond ? 640 : 630, trial);
    Rng rng(s);
    const std::size_t n = 2 + trial % 3;
    const std::size_t k = 1 + rng.below(4);
    try {
      const MultiMorphism phi =
          sample_multimorphism(disc_instance(n - 1), k, mix(s, 1), 1e-6);
      const MultiMorphism image = diamond ? epsilon_embed_diamond(phi) : epsilon_embed(phi);
      const HomotopyPath path = retract_full(image, 17);
      ++rep.checks;
      if (path.slide_span != 0.0)
        record(rep, s, path.slide_span, "embedding image has a nonzero slide span");
      for (const auto& smp : path.samples) {
        if (smp.u > 0.5 + 1e-12) break;
        if (!maps_equal(smp.maps, image.maps)) {
          record(rep, s, smp.u, "stage 1 moved a configuration already in the image");
          break;
        }
      }
      const MultiMorphism end =
          multi_validate(image.instance, path.endpoint().maps);
      const EpsilonExtraction ex = extract_epsilon_preimage(end, 1e-9);
      std::vector<RectMapD> half;
      for (const auto& f : phi.maps)
        half.emplace_back(0.5 * f.scale, 0.5 * f.translate);
      if (!ex.in_image || !maps_close(ex.preimage->maps, half, 1e-12))
        record(rep, s, ex.max_coordinate_error,
               "endpoint preimage is not the half-contracted input");
    } catch (const std::exception& e) {
      record(rep, s, 0, std::string("image-retraction trial raised: ") + e.what());
    }
  }
}

}  // namespace verify_detail

inline VerifyReport verify_retraction(long trials, std::uint64_t seed,
                                      long samples_per_path = 100) {
  using namespace verify_detail;
  VerifyReport rep;
  rep.suite = "retraction";
  Stopwatch sw(rep);
  retraction_block(rep, false, trials, seed, samples_per_path);
  return rep;
}

// -- omega: forgetting the causal structure -------------------------------------------

inline VerifyReport verify_omega(long trials, std::uint64_t seed) {
  using namespace verify_detail;
  VerifyReport rep;
  rep.suite = "omega";
  Stopwatch sw(rep);

  for (long trial = 0; trial < trials; ++trial) {
    const std::uint64_t s = mix(seed, 700, trial);
    Rng rng(s);
    const std::size_t n = 2 + trial % 3;
    const std::size_t k = 1 + rng.below(5);
    try {
      const MultiMorphism psi = sample_multimorphism(cd_instance(n), k, mix(s, 1), 0.0);
      const MultiMorphism om = forget_omega(psi);
      ++rep.checks;
      if (om.detail.overall() < psi.detail.overall() - 1e-12)
        record(rep, s, om.detail.overall(), "interior margin fell below the causal margin");
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
          const Shape si = rect_image(psi.maps[i], ShapeKind::Ball);
          const Shape sj = rect_image(psi.maps[j], ShapeKind::Ball);
          if (set_interiors_disjoint(si, sj).margin <
              shapes_causally_disjoint(si, sj).margin - 1e-12)
            record(rep, s, 0, "a pair has interior margin below its causal margin");
        }
    } catch (const std::exception& e) {
      record(rep, s, 0, std::string("omega trial raised: ") + e.what());
    }
  }

  // Fixed anchor: centers +-1/2 on the slice, radius 1/10.
  {
    const Shape f = Shape::ball(Point(0.0, {-0.5}), 0.1);
    const Shape g = Shape::ball(Point(0.0, {0.5}), 0.1);
    ++rep.checks;
    if (std::abs(shapes_causally_disjoint(f, g).margin -
                 (1.0 - 0.2 * std::numbers::sqrt2)) > 1e-12 ||
        std::abs(set_interiors_disjoint(f, g).margin - 0.8) > 1e-12)
      record(rep, 0, 0, "anchor margins for the +-1/2 pair are off");
  }
  return rep;
}

// -- diamonds: the diamond instances rerun the core criteria -------------------------

inline VerifyReport verify_diamonds(long trials, std::uint64_t seed) {
  using namespace verify_detail;
  VerifyReport rep;
  rep.suite = "diamonds";
  Stopwatch sw(rep);
  for (std::size_t n = 2; n <= 4; ++n)
    differential_causal(rep, ShapeKind::Diamond, n, trials, seed, 5000);
  for (std::size_t n = 2; n <= 4; ++n) {
    const OrthoInstance inst = cdiam_instance(n);
    const HarnessReport sym = symmetry_harness(inst, trials, mix(seed, 800 + n));
    rep.checks += sym.trials;
    if (!sym.ok())
      record(rep, sym.first_bad_seed, sym.worst_margin, "cdiam symmetry violations");
    const HarnessReport perp = perp_stability_harness(inst, trials, mix(seed, 810 + n));
    rep.checks += perp.trials;
    if (!perp.ok())
      record(rep, perp.first_bad_seed, perp.worst_margin, "cdiam stability violations");
  }
  retraction_block(rep, true, trials, seed, 100);
  return rep;
}

inline VerifyReport verify_retraction_orders(long trials, std::uint64_t seed) {
  using namespace verify_detail;
  VerifyReport rep;
  rep.suite = "orders";
  Stopwatch sw(rep);
  for (long trial = 0; trial < trials; ++trial) {
    const std::uint64_t s = mix(seed, 900, trial);
    Rng rng(s);
    const std::size_t k = 2 + rng.below(4);
    try {
      const MultiMorphism psi = sample_multimorphism(cd_instance(2), k, mix(s, 1), 1e-6);
      const HomotopyPath path = retract_full(psi, 33);
      ++rep.checks;
      const std::vector<std::size_t> order0 = spatial_order(psi);
      for (const auto& smp : path.samples)
        if (spatial_order(psi.instance, smp.maps) != order0) {
          record(rep, s, smp.margin, "spatial order changed along the path");
          break;
        }
    } catch (const std::exception& e) {
      record(rep, s, 0, std::string("order trial raised: ") + e.what());
    }
  }
  return rep;
}

inline std::vector<VerifyReport> verify_all(long trials, std::uint64_t seed) {
  return {verify_axioms(trials, seed),  verify_predicates(trials, seed),
          verify_epsilon(trials, seed), verify_retraction(trials, seed),
          verify_omega(trials, seed),   verify_diamonds(trials, seed)};
}

}  // namespace cdops
