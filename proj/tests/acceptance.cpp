// Acceptance battery: twelve numbered checks covering the full surface of the
// library, each printed as a single PASS/FAIL line.  Exit status 0 means all
// twelve hold.  Tolerances are pinned here as named constants.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cdops/homotopy.hpp"
#include "cdops/instances.hpp"
#include "cdops/json_io.hpp"
#include "cdops/oracle.hpp"
#include "cdops/verify.hpp"

using namespace cdops;
using std::numbers::sqrt2;

namespace {

constexpr double kThresholdTol = 1e-9;   // bisection on the closed form
constexpr double kOracleThresholdTol = 1e-3;  // bisection on the search oracle
constexpr long kOracleBudget = 100000;
constexpr double kPairwiseHalfTol = 1e-12;
constexpr long kTrials = 1000;
constexpr std::uint64_t kSeed = 2026;
constexpr long kPathSamples = 100;
constexpr double kCriterion1BudgetMs = 10000;
constexpr double kCriterion2BudgetMs = 120000;

struct Outcome {
  bool pass = false;
  std::string note;
};

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   t0)
      .count();
}

std::string describe(const VerifyReport& rep) {
  std::ostringstream ss;
  ss << rep.checks << " checks, " << rep.violations << " violations";
  if (!rep.failures.empty()) ss << "; first: " << rep.failures.front().detail;
  return ss.str();
}

Outcome from_report(const VerifyReport& rep) { return {rep.ok(), describe(rep)}; }

// 1. Two unit balls in dimension 2, one at the origin, one at spatial offset x:
//    the disjointness threshold sits at x = 2 sqrt(2).  Recovered twice, by
//    bisection on the closed form and by bisection on the numerical search.
Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto margin_at = [](double x) {
    const Shape a = Shape::ball(Point(0.0, {0.0}), 1.0);
    const Shape b = Shape::ball(Point(0.0, {x}), 1.0);
    return balls_causally_disjoint(a, b).margin;
  };

  double lo = 2.0, hi = 4.0;
  for (int i = 0; i < 48; ++i) {
    const double mid = 0.5 * (lo + hi);
    (margin_at(mid) > 0 ? hi : lo) = mid;
  }
  const double closed_form = 0.5 * (lo + hi);

  lo = 2.0, hi = 4.0;
  while (hi - lo > 2e-4) {
    const double mid = 0.5 * (lo + hi);
    const Shape a = Shape::ball(Point(0.0, {0.0}), 1.0);
    const Shape b = Shape::ball(Point(0.0, {mid}), 1.0);
    const SeparationReport rep = oracle_min_separation(a, b, kOracleBudget, kSeed);
    (rep.min_value > 0 ? hi : lo) = mid;
  }
  const double searched = 0.5 * (lo + hi);

  const double elapsed = ms_since(t0);
  std::ostringstream ss;
  ss << "closed form " << closed_form << ", search " << searched << ", target "
     << 2.0 * sqrt2 << ", " << elapsed << " ms";
  const bool pass = std::abs(closed_form - 2.0 * sqrt2) <= kThresholdTol &&
                    std::abs(searched - 2.0 * sqrt2) <= kOracleThresholdTol &&
                    elapsed < kCriterion1BudgetMs;
  return {pass, ss.str()};
}

// 2. Differential test of the closed-form classifiers against the search
//    oracle: 1000 random pairs per shape kind and dimension, disagreements
//    only tolerated inside the +-1e-6 marginal band.
Outcome criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep;
  rep.suite = "acceptance-differential";
  for (std::size_t n : {2, 3, 4}) {
    verify_detail::differential_causal(rep, ShapeKind::Ball, n, kTrials, kSeed, 5000);
    verify_detail::differential_causal(rep, ShapeKind::Diamond, n, kTrials, kSeed, 5000);
  }
  const double elapsed = ms_since(t0);
  Outcome out = from_report(rep);
  out.pass = out.pass && elapsed < kCriterion2BudgetMs;
  out.note += ", " + std::to_string(elapsed) + " ms";
  return out;
}

// 3. Symmetry and stability under composition with self-embeddings, 1000
//    trials on every instance up to dimension 4.
Outcome criterion3() {
  VerifyReport rep;
  rep.suite = "acceptance-harnesses";
  verify_detail::harness_block(rep, kTrials, kSeed);
  return from_report(rep);
}

// 4. Operad laws: units, depth-2 associativity, equivariance; float bound
//    1e-12 plus exact rational replay, 1000 composite trials.
Outcome criterion4() {
  VerifyReport rep;
  rep.suite = "acceptance-laws";
  verify_detail::law_block(rep, kTrials, kSeed);
  return from_report(rep);
}

// 5. The slice embedding sends 1000 strictly disjoint disc tuples to valid
//    causal tuples with positive margin, and the tangent pair of intervals
//    lands exactly on the marginal boundary.
Outcome criterion5() {
  VerifyReport rep;
  rep.suite = "acceptance-epsilon";
  verify_detail::epsilon_block(rep, false, kTrials, kSeed);

  const MultiMorphism tangent = multi_validate(
      disc_instance(1),
      {RectMapD(0.25, Point(-0.25, {})), RectMapD(0.25, Point(0.25, {}))});
  const MultiMorphism image = epsilon_embed(tangent);
  const bool tangent_ok = image.validity.state == Disjointness::Marginal &&
                          std::abs(image.detail.min_pair_margin) <= kPairwiseHalfTol;
  Outcome out = from_report(rep);
  out.pass = out.pass && tangent_ok;
  out.note += tangent_ok ? "; tangent pair marginal" : "; tangent pair NOT marginal";
  return out;
}

// 6. 1000 certified retractions at 100 samples per path: no violations, the
//    endpoint extracts through the embedding at 1e-9, stage-1 margins are
//    monotone, and inputs already in the image hold still through stage 1.
Outcome criterion6() {
  VerifyReport rep;
  rep.suite = "acceptance-retraction";
  verify_detail::retraction_block(rep, false, kTrials, kSeed, kPathSamples);
  return from_report(rep);
}

// 7. Sliding one ball of a disjoint pair toward the time-zero slice never
//    loses disjointness and never shrinks the margin: 1000 pairs, 10 steps.
Outcome criterion7() {
  VerifyReport rep;
  rep.suite = "acceptance-shift";
  verify_detail::delta_shift_block(rep, ShapeKind::Ball, kTrials, kSeed);
  return from_report(rep);
}

// 8. Forgetting the causal structure keeps every tuple valid: 1000 trials.
Outcome criterion8() { return from_report(verify_omega(kTrials, kSeed)); }

// 9. The left-to-right order of centers is constant along 1000 certified
//    dimension-2 paths.
Outcome criterion9() { return from_report(verify_retraction_orders(kTrials, kSeed)); }

// 10. Causal convexity witness: the diamond spanned by (-s, s) and (s, s)
//     with s = sqrt(2)/2 contains a point of Euclidean norm above one.
Outcome criterion10() {
  const double s = sqrt2 / 2.0;
  const Shape d = diamond_between(Point(-s, {s}), Point(s, {s}));
  const Point far_point(0.0, {sqrt2 - 1e-6});
  const bool inside = d.contains(far_point);
  const bool outside_unit = euclid_norm(far_point) > 1.0;
  std::ostringstream ss;
  ss << "contains: " << (inside ? "yes" : "no") << ", norm " << euclid_norm(far_point);
  return {inside && outside_unit, ss.str()};
}

// 11. The diamond instance replays the differential, harness and retraction
//     checks at full trial counts.
Outcome criterion11() {
  VerifyReport rep;
  rep.suite = "acceptance-diamonds";
  for (std::size_t n : {2, 3, 4}) {
    verify_detail::differential_causal(rep, ShapeKind::Diamond, n, kTrials, kSeed, 5000);
    const OrthoInstance inst = cdiam_instance(n);
    const HarnessReport sym = symmetry_harness(inst, kTrials, kSeed + n);
    const HarnessReport perp = perp_stability_harness(inst, kTrials, kSeed + 10 * n);
    rep.checks += sym.trials + perp.trials;
    rep.violations += sym.violations + perp.violations;
  }
  verify_detail::retraction_block(rep, true, kTrials, kSeed, kPathSamples);
  return from_report(rep);
}

// 12. The command line is reproducible: same seed, same bytes, for both the
//     generator and the renderer.
Outcome criterion12() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "cdops-acceptance";
  fs::create_directories(dir);
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const auto shell = [&](const std::string& args) {
    const std::string cmd = std::string(CDOPS_BIN_PATH) + " " + args + " >/dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
  };

  const fs::path cfg1 = dir / "gen1.json", cfg2 = dir / "gen2.json";
  const fs::path svg1 = dir / "draw1.svg", svg2 = dir / "draw2.svg";
  bool ok = shell("gen --n 2 --k 3 --relation cd --seed 31 --out " + cfg1.string()) &&
            shell("gen --n 2 --k 3 --relation cd --seed 31 --out " + cfg2.string()) &&
            shell("render " + cfg1.string() + " --cones --out " + svg1.string()) &&
            shell("render " + cfg1.string() + " --cones --out " + svg2.string());
  std::string note = "cli invocations " + std::string(ok ? "succeeded" : "failed");
  if (ok) {
    const bool gen_equal = slurp(cfg1) == slurp(cfg2) && !slurp(cfg1).empty();
    const bool render_equal = slurp(svg1) == slurp(svg2) && !slurp(svg1).empty();
    note += gen_equal ? ", gen bytes equal" : ", gen bytes differ";
    note += render_equal ? ", render bytes equal" : ", render bytes differ";
    ok = gen_equal && render_equal;
  }
  return {ok, note};
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    Outcome (*fn)();
  };
  const std::vector<Entry> entries = {
      {"unit ball threshold at 2*sqrt(2)", criterion1},
      {"closed forms agree with the search oracle", criterion2},
      {"symmetry and composition stability", criterion3},
      {"operad laws, float and exact", criterion4},
      {"slice embedding validity and tangent boundary", criterion5},
      {"certified retractions", criterion6},
      {"time shifts toward the slice improve margins", criterion7},
      {"causal validity implies interior validity", criterion8},
      {"spatial order is invariant along paths", criterion9},
      {"causal convexity beyond the unit ball", criterion10},
      {"diamond instance replay", criterion11},
      {"reproducible command line output", criterion12},
  };

  bool all = true;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    Outcome out;
    try {
      out = entries[i].fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    all = all && out.pass;
    std::printf("criterion %zu: %s - %s (%s)\n", i + 1, out.pass ? "PASS" : "FAIL",
                entries[i].label, out.note.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
