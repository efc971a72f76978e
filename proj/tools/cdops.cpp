// cdops: deterministic front end for the causal-disc toolkit.
//
// Exit codes: 0 disjoint / success, 1 not disjoint, 2 marginal (only the
// check command uses 1 and 2), 3 malformed JSON input, 4 anything else
// (bad arguments, invalid configs, failed verification suites).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cdops/json_io.hpp"
#include "cdops/render.hpp"
#include "cdops/verify.hpp"

namespace {

constexpr int kExitParse = 3;
constexpr int kExitError = 4;

double tool_tolerance() {
  const char* env = std::getenv("CDOPS_TOLERANCE");
  if (!env || !*env) return cdops::kDefaultTolerance;
  char* end = nullptr;
  const double tol = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(tol >= 0) || !std::isfinite(tol))
    throw std::invalid_argument("CDOPS_TOLERANCE must be a finite number >= 0");
  return tol;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("short write to " + path);
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_text(out_path, content);
}

struct GenArgs {
  std::size_t n = 2;
  std::size_t k = 3;
  std::string kind;
  std::string relation = "cd";
  std::uint64_t seed = 0;
  double min_margin = 0.0;
  std::string out;
};

int run_gen(const GenArgs& a) {
  const auto [kind, rel] = cdops::instance_fields(a.relation);
  if (!a.kind.empty() && cdops::kind_from_string(a.kind) != kind)
    throw std::invalid_argument("--kind " + a.kind + " does not match --relation " +
                                a.relation);
  cdops::ConfigFile cfg;
  cfg.n = a.n;
  cfg.kind = kind;
  cfg.relation = rel;
  const cdops::OrthoInstance inst = cdops::config_instance(cfg, tool_tolerance());
  const cdops::MultiMorphism psi =
      cdops::sample_multimorphism(inst, a.k, a.seed, a.min_margin);
  cfg.maps = psi.maps;
  cfg.seed = a.seed;
  emit(a.out, cdops::serialize_config(cfg));
  return 0;
}

int run_check(const std::string& in_path) {
  const cdops::ConfigFile cfg = cdops::parse_config(read_text(in_path));
  const cdops::OrthoInstance inst = cdops::config_instance(cfg, tool_tolerance());
  const cdops::Validity detail = cdops::compute_validity(inst, cfg.maps);
  const cdops::Ternary verdict = cdops::classify_margin(detail.overall(), inst.tolerance);
  const std::size_t arity = cfg.maps.size();

  cdops::ordered_json rep;
  rep["instance"] = cdops::instance_name(inst.kind, inst.relation);
  rep["n"] = inst.dimension;
  rep["arity"] = arity;
  rep["state"] = cdops::validity_label(verdict.state);
  rep["margin"] = detail.overall();
  rep["tolerance"] = inst.tolerance;
  cdops::ordered_json contain = cdops::ordered_json::array();
  for (std::size_t i = 0; i < arity; ++i) {
    cdops::ordered_json e;
    e["i"] = i;
    e["margin"] =
        cdops::contained_in_unit(cdops::rect_image(cfg.maps[i], inst.kind), inst.tolerance)
            .margin;
    contain.push_back(std::move(e));
  }
  rep["containment"] = std::move(contain);
  cdops::ordered_json pairs = cdops::ordered_json::array();
  for (std::size_t i = 0; i < arity; ++i)
    for (std::size_t j = i + 1; j < arity; ++j) {
      cdops::ordered_json e;
      e["i"] = i;
      e["j"] = j;
      e["margin"] = cdops::is_orthogonal(inst, cfg.maps[i], cfg.maps[j]).margin;
      pairs.push_back(std::move(e));
    }
  rep["pairs"] = std::move(pairs);
  if (arity >= 2 && verdict.state != cdops::Disjointness::Disjoint &&
      detail.min_pair_margin <= detail.min_containment_margin) {
    rep["worst-pair"] = {detail.worst_pair_i, detail.worst_pair_j};
  }
  std::cout << rep.dump(2) << "\n";
  switch (verdict.state) {
    case cdops::Disjointness::Disjoint:
      return 0;
    case cdops::Disjointness::NotDisjoint:
      return 1;
    case cdops::Disjointness::Marginal:
      return 2;
  }
  return kExitError;
}

int run_compose(const std::vector<std::string>& files, const std::string& out) {
  const double tol = tool_tolerance();
  std::vector<cdops::MultiMorphism> morphs;
  morphs.reserve(files.size());
  for (const auto& path : files)
    morphs.push_back(
        cdops::config_multimorphism(cdops::parse_config(read_text(path)), tol));
  const std::vector<cdops::MultiMorphism> gs(morphs.begin() + 1, morphs.end());
  const cdops::MultiMorphism composed = cdops::multi_compose(morphs.front(), gs);
  emit(out, cdops::serialize_config(cdops::config_from_multimorphism(composed)));
  return 0;
}

int run_embed(const std::string& in_path, bool diamond, const std::string& out) {
  const cdops::MultiMorphism phi =
      cdops::config_multimorphism(cdops::parse_config(read_text(in_path)), tool_tolerance());
  const cdops::MultiMorphism psi =
      diamond ? cdops::epsilon_embed_diamond(phi) : cdops::epsilon_embed(phi);
  emit(out, cdops::serialize_config(cdops::config_from_multimorphism(psi)));
  return 0;
}

int run_retract(const std::string& in_path, long samples, const std::string& out) {
  const cdops::MultiMorphism psi =
      cdops::config_multimorphism(cdops::parse_config(read_text(in_path)), tool_tolerance());
  const cdops::HomotopyPath path = cdops::retract_full(psi, samples);
  double min_margin = std::numeric_limits<double>::infinity();
  for (const auto& s : path.samples) min_margin = std::min(min_margin, s.margin);
  if (path.slide_span == 0.0) std::cerr << "stage1: constant\n";
  std::cerr << "min-margin: " << min_margin << "\n";
  emit(out, cdops::serialize_path(path));
  return 0;
}

int run_verify(const std::string& suite, long trials, std::uint64_t seed) {
  std::vector<cdops::VerifyReport> reports;
  if (suite == "all")
    reports = cdops::verify_all(trials, seed);
  else if (suite == "axioms")
    reports = {cdops::verify_axioms(trials, seed)};
  else if (suite == "predicates")
    reports = {cdops::verify_predicates(trials, seed)};
  else if (suite == "epsilon")
    reports = {cdops::verify_epsilon(trials, seed)};
  else if (suite == "retraction")
    reports = {cdops::verify_retraction(trials, seed)};
  else if (suite == "omega")
    reports = {cdops::verify_omega(trials, seed)};
  else if (suite == "diamonds")
    reports = {cdops::verify_diamonds(trials, seed)};
  else
    throw std::invalid_argument("unknown suite \"" + suite +
                                "\" (expected axioms, predicates, epsilon, retraction, "
                                "omega, diamonds or all)");

  bool ok = true;
  cdops::ordered_json out;
  out["version"] = 1;
  out["trials"] = trials;
  out["seed"] = seed;
  cdops::ordered_json suites = cdops::ordered_json::array();
  for (const auto& rep : reports) {
    ok = ok && rep.ok();
    cdops::ordered_json sj;
    sj["suite"] = rep.suite;
    sj["checks"] = rep.checks;
    sj["violations"] = rep.violations;
    sj["wall-ms"] = rep.wall_ms;
    cdops::ordered_json fails = cdops::ordered_json::array();
    for (const auto& f : rep.failures) {
      cdops::ordered_json fj;
      fj["detail"] = f.detail;
      fj["seed"] = f.seed;
      fj["margin"] = f.margin;
      fails.push_back(std::move(fj));
    }
    sj["failures"] = std::move(fails);
    suites.push_back(std::move(sj));
  }
  out["suites"] = std::move(suites);
  out["ok"] = ok;
  std::cout << out.dump(2) << "\n";
  return ok ? 0 : kExitError;
}

int run_render(const std::string& in_path, const std::string& out, bool cones,
               const std::string& path_file) {
  const cdops::ConfigFile cfg = cdops::parse_config(read_text(in_path));
  const cdops::OrthoInstance inst = cdops::config_instance(cfg, tool_tolerance());
  cdops::RenderOptions opt;
  opt.cones = cones;
  cdops::PathFile pf;
  if (!path_file.empty()) {
    pf = cdops::parse_path(read_text(path_file));
    opt.path = &pf.samples;
  }
  const std::string svg = cdops::render_svg(inst, cfg.maps, opt);
  emit(out, svg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operad of causally disjoint discs: generate, check, compose, embed,\n"
               "retract, verify and render configurations of sub-balls or sub-diamonds\n"
               "of the unit shape in Minkowski space"};
  app.require_subcommand(1);
  int rc = 0;

  GenArgs gen;
  CLI::App* cmd_gen = app.add_subcommand("gen", "sample a valid configuration");
  cmd_gen->add_option("--n", gen.n, "ambient dimension")->capture_default_str();
  cmd_gen->add_option("--k", gen.k, "number of maps")->capture_default_str();
  cmd_gen->add_option("--kind", gen.kind, "ball or diamond (defaults to the relation's kind)");
  cmd_gen->add_option("--relation", gen.relation, "instance: cd, disc or cdiam")
      ->capture_default_str();
  cmd_gen->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
  cmd_gen->add_option("--min-margin", gen.min_margin, "required margin, in [0, 0.5)")
      ->capture_default_str();
  cmd_gen->add_option("--out", gen.out, "output file (default stdout)");
  cmd_gen->callback([&] { rc = run_gen(gen); });

  std::string check_in;
  CLI::App* cmd_check = app.add_subcommand("check", "validate a configuration");
  cmd_check->add_option("input", check_in, "config JSON file")->required();
  cmd_check->callback([&] { rc = run_check(check_in); });

  std::vector<std::string> compose_files;
  std::string compose_out;
  CLI::App* cmd_compose =
      app.add_subcommand("compose", "substitute configurations G1.. into the slots of F");
  cmd_compose->add_option("files", compose_files, "F G1 [G2 ...]")->expected(-1)->required();
  cmd_compose->add_option("--out", compose_out, "output file (default stdout)");
  cmd_compose->callback([&] { rc = run_compose(compose_files, compose_out); });

  std::string embed_in, embed_out;
  bool embed_diamond = false;
  CLI::App* cmd_embed = app.add_subcommand(
      "embed", "embed an interior-disjoint disc configuration into the t = 0 slice");
  cmd_embed->add_option("input", embed_in, "disc config JSON file")->required();
  cmd_embed->add_flag("--diamond", embed_diamond, "target causal diamonds instead of balls");
  cmd_embed->add_option("--out", embed_out, "output file (default stdout)");
  cmd_embed->callback([&] { rc = run_embed(embed_in, embed_diamond, embed_out); });

  std::string retract_in, retract_out;
  long retract_samples = 33;
  CLI::App* cmd_retract =
      app.add_subcommand("retract", "run the two-stage retraction onto the slice image");
  cmd_retract->add_option("input", retract_in, "causal config JSON file")->required();
  cmd_retract->add_option("--samples", retract_samples, "certified samples along the path")
      ->capture_default_str();
  cmd_retract->add_option("--out", retract_out, "output file (default stdout)");
  cmd_retract->callback([&] { rc = run_retract(retract_in, retract_samples, retract_out); });

  std::string verify_suite = "all";
  long verify_trials = 200;
  std::uint64_t verify_seed = 1;
  CLI::App* cmd_verify = app.add_subcommand("verify", "run randomized property suites");
  cmd_verify
      ->add_option("--suite", verify_suite,
                   "axioms, predicates, epsilon, retraction, omega, diamonds or all")
      ->capture_default_str();
  cmd_verify->add_option("--trials", verify_trials, "trials per combination")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_verify->add_option("--seed", verify_seed, "base RNG seed")->capture_default_str();
  cmd_verify->callback([&] { rc = run_verify(verify_suite, verify_trials, verify_seed); });

  std::string render_in, render_out, render_path;
  bool render_cones = false;
  CLI::App* cmd_render = app.add_subcommand("render", "draw a 2d configuration as SVG");
  cmd_render->add_option("input", render_in, "config JSON file")->required();
  cmd_render->add_option("--out", render_out, "output SVG file")->required();
  cmd_render->add_flag("--cones", render_cones, "hatch the light cone of every shape");
  cmd_render->add_option("--path", render_path, "overlay center tracks from a path JSON file");
  cmd_render->callback(
      [&] { rc = run_render(render_in, render_out, render_cones, render_path); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  } catch (const cdops::ParseError& e) {
    std::cerr << "parse error at byte " << e.byte() << ": " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return rc;
}
