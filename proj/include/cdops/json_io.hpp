#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cdops/homotopy.hpp"
#include "cdops/instances.hpp"
#include "cdops/rational.hpp"

// JSON interchange.  Serialization uses insertion-ordered objects and the
// library's shortest round-trip number rendering, so equal values always
// produce identical bytes and every emitted double parses back bit-exact.
// Scales and translate entries may be written as exact rational strings
// ("3/4"); they are converted to double once, at parse time.

namespace cdops {

using ordered_json = nlohmann::ordered_json;

/// Syntactically malformed JSON; byte() is the 1-based offset reported by
/// the parser.  Structural problems (missing fields, bad values) are
/// reported as std::invalid_argument instead.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t byte)
      : std::runtime_error(msg), byte_(byte) {}
  std::size_t byte() const { return byte_; }

 private:
  std::size_t byte_;
};

struct ConfigFile {
  std::size_t n = 2;
  ShapeKind kind = ShapeKind::Ball;
  Relation relation = Relation::CausallyDisjoint;
  std::optional<std::uint64_t> seed;
  std::vector<RectMapD> maps;
};

inline ShapeKind kind_from_string(const std::string& s) {
  if (s == "ball") return ShapeKind::Ball;
  if (s == "diamond") return ShapeKind::Diamond;
  throw std::invalid_argument("kind must be \"ball\" or \"diamond\", got \"" + s + "\"");
}

/// Config files name the instance in the "relation" field: cd, disc, or
/// cdiam.  The "kind" field is kept for readability and must agree.
inline std::string instance_name(ShapeKind kind, Relation relation) {
  if (kind == ShapeKind::Ball)
    return relation == Relation::CausallyDisjoint ? "cd" : "disc";
  if (relation == Relation::CausallyDisjoint) return "cdiam";
  throw std::invalid_argument("no instance pairs diamonds with interior disjointness");
}

inline std::pair<ShapeKind, Relation> instance_fields(const std::string& name) {
  if (name == "cd") return {ShapeKind::Ball, Relation::CausallyDisjoint};
  if (name == "disc") return {ShapeKind::Ball, Relation::InteriorDisjoint};
  if (name == "cdiam") return {ShapeKind::Diamond, Relation::CausallyDisjoint};
  throw std::invalid_argument("relation must be \"cd\", \"disc\" or \"cdiam\", got \"" +
                              name + "\"");
}

/// The instance a config lives in.  Exactly three combinations are legal:
/// cd = ball/causal, disc = ball/interior, cdiam = diamond/causal.
inline OrthoInstance config_instance(const ConfigFile& cfg,
                                     double tol = kDefaultTolerance) {
  if (cfg.kind == ShapeKind::Ball)
    return cfg.relation == Relation::CausallyDisjoint ? cd_instance(cfg.n, tol)
                                                      : disc_instance(cfg.n, tol);
  if (cfg.relation == Relation::CausallyDisjoint) return cdiam_instance(cfg.n, tol);
  throw std::invalid_argument("no instance pairs diamonds with interior disjointness");
}

namespace detail {

inline double json_scalar(const ordered_json& v, const std::string& what) {
  if (v.is_number()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw std::invalid_argument(what + ": non-finite number");
    return d;
  }
  if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
  throw std::invalid_argument(what + ": expected a number or a rational string");
}

inline const ordered_json& json_field(const ordered_json& obj, const char* key,
                                      const std::string& what) {
  if (!obj.is_object() || !obj.contains(key))
    throw std::invalid_argument(what + ": missing field \"" + key + "\"");
  return obj.at(key);
}

inline RectMapD rectmap_from_json(const ordered_json& j, std::size_t n,
                                  const std::string& what) {
  const double scale = json_scalar(json_field(j, "scale", what), what + ".scale");
  const ordered_json& tr = json_field(j, "translate", what);
  if (!tr.is_array() || tr.size() != n)
    throw std::invalid_argument(what + ".translate: expected an array of " +
                                std::to_string(n) + " entries");
  Point c = zero_point<double>(n);
  c.t = json_scalar(tr.at(0), what + ".translate[0]");
  for (std::size_t i = 1; i < n; ++i)
    c.x[i - 1] = json_scalar(tr.at(i), what + ".translate[" + std::to_string(i) + "]");
  try {
    return RectMapD(scale, std::move(c));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(what + ": " + e.what());
  }
}

inline ordered_json rectmap_to_json(const RectMapD& f) {
  ordered_json j;
  j["scale"] = f.scale;
  ordered_json tr = ordered_json::array();
  tr.push_back(f.translate.t);
  for (double xi : f.translate.x) tr.push_back(xi);
  j["translate"] = std::move(tr);
  return j;
}

inline ordered_json parse_json_text(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
}

inline void check_version(const ordered_json& j, const std::string& what) {
  const ordered_json& v = json_field(j, "version", what);
  if (!v.is_number_integer() || v.get<std::int64_t>() != 1)
    throw std::invalid_argument(what + ": unsupported version (expected 1)");
}

inline std::size_t parse_dimension(const ordered_json& j, const std::string& what) {
  const ordered_json& v = json_field(j, "n", what);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1 || v.get<std::int64_t>() > 64)
    throw std::invalid_argument(what + ": n must be an integer in [1, 64]");
  return v.get<std::size_t>();
}

}  // namespace detail

inline ConfigFile parse_config(const std::string& text) {
  const ordered_json j = detail::parse_json_text(text);
  const std::string what = "config";
  detail::check_version(j, what);
  ConfigFile cfg;
  cfg.n = detail::parse_dimension(j, what);
  cfg.kind = kind_from_string(detail::json_field(j, "kind", what).get<std::string>());
  const auto [k2, rel] =
      instance_fields(detail::json_field(j, "relation", what).get<std::string>());
  if (k2 != cfg.kind)
    throw std::invalid_argument(what + ": kind does not match the named relation");
  cfg.relation = rel;
  if (j.contains("seed")) {
    const ordered_json& s = j.at("seed");
    if (!s.is_number_unsigned())
      throw std::invalid_argument(what + ": seed must be an unsigned integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  const ordered_json& maps = detail::json_field(j, "maps", what);
  if (!maps.is_array()) throw std::invalid_argument(what + ": maps must be an array");
  cfg.maps.reserve(maps.size());
  for (std::size_t i = 0; i < maps.size(); ++i)
    cfg.maps.push_back(
        detail::rectmap_from_json(maps.at(i), cfg.n, "maps[" + std::to_string(i) + "]"));
  config_instance(cfg);  // rejects the illegal kind/relation combination early
  return cfg;
}

inline ordered_json config_to_json(const ConfigFile& cfg) {
  ordered_json j;
  j["version"] = 1;
  j["n"] = cfg.n;
  j["kind"] = to_string(cfg.kind);
  j["relation"] = instance_name(cfg.kind, cfg.relation);
  if (cfg.seed) j["seed"] = *cfg.seed;
  ordered_json maps = ordered_json::array();
  for (const auto& f : cfg.maps) maps.push_back(detail::rectmap_to_json(f));
  j["maps"] = std::move(maps);
  return j;
}

inline std::string serialize_config(const ConfigFile& cfg) {
  return config_to_json(cfg).dump(2) + "\n";
}

inline ConfigFile config_from_multimorphism(const MultiMorphism& psi,
                                            std::optional<std::uint64_t> seed = {}) {
  ConfigFile cfg;
  cfg.n = psi.instance.dimension;
  cfg.kind = psi.instance.kind;
  cfg.relation = psi.instance.relation;
  cfg.seed = seed;
  cfg.maps = psi.maps;
  return cfg;
}

inline MultiMorphism config_multimorphism(const ConfigFile& cfg,
                                          double tol = kDefaultTolerance) {
  return multi_validate(config_instance(cfg, tol), cfg.maps);
}

// -- certified paths ----------------------------------------------------------------

inline std::string serialize_path(const HomotopyPath& path) {
  ordered_json j;
  j["version"] = 1;
  j["n"] = path.instance.dimension;
  j["kind"] = to_string(path.instance.kind);
  j["relation"] = instance_name(path.instance.kind, path.instance.relation);
  j["path-kind"] = path.kind == PathKind::Full ? "full" : "stage2";
  j["slide-span"] = path.slide_span;
  j["shrink-floor"] = path.shrink_floor;
  j["breakpoints"] = path.breakpoints;
  ordered_json samples = ordered_json::array();
  for (const auto& s : path.samples) {
    ordered_json sj;
    sj["u"] = s.u;
    sj["margin"] = s.margin;
    ordered_json maps = ordered_json::array();
    for (const auto& f : s.maps) maps.push_back(detail::rectmap_to_json(f));
    sj["maps"] = std::move(maps);
    samples.push_back(std::move(sj));
  }
  j["samples"] = std::move(samples);
  return j.dump(2) + "\n";
}

struct PathFile {
  std::size_t n = 2;
  ShapeKind kind = ShapeKind::Ball;
  Relation relation = Relation::CausallyDisjoint;
  std::string path_kind;
  double slide_span = 0;
  double shrink_floor = 1;
  std::vector<double> breakpoints;
  std::vector<PathSample> samples;
};

inline PathFile parse_path(const std::string& text) {
  const ordered_json j = detail::parse_json_text(text);
  const std::string what = "path";
  detail::check_version(j, what);
  PathFile p;
  p.n = detail::parse_dimension(j, what);
  p.kind = kind_from_string(detail::json_field(j, "kind", what).get<std::string>());
  const auto [k2, rel] =
      instance_fields(detail::json_field(j, "relation", what).get<std::string>());
  if (k2 != p.kind)
    throw std::invalid_argument(what + ": kind does not match the named relation");
  p.relation = rel;
  p.path_kind = detail::json_field(j, "path-kind", what).get<std::string>();
  p.slide_span = detail::json_scalar(detail::json_field(j, "slide-span", what), what);
  p.shrink_floor = detail::json_scalar(detail::json_field(j, "shrink-floor", what), what);
  for (const auto& b : detail::json_field(j, "breakpoints", what))
    p.breakpoints.push_back(detail::json_scalar(b, what + ".breakpoints"));
  const ordered_json& samples = detail::json_field(j, "samples", what);
  if (!samples.is_array()) throw std::invalid_argument(what + ": samples must be an array");
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const std::string sw = what + ".samples[" + std::to_string(k) + "]";
    const ordered_json& sj = samples.at(k);
    PathSample s;
    s.u = detail::json_scalar(detail::json_field(sj, "u", sw), sw + ".u");
    s.margin = detail::json_scalar(detail::json_field(sj, "margin", sw), sw + ".margin");
    const ordered_json& maps = detail::json_field(sj, "maps", sw);
    if (!maps.is_array()) throw std::invalid_argument(sw + ".maps: expected an array");
    for (std::size_t i = 0; i < maps.size(); ++i)
      s.maps.push_back(detail::rectmap_from_json(maps.at(i), p.n,
                                                 sw + ".maps[" + std::to_string(i) + "]"));
    p.samples.push_back(std::move(s));
  }
  return p;
}

}  // namespace cdops
