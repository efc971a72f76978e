#include <catch2/catch_amalgamated.hpp>

#include "cdops/homotopy.hpp"
#include "cdops/json_io.hpp"

using namespace cdops;

namespace {

ConfigFile sample_config() {
  ConfigFile cfg;
  cfg.n = 2;
  cfg.kind = ShapeKind::Ball;
  cfg.relation = Relation::CausallyDisjoint;
  cfg.seed = 42;
  cfg.maps = {RectMapD(0.1, Point(0.0, {-0.5})), RectMapD(0.1, Point(0.0, {0.5}))};
  return cfg;
}

}  // namespace

TEST_CASE("config files round trip byte for byte", "[json]") {
  ConfigFile cfg = sample_config();
  // Non-dyadic coordinates must survive the round trip bit-exactly.
  cfg.maps[0].translate.x[0] = -0.1;
  cfg.maps[1].scale = 0.30000000000000004;

  const std::string text = serialize_config(cfg);
  const ConfigFile back = parse_config(text);
  CHECK(back.n == cfg.n);
  CHECK(back.kind == cfg.kind);
  CHECK(back.relation == cfg.relation);
  REQUIRE(back.seed.has_value());
  CHECK(*back.seed == 42);
  CHECK(back.maps == cfg.maps);
  CHECK(serialize_config(back) == text);

  CHECK(text.find("\"relation\": \"cd\"") != std::string::npos);
  CHECK(text.find("\"kind\": \"ball\"") != std::string::npos);
  CHECK(text.back() == '\n');
}

TEST_CASE("rational strings are accepted in place of numbers", "[json]") {
  const std::string text = R"({
    "version": 1,
    "n": 2,
    "kind": "ball",
    "relation": "cd",
    "maps": [{"scale": "1/4", "translate": ["0", "-1/2"]}]
  })";
  const ConfigFile cfg = parse_config(text);
  REQUIRE(cfg.maps.size() == 1);
  CHECK(cfg.maps[0].scale == 0.25);
  CHECK(cfg.maps[0].translate.t == 0.0);
  CHECK(cfg.maps[0].translate.x[0] == -0.5);

  CHECK_THROWS_AS(parse_config(R"({"version":1,"n":2,"kind":"ball","relation":"cd",
    "maps":[{"scale":"1/0","translate":[0,0]}]})"),
                  std::invalid_argument);
}

TEST_CASE("syntax errors carry the byte position", "[json]") {
  try {
    parse_config("{\"version\": 1, ");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.byte() >= 15);
  }
  // Schema problems are not ParseError.
  CHECK_THROWS_AS(parse_config("{}"), std::invalid_argument);
}

TEST_CASE("schema validation", "[json]") {
  const std::string good = R"({"version": 1, "n": 2, "kind": "ball", "relation": "cd",
    "maps": [{"scale": 0.1, "translate": [0.0, -0.5]}]})";
  CHECK(parse_config(good).maps.size() == 1);

  auto mutate = [&](const std::string& from, const std::string& to) {
    std::string t = good;
    const auto pos = t.find(from);
    REQUIRE(pos != std::string::npos);
    t.replace(pos, from.size(), to);
    return t;
  };

  CHECK_THROWS_AS(parse_config(mutate("\"version\": 1", "\"version\": 2")),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config(mutate("\"n\": 2", "\"n\": 0")), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(mutate("\"n\": 2", "\"n\": 65")), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(mutate("\"kind\": \"ball\"", "\"kind\": \"cube\"")),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config(mutate("\"relation\": \"cd\"", "\"relation\": \"near\"")),
                  std::invalid_argument);
  // Kind and relation must agree on the shape.
  CHECK_THROWS_AS(parse_config(mutate("\"relation\": \"cd\"", "\"relation\": \"cdiam\"")),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config(mutate("\"maps\"", "\"mapz\"")), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(mutate("\"translate\": [0.0, -0.5]",
                                      "\"translate\": [0.0]")),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config(mutate("\"scale\": 0.1", "\"scale\": -0.1")),
                  std::invalid_argument);
}

TEST_CASE("no instance pairs diamonds with interior disjointness", "[json]") {
  CHECK_THROWS_AS(instance_name(ShapeKind::Diamond, Relation::InteriorDisjoint),
                  std::invalid_argument);
  ConfigFile cfg = sample_config();
  cfg.kind = ShapeKind::Diamond;
  cfg.relation = Relation::InteriorDisjoint;
  CHECK_THROWS_AS(config_instance(cfg), std::invalid_argument);
  CHECK_THROWS_AS(serialize_config(cfg), std::invalid_argument);
}

TEST_CASE("instance names map to kind and relation", "[json]") {
  CHECK(instance_name(ShapeKind::Ball, Relation::CausallyDisjoint) == "cd");
  CHECK(instance_name(ShapeKind::Ball, Relation::InteriorDisjoint) == "disc");
  CHECK(instance_name(ShapeKind::Diamond, Relation::CausallyDisjoint) == "cdiam");
  CHECK(instance_fields("disc").first == ShapeKind::Ball);
  CHECK(instance_fields("disc").second == Relation::InteriorDisjoint);
  CHECK(instance_fields("cdiam").first == ShapeKind::Diamond);
  CHECK_THROWS_AS(instance_fields("x"), std::invalid_argument);
}

TEST_CASE("configs convert to validated multimorphisms and back", "[json]") {
  const ConfigFile cfg = sample_config();
  const MultiMorphism psi = config_multimorphism(cfg);
  CHECK(psi.instance.name == "cd");
  CHECK(psi.arity() == 2);

  const ConfigFile again = config_from_multimorphism(psi, 7);
  CHECK(again.maps == cfg.maps);
  REQUIRE(again.seed.has_value());
  CHECK(*again.seed == 7);

  // Seedless configs omit the field entirely.
  const std::string text = serialize_config(config_from_multimorphism(psi));
  CHECK(text.find("seed") == std::string::npos);
}

TEST_CASE("certified paths round trip", "[json]") {
  const MultiMorphism psi = config_multimorphism(sample_config());
  const HomotopyPath path = retract_full(psi, 9);
  const std::string text = serialize_path(path);

  const PathFile p = parse_path(text);
  CHECK(p.n == 2);
  CHECK(p.kind == ShapeKind::Ball);
  CHECK(p.relation == Relation::CausallyDisjoint);
  CHECK(p.path_kind == "full");
  CHECK(p.slide_span == path.slide_span);
  CHECK(p.shrink_floor == path.shrink_floor);
  CHECK(p.breakpoints == path.breakpoints);
  REQUIRE(p.samples.size() == path.samples.size());
  for (std::size_t i = 0; i < p.samples.size(); ++i) {
    CHECK(p.samples[i].u == path.samples[i].u);
    CHECK(p.samples[i].margin == path.samples[i].margin);
    CHECK(p.samples[i].maps == path.samples[i].maps);
  }

  CHECK_THROWS_AS(parse_path("[1, 2]"), std::invalid_argument);
}
