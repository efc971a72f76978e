#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cdops/rational.hpp"
#include "cdops/rect.hpp"
#include "cdops/sampling.hpp"
#include "cdops/shapes.hpp"

using namespace cdops;

TEST_CASE("application is scale then translate", "[rect]") {
  const RectMapD id = RectMapD::identity(2);
  const Point p(0.3, {-0.7});
  CHECK(rect_apply(id, p) == p);

  const RectMapD f(2.0, Point(1.0, {0.0}));
  CHECK(rect_apply(f, Point(0.0, {1.0})) == Point(1.0, {2.0}));

  const RectMapD half(0.5, Point(0.0, {0.0}));
  CHECK(euclid_norm(rect_apply(half, Point(0.0, {1.0}))) == 0.5);
}

TEST_CASE("composition matches pointwise application", "[rect]") {
  const RectMapD f(2.0, Point(1.0, {0.0}));
  const RectMapD g(0.5, Point(0.0, {1.0}));
  const RectMapD fg = rect_compose(f, g);
  CHECK(fg.scale == 1.0);
  CHECK(fg.translate == Point(1.0, {2.0}));

  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const Point p(rng.range(-2, 2), {rng.range(-2, 2)});
    CHECK(euclid_norm(rect_apply(fg, p) - rect_apply(f, rect_apply(g, p))) <= 1e-15);
  }
  CHECK(rect_compose(f, RectMapD::identity(2)) == f);
  CHECK(rect_compose(RectMapD::identity(2), f) == f);
}

TEST_CASE("composition is associative, exactly so in rational mode", "[rect]") {
  Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    auto rand_map = [&] {
      return RectMapD(rng.range(0.1, 2.0), Point(rng.range(-1, 1), {rng.range(-1, 1)}));
    };
    const RectMapD f = rand_map(), g = rand_map(), h = rand_map();
    const RectMapD lhs = rect_compose(rect_compose(f, g), h);
    const RectMapD rhs = rect_compose(f, rect_compose(g, h));
    CHECK(std::abs(lhs.scale - rhs.scale) <= 1e-12);
    CHECK(euclid_norm(lhs.translate - rhs.translate) <= 1e-12);

    const RectMapQ fq = to_rational(f), gq = to_rational(g), hq = to_rational(h);
    CHECK(rect_compose(rect_compose(fq, gq), hq) == rect_compose(fq, rect_compose(gq, hq)));
  }
}

TEST_CASE("image of the unit shape", "[rect]") {
  CHECK(rect_image(RectMapD::identity(2), ShapeKind::Ball) ==
        Shape::ball(Point(0.0, {0.0}), 1.0));
  const RectMapD f(0.25, Point(0.0, {0.5}));
  const Shape img = rect_image(f, ShapeKind::Ball);
  CHECK(img.center == Point(0.0, {0.5}));
  CHECK(img.radius == 0.25);
  CHECK(img.boundary == Boundary::Closed);
  CHECK(rect_image(f, ShapeKind::Diamond).boundary == Boundary::Open);

  const RectMapD g(0.5, Point(0.1, {0.1}));
  const Shape composed_img = rect_image(rect_compose(f, g), ShapeKind::Ball);
  CHECK(composed_img.radius == f.scale * g.scale);
  CHECK(composed_img.center == rect_apply(f, g.translate));
}

TEST_CASE("maps recover from shapes", "[rect]") {
  CHECK(rect_from_shape(Shape::ball(Point(0.0, {0.0}), 1.0)) == RectMapD::identity(2));
  const Shape s = Shape::ball(Point(0.0, {0.5}), 0.25);
  CHECK(rect_from_shape(s) == RectMapD(0.25, Point(0.0, {0.5})));
  CHECK_THROWS_AS(rect_from_shape(Shape::ball(Point(0.0, {0.0}), 0.0)),
                  std::invalid_argument);

  Rng rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const RectMapQ fq(to_rational(rng.range(0.1, 2.0)),
                      to_rational(Point(rng.range(-1, 1), {rng.range(-1, 1)})));
    const RectMapD fd = to_double(fq);
    CHECK(to_rational(rect_from_shape(rect_image(fd, ShapeKind::Ball))) ==
          to_rational(fd));
  }
}

TEST_CASE("maps rescale causal margins by their scale", "[rect]") {
  Rng rng(34);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 3;
    auto rand_shape = [&] {
      Point c = zero_point<double>(n);
      c.t = rng.range(-1, 1);
      for (auto& v : c.x) v = rng.range(-1, 1);
      return Shape::ball(std::move(c), rng.range(0.05, 0.5));
    };
    const Shape s = rand_shape(), t = rand_shape();
    Point b = zero_point<double>(n);
    b.t = rng.range(-1, 1);
    for (auto& v : b.x) v = rng.range(-1, 1);
    const RectMapD f(rng.range(0.1, 3.0), std::move(b));

    auto apply_shape = [&](const Shape& sh) {
      return Shape::ball(rect_apply(f, sh.center), f.scale * sh.radius);
    };
    const double before = balls_causally_disjoint(s, t).margin;
    const double after = balls_causally_disjoint(apply_shape(s), apply_shape(t)).margin;
    CHECK(after == Catch::Approx(f.scale * before).margin(1e-12));
  }
}

TEST_CASE("degenerate maps are rejected", "[rect]") {
  CHECK_THROWS_AS(RectMapD(0.0, Point(0.0, {0.0})), std::invalid_argument);
  CHECK_THROWS_AS(RectMapD(-1.0, Point(0.0, {0.0})), std::invalid_argument);
  CHECK_THROWS_AS(RectMapD(std::numeric_limits<double>::infinity(), Point(0.0, {0.0})),
                  std::invalid_argument);
  const RectMapD f(1.0, Point(0.0, {0.0}));
  CHECK_THROWS_AS(rect_apply(f, Point(0.0, {0.0, 0.0})), std::invalid_argument);
}
