#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdops/homotopy.hpp"
#include "cdops/ortho.hpp"

// SVG rendering of dimension-2 configurations: x horizontal, t vertical and
// pointing up, world window [-1.6, 1.6]^2 on a 480 x 480 canvas.  Output is
// byte-deterministic: coordinates use one fixed numeric format and element
// order follows map order.

namespace cdops {

class UnsupportedDimensionError : public std::invalid_argument {
 public:
  explicit UnsupportedDimensionError(const std::string& msg)
      : std::invalid_argument(msg) {}
};

struct RenderOptions {
  bool cones = false;
  const std::vector<PathSample>* path = nullptr;  // center trajectories to overlay
};

namespace render_detail {

inline constexpr double kSvgSize = 480.0;
inline constexpr double kWorldHalf = 1.6;
inline constexpr const char* kPalette[6] = {"#3b6ea5", "#b0543f", "#4e8d58",
                                            "#8455a3", "#b08030", "#50808e"};

struct Vec2 {
  double x;
  double t;
};

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  if (buf[0] == '-' && std::string(buf + 1) == "0.0000") return "0.0000";
  return buf;
}

inline double sx(double wx) { return (wx + kWorldHalf) / (2 * kWorldHalf) * kSvgSize; }
inline double sy(double wt) { return (kWorldHalf - wt) / (2 * kWorldHalf) * kSvgSize; }
inline double slen(double w) { return w / (2 * kWorldHalf) * kSvgSize; }

inline std::string svg_point(const Vec2& p) { return fmt(sx(p.x)) + "," + fmt(sy(p.t)); }

inline void polygon(std::string& out, const std::vector<Vec2>& pts,
                    const std::string& attrs) {
  out += "  <polygon points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += svg_point(pts[i]);
  }
  out += "\" " + attrs + "/>\n";
}

inline void polyline(std::string& out, const std::vector<Vec2>& pts,
                     const std::string& attrs) {
  out += "  <polyline points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += svg_point(pts[i]);
  }
  out += "\" " + attrs + "/>\n";
}

inline std::vector<Vec2> diamond_outline(const Vec2& c, double r) {
  return {{c.x, c.t + r}, {c.x + r, c.t}, {c.x, c.t - r}, {c.x - r, c.t}};
}

/// One causal cone of a shape, as a polygon reaching well past the viewport.
/// For a ball the base is the circular arc between the two 45-degree tangent
/// points; for a diamond the cone is exactly the cone of its apex vertex.
inline std::vector<Vec2> cone_polygon(ShapeKind kind, const Vec2& c, double r,
                                      bool future) {
  const double dir = future ? 1.0 : -1.0;
  const double reach = 8.0;
  if (kind == ShapeKind::Diamond) {
    const Vec2 apex{c.x, c.t - dir * r};
    return {{apex.x - reach, apex.t + dir * reach},
            apex,
            {apex.x + reach, apex.t + dir * reach}};
  }
  const double s = r / std::numbers::sqrt2;
  std::vector<Vec2> pts;
  pts.push_back({c.x - s - reach, c.t + dir * (s + reach)});
  const int arc_steps = 12;
  const double pi = std::numbers::pi;
  // Arc between the tangent points, through the pole facing the cone.
  const double from = future ? 0.75 * pi : 1.25 * pi;
  const double to = future ? 0.25 * pi : 1.75 * pi;
  for (int i = 0; i <= arc_steps; ++i) {
    const double a = from + (to - from) * i / arc_steps;
    pts.push_back({c.x + r * std::cos(a), c.t + r * std::sin(a)});
  }
  pts.push_back({c.x + s + reach, c.t + dir * (s + reach)});
  return pts;
}

}  // namespace render_detail

inline std::string render_svg(const OrthoInstance& inst,
                              const std::vector<RectMapD>& maps,
                              const RenderOptions& opt = {}) {
  using namespace render_detail;
  if (inst.dimension != 2)
    throw UnsupportedDimensionError("render_svg: only dimension 2 can be drawn");
  if (opt.path)
    for (const auto& s : *opt.path)
      if (s.maps.size() != maps.size())
        throw std::invalid_argument("render_svg: path arity differs from configuration");

  std::string out;
  out +=
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" "
      "viewBox=\"0 0 480 480\">\n";
  out += "  <defs>\n";
  out +=
      "    <pattern id=\"hatch\" width=\"7\" height=\"7\" "
      "patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">\n";
  out +=
      "      <line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"7\" stroke=\"#8a97a8\" "
      "stroke-width=\"1\"/>\n";
  out += "    </pattern>\n";
  out +=
      "    <clipPath id=\"frame\"><rect x=\"0\" y=\"0\" width=\"480\" "
      "height=\"480\"/></clipPath>\n";
  out += "  </defs>\n";
  out += "  <rect x=\"0\" y=\"0\" width=\"480\" height=\"480\" fill=\"#fdfdfb\"/>\n";

  // Axes with labels.
  out += "  <line x1=\"0\" y1=\"" + fmt(sy(0)) + "\" x2=\"480\" y2=\"" + fmt(sy(0)) +
         "\" stroke=\"#c9c9c9\" stroke-width=\"1\"/>\n";
  out += "  <line x1=\"" + fmt(sx(0)) + "\" y1=\"0\" x2=\"" + fmt(sx(0)) +
         "\" y2=\"480\" stroke=\"#c9c9c9\" stroke-width=\"1\"/>\n";
  out += "  <text x=\"466\" y=\"" + fmt(sy(0) - 6) +
         "\" font-family=\"monospace\" font-size=\"12\" fill=\"#777\">x</text>\n";
  out += "  <text x=\"" + fmt(sx(0) + 6) +
         "\" y=\"14\" font-family=\"monospace\" font-size=\"12\" fill=\"#777\">t</text>\n";

  // Unit shape, dashed.
  const std::string frame_attrs =
      "fill=\"none\" stroke=\"#9a9a9a\" stroke-width=\"1.2\" stroke-dasharray=\"6,4\"";
  if (inst.kind == ShapeKind::Ball)
    out += "  <circle cx=\"" + fmt(sx(0)) + "\" cy=\"" + fmt(sy(0)) + "\" r=\"" +
           fmt(slen(1.0)) + "\" " + frame_attrs + "/>\n";
  else
    polygon(out, diamond_outline({0, 0}, 1.0), frame_attrs);

  auto center_of = [](const RectMapD& f) {
    return Vec2{f.translate.x[0], f.translate.t};
  };

  if (opt.cones && !maps.empty()) {
    out += "  <g clip-path=\"url(#frame)\">\n";
    for (const auto& f : maps)
      for (bool future : {true, false}) {
        std::string body;
        polygon(body, cone_polygon(inst.kind, center_of(f), f.scale, future),
                "fill=\"url(#hatch)\" stroke=\"#8a97a8\" stroke-width=\"0.6\" "
                "opacity=\"0.55\"");
        out += "  " + body;
      }
    out += "  </g>\n";
  }

  for (std::size_t j = 0; j < maps.size(); ++j) {
    const std::string color = kPalette[j % 6];
    const Vec2 c = center_of(maps[j]);
    const std::string attrs = "fill=\"" + color + "\" fill-opacity=\"0.22\" stroke=\"" +
                              color + "\" stroke-width=\"1.6\"";
    if (inst.kind == ShapeKind::Ball)
      out += "  <circle cx=\"" + fmt(sx(c.x)) + "\" cy=\"" + fmt(sy(c.t)) + "\" r=\"" +
             fmt(slen(maps[j].scale)) + "\" " + attrs + "/>\n";
    else
      polygon(out, diamond_outline(c, maps[j].scale), attrs);
    out += "  <circle cx=\"" + fmt(sx(c.x)) + "\" cy=\"" + fmt(sy(c.t)) +
           "\" r=\"2.2\" fill=\"" + color + "\"/>\n";
  }

  if (opt.path && !opt.path->empty() && !maps.empty()) {
    for (std::size_t j = 0; j < maps.size(); ++j) {
      const std::string color = kPalette[j % 6];
      std::vector<Vec2> trail;
      trail.reserve(opt.path->size());
      for (const auto& s : *opt.path)
        trail.push_back({s.maps[j].translate.x[0], s.maps[j].translate.t});
      polyline(out, trail,
               "fill=\"none\" stroke=\"" + color +
                   "\" stroke-width=\"1.1\" stroke-dasharray=\"2,3\"");
      out += "  <circle cx=\"" + fmt(sx(trail.back().x)) + "\" cy=\"" +
             fmt(sy(trail.back().t)) + "\" r=\"2.8\" fill=\"none\" stroke=\"" + color +
             "\" stroke-width=\"1.2\"/>\n";
    }
  }

  out += "</svg>\n";
  return out;
}

}  // namespace cdops
