// Copyright 2026 The scw Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "scw/approx.hpp"

namespace scw {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Body JSON
// ---------------------------------------------------------------------------

/// A parsed body file. `polytope` is set for "polytope" documents.
struct BodyFile {
  ConvexBody body;
  std::optional<Polytope> polytope;
};

namespace detail {

inline Json vec_json(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

inline UnitVector json_unit(const Json& j) {
  if (!j.is_array() || j.size() != 3)
    throw GeometryError(ErrorKind::ParseError, "expected a 3-vector");
  for (const auto& x : j)
    if (!x.is_number()) throw GeometryError(ErrorKind::ParseError, "non-numeric coordinate");
  return UnitVector(Vec3{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()});
}

inline double json_number(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw GeometryError(ErrorKind::ParseError, std::string("missing number '") + key + "'");
  return j[key].get<double>();
}

}  // namespace detail

inline Json to_json(const Polytope& poly) {
  Json j;
  j["kind"] = "polytope";
  j["vertices"] = Json::array();
  for (const auto& v : poly.vertices) j["vertices"].push_back(detail::vec_json(v));
  return j;
}

inline Json to_json(const ConvexBody& body) {
  Json j;
  j["kind"] = "pc-body";
  j["interior"] = detail::vec_json(body.interior);
  j["pieces"] = Json::array();
  for (const auto& piece : body.pieces) {
    Json p;
    if (auto g = std::get_if<GreatArc>(&piece)) {
      p["type"] = "great";
      p["from"] = detail::vec_json(g->from());
      p["to"] = detail::vec_json(g->to());
    } else {
      const auto& c = std::get<SmallCircleArc>(piece);
      p["type"] = "circle";
      p["center"] = detail::vec_json(c.center());
      p["radius"] = c.radius();
      p["az_from"] = c.az_from();
      p["az_to"] = c.az_to();
    }
    j["pieces"].push_back(std::move(p));
  }
  return j;
}

inline BodyFile body_from_json(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
      throw GeometryError(ErrorKind::ParseError, "missing 'kind'");
    const std::string kind = j["kind"];
    BodyFile out;
    if (kind == "polytope") {
      if (!j.contains("vertices") || !j["vertices"].is_array())
        throw GeometryError(ErrorKind::ParseError, "missing 'vertices'");
      Polytope poly;
      for (const auto& v : j["vertices"]) poly.vertices.push_back(detail::json_unit(v));
      if (poly.vertices.size() < 3)
        throw GeometryError(ErrorKind::InvalidBody, "a polytope needs at least 3 vertices");
      out.body = to_body(poly);
      out.polytope = std::move(poly);
      return out;
    }
    if (kind != "pc-body") throw GeometryError(ErrorKind::ParseError, "unknown kind '" + kind + "'");
    if (!j.contains("pieces") || !j["pieces"].is_array())
      throw GeometryError(ErrorKind::ParseError, "missing 'pieces'");
    for (const auto& p : j["pieces"]) {
      const std::string type = p.value("type", "");
      if (type == "great") {
        out.body.pieces.emplace_back(GreatArc(detail::json_unit(p.at("from")),
                                              detail::json_unit(p.at("to"))));
      } else if (type == "circle") {
        out.body.pieces.emplace_back(SmallCircleArc(
            detail::json_unit(p.at("center")), detail::json_number(p, "radius"),
            detail::json_number(p, "az_from"), detail::json_number(p, "az_to")));
      } else {
        throw GeometryError(ErrorKind::ParseError, "unknown piece type '" + type + "'");
      }
    }
    if (out.body.pieces.empty()) throw GeometryError(ErrorKind::InvalidBody, "no pieces");
    out.body.interior = j.contains("interior") ? detail::json_unit(j["interior"])
                                               : boundary_centroid(out.body);
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw GeometryError(ErrorKind::ParseError, e.what());
  }
}

inline BodyFile parse_body(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw GeometryError(ErrorKind::ParseError, e.what());
  }
  return body_from_json(j);
}

// nlohmann writes doubles in the shortest form that parses back to the same
// binary64 value.
inline std::string serialize(const Polytope& poly) { return to_json(poly).dump(1) + "\n"; }
inline std::string serialize(const ConvexBody& body) { return to_json(body).dump(1) + "\n"; }

/// A polytope body is written in vertex form, anything else as pieces.
inline std::string serialize_any(const ConvexBody& body) {
  if (is_polytope_body(body)) return serialize(to_polytope(body));
  return serialize(body);
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GeometryError(ErrorKind::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GeometryError(ErrorKind::ParseError, "cannot write " + path);
  out << text;
}

inline BodyFile load_body(const std::string& path) { return parse_body(read_text(path)); }

// ---------------------------------------------------------------------------
// Certificates and step logs
// ---------------------------------------------------------------------------

inline Json to_json(const Certificate& c) {
  Json j;
  j["epsilon"] = c.epsilon;
  j["hausdorff_bound"] = c.hausdorff_bound;
  j["hausdorff_value"] = c.hausdorff_value;
  j["width_min"] = c.width_min;
  j["width_max"] = c.width_max;
  j["self_duality_residual"] = c.self_duality_residual;
  j["steps"] = c.steps;
  j["rounds"] = c.rounds;
  j["passed"] = c.passed;
  j["violation"] = c.violation;
  return j;
}

inline Json to_json(const StepRecord& s) {
  Json j;
  j["round"] = s.round;
  j["budget"] = s.budget;
  j["primal_piece"] = s.primal_piece;
  j["dual_piece"] = s.dual_piece;
  j["p1"] = detail::vec_json(s.p1);
  j["p2"] = detail::vec_json(s.p2);
  j["q1"] = detail::vec_json(s.q1);
  j["q2"] = detail::vec_json(s.q2);
  j["r1"] = detail::vec_json(s.r1);
  j["r1_distance"] = s.r1_distance;
  j["step_hausdorff"] = s.step_hausdorff;
  j["residual_after"] = s.residual_after;
  j["convex_length_before"] = s.convex_length_before;
  j["convex_length_after"] = s.convex_length_after;
  return j;
}

/// One JSON document per line.
inline std::string step_log(const std::vector<StepRecord>& steps) {
  std::string out;
  for (const auto& s : steps) out += to_json(s).dump() + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// SVG rendering
// ---------------------------------------------------------------------------

enum class Projection { Orthographic, Stereographic };

struct RenderOptions {
  Projection projection = Projection::Orthographic;
  Vec3 view{0, 0, 1};
  double frame = 1000;
  double fill_fraction = 0.9;
};

namespace detail {

struct Point2 {
  double x, y;
};

// Plane coordinates before fitting to the frame.
class Projector {
 public:
  Projector(const UnitVector& view, Projection kind)
      : view_(view), frame_(tangent_frame(view)), kind_(kind) {}

  Point2 operator()(const Vec3& p) const {
    const double x = dot(p, frame_.u), y = dot(p, frame_.v);
    if (kind_ == Projection::Orthographic) return {x, y};
    const double d = 1 + dot(p, view_);
    return {x / d, y / d};
  }
  const TangentFrame& frame() const { return frame_; }
  Projection kind() const { return kind_; }

 private:
  UnitVector view_;
  TangentFrame frame_;
  Projection kind_;
};

struct Fit {
  double scale = 1, cx = 0, cy = 0, half = 500;
  Point2 operator()(Point2 p) const {
    return {half + scale * (p.x - cx), half - scale * (p.y - cy)};
  }
};

inline std::string fmt3(double v) {
  if (std::abs(v) < 5e-4) v = 0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::string fmt_point(Point2 p) { return fmt3(p.x) + "," + fmt3(p.y); }

// The circle carrying a piece: points c + rho (cos t a + sin t b), t in [t0, t1].
struct Circle3 {
  Vec3 c, a, b;
  double rho, t0, t1;
};

inline Circle3 carrier(const BoundaryPiece& piece) {
  if (auto g = std::get_if<GreatArc>(&piece))
    return {Vec3{0, 0, 0}, g->from().vec(), g->perp(), 1.0, 0.0, g->angle()};
  const auto& c = std::get<SmallCircleArc>(piece);
  return {c.center().vec() * c.cos_r(), c.frame().u, c.frame().v, c.sin_r(), c.az_from(),
          c.az_to()};
}

inline double cross2(Point2 o, Point2 a, Point2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Path command for one sub-arc of at most a quarter turn, from the current
// point to the image of t1.
inline std::string arc_command(const Circle3& k, double t0, double t1, const Projector& proj,
                               const Fit& fit) {
  auto at = [&](double t) { return k.c + (k.a * std::cos(t) + k.b * std::sin(t)) * k.rho; };
  const Point2 s = fit(proj(at(t0))), m = fit(proj(at(0.5 * (t0 + t1)))), e = fit(proj(at(t1)));
  const double turn = cross2(s, m, e);
  const double chord = std::hypot(e.x - s.x, e.y - s.y);
  if (std::abs(turn) <= 1e-9 * std::max(1.0, chord * chord)) return "L" + fmt_point(e);
  const std::string sweep = turn > 0 ? "1" : "0";

  if (proj.kind() == Projection::Orthographic) {
    // Image of the circle is an ellipse: screen = const + rho * M (cos t, sin t).
    const auto& f = proj.frame();
    const double m00 = fit.scale * k.rho * dot(k.a, f.u), m01 = fit.scale * k.rho * dot(k.b, f.u);
    const double m10 = -fit.scale * k.rho * dot(k.a, f.v), m11 = -fit.scale * k.rho * dot(k.b, f.v);
    // Axes from the eigen-decomposition of M M^T.
    const double p = m00 * m00 + m01 * m01, q = m00 * m10 + m01 * m11, r = m10 * m10 + m11 * m11;
    const double mean = 0.5 * (p + r), dev = std::hypot(0.5 * (p - r), q);
    const double rx = std::sqrt(mean + dev), ry = std::sqrt(std::max(0.0, mean - dev));
    if (ry < 1e-6 * std::max(1.0, rx)) return "L" + fmt_point(e);
    const double angle = 0.5 * std::atan2(2 * q, p - r) * 180 / kPi;
    return "A" + fmt3(rx) + "," + fmt3(ry) + " " + fmt3(angle) + " 0," + sweep + " " + fmt_point(e);
  }
  // Stereographic images are circles; take the one through s, m, e.
  const double ax = s.x - e.x, ay = s.y - e.y, bx = m.x - e.x, by = m.y - e.y;
  const double den = 2 * (ax * by - ay * bx);
  const double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by;
  const Point2 center{e.x + (by * a2 - ay * b2) / den, e.y + (ax * b2 - bx * a2) / den};
  const double radius = std::hypot(s.x - center.x, s.y - center.y);
  const bool large = cross2(s, e, m) * cross2(s, e, center) > 0;
  return "A" + fmt3(radius) + "," + fmt3(radius) + " 0 " + (large ? "1" : "0") + "," + sweep +
         " " + fmt_point(e);
}

}  // namespace detail

inline const std::array<const char*, 6> kLayerStrokes{"#1f4e9c", "#c2410c", "#15803d",
                                                      "#7e22ce", "#b91c1c", "#0f766e"};

/// SVG 1.1 drawing of the bodies as closed paths, one layer per body. Each
/// piece is drawn as projected arcs of at most a quarter turn.
inline std::string render_svg(const std::vector<ConvexBody>& bodies, const RenderOptions& options) {
  if (norm(options.view) < 1e-12)
    throw GeometryError(ErrorKind::DegenerateVector, "view direction is zero");
  const UnitVector view(options.view);
  for (const auto& body : bodies) {
    if (options.projection == Projection::Orthographic && body_min_dot(body, view) < -1e-12)
      throw GeometryError(ErrorKind::AmbiguousSide, "body is not in the front hemisphere");
    if (options.projection == Projection::Stereographic && contains(body, -view, 1e-6))
      throw GeometryError(ErrorKind::AmbiguousSide, "body contains the projection pole");
  }
  const detail::Projector proj(view, options.projection);

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& body : bodies)
    for (const auto& piece : body.pieces)
      for (const auto& p : sample_piece(piece, 129)) {
        const auto q = proj(p);
        xmin = std::min(xmin, q.x);
        xmax = std::max(xmax, q.x);
        ymin = std::min(ymin, q.y);
        ymax = std::max(ymax, q.y);
      }
  detail::Fit fit;
  fit.half = 0.5 * options.frame;
  const double extent = std::max({xmax - xmin, ymax - ymin, 1e-12});
  fit.scale = options.fill_fraction * options.frame / extent;
  fit.cx = 0.5 * (xmin + xmax);
  fit.cy = 0.5 * (ymin + ymax);

  std::ostringstream svg;
  char size_buf[32];
  std::snprintf(size_buf, sizeof size_buf, "%g", options.frame);
  const std::string size = size_buf;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size
      << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << " " << size << "\">\n"
      << "<rect width=\"" << size << "\" height=\"" << size << "\" fill=\"#ffffff\"/>\n";
  for (std::size_t layer = 0; layer < bodies.size(); ++layer) {
    const auto& body = bodies[layer];
    std::string d = "M" + detail::fmt_point(fit(proj(start_point(body.pieces.front()))));
    for (const auto& piece : body.pieces) {
      const detail::Circle3 k = detail::carrier(piece);
      const double extent_t = k.t1 - k.t0;
      const std::size_t parts = std::max<std::size_t>(
          1, std::size_t(std::ceil(std::abs(extent_t) / kHalfPi - 1e-9)));
      for (std::size_t i = 0; i < parts; ++i) {
        const double a = k.t0 + extent_t * double(i) / double(parts);
        const double b = k.t0 + extent_t * double(i + 1) / double(parts);
        d += " " + detail::arc_command(k, a, b, proj, fit);
      }
    }
    d += " Z";
    svg << "<path class=\"layer-" << layer << "\" d=\"" << d << "\" fill=\"none\" stroke=\""
        << kLayerStrokes[layer % kLayerStrokes.size()] << "\" stroke-width=\""
        << detail::fmt3(2.0 + 1.0 * double(layer % 2)) << "\""
        << (layer > 0 ? " stroke-dasharray=\"8,4\"" : "") << "/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace scw
