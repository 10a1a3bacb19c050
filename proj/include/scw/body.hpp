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

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scw/core.hpp"

namespace scw {

/// Hemispherical convex body bounded by a counterclockwise cycle of great and
/// small circle arcs. The interior is on the left of the direction of travel.
struct ConvexBody {
  std::vector<BoundaryPiece> pieces;
  UnitVector interior;
};

/// Spherical polygon stored by its counterclockwise vertex cycle.
struct Polytope {
  std::vector<UnitVector> vertices;
};

inline ConvexBody to_body(const Polytope& poly) {
  ConvexBody body;
  Vec3 sum{};
  const std::size_t n = poly.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    body.pieces.emplace_back(GreatArc(poly.vertices[i], poly.vertices[(i + 1) % n]));
    sum += poly.vertices[i].vec();
  }
  body.interior = UnitVector(sum);
  return body;
}

inline std::size_t next_index(std::size_t i, std::size_t n) { return (i + 1) % n; }
inline std::size_t prev_index(std::size_t i, std::size_t n) { return (i + n - 1) % n; }

inline bool is_polytope_body(const ConvexBody& body) {
  return std::all_of(body.pieces.begin(), body.pieces.end(), is_great);
}

/// Total length of the strictly convex (small circle) part of the boundary.
inline double strictly_convex_length(const ConvexBody& body) {
  double total = 0;
  for (const auto& p : body.pieces)
    if (is_small(p)) total += arc_length(p);
  return total;
}

inline double perimeter(const ConvexBody& body) {
  double total = 0;
  for (const auto& p : body.pieces) total += arc_length(p);
  return total;
}

// ---------------------------------------------------------------------------
// Support
// ---------------------------------------------------------------------------

/// Minimum of y·K over every supporting pole K of the body, i.e. over the
/// polar body. Non-negative exactly when y lies in the body.
inline double support_min_dot(const ConvexBody& body, const Vec3& y) {
  double m = std::numeric_limits<double>::infinity();
  const std::size_t n = body.pieces.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& piece = body.pieces[i];
    if (auto g = std::get_if<GreatArc>(&piece)) {
      m = std::min(m, dot(y, g->pole()));
    } else {
      const auto& c = std::get<SmallCircleArc>(piece);
      // Poles sweep the circle of radius pi/2 - r at azimuth + pi.
      const SmallCircleArc dual(c.center(), kHalfPi - c.radius(), c.az_from() + kPi,
                                c.az_to() + kPi);
      m = std::min(m, min_dot(dual, y));
    }
    const UnitVector k_in = pole_at(piece, 1);
    const UnitVector k_out = pole_at(body.pieces[next_index(i, n)], 0);
    if (geodesic_distance(k_in, k_out) >= kDegenerateDot)
      m = std::min(m, min_dot(GreatArc(k_in, k_out), y));
  }
  return m;
}

inline bool contains(const ConvexBody& body, const Vec3& p, double tol = kBoundaryTol) {
  return support_min_dot(body, p) >= -tol;
}

/// Minimum of y·x over the body (attained on the boundary).
inline double body_min_dot(const ConvexBody& body, const Vec3& y) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& p : body.pieces) m = std::min(m, min_dot(p, y));
  return m;
}

/// Geodesic distance from p to the body (0 inside).
inline double distance_to_body(const ConvexBody& body, const Vec3& p) {
  if (support_min_dot(body, p) >= 0) return 0;
  double d = kPi;
  for (const auto& piece : body.pieces) d = std::min(d, point_to_piece_distance(p, piece));
  return d;
}

/// Geodesic distance from p to the boundary of the body.
inline double distance_to_boundary(const ConvexBody& body, const Vec3& p) {
  double d = kPi;
  for (const auto& piece : body.pieces) d = std::min(d, point_to_piece_distance(p, piece));
  return d;
}

/// Largest geodesic distance from p to a point of the body.
inline double farthest_distance(const ConvexBody& body, const Vec3& p) {
  if (support_min_dot(body, -p) >= 0) return kPi;
  return std::acos(clamp_unit(body_min_dot(body, p)));
}

struct BoundaryLocation {
  std::size_t piece = 0;
  double s = 0;
  double distance = kPi;
};

inline BoundaryLocation locate_on_boundary(const ConvexBody& body, const Vec3& p) {
  BoundaryLocation best;
  for (std::size_t i = 0; i < body.pieces.size(); ++i) {
    const double s = nearest_parameter(body.pieces[i], p);
    const double d = geodesic_distance(p, point_at(body.pieces[i], s));
    if (d < best.distance) best = {i, s, d};
  }
  return best;
}

/// Supporting poles at a boundary point: a single pole at smooth points, the
/// great arc of poles between the adjacent pieces' poles at a vertex.
struct SupportSet {
  UnitVector at;
  std::variant<UnitVector, GreatArc> poles;

  bool unique() const { return std::holds_alternative<UnitVector>(poles); }
  UnitVector representative() const {
    if (auto k = std::get_if<UnitVector>(&poles)) return *k;
    const auto& arc = std::get<GreatArc>(poles);
    return UnitVector(arc.from().vec() + arc.to().vec());
  }
  bool contains_pole(const Vec3& k, double tol) const {
    if (auto u = std::get_if<UnitVector>(&poles)) return geodesic_distance(*u, k) <= tol;
    const auto& arc = std::get<GreatArc>(poles);
    return on_great_arc(k, arc.from(), arc.to(), tol);
  }
};

inline SupportSet support_poles_at(const ConvexBody& body, const UnitVector& p,
                                   double tol = kBoundaryTol) {
  const auto loc = locate_on_boundary(body, p);
  if (loc.distance > tol)
    throw GeometryError(ErrorKind::NotOnBoundary, "point is not on the boundary");
  const std::size_t n = body.pieces.size();
  const auto& piece = body.pieces[loc.piece];
  const double len = arc_length(piece);
  std::optional<std::pair<std::size_t, std::size_t>> junction;
  if (loc.s * len <= tol) junction = {prev_index(loc.piece, n), loc.piece};
  else if ((1 - loc.s) * len <= tol) junction = {loc.piece, next_index(loc.piece, n)};
  if (!junction) return {p, pole_at(piece, loc.s)};
  const UnitVector k_in = pole_at(body.pieces[junction->first], 1);
  const UnitVector k_out = pole_at(body.pieces[junction->second], 0);
  if (geodesic_distance(k_in, k_out) < kDegenerateDot) return {p, k_in};
  return {p, GreatArc(k_in, k_out)};
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

namespace detail {

inline bool same_circle(const SmallCircleArc& a, const SmallCircleArc& b) {
  return std::abs(a.radius() - b.radius()) < 1e-12 &&
         dot(a.center(), b.center()) > 1 - 1e-15;
}

// Try to merge b onto the end of a.
inline std::optional<BoundaryPiece> merge_pieces(const BoundaryPiece& a,
                                                 const BoundaryPiece& b) {
  if (is_great(a) && is_great(b)) {
    const auto& ga = std::get<GreatArc>(a);
    const auto& gb = std::get<GreatArc>(b);
    if (dot(ga.pole(), gb.pole()) < 1 - 1e-14) return std::nullopt;
    if (ga.angle() + gb.angle() >= kPi - 1e-6) return std::nullopt;
    return BoundaryPiece(GreatArc(ga.from(), gb.to()));
  }
  if (is_small(a) && is_small(b)) {
    const auto& ca = std::get<SmallCircleArc>(a);
    const auto& cb = std::get<SmallCircleArc>(b);
    if (!same_circle(ca, cb) || ca.span() <= 0 || cb.span() <= 0) return std::nullopt;
    const double gap = ca.az_to() - cb.az_from();
    const double k = std::round(gap / kTwoPi);
    if (std::abs(gap - k * kTwoPi) > 1e-12) return std::nullopt;
    const double total = ca.span() + cb.span();
    if (total > kTwoPi + 1e-9) return std::nullopt;
    return BoundaryPiece(SmallCircleArc(ca.center(), ca.radius(), ca.az_from(),
                                        ca.az_from() + std::min(total, kTwoPi)));
  }
  return std::nullopt;
}

inline BoundaryPiece canonical_azimuth(const BoundaryPiece& p) {
  if (is_great(p)) return p;
  const auto& c = std::get<SmallCircleArc>(p);
  if (c.full_circle() && c.span() > 0)
    return SmallCircleArc(c.center(), c.radius(), 0, kTwoPi);
  return p;
}

}  // namespace detail

/// Drops negligible pieces, merges collinear great arcs and contiguous arcs of
/// one circle, and canonicalizes azimuths. The point set is unchanged.
inline ConvexBody simplify(ConvexBody body, double min_length = 1e-12) {
  std::vector<BoundaryPiece> pieces;
  for (const auto& p : body.pieces)
    if (arc_length(p) > min_length) pieces.push_back(p);
  bool changed = true;
  while (changed && pieces.size() > 1) {
    changed = false;
    for (std::size_t i = 0; i < pieces.size() && pieces.size() > 1; ++i) {
      const std::size_t j = next_index(i, pieces.size());
      if (auto m = detail::merge_pieces(pieces[i], pieces[j])) {
        pieces[i] = *m;
        pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(j));
        if (j < i) i = i - 1;
        changed = true;
      }
    }
  }
  if (pieces.size() == 1) pieces[0] = detail::canonical_azimuth(pieces[0]);
  body.pieces = std::move(pieces);
  return body;
}

/// Normalized centroid of boundary samples; an interior witness for the
/// bodies this library produces.
inline UnitVector boundary_centroid(const ConvexBody& body) {
  Vec3 sum{};
  const double total = perimeter(body);
  for (const auto& p : body.pieces) {
    const std::size_t n = std::max<std::size_t>(2, std::size_t(64 * arc_length(p) / total) + 2);
    const double w = arc_length(p) / double(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k)
      sum += point_at(p, (k + 0.5) / double(n - 1)).vec() * w;
  }
  return UnitVector(sum);
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct ValidationReport {
  struct Check {
    std::string name;
    bool pass;
    double worst;  // worst violation magnitude (0 when clean)
  };
  std::vector<Check> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
  std::string first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return c.name;
    return {};
  }
  void add(std::string name, bool pass, double worst) {
    checks.push_back({std::move(name), pass, worst});
  }
};

/// Signed turning angle at the junction after piece i (left turns positive).
inline double junction_turn(const ConvexBody& body, std::size_t i) {
  const auto& a = body.pieces[i];
  const auto& b = body.pieces[next_index(i, body.pieces.size())];
  const UnitVector x = end_point(a);
  const Vec3 t_in = tangent_at(a, 1), t_out = tangent_at(b, 0);
  return std::atan2(dot(x, cross(t_in, t_out)), dot(t_in, t_out));
}

/// Enclosed area by Gauss-Bonnet; in (0, 2pi) for a hemispherical body.
inline double enclosed_area(const ConvexBody& body) {
  double turning = 0;
  for (std::size_t i = 0; i < body.pieces.size(); ++i) {
    turning += junction_turn(body, i);
    if (auto c = std::get_if<SmallCircleArc>(&body.pieces[i]))
      turning += c->cos_r() * c->span();
  }
  return kTwoPi - turning;
}

inline ValidationReport validate(const ConvexBody& body, double tol = kBoundaryTol) {
  ValidationReport report;
  const std::size_t n = body.pieces.size();
  report.add("piece_count", n >= 1, n >= 1 ? 0 : 1);
  if (n == 0) return report;

  double closure = 0;
  for (std::size_t i = 0; i < n; ++i)
    closure = std::max(closure, geodesic_distance(end_point(body.pieces[i]),
                                                  start_point(body.pieces[next_index(i, n)])));
  report.add("closure", closure <= tol, closure);

  double bulge = 0;
  for (const auto& p : body.pieces)
    if (auto c = std::get_if<SmallCircleArc>(&p))
      if (c->span() < 0) bulge = std::max(bulge, -c->span());
  report.add("outward_bulge", bulge == 0, bulge);

  double reflex = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double turn = junction_turn(body, i);
    if (turn < -1e-7) reflex = std::max(reflex, -turn);
    if (turn > kPi - 1e-9) reflex = std::max(reflex, turn - (kPi - 1e-9));
  }
  if (bulge > 0) reflex = std::max(reflex, bulge);
  report.add("convexity", reflex == 0, reflex);

  const double area = enclosed_area(body);
  double hemi = 0;
  if (!(area > 0 && area < kTwoPi)) hemi = area <= 0 ? -area + 1 : area - kTwoPi + 1;
  const double wmin = body_min_dot(body, body.interior);
  if (hemi == 0 && wmin <= 0) {
    const double cmin = body_min_dot(body, boundary_centroid(body));
    if (cmin <= 0) hemi = -std::max(wmin, cmin) + 1e-16;
  }
  report.add("hemisphericity", hemi == 0, hemi);

  const double inside = support_min_dot(body, body.interior);
  report.add("interior_witness", inside > tol, inside > tol ? 0 : tol - inside);
  return report;
}

inline ValidationReport validate(const Polytope& poly, double tol = kBoundaryTol) {
  ValidationReport report;
  const std::size_t n = poly.vertices.size();
  report.add("vertex_count", n >= 3, n >= 3 ? 0 : double(3 - n));
  if (n < 3) return report;
  double redundant = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = poly.vertices[prev_index(i, n)];
    const auto& b = poly.vertices[i];
    const auto& c = poly.vertices[next_index(i, n)];
    if (std::abs(dot(a, b)) >= 1 - kDegenerateDot || std::abs(dot(b, c)) >= 1 - kDegenerateDot) {
      redundant = 1;
      continue;
    }
    const double det = std::abs(orientation(a, b, c));
    if (det < 1e-12) redundant = std::max(redundant, 1e-12 - det);
  }
  report.add("no_redundant_vertices", redundant == 0, redundant);
  if (redundant > 0) return report;
  for (auto& c : validate(to_body(poly), tol).checks) report.checks.push_back(c);
  return report;
}

inline void require_valid(const ConvexBody& body) {
  const auto r = validate(body);
  if (!r.ok()) throw GeometryError(ErrorKind::InvalidBody, "failed check " + r.first_failure());
}

// ---------------------------------------------------------------------------
// Polar duality
// ---------------------------------------------------------------------------

/// Polar body ⋂_{P in body} H(P), with the boundary mapped piece by piece:
/// vertices become great arcs of poles, great arcs become vertices, and a
/// small arc (Z, r, S) becomes (Z, pi/2 - r, S + pi).
inline ConvexBody polar_dual(const ConvexBody& body) {
  require_valid(body);
  const std::size_t n = body.pieces.size();
  ConvexBody dual;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& piece = body.pieces[i];
    if (auto c = std::get_if<SmallCircleArc>(&piece))
      dual.pieces.emplace_back(SmallCircleArc(c->center(), kHalfPi - c->radius(),
                                              c->az_from() + kPi, c->az_to() + kPi));
    const UnitVector k_in = pole_at(piece, 1);
    const UnitVector k_out = pole_at(body.pieces[next_index(i, n)], 0);
    if (geodesic_distance(k_in, k_out) >= kDegenerateDot) dual.pieces.emplace_back(GreatArc(k_in, k_out));
  }
  dual = simplify(std::move(dual));
  dual.interior = boundary_centroid(dual);
  if (support_min_dot(dual, body.interior) > kBoundaryTol) dual.interior = body.interior;
  return dual;
}

inline Polytope polar_dual(const Polytope& poly) {
  Polytope dual;
  const std::size_t n = poly.vertices.size();
  for (std::size_t i = 0; i < n; ++i)
    dual.vertices.push_back(UnitVector(cross(poly.vertices[i], poly.vertices[next_index(i, n)])));
  return dual;
}

/// Vertex cycle of an all-great-arc body after merging collinear edges.
inline Polytope to_polytope(const ConvexBody& body) {
  const ConvexBody s = simplify(body);
  Polytope poly;
  for (const auto& p : s.pieces) {
    if (!is_great(p)) throw GeometryError(ErrorKind::InvalidBody, "body has a curved piece");
    poly.vertices.push_back(std::get<GreatArc>(p).from());
  }
  return poly;
}

// ---------------------------------------------------------------------------
// Diametral partners
// ---------------------------------------------------------------------------

struct DiametralPartner {
  UnitVector point;
  bool representative = false;  // set-valued case: midpoint of the pole arc
};

/// Partner of a boundary point of a self-dual body: the support pole at P,
/// which lies on the boundary at distance pi/2.
inline DiametralPartner partner_of(const ConvexBody& self_dual, const UnitVector& p) {
  const SupportSet s = support_poles_at(self_dual, p);
  return {s.representative(), !s.unique()};
}

}  // namespace scw
