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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace scw {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = kPi / 2;
inline constexpr double kTwoPi = 2 * kPi;

// Equality / antipodality threshold on dot products.
inline constexpr double kDegenerateDot = 1e-12;
// Point-on-boundary tolerance (radians).
inline constexpr double kBoundaryTol = 1e-9;

enum class ErrorKind {
  DegenerateVector,
  DegenerateLune,
  DegenerateArc,
  AmbiguousSide,
  BadPiece,
  InvalidBody,
  NotOnBoundary,
  NotSelfDual,
  NotSupporting,
  NotStrictlyConvex,
  DualOverlap,
  NotConstantWidth,
  CertificationFailed,
  SeedNotSubdual,
  BadRadius,
  BadConfig,
  ParseError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateVector: return "DegenerateVector";
    case ErrorKind::DegenerateLune: return "DegenerateLune";
    case ErrorKind::DegenerateArc: return "DegenerateArc";
    case ErrorKind::AmbiguousSide: return "AmbiguousSide";
    case ErrorKind::BadPiece: return "BadPiece";
    case ErrorKind::InvalidBody: return "InvalidBody";
    case ErrorKind::NotOnBoundary: return "NotOnBoundary";
    case ErrorKind::NotSelfDual: return "NotSelfDual";
    case ErrorKind::NotSupporting: return "NotSupporting";
    case ErrorKind::NotStrictlyConvex: return "NotStrictlyConvex";
    case ErrorKind::DualOverlap: return "DualOverlap";
    case ErrorKind::NotConstantWidth: return "NotConstantWidth";
    case ErrorKind::CertificationFailed: return "CertificationFailed";
    case ErrorKind::SeedNotSubdual: return "SeedNotSubdual";
    case ErrorKind::BadRadius: return "BadRadius";
    case ErrorKind::BadConfig: return "BadConfig";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// ---------------------------------------------------------------------------
// Vectors
// ---------------------------------------------------------------------------

struct Vec3 {
  double x = 0, y = 0, z = 0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
constexpr double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double clamp_unit(double c) { return std::clamp(c, -1.0, 1.0); }

/// A point of the unit sphere. Construction renormalizes, except that input
/// already of unit length (to rounding) is kept bit for bit.
class UnitVector {
 public:
  UnitVector() = default;
  UnitVector(double x, double y, double z) : UnitVector(Vec3{x, y, z}) {}
  explicit UnitVector(const Vec3& v) {
    const double n2 = dot(v, v);
    if (!(n2 > 1e-300) || !std::isfinite(n2))
      throw GeometryError(ErrorKind::DegenerateVector, "cannot normalize zero vector");
    v_ = std::abs(n2 - 1) <= 4 * std::numeric_limits<double>::epsilon() ? v : v / std::sqrt(n2);
  }

  double x() const { return v_.x; }
  double y() const { return v_.y; }
  double z() const { return v_.z; }
  const Vec3& vec() const { return v_; }
  operator const Vec3&() const { return v_; }  // NOLINT
  UnitVector operator-() const {
    UnitVector r;
    r.v_ = -v_;
    return r;
  }

 private:
  Vec3 v_{0, 0, 1};
};

inline UnitVector normalized(const Vec3& v) { return UnitVector(v); }

inline const UnitVector kE1{1, 0, 0};
inline const UnitVector kE2{0, 1, 0};
inline const UnitVector kE3{0, 0, 1};

/// Geodesic distance in [0, pi]. Uses atan2 of the sine and cosine, which
/// equals arccos of the clamped dot product and keeps precision near 0 and pi.
inline double geodesic_distance(const Vec3& p, const Vec3& q) {
  return std::atan2(norm(cross(p, q)), dot(p, q));
}

/// Thickness of the lune H(a) ∩ H(b).
inline double lune_thickness(const UnitVector& pole_a, const UnitVector& pole_b) {
  if (std::abs(dot(pole_a, pole_b)) >= 1 - kDegenerateDot)
    throw GeometryError(ErrorKind::DegenerateLune, "poles equal or antipodal");
  return kPi - geodesic_distance(pole_a, pole_b);
}

/// Pole of the great circle through p1, p2, on the side of side_hint.
inline UnitVector arc_pole(const UnitVector& p1, const UnitVector& p2,
                           const Vec3& side_hint) {
  if (std::abs(dot(p1, p2)) >= 1 - kDegenerateDot)
    throw GeometryError(ErrorKind::DegenerateArc, "arc endpoints equal or antipodal");
  const UnitVector n(cross(p1, p2));
  const double s = dot(n, side_hint);
  if (std::abs(s) < kDegenerateDot)
    throw GeometryError(ErrorKind::AmbiguousSide, "side hint orthogonal to pole line");
  return s > 0 ? n : -n;
}

struct Hemisphere {
  UnitVector pole;
  bool contains(const Vec3& q) const { return dot(pole, q) >= 0; }
};

class Lune {
 public:
  Lune(const UnitVector& a, const UnitVector& b) : a_(a), b_(b) {
    if (std::abs(dot(a, b)) >= 1 - kDegenerateDot)
      throw GeometryError(ErrorKind::DegenerateLune, "poles equal or antipodal");
  }
  const UnitVector& pole_a() const { return a_; }
  const UnitVector& pole_b() const { return b_; }
  double thickness() const { return lune_thickness(a_, b_); }
  bool contains(const Vec3& q) const { return dot(a_, q) >= 0 && dot(b_, q) >= 0; }

 private:
  UnitVector a_, b_;
};

/// Fixed tangent frame (u, v) at a circle center; azimuth phi points along
/// cos(phi) u + sin(phi) v, counterclockwise about the center.
struct TangentFrame {
  Vec3 u, v;
};

inline TangentFrame tangent_frame(const UnitVector& c) {
  const Vec3 seed = std::abs(c.x()) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const Vec3 u = UnitVector(seed - c.vec() * dot(seed, c)).vec();
  return {u, cross(c, u)};
}

// Reduce an angle into [0, 2pi).
inline double wrap_two_pi(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a = 0;
  return a;
}

// ---------------------------------------------------------------------------
// Boundary pieces
// ---------------------------------------------------------------------------

/// Minor great-circle arc, traversed from `from` to `to`.
class GreatArc {
 public:
  // Degeneracy is judged on the angle (equal or antipodal within 1e-12 rad),
  // so that short connector arcs stay representable.
  GreatArc(const UnitVector& from, const UnitVector& to) : from_(from), to_(to) {
    angle_ = geodesic_distance(from, to);
    if (angle_ < kDegenerateDot || angle_ > kPi - kDegenerateDot)
      throw GeometryError(ErrorKind::DegenerateArc, "arc endpoints equal or antipodal");
    pole_ = UnitVector(cross(from, to));
    perp_ = cross(pole_, from_);
  }

  const UnitVector& from() const { return from_; }
  const UnitVector& to() const { return to_; }
  // Left-hand pole: the side a counterclockwise boundary keeps its interior on.
  const UnitVector& pole() const { return pole_; }
  double angle() const { return angle_; }
  const Vec3& perp() const { return perp_; }

  Vec3 at_angle(double t) const { return from_.vec() * std::cos(t) + perp_ * std::sin(t); }

 private:
  UnitVector from_, to_, pole_;
  Vec3 perp_;
  double angle_ = 0;
};

/// Arc of the circle of angular radius `radius` about `center`, from azimuth
/// az_from to az_to. A positive span runs counterclockwise (bulging outward
/// for a counterclockwise boundary); a negative span is representable so that
/// validation can reject it.
class SmallCircleArc {
 public:
  SmallCircleArc(const UnitVector& center, double radius, double az_from, double az_to)
      : center_(center), radius_(radius), az_from_(az_from), az_to_(az_to) {
    if (!(radius > 0 && radius < kHalfPi))
      throw GeometryError(ErrorKind::BadPiece, "small circle radius must lie in (0, pi/2)");
    const double span = std::abs(az_to - az_from);
    if (!(span > 0 && span <= kTwoPi + 1e-12))
      throw GeometryError(ErrorKind::BadPiece, "azimuth span must lie in (0, 2pi]");
    frame_ = tangent_frame(center);
    cos_r_ = std::cos(radius);
    sin_r_ = std::sin(radius);
  }

  const UnitVector& center() const { return center_; }
  double radius() const { return radius_; }
  double az_from() const { return az_from_; }
  double az_to() const { return az_to_; }
  double span() const { return az_to_ - az_from_; }
  const TangentFrame& frame() const { return frame_; }
  double cos_r() const { return cos_r_; }
  double sin_r() const { return sin_r_; }
  bool full_circle() const { return std::abs(span()) >= kTwoPi - 1e-12; }

  Vec3 radial(double phi) const {
    return frame_.u * std::cos(phi) + frame_.v * std::sin(phi);
  }
  Vec3 at_azimuth(double phi) const {
    return center_.vec() * cos_r_ + radial(phi) * sin_r_;
  }
  // Azimuth of the projection of p about the center.
  double azimuth_of(const Vec3& p) const {
    return std::atan2(dot(p, frame_.v), dot(p, frame_.u));
  }

 private:
  UnitVector center_;
  double radius_;
  double az_from_, az_to_;
  TangentFrame frame_;
  double cos_r_ = 1, sin_r_ = 0;
};

using BoundaryPiece = std::variant<GreatArc, SmallCircleArc>;

inline bool is_great(const BoundaryPiece& p) { return std::holds_alternative<GreatArc>(p); }
inline bool is_small(const BoundaryPiece& p) { return std::holds_alternative<SmallCircleArc>(p); }

// Angular extent of the natural parameter (arc angle, or azimuth span).
inline double parameter_extent(const BoundaryPiece& piece) {
  if (auto g = std::get_if<GreatArc>(&piece)) return g->angle();
  return std::get<SmallCircleArc>(piece).span();
}

inline double arc_length(const BoundaryPiece& piece) {
  if (auto g = std::get_if<GreatArc>(&piece)) return g->angle();
  const auto& c = std::get<SmallCircleArc>(piece);
  return c.sin_r() * std::abs(c.span());
}

/// Point at fraction s in [0, 1] of the natural parameter.
inline UnitVector point_at(const BoundaryPiece& piece, double s) {
  if (auto g = std::get_if<GreatArc>(&piece)) {
    if (s <= 0) return g->from();
    if (s >= 1) return g->to();
    return UnitVector(g->at_angle(s * g->angle()));
  }
  const auto& c = std::get<SmallCircleArc>(piece);
  return UnitVector(c.at_azimuth(c.az_from() + s * c.span()));
}

inline UnitVector start_point(const BoundaryPiece& p) { return point_at(p, 0); }
inline UnitVector end_point(const BoundaryPiece& p) { return point_at(p, 1); }

/// Unit direction of travel at fraction s.
inline Vec3 tangent_at(const BoundaryPiece& piece, double s) {
  if (auto g = std::get_if<GreatArc>(&piece)) {
    const double t = s * g->angle();
    return g->perp() * std::cos(t) - g->from().vec() * std::sin(t);
  }
  const auto& c = std::get<SmallCircleArc>(piece);
  const double phi = c.az_from() + s * c.span();
  const Vec3 d = c.frame().v * std::cos(phi) - c.frame().u * std::sin(phi);
  return c.span() >= 0 ? d : -d;
}

/// Supporting pole at fraction s: the unit vector orthogonal to the boundary
/// point, in the plane of the point and its interior normal.
inline UnitVector pole_at(const BoundaryPiece& piece, double s) {
  if (auto g = std::get_if<GreatArc>(&piece)) return g->pole();
  const auto& c = std::get<SmallCircleArc>(piece);
  const double phi = c.az_from() + s * c.span();
  return UnitVector(c.center().vec() * c.sin_r() - c.radial(phi) * c.cos_r());
}

inline BoundaryPiece sub_piece(const BoundaryPiece& piece, double s0, double s1) {
  if (auto g = std::get_if<GreatArc>(&piece))
    return GreatArc(point_at(piece, s0), point_at(piece, s1));
  const auto& c = std::get<SmallCircleArc>(piece);
  return SmallCircleArc(c.center(), c.radius(), c.az_from() + s0 * c.span(),
                        c.az_from() + s1 * c.span());
}

namespace detail {

// Extremum of a cos(t) + b sin(t) over t in [0, extent] (extent >= 0).
struct SinusoidExtremum {
  double value;
  double t;
};

inline SinusoidExtremum sinusoid_max(double a, double b, double extent) {
  SinusoidExtremum best{a, 0};
  const double end = a * std::cos(extent) + b * std::sin(extent);
  if (end > best.value) best = {end, extent};
  const double amp = std::hypot(a, b);
  if (amp > 0) {
    const double t = wrap_two_pi(std::atan2(b, a));
    if (t <= extent && amp > best.value) best = {amp, t};
  }
  return best;
}

inline SinusoidExtremum sinusoid_min(double a, double b, double extent) {
  auto r = sinusoid_max(-a, -b, extent);
  return {-r.value, r.t};
}

}  // namespace detail

/// Maximum of y·x over points x of the piece (closed form).
inline double max_dot(const BoundaryPiece& piece, const Vec3& y) {
  if (auto g = std::get_if<GreatArc>(&piece))
    return detail::sinusoid_max(dot(y, g->from()), dot(y, g->perp()), g->angle()).value;
  const auto& c = std::get<SmallCircleArc>(piece);
  const double p = dot(y, c.frame().u), q = dot(y, c.frame().v);
  // Shift parameter to start at az_from; orientation flips for negative span.
  const double a0 = c.span() >= 0 ? c.az_from() : c.az_to();
  const double ca = std::cos(a0), sa = std::sin(a0);
  const double a = p * ca + q * sa, b = -p * sa + q * ca;
  return c.cos_r() * dot(y, c.center()) +
         c.sin_r() * detail::sinusoid_max(a, b, std::abs(c.span())).value;
}

/// Minimum of y·x over points x of the piece (closed form).
inline double min_dot(const BoundaryPiece& piece, const Vec3& y) {
  return -max_dot(piece, -y);
}

/// Nearest fraction on the piece to p.
inline double nearest_parameter(const BoundaryPiece& piece, const Vec3& p) {
  if (auto g = std::get_if<GreatArc>(&piece)) {
    auto r = detail::sinusoid_max(dot(p, g->from()), dot(p, g->perp()), g->angle());
    return r.t / g->angle();
  }
  const auto& c = std::get<SmallCircleArc>(piece);
  const double p_u = dot(p, c.frame().u), p_v = dot(p, c.frame().v);
  const double a0 = c.span() >= 0 ? c.az_from() : c.az_to();
  const double ca = std::cos(a0), sa = std::sin(a0);
  auto r = detail::sinusoid_max(p_u * ca + p_v * sa, -p_u * sa + p_v * ca,
                                std::abs(c.span()));
  const double f = r.t / std::abs(c.span());
  return c.span() >= 0 ? f : 1 - f;
}

/// Minimum geodesic distance from p to the piece.
inline double point_to_piece_distance(const Vec3& p, const BoundaryPiece& piece) {
  const UnitVector x = point_at(piece, nearest_parameter(piece, p));
  return geodesic_distance(p, x);
}

/// Maximum geodesic distance from p to the piece.
inline double point_to_piece_max_distance(const Vec3& p, const BoundaryPiece& piece) {
  return std::acos(clamp_unit(min_dot(piece, p)));
}

/// n points evenly spaced in the natural parameter, endpoints included.
inline std::vector<UnitVector> sample_piece(const BoundaryPiece& piece, std::size_t n) {
  if (n < 2) throw GeometryError(ErrorKind::BadConfig, "sample_piece needs n >= 2");
  std::vector<UnitVector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(point_at(piece, double(i) / double(n - 1)));
  return out;
}

// ---------------------------------------------------------------------------
// Predicates
// ---------------------------------------------------------------------------

inline double orientation(const Vec3& a, const Vec3& b, const Vec3& c) {
  return dot(cross(a, b), c);
}

/// Whether point p lies on the minor great arc a-b within tol radians.
inline bool on_great_arc(const Vec3& p, const UnitVector& a, const UnitVector& b,
                         double tol) {
  if (geodesic_distance(p, a) <= tol || geodesic_distance(p, b) <= tol) return true;
  return point_to_piece_distance(p, GreatArc(a, b)) <= tol;
}

/// Whether the minor great arcs a-b and c-d share a point. Proper crossings
/// use the four orientation signs; touching configurations are resolved with
/// the point-on-arc test at tolerance tol.
inline bool arcs_intersect(const UnitVector& a, const UnitVector& b, const UnitVector& c,
                           const UnitVector& d, double tol = 1e-12) {
  if (on_great_arc(a, c, d, tol) || on_great_arc(b, c, d, tol) ||
      on_great_arc(c, a, b, tol) || on_great_arc(d, a, b, tol))
    return true;
  const double acb = orientation(a, c, b);
  const double bda = orientation(b, d, a);
  const double cbd = orientation(c, b, d);
  const double dac = orientation(d, a, c);
  return (acb > 0 && bda > 0 && cbd > 0 && dac > 0) ||
         (acb < 0 && bda < 0 && cbd < 0 && dac < 0);
}

}  // namespace scw
