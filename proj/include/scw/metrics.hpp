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
#include <queue>
#include <vector>

#include "scw/body.hpp"

namespace scw {

inline constexpr double kCertifyTol = 1e-7;

// ---------------------------------------------------------------------------
// Certified maximization along a boundary
// ---------------------------------------------------------------------------

struct BoundaryMax {
  double lower = -std::numeric_limits<double>::infinity();  // attained value
  double upper = std::numeric_limits<double>::infinity();   // certified bound
  UnitVector argmax;
  std::size_t evaluations = 0;
};

/// Value of a 1-Lipschitz boundary function together with a sublinear
/// (convex, positively homogeneous) quantity sigma such that the value is a
/// nondecreasing function of sigma.
struct SublinearSample {
  double value;
  double sigma;
};

namespace detail {

struct MaxNode {
  std::size_t piece;
  double s0, s1;
  SublinearSample f0, f1;
  double bound;
  bool operator<(const MaxNode& o) const { return bound < o.bound; }
};

}  // namespace detail

/// Branch and bound over the boundary. Each segment's bound is the smaller of
/// the Lipschitz bound (f0 + f1 + length) / 2 and lift(sigma bound), where the
/// sigma bound comes from writing every point of the segment as a positive
/// combination of the segment's endpoints (and, for small arcs, the apex of
/// its tangent lines). The lift is only trusted on segments whose Lipschitz
/// bound is at most lift_limit. Stops when the best bound is within tol of
/// the best attained value.
template <class Eval, class Lift>
BoundaryMax certified_boundary_max(const ConvexBody& body, Eval&& eval, Lift&& lift,
                                   double tol = kCertifyTol,
                                   double lift_limit = std::numeric_limits<double>::infinity(),
                                   std::size_t max_evaluations = 4'000'000) {
  BoundaryMax result;
  std::priority_queue<detail::MaxNode> queue;

  auto visit = [&](const UnitVector& x) {
    const SublinearSample f = eval(x);
    ++result.evaluations;
    if (f.value > result.lower) {
      result.lower = f.value;
      result.argmax = x;
    }
    return f;
  };

  auto make_node = [&](std::size_t i, double s0, double s1, SublinearSample f0,
                       SublinearSample f1) {
    const auto& piece = body.pieces[i];
    const UnitVector x0 = point_at(piece, s0), x1 = point_at(piece, s1);
    const double length = arc_length(piece) * (s1 - s0);
    double bound = 0.5 * (f0.value + f1.value + length);
    if (bound > lift_limit) {
      queue.push({i, s0, s1, f0, f1, bound});
      return;
    }
    double smax = std::max(f0.sigma, f1.sigma);
    double cos_rho;
    if (auto c = std::get_if<SmallCircleArc>(&piece)) {
      const double half = 0.5 * std::abs(c->span()) * (s1 - s0);
      const double phi_mid = c->az_from() + 0.5 * (s0 + s1) * c->span();
      const double apex_r = std::atan(std::tan(c->radius()) / std::cos(half));
      const UnitVector apex(c->center().vec() * std::cos(apex_r) +
                            c->radial(phi_mid) * std::sin(apex_r));
      smax = std::max(smax, eval(apex).sigma);
      ++result.evaluations;
      const Vec3 mid = x0.vec() + x1.vec() + apex.vec();
      const UnitVector m(mid);
      cos_rho = std::min({dot(m, x0), dot(m, x1), dot(m, apex)});
    } else {
      const UnitVector m(x0.vec() + x1.vec());
      cos_rho = dot(m, x0);
    }
    if (cos_rho > 0) {
      const double sb = smax > 0 ? smax / cos_rho : smax;
      bound = std::min(bound, lift(sb));
    }
    queue.push({i, s0, s1, f0, f1, bound});
  };

  for (std::size_t i = 0; i < body.pieces.size(); ++i) {
    const auto& piece = body.pieces[i];
    const std::size_t parts =
        std::max<std::size_t>(1, std::size_t(std::ceil(std::abs(parameter_extent(piece)) /
                                                        (kHalfPi / 2))));
    SublinearSample prev = visit(point_at(piece, 0));
    for (std::size_t k = 0; k < parts; ++k) {
      const double s0 = double(k) / double(parts), s1 = double(k + 1) / double(parts);
      SublinearSample next = visit(point_at(piece, s1));
      make_node(i, s0, s1, prev, next);
      prev = next;
    }
  }

  while (!queue.empty()) {
    const detail::MaxNode top = queue.top();
    if (top.bound <= result.lower + tol || result.evaluations >= max_evaluations) {
      result.upper = std::max(result.lower, top.bound);
      return result;
    }
    queue.pop();
    const double sm = 0.5 * (top.s0 + top.s1);
    const SublinearSample fm = visit(point_at(body.pieces[top.piece], sm));
    make_node(top.piece, top.s0, sm, top.f0, fm);
    make_node(top.piece, sm, top.s1, fm, top.f1);
  }
  result.upper = result.lower;
  return result;
}

// ---------------------------------------------------------------------------
// Hausdorff distance
// ---------------------------------------------------------------------------

struct HausdorffBound {
  double lower = 0;  // attained, within the certification tolerance of the truth
  double upper = 0;  // certified upper bound
};

/// sup over the boundary of a of the distance to b. For points within pi/2
/// of b, sin(distance) = max(0, -support_min_dot(b, x)), whose argument is
/// sublinear in x. Farther away only the Lipschitz bound applies.
inline BoundaryMax directed_hausdorff(const ConvexBody& a, const ConvexBody& b,
                                      double tol = kCertifyTol) {
  auto eval = [&](const UnitVector& x) -> SublinearSample {
    const double sigma = -support_min_dot(b, x);
    if (sigma <= 0) return {0, sigma};
    return {distance_to_boundary(b, x), sigma};
  };
  auto lift = [](double s) {
    if (s <= 0) return 0.0;
    if (s < 1) return std::asin(s);
    return std::numeric_limits<double>::infinity();
  };
  return certified_boundary_max(a, eval, lift, tol, kHalfPi);
}

inline HausdorffBound hausdorff_bounds(const ConvexBody& a, const ConvexBody& b,
                                       double tol = kCertifyTol) {
  const BoundaryMax ab = directed_hausdorff(a, b, tol);
  const BoundaryMax ba = directed_hausdorff(b, a, tol);
  return {std::max({0.0, ab.lower, ba.lower}), std::max({0.0, ab.upper, ba.upper})};
}

/// Geodesic Hausdorff distance, accurate to the certification tolerance.
inline double hausdorff(const ConvexBody& a, const ConvexBody& b) {
  return hausdorff_bounds(a, b).lower;
}

inline double self_duality_residual(const ConvexBody& body) {
  return hausdorff(body, polar_dual(body));
}

// ---------------------------------------------------------------------------
// Width, thickness, diameter
// ---------------------------------------------------------------------------

/// Largest distance between two points of the body. The farthest distance
/// from x is arccos(-sigma) with sigma = max over the body of -x·y, which is
/// sublinear in x.
inline BoundaryMax diameter_bounds(const ConvexBody& body, double tol = kCertifyTol) {
  auto eval = [&](const UnitVector& x) -> SublinearSample {
    const double m = body_min_dot(body, x);
    return {std::acos(clamp_unit(m)), -m};
  };
  auto lift = [](double s) { return std::acos(clamp_unit(-s)); };
  return certified_boundary_max(body, eval, lift, tol);
}

inline double diameter(const ConvexBody& body) { return diameter_bounds(body).lower; }

namespace detail {

inline double width_against_dual(const ConvexBody& dual, const Vec3& k) {
  return kPi - farthest_distance(dual, k);
}

}  // namespace detail

/// Width with respect to the supporting hemisphere H(k): the thinnest lune
/// H(k) ∩ H(k') over supporting poles k', which range over the polar body.
inline double width_wrt(const ConvexBody& body, const UnitVector& k) {
  const double m = body_min_dot(body, k);
  if (m < -kBoundaryTol || m > kBoundaryTol)
    throw GeometryError(ErrorKind::NotSupporting, "H(K) does not support the body");
  return detail::width_against_dual(polar_dual(body), k);
}

/// Minimum width over all supporting hemispheres. Since the widths are
/// pi minus the farthest distance inside the polar body, this is pi minus the
/// polar body's diameter.
inline double thickness(const ConvexBody& body) {
  return kPi - diameter(polar_dual(body));
}

struct WidthReport {
  double width_min = 0;
  double width_max = 0;
  double diameter = 0;
  double thickness = 0;
  std::optional<double> self_duality_residual;
  bool pass = false;
};

/// Sweep of widths over supporting poles (evenly spaced along the polar
/// boundary plus every piece endpoint), together with the certified minimum.
inline WidthReport is_constant_width(const ConvexBody& body, double tau, double tol,
                                     std::size_t sweep = 4096) {
  const ConvexBody dual = polar_dual(body);
  WidthReport report;
  report.thickness = kPi - diameter(dual);
  report.diameter = diameter(body);
  double wmin = std::numeric_limits<double>::infinity(), wmax = -wmin;
  auto visit = [&](const Vec3& k) {
    const double w = detail::width_against_dual(dual, k);
    wmin = std::min(wmin, w);
    wmax = std::max(wmax, w);
  };
  const double total = perimeter(dual);
  for (const auto& p : dual.pieces) {
    visit(start_point(p));
    const std::size_t n = std::size_t(double(sweep) * arc_length(p) / total);
    for (std::size_t k = 1; k <= n; ++k) visit(point_at(p, double(k) / double(n + 1)));
  }
  report.width_min = std::min(wmin, report.thickness);
  report.width_max = wmax;
  if (std::abs(tau - kHalfPi) < 1e-15) report.self_duality_residual = hausdorff(body, dual);
  report.pass = report.width_max - report.width_min <= tol &&
                std::abs(report.width_min - tau) <= tol;
  return report;
}

// ---------------------------------------------------------------------------
// Self-dual bodies
// ---------------------------------------------------------------------------

inline constexpr double kSelfDualTol = 1e-6;

/// A body verified to coincide with its polar within a tolerance; answers
/// diametral-partner queries.
class SelfDualBody {
 public:
  explicit SelfDualBody(ConvexBody body, double tol = kSelfDualTol) : body_(std::move(body)) {
    residual_ = self_duality_residual(body_);
    if (residual_ > tol)
      throw GeometryError(ErrorKind::NotSelfDual,
                          "self-duality residual " + std::to_string(residual_));
  }

  const ConvexBody& body() const { return body_; }
  double residual() const { return residual_; }
  DiametralPartner partner(const UnitVector& p) const { return partner_of(body_, p); }

 private:
  ConvexBody body_;
  double residual_ = 0;
};

inline DiametralPartner diametral_partner(const ConvexBody& body, const UnitVector& p,
                                          double tol = kSelfDualTol) {
  return SelfDualBody(body, tol).partner(p);
}

}  // namespace scw
