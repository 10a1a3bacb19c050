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

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "scw/metrics.hpp"

namespace scw {

/// One primal/dual edit: the sub-arc P1P2 of a small circle piece becomes the
/// chord P1P2, and the matching sub-arc Q1Q2 of the paired piece becomes the
/// two great arcs Q1-R1-Q2 through the chord's pole R1.
struct StepRecord {
  UnitVector p1, p2, q1, q2, r1;
  std::size_t primal_piece = 0;
  std::size_t dual_piece = 0;
  double r1_distance = 0;  // dist(R1, body) before the step
  // Filled in by the driver / verification.
  std::size_t round = 0;
  double budget = 0;
  double step_hausdorff = -1;   // h(before, after), -1 when not verified
  double residual_after = -1;   // self-duality residual of the result
  double convex_length_before = 0;
  double convex_length_after = 0;
};

struct ApproximationConfig {
  double epsilon = 0.1;
  double self_dual_tol = kSelfDualTol;
  std::size_t max_rounds = 64;
  double subdivision_safety = 0.5;
  // Recompute residual and step distance after every cut.
  bool verify_steps = true;
  std::size_t max_refinements = 16;

  void check() const {
    if (!(epsilon > 0)) throw GeometryError(ErrorKind::BadConfig, "epsilon must be positive");
    if (max_rounds < 1) throw GeometryError(ErrorKind::BadConfig, "max_rounds must be >= 1");
    if (!(subdivision_safety > 0 && subdivision_safety < 1))
      throw GeometryError(ErrorKind::BadConfig, "subdivision_safety must lie in (0, 1)");
    if (!(self_dual_tol > 0)) throw GeometryError(ErrorKind::BadConfig, "self_dual_tol must be positive");
  }
};

struct Certificate {
  double epsilon = 0;
  double hausdorff_bound = 0;  // certified upper bound on h(original, result)
  double hausdorff_value = 0;  // attained lower value
  double width_min = 0;
  double width_max = 0;
  double self_duality_residual = 0;
  std::size_t steps = 0;
  std::size_t rounds = 0;
  bool passed = false;
  std::string violation;
};

// ---------------------------------------------------------------------------
// Subdivision
// ---------------------------------------------------------------------------

namespace detail {

inline double chord_pole_distance(const ConvexBody& body, const SmallCircleArc& arc,
                                  const UnitVector& a, const UnitVector& b) {
  return distance_to_body(body, arc_pole(a, b, arc.center()));
}

}  // namespace detail

/// Points P_1..P_l (endpoints included, evenly spaced in azimuth) on a small
/// circle piece such that every chord's pole is within eps * safety of the
/// body. The count is the smallest that passes, found by doubling then
/// bisection.
inline std::vector<UnitVector> subdivide_piece(const ConvexBody& body, std::size_t piece_id,
                                               double eps, double safety = 0.5) {
  if (piece_id >= body.pieces.size())
    throw GeometryError(ErrorKind::BadConfig, "piece index out of range");
  const auto* arc = std::get_if<SmallCircleArc>(&body.pieces[piece_id]);
  if (!arc) throw GeometryError(ErrorKind::NotStrictlyConvex, "piece is a great arc");
  if (!(eps > 0)) throw GeometryError(ErrorKind::BadConfig, "eps must be positive");
  const BoundaryPiece& piece = body.pieces[piece_id];
  const double limit = eps * safety;
  const double span = std::abs(arc->span());

  auto passes = [&](std::size_t n) {
    UnitVector prev = point_at(piece, 0);
    for (std::size_t k = 1; k <= n; ++k) {
      const UnitVector next = point_at(piece, double(k) / double(n));
      if (!(detail::chord_pole_distance(body, *arc, prev, next) < limit)) return false;
      prev = next;
    }
    return true;
  };

  // Every chord must be a proper minor arc.
  std::size_t lo = std::size_t(std::floor(span / (kPi - 1e-6))) + 1;
  std::size_t hi = lo;
  while (!passes(hi)) {
    lo = hi + 1;
    hi *= 2;
    if (hi > (std::size_t(1) << 26))
      throw GeometryError(ErrorKind::BadConfig, "subdivision does not converge");
  }
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (passes(mid)) hi = mid;
    else lo = mid + 1;
  }
  return sample_piece(piece, hi + 1);
}

// ---------------------------------------------------------------------------
// One dual-paired edit
// ---------------------------------------------------------------------------

namespace detail {

struct ArcSpan {
  std::size_t piece;
  double s0, s1;  // fractions, s0 < s1
};

// Azimuth offset of p along a positively oriented arc, or nullopt when p is
// not on the arc's circle.
inline std::optional<double> arc_offset(const SmallCircleArc& arc, const Vec3& p) {
  const double radial = geodesic_distance(p, arc.center());
  if (std::abs(radial - arc.radius()) > kBoundaryTol) return std::nullopt;
  return wrap_two_pi(arc.azimuth_of(p) - arc.az_from());
}

// Find a small circle piece with the given circle that contains the sub-arc
// a -> b in its positive direction.
inline std::optional<ArcSpan> find_sub_arc(const ConvexBody& body, const Vec3& a,
                                           const Vec3& b, const UnitVector* center,
                                           double radius) {
  for (std::size_t i = 0; i < body.pieces.size(); ++i) {
    const auto* arc = std::get_if<SmallCircleArc>(&body.pieces[i]);
    if (!arc || arc->span() <= 0) continue;
    if (center && (dot(arc->center(), *center) < 1 - 1e-12 ||
                   std::abs(arc->radius() - radius) > kBoundaryTol))
      continue;
    auto oa = arc_offset(*arc, a), ob = arc_offset(*arc, b);
    if (!oa || !ob) continue;
    const double span = arc->span();
    const double tol = kBoundaryTol / arc->sin_r();
    double o0 = *oa, o1 = *ob;
    if (o0 > kTwoPi - tol) o0 = 0;
    if (o1 < tol && arc->full_circle()) o1 = kTwoPi;
    if (o1 > span && o1 - span < tol) o1 = span;
    if (o0 > span + tol || o1 > span + tol || !(o1 > o0 + 1e-14)) continue;
    return ArcSpan{i, o0 / span, std::min(o1, span) / span};
  }
  return std::nullopt;
}

inline void push_sub(std::vector<BoundaryPiece>& out, const BoundaryPiece& piece, double s0,
                     double s1) {
  if (s1 - s0 > 1e-15 && arc_length(piece) * (s1 - s0) > 1e-11)
    out.push_back(sub_piece(piece, s0, s1));
}

}  // namespace detail

struct CutOptions {
  double self_dual_tol = kSelfDualTol;
  bool check_input = true;  // verify the input residual first
  bool verify = true;       // validate the result and measure its residual
};

struct CutResult {
  ConvexBody body;
  StepRecord record;
};

/// Replace the sub-arc P1P2 of a small circle piece by its chord and the
/// partner sub-arc Q1Q2 by the great arcs Q1-R1, R1-Q2.
inline CutResult cut_step(const ConvexBody& body, const UnitVector& p1, const UnitVector& p2,
                          const CutOptions& options = {}) {
  if (options.check_input) {
    const double res = self_duality_residual(body);
    if (res > options.self_dual_tol)
      throw GeometryError(ErrorKind::NotSelfDual, "input residual " + std::to_string(res));
  }
  const auto primal = detail::find_sub_arc(body, p1, p2, nullptr, 0);
  if (!primal)
    throw GeometryError(ErrorKind::DualOverlap, "P1P2 is not a sub-arc of one strictly convex piece");
  const auto& piece = body.pieces[primal->piece];
  const auto& arc = std::get<SmallCircleArc>(piece);
  const UnitVector a1 = point_at(piece, primal->s0), a2 = point_at(piece, primal->s1);
  const UnitVector k1 = pole_at(piece, primal->s0), k2 = pole_at(piece, primal->s1);
  const auto dual = detail::find_sub_arc(body, k1, k2, &arc.center(), kHalfPi - arc.radius());
  if (!dual) throw GeometryError(ErrorKind::DualOverlap, "Q1Q2 is not a sub-arc of one strictly convex piece");
  if (dual->piece == primal->piece &&
      !(dual->s0 >= primal->s1 - 1e-15 || dual->s1 <= primal->s0 + 1e-15))
    throw GeometryError(ErrorKind::DualOverlap, "dual arc overlaps the primal arc");

  const auto& dual_piece = body.pieces[dual->piece];
  const UnitVector q1 = point_at(dual_piece, dual->s0), q2 = point_at(dual_piece, dual->s1);
  const UnitVector r1 = arc_pole(a1, a2, arc.center());

  StepRecord rec;
  rec.p1 = a1;
  rec.p2 = a2;
  rec.q1 = q1;
  rec.q2 = q2;
  rec.r1 = r1;
  rec.primal_piece = primal->piece;
  rec.dual_piece = dual->piece;
  rec.r1_distance = distance_to_body(body, r1);
  rec.convex_length_before = strictly_convex_length(body);

  const std::vector<BoundaryPiece> chord{GreatArc(a1, a2)};
  const std::vector<BoundaryPiece> wedge{GreatArc(q1, r1), GreatArc(r1, q2)};
  std::vector<BoundaryPiece> out;
  for (std::size_t k = 0; k < body.pieces.size(); ++k) {
    const auto& p = body.pieces[k];
    if (k == primal->piece && k == dual->piece) {
      const bool primal_first = primal->s0 < dual->s0;
      const auto& first = primal_first ? *primal : *dual;
      const auto& second = primal_first ? *dual : *primal;
      detail::push_sub(out, p, 0, first.s0);
      for (const auto& q : primal_first ? chord : wedge) out.push_back(q);
      detail::push_sub(out, p, first.s1, second.s0);
      for (const auto& q : primal_first ? wedge : chord) out.push_back(q);
      detail::push_sub(out, p, second.s1, 1);
    } else if (k == primal->piece) {
      detail::push_sub(out, p, 0, primal->s0);
      out.insert(out.end(), chord.begin(), chord.end());
      detail::push_sub(out, p, primal->s1, 1);
    } else if (k == dual->piece) {
      detail::push_sub(out, p, 0, dual->s0);
      out.insert(out.end(), wedge.begin(), wedge.end());
      detail::push_sub(out, p, dual->s1, 1);
    } else {
      out.push_back(p);
    }
  }
  ConvexBody result{std::move(out), body.interior};
  result = simplify(std::move(result));
  if (support_min_dot(result, result.interior) <= kBoundaryTol)
    result.interior = boundary_centroid(result);
  rec.convex_length_after = strictly_convex_length(result);

  if (options.verify) {
    const auto report = validate(result);
    if (!report.ok())
      throw GeometryError(ErrorKind::DualOverlap, "edited body fails " + report.first_failure());
    rec.residual_after = self_duality_residual(result);
    if (rec.residual_after > options.self_dual_tol)
      throw GeometryError(ErrorKind::NotSelfDual,
                          "edited body residual " + std::to_string(rec.residual_after));
    rec.step_hausdorff = hausdorff(body, result);
  }
  return {std::move(result), rec};
}

// ---------------------------------------------------------------------------
// Certification
// ---------------------------------------------------------------------------

/// Recomputes the Hausdorff bound, width sweep and residual on the final pair
/// without consulting the step chain.
inline Certificate evaluate_certificate(const ConvexBody& original, const Polytope& result,
                                        const ApproximationConfig& config) {
  Certificate cert;
  cert.epsilon = config.epsilon;
  const ConvexBody body = to_body(result);
  const auto h = hausdorff_bounds(original, body);
  cert.hausdorff_bound = h.upper;
  cert.hausdorff_value = h.lower;
  const auto widths = is_constant_width(body, kHalfPi, config.self_dual_tol);
  cert.width_min = widths.width_min;
  cert.width_max = widths.width_max;
  cert.self_duality_residual = widths.self_duality_residual.value_or(0);

  std::ostringstream why;
  const auto poly_report = validate(result);
  if (!poly_report.ok()) why << "polytope fails " << poly_report.first_failure();
  else if (cert.hausdorff_bound > 2 * config.epsilon)
    why << "hausdorff_bound " << cert.hausdorff_bound << " > 2*epsilon";
  else if (std::abs(cert.width_min - kHalfPi) > config.self_dual_tol ||
           std::abs(cert.width_max - kHalfPi) > config.self_dual_tol)
    why << "width range [" << cert.width_min << ", " << cert.width_max << "] not pi/2";
  else if (cert.self_duality_residual > config.self_dual_tol)
    why << "self_duality_residual " << cert.self_duality_residual;
  cert.violation = why.str();
  cert.passed = cert.violation.empty();
  return cert;
}

inline Certificate certify(const ConvexBody& original, const Polytope& result,
                           const ApproximationConfig& config) {
  Certificate cert = evaluate_certificate(original, result, config);
  if (!cert.passed) throw GeometryError(ErrorKind::CertificationFailed, cert.violation);
  return cert;
}

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

struct ApproximationResult {
  std::optional<Polytope> polytope;  // empty when the budget ran out
  ConvexBody body;                   // final (or best-so-far) body
  Certificate certificate;
  std::vector<StepRecord> steps;
  bool budget_exhausted = false;
};

/// Approximates a body of constant width pi/2 by a polytope of constant width
/// pi/2. Round k uses budget epsilon / 2^(k-1); within a round, small circle
/// pieces are cut one chord at a time in traversal order.
inline ApproximationResult approximate_polytope(const ConvexBody& input,
                                                const ApproximationConfig& config) {
  config.check();
  require_valid(input);
  const auto widths = is_constant_width(input, kHalfPi, config.self_dual_tol);
  if (!widths.pass || widths.self_duality_residual.value_or(0) > config.self_dual_tol)
    throw GeometryError(ErrorKind::NotConstantWidth, "input is not of constant width pi/2");

  ApproximationResult result;
  ConvexBody current = simplify(input);
  double budget = config.epsilon;
  std::size_t rounds = 0;
  const CutOptions cut_options{config.self_dual_tol, false, config.verify_steps};

  while (!is_polytope_body(current) && rounds < config.max_rounds) {
    ++rounds;
    bool stalled = false;
    while (!is_polytope_body(current) && !stalled) {
      std::size_t id = 0;
      while (!is_small(current.pieces[id])) ++id;
      const auto points = subdivide_piece(current, id, budget, config.subdivision_safety);
      const BoundaryPiece& piece = current.pieces[id];
      double s_end = 1.0 / double(points.size() - 1);
      std::optional<CutResult> cut;
      for (std::size_t attempt = 0; attempt <= config.max_refinements && !cut; ++attempt) {
        try {
          cut = cut_step(current, point_at(piece, 0), point_at(piece, s_end), cut_options);
        } catch (const GeometryError& e) {
          if (e.kind() != ErrorKind::DualOverlap) throw;
          s_end *= 0.5;
        }
      }
      if (!cut) {
        stalled = true;
        break;
      }
      cut->record.round = rounds;
      cut->record.budget = budget;
      result.steps.push_back(cut->record);
      current = std::move(cut->body);
    }
    budget *= 0.5;
  }

  result.body = current;
  result.certificate.rounds = rounds;
  result.certificate.steps = result.steps.size();
  result.certificate.epsilon = config.epsilon;
  if (!is_polytope_body(current)) {
    result.budget_exhausted = true;
    result.certificate.violation = "budget exhausted after " + std::to_string(rounds) + " rounds";
    return result;
  }
  result.polytope = to_polytope(current);
  Certificate cert = evaluate_certificate(input, *result.polytope, config);
  cert.rounds = rounds;
  cert.steps = result.steps.size();
  result.certificate = cert;
  return result;
}

}  // namespace scw
