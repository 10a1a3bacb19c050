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

#include <cstdint>
#include <random>
#include <vector>

#include "scw/approx.hpp"

namespace scw {

inline Polytope octant() { return Polytope{{kE1, kE2, kE3}}; }

inline ConvexBody cap(const UnitVector& center, double radius) {
  if (!(radius > 0 && radius < kHalfPi))
    throw GeometryError(ErrorKind::BadRadius, "cap radius must lie in (0, pi/2)");
  ConvexBody body;
  body.pieces.emplace_back(SmallCircleArc(center, radius, 0, kTwoPi));
  body.interior = center;
  return body;
}

/// Deterministic uniform doubles from a 64-bit seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return std::size_t(uniform() * double(n)) % n; }
  UnitVector direction() {
    for (;;) {
      const Vec3 v{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
      const double n2 = dot(v, v);
      if (n2 > 1e-6 && n2 <= 1) return UnitVector(v);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Rotation taking e3 to `axis`, followed by a spin about it.
inline Vec3 rotate_to(const UnitVector& axis, double spin, const Vec3& v) {
  const TangentFrame f = tangent_frame(axis);
  const double c = std::cos(spin), s = std::sin(spin);
  const Vec3 u = f.u * c + f.v * s, w = f.v * c - f.u * s;
  return u * v.x + w * v.y + axis.vec() * v.z;
}

// ---------------------------------------------------------------------------
// Convex hull of a body and a boundary chain
// ---------------------------------------------------------------------------

struct BoundaryPos {
  std::size_t piece = 0;
  double s = 0;
};

namespace detail {

// Fractions in (0, 1) where the support pole of a small arc is orthogonal to y.
inline std::vector<double> pole_orthogonal_roots(const SmallCircleArc& arc, const Vec3& y) {
  std::vector<double> roots;
  const double p = dot(y, arc.frame().u), q = dot(y, arc.frame().v);
  const double rho = std::hypot(p, q);
  if (rho < 1e-15) return roots;
  const double c = std::tan(arc.radius()) * dot(y, arc.center()) / rho;
  if (std::abs(c) >= 1) return roots;
  const double psi = std::atan2(q, p), delta = std::acos(c);
  for (double phi : {psi - delta, psi + delta}) {
    const double f = wrap_two_pi(phi - arc.az_from()) / arc.span();
    if (f > 1e-15 && f < 1 - 1e-15) roots.push_back(f);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

struct SignRun {
  BoundaryPos from, to;
  bool visible;
};

// Boundary split into runs where y is / is not beyond the supporting great
// circle.
inline std::vector<SignRun> visibility_runs(const ConvexBody& body, const Vec3& y) {
  std::vector<SignRun> runs;
  for (std::size_t i = 0; i < body.pieces.size(); ++i) {
    const auto& piece = body.pieces[i];
    std::vector<double> cuts{0};
    if (auto c = std::get_if<SmallCircleArc>(&piece))
      for (double r : pole_orthogonal_roots(*c, y)) cuts.push_back(r);
    cuts.push_back(1);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
      const bool visible = dot(pole_at(piece, mid), y) < -1e-14;
      runs.push_back({{i, cuts[k]}, {i, cuts[k + 1]}, visible});
    }
  }
  return runs;
}

}  // namespace detail

/// Tangent points from an external point y: the first and last boundary
/// positions (counterclockwise) of the part of the boundary visible from y.
inline std::optional<std::pair<BoundaryPos, BoundaryPos>> visible_range(const ConvexBody& body,
                                                                        const Vec3& y) {
  const auto runs = detail::visibility_runs(body, y);
  const std::size_t n = runs.size();
  std::optional<BoundaryPos> start, end;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& prev = runs[prev_index(k, n)];
    const auto& cur = runs[k];
    if (cur.visible && !prev.visible) start = cur.from;
    if (!cur.visible && prev.visible) end = cur.from;
  }
  if (!start || !end) return std::nullopt;
  return std::make_pair(*start, *end);
}

inline UnitVector point_at(const ConvexBody& body, const BoundaryPos& pos) {
  return point_at(body.pieces[pos.piece], pos.s);
}

/// Pieces of the boundary walking counterclockwise from `from` to `to`.
inline std::vector<BoundaryPiece> extract_boundary(const ConvexBody& body, BoundaryPos from,
                                                   BoundaryPos to) {
  std::vector<BoundaryPiece> out;
  const std::size_t n = body.pieces.size();
  if (from.piece == to.piece && from.s < to.s) {
    detail::push_sub(out, body.pieces[from.piece], from.s, to.s);
    return out;
  }
  detail::push_sub(out, body.pieces[from.piece], from.s, 1);
  for (std::size_t i = next_index(from.piece, n); i != to.piece; i = next_index(i, n))
    out.push_back(body.pieces[i]);
  detail::push_sub(out, body.pieces[to.piece], 0, to.s);
  return out;
}

/// conv(body ∪ chain) for a counterclockwise chain of pieces lying outside
/// the body except possibly at its endpoints.
inline ConvexBody hull_with_chain(const ConvexBody& body, const std::vector<BoundaryPiece>& chain) {
  const UnitVector a_s = start_point(chain.front()), a_e = end_point(chain.back());
  auto attach = [&](const UnitVector& a, bool at_start) {
    if (support_min_dot(body, a) < -1e-10) {
      if (auto range = visible_range(body, a)) return at_start ? range->first : range->second;
    }
    const auto loc = locate_on_boundary(body, a);
    return BoundaryPos{loc.piece, loc.s};
  };
  const BoundaryPos pos_s = attach(a_s, true), pos_e = attach(a_e, false);
  std::vector<BoundaryPiece> pieces = extract_boundary(body, pos_e, pos_s);
  const UnitVector t_s = point_at(body, pos_s), t_e = point_at(body, pos_e);
  if (geodesic_distance(t_s, a_s) > 1e-10) pieces.emplace_back(GreatArc(t_s, a_s));
  pieces.insert(pieces.end(), chain.begin(), chain.end());
  if (geodesic_distance(a_e, t_e) > 1e-10) pieces.emplace_back(GreatArc(a_e, t_e));
  ConvexBody hull{std::move(pieces), body.interior};
  return simplify(std::move(hull));
}

// ---------------------------------------------------------------------------
// Self-dual completion
// ---------------------------------------------------------------------------

struct CompletionOptions {
  std::size_t sweep = 2048;
  std::size_t max_insertions = 10'000;
  double chain_radius = kPi / 4;  // chain diameter stays <= pi/2
};

struct CompletionResult {
  ConvexBody body;
  std::size_t insertions = 0;
  double residual = 0;
  bool complete = false;
  std::vector<double> residual_history;  // sweep residual before each insertion
};

namespace detail {

// Walk along `body` from `pos` (forward or backward) until `stop` holds;
// returns the first stopping position, refined by bisection.
template <class Stop>
BoundaryPos walk_until(const ConvexBody& body, BoundaryPos pos, bool forward, Stop&& stop) {
  const std::size_t n = body.pieces.size();
  constexpr int kSteps = 64;
  for (std::size_t visited = 0; visited <= n; ++visited) {
    const auto& piece = body.pieces[pos.piece];
    const double lo = forward ? pos.s : 0, hi = forward ? 1 : pos.s;
    double prev = forward ? lo : hi;
    for (int k = 1; k <= kSteps; ++k) {
      const double s = forward ? lo + (hi - lo) * k / kSteps : hi - (hi - lo) * k / kSteps;
      if (stop(point_at(piece, s))) {
        double a = prev, b = s;
        for (int it = 0; it < 60; ++it) {
          const double m = 0.5 * (a + b);
          if (stop(point_at(piece, m))) b = m;
          else a = m;
        }
        return {pos.piece, b};
      }
      prev = s;
    }
    pos = forward ? BoundaryPos{next_index(pos.piece, n), 0.0}
                  : BoundaryPos{prev_index(pos.piece, n), 1.0};
  }
  return pos;
}

}  // namespace detail

/// Greedy completion of a body C with C ⊆ C° toward a self-dual body. Each
/// insertion takes the point x of ∂C° farthest from C and adds the run of ∂C°
/// around x that lies outside C and within chain_radius of x; a set of
/// diameter at most pi/2 inside C° keeps C ⊆ C°.
inline CompletionResult complete_selfdual(const ConvexBody& seed, double tol,
                                          std::uint64_t rng_seed,
                                          const CompletionOptions& options = {}) {
  require_valid(seed);
  if (diameter_bounds(seed).lower > kHalfPi + 1e-9)
    throw GeometryError(ErrorKind::SeedNotSubdual, "seed is not contained in its polar");
  Rng rng(rng_seed);
  CompletionResult result;
  ConvexBody current = simplify(seed);

  for (;;) {
    const ConvexBody dual = polar_dual(current);
    // Farthest point of the polar boundary from the body, over the sweep.
    std::vector<std::pair<BoundaryPos, double>> samples;
    const double total = perimeter(dual);
    for (std::size_t i = 0; i < dual.pieces.size(); ++i) {
      const auto& p = dual.pieces[i];
      const std::size_t m = std::size_t(double(options.sweep) * arc_length(p) / total);
      for (std::size_t k = 0; k <= m; ++k) {
        const BoundaryPos pos{i, double(k) / double(m + 1)};
        samples.emplace_back(pos, distance_to_body(current, point_at(dual, pos)));
      }
    }
    double best = 0;
    for (const auto& s : samples) best = std::max(best, s.second);
    result.residual_history.push_back(best);
    if (best <= tol) {
      const double residual = hausdorff(current, dual);
      if (residual <= tol) {
        result.residual = residual;
        result.complete = true;
        break;
      }
    }
    if (result.insertions >= options.max_insertions) {
      result.residual = hausdorff(current, dual);
      break;
    }
    std::vector<BoundaryPos> ties;
    for (const auto& s : samples)
      if (s.second >= best - 1e-12) ties.push_back(s.first);
    BoundaryPos pos = ties[rng.index(ties.size())];
    if (best <= tol) {
      // The sweep missed the worst point; take the certified argmax instead.
      const auto worst = directed_hausdorff(dual, current);
      const auto loc = locate_on_boundary(dual, worst.argmax);
      pos = {loc.piece, loc.s};
    }
    const UnitVector x = point_at(dual, pos);
    auto stop = [&](const UnitVector& p) {
      return support_min_dot(current, p) >= -1e-13 ||
             geodesic_distance(x, p) >= options.chain_radius;
    };
    const BoundaryPos back = detail::walk_until(dual, pos, false, stop);
    const BoundaryPos fwd = detail::walk_until(dual, pos, true, stop);
    const auto chain = extract_boundary(dual, back, fwd);
    if (chain.empty()) {
      result.residual = hausdorff(current, dual);
      break;
    }
    current = hull_with_chain(current, chain);
    ++result.insertions;
  }
  result.body = current;
  if (support_min_dot(result.body, result.body.interior) <= kBoundaryTol)
    result.body.interior = boundary_centroid(result.body);
  return result;
}

/// A random polygon contained in its polar: vertices at jittered azimuths on
/// a circle of radius below pi/4 about a random center.
inline Polytope random_subdual_polytope(std::size_t n, Rng& rng) {
  const UnitVector axis = rng.direction();
  const double spin = rng.uniform(0, kTwoPi);
  const double radius = rng.uniform(0.45, 0.75);
  Polytope poly;
  for (std::size_t k = 0; k < n; ++k) {
    const double phi = kTwoPi * (double(k) + rng.uniform(-0.2, 0.2)) / double(n);
    const Vec3 local{std::sin(radius) * std::cos(phi), std::sin(radius) * std::sin(phi),
                     std::cos(radius)};
    poly.vertices.push_back(UnitVector(rotate_to(axis, spin, local)));
  }
  return poly;
}

/// A self-dual polytope from the completion of a random sub-dual n-gon. The
/// vertex count of the result follows the completion and is usually not n.
/// For n = 3 the only self-dual triangle is a rotated octant, returned directly.
inline Polytope random_selfdual_polytope(std::size_t n_target, std::uint64_t rng_seed) {
  if (n_target < 3) throw GeometryError(ErrorKind::BadConfig, "n_target must be >= 3");
  Rng rng(rng_seed);
  if (n_target == 3) {
    const UnitVector axis = rng.direction();
    const double spin = rng.uniform(0, kTwoPi);
    Polytope poly;
    for (const auto& v : octant().vertices) poly.vertices.push_back(UnitVector(rotate_to(axis, spin, v)));
    return poly;
  }
  const Polytope seed = random_subdual_polytope(n_target, rng);
  const CompletionResult done = complete_selfdual(to_body(seed), 1e-9, rng_seed);
  if (is_polytope_body(done.body)) return to_polytope(done.body);
  ApproximationConfig config;
  config.epsilon = 0.01;
  const auto approx = approximate_polytope(done.body, config);
  if (!approx.polytope) throw GeometryError(ErrorKind::CertificationFailed, "snap did not finish");
  return *approx.polytope;
}

}  // namespace scw
