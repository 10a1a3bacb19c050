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


// Shared helpers for the test suites: brute-force oracles that only use
// boundary samples and elementary vector algebra, and a corpus of bodies.

#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "scw/scw.hpp"

namespace scw::testing {

/// Boundary samples, counterclockwise, spaced roughly evenly by arc length.
/// Every piece endpoint is included.
inline std::vector<UnitVector> sample_boundary(const ConvexBody& body, std::size_t n) {
  std::vector<UnitVector> out;
  const double total = perimeter(body);
  for (const auto& piece : body.pieces) {
    const std::size_t m =
        std::max<std::size_t>(2, std::size_t(double(n) * arc_length(piece) / total) + 1);
    auto pts = sample_piece(piece, m);
    out.insert(out.end(), pts.begin(), pts.end() - 1);
  }
  return out;
}

/// Inside test against the inscribed polygon of dense boundary samples.
inline bool oracle_inside(const std::vector<UnitVector>& ring, const Vec3& x, double tol = 1e-12) {
  for (std::size_t k = 0; k < ring.size(); ++k) {
    const Vec3 n = cross(ring[k], ring[(k + 1) % ring.size()]);
    if (dot(x, n) < -tol * norm(n)) return false;
  }
  return true;
}

// Index of the nearest ring point: a coarse scan, then a local scan around
// every coarse local maximum of x·y that comes close to the best one.
inline std::size_t oracle_nearest_index(const std::vector<UnitVector>& ring, const Vec3& x) {
  const std::size_t n = ring.size(), stride = std::max<std::size_t>(1, n / 500);
  std::vector<double> coarse;
  for (std::size_t k = 0; k < n; k += stride) coarse.push_back(dot(ring[k], x));
  const std::size_t m = coarse.size();
  const double top = *std::max_element(coarse.begin(), coarse.end());
  const double margin = 2 * kTwoPi * double(stride) / double(n);
  double best_dot = -2;
  std::size_t best = 0;
  for (std::size_t c = 0; c < m; ++c) {
    const double v = coarse[c];
    if (v < top - margin || v < coarse[(c + m - 1) % m] || v < coarse[(c + 1) % m]) continue;
    const std::size_t reach = 2 * stride, center = c * stride;
    for (std::size_t j = 0; j <= 2 * reach; ++j) {
      const std::size_t k = (center + n - reach + j) % n;
      const double d = dot(ring[k], x);
      if (d > best_dot) best_dot = d, best = k;
    }
  }
  return best;
}

// Distance from x to the inscribed polygon, 0 inside. A point outside lies
// beyond one of the two edges at its nearest ring point.
inline double oracle_ring_distance(const std::vector<UnitVector>& ring, const Vec3& x) {
  const std::size_t n = ring.size(), k = oracle_nearest_index(ring, x);
  const UnitVector& prev = ring[(k + n - 1) % n];
  const UnitVector& next = ring[(k + 1) % n];
  if (dot(x, cross(prev, ring[k])) >= 0 && dot(x, cross(ring[k], next)) >= 0) return 0;
  return std::acos(clamp_unit(dot(ring[k], x)));
}

inline double oracle_directed_hausdorff(const std::vector<UnitVector>& a,
                                        const std::vector<UnitVector>& b) {
  double worst = 0;
  for (const auto& x : a) worst = std::max(worst, oracle_ring_distance(b, x));
  return worst;
}

/// Hausdorff distance from n_total boundary samples split between the bodies.
inline double oracle_hausdorff(const ConvexBody& a, const ConvexBody& b,
                               std::size_t n_total = 100000) {
  const auto ra = sample_boundary(a, n_total / 2), rb = sample_boundary(b, n_total / 2);
  return std::max(oracle_directed_hausdorff(ra, rb), oracle_directed_hausdorff(rb, ra));
}

inline double oracle_max_pairwise(const std::vector<UnitVector>& pts) {
  double min_dot = 1;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) min_dot = std::min(min_dot, dot(pts[i], pts[j]));
  return std::acos(clamp_unit(min_dot));
}

inline double oracle_diameter(const ConvexBody& body, std::size_t n = 1500) {
  return oracle_max_pairwise(sample_boundary(body, n));
}

/// Supporting poles from the edges of the inscribed polygon, with the gaps
/// at corners filled along great circles.
inline std::vector<UnitVector> oracle_support_poles(const ConvexBody& body, std::size_t n = 1500) {
  const auto ring = sample_boundary(body, n);
  std::vector<UnitVector> poles;
  for (std::size_t k = 0; k < ring.size(); ++k)
    poles.emplace_back(cross(ring[k], ring[(k + 1) % ring.size()]));
  std::vector<UnitVector> filled;
  const double step = kTwoPi / double(n);
  for (std::size_t k = 0; k < poles.size(); ++k) {
    const UnitVector& p = poles[k];
    const UnitVector& q = poles[(k + 1) % poles.size()];
    filled.push_back(p);
    const double gap = geodesic_distance(p, q);
    const std::size_t extra = std::size_t(gap / step);
    for (std::size_t j = 1; j <= extra; ++j) {
      const double t = double(j) / double(extra + 1);
      filled.emplace_back(p.vec() * (1 - t) + q.vec() * t);
    }
  }
  return filled;
}

/// Width with respect to each supporting pole: pi minus the farthest other
/// supporting pole.
struct OracleWidths {
  double min = 1e300, max = -1e300;
};

inline OracleWidths oracle_widths(const ConvexBody& body, std::size_t n = 1200) {
  const auto poles = oracle_support_poles(body, n);
  OracleWidths w;
  for (const auto& k : poles) {
    double min_dot = 1;
    for (const auto& j : poles) min_dot = std::min(min_dot, dot(k, j));
    const double width = kPi - std::acos(clamp_unit(min_dot));
    w.min = std::min(w.min, width);
    w.max = std::max(w.max, width);
  }
  return w;
}

inline Vec3 random_in_cap(Rng& rng, const UnitVector& center, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  const double phi = rng.uniform(0, kTwoPi);
  const TangentFrame f = tangent_frame(center);
  return center.vec() * std::cos(r) + (f.u * std::cos(phi) + f.v * std::sin(phi)) * std::sin(r);
}

inline UnitVector random_boundary_point(const ConvexBody& body, Rng& rng) {
  const auto& piece = body.pieces[rng.index(body.pieces.size())];
  return point_at(piece, rng.uniform());
}

inline Polytope rotated(const Polytope& p, const UnitVector& axis, double spin) {
  Polytope out;
  for (const auto& v : p.vertices) out.vertices.emplace_back(rotate_to(axis, spin, v));
  return out;
}

// ---------------------------------------------------------------------------
// Corpus
// ---------------------------------------------------------------------------

struct CorpusEntry {
  std::string name;
  ConvexBody body;
  bool self_dual = true;  // expected
};

/// Octants, caps, completions and random self-dual polytopes (seeds 1-50),
/// plus the two non-self-dual caps of radius pi/6 and pi/3. Every entry has
/// constant width.
inline const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> out;
    Rng rng(2026);
    out.push_back({"octant", to_body(octant())});
    for (int i = 0; i < 3; ++i)
      out.push_back({"octant-rot" + std::to_string(i),
                     to_body(rotated(octant(), rng.direction(), rng.uniform(0, kTwoPi)))});
    out.push_back({"cap-e3", cap(kE3, kPi / 4)});
    out.push_back({"cap-e1", cap(kE1, kPi / 4)});
    for (int i = 0; i < 3; ++i)
      out.push_back({"cap-rand" + std::to_string(i), cap(rng.direction(), kPi / 4)});
    for (int i = 0; i < 4; ++i) {
      const auto done = complete_selfdual(cap(rng.direction(), kPi / 6), 1e-9, 100 + i);
      out.push_back({"completion-cap" + std::to_string(i), done.body});
    }
    for (int i = 0; i < 6; ++i) {
      Rng local(200 + i);
      const Polytope seed = random_subdual_polytope(4 + i, local);
      const auto done = complete_selfdual(to_body(seed), 1e-9, 200 + i);
      out.push_back({"completion-poly" + std::to_string(i), done.body});
    }
    for (std::uint64_t s = 1; s <= 50; ++s)
      out.push_back({"random-polytope" + std::to_string(s),
                     to_body(random_selfdual_polytope(3 + s % 7, s))});
    out.push_back({"cap-pi/6", cap(kE3, kPi / 6), false});
    out.push_back({"cap-pi/3", cap(UnitVector(1, 2, 3), kPi / 3), false});
    return out;
  }();
  return entries;
}

}  // namespace scw::testing
