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


#include <gtest/gtest.h>

#include "support.hpp"

namespace scw {
namespace {

using namespace scw::testing;

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no GeometryError thrown";
  return ErrorKind::ParseError;
}

UnitVector on_cap(double radius, double phi) {
  return UnitVector(std::sin(radius) * std::cos(phi), std::sin(radius) * std::sin(phi),
                    std::cos(radius));
}

// Chord pole of the cap pi/4 about e3 over an azimuth gap d sits at polar
// angle pi/2 - atan(cos(d/2)).
double cap_chord_gap(double d) { return kPi / 4 - std::atan(std::cos(d / 2)); }

TEST(SubdivideTest, CapMatchesClosedForm) {
  const ConvexBody body = cap(kE3, kPi / 4);
  for (double eps : {0.2, 0.05, 0.01}) {
    std::size_t expect = 2;
    while (!(cap_chord_gap(kTwoPi / double(expect)) < eps * 0.5)) ++expect;
    const auto pts = subdivide_piece(body, 0, eps);
    ASSERT_EQ(pts.size(), expect + 1) << eps;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k)
      EXPECT_NEAR(geodesic_distance(pts[k], pts[k + 1]),
                  geodesic_distance(on_cap(kPi / 4, 0), on_cap(kPi / 4, kTwoPi / double(expect))),
                  1e-12);
  }
  EXPECT_EQ(subdivide_piece(body, 0, 0.2).size(), 7u);
}

TEST(SubdivideTest, Errors) {
  const ConvexBody body = cap(kE3, kPi / 4);
  EXPECT_EQ(kind_of([&] { subdivide_piece(body, 3, 0.1); }), ErrorKind::BadConfig);
  EXPECT_EQ(kind_of([&] { subdivide_piece(body, 0, 0); }), ErrorKind::BadConfig);
  EXPECT_EQ(kind_of([&] { subdivide_piece(to_body(octant()), 0, 0.1); }),
            ErrorKind::NotStrictlyConvex);
}

TEST(CutStepTest, QuarterChordOnCap) {
  const ConvexBody body = cap(kE3, kPi / 4);
  const auto cut = cut_step(body, on_cap(kPi / 4, 0), on_cap(kPi / 4, kHalfPi));
  const Vec3 r1{-1 / std::sqrt(3.0), -1 / std::sqrt(3.0), 1 / std::sqrt(3.0)};
  EXPECT_LT(geodesic_distance(cut.record.r1, UnitVector(r1)), 1e-12);
  EXPECT_LT(geodesic_distance(cut.record.q1, on_cap(kPi / 4, kPi)), 1e-9);
  EXPECT_LT(geodesic_distance(cut.record.q2, on_cap(kPi / 4, 1.5 * kPi)), 1e-9);
  EXPECT_NEAR(cut.record.r1_distance, cap_chord_gap(kHalfPi), 1e-9);
  // chord, arc, two wedge edges, arc
  ASSERT_EQ(cut.body.pieces.size(), 5u);
  std::size_t great = 0;
  for (const auto& p : cut.body.pieces) great += is_small(p) ? 0 : 1;
  EXPECT_EQ(great, 3u);
  EXPECT_TRUE(validate(cut.body).ok());
  EXPECT_LE(self_duality_residual(cut.body), 1e-9);
  EXPECT_LE(cut.record.residual_after, 1e-9);
  EXPECT_NEAR(cut.record.convex_length_before - cut.record.convex_length_after,
              std::sin(kPi / 4) * kPi, 1e-9);
  // The step moves the boundary by the chord gap at most.
  EXPECT_LE(cut.record.step_hausdorff, cap_chord_gap(kHalfPi) + 1e-9);
  EXPECT_NEAR(cut.record.step_hausdorff, oracle_hausdorff(body, cut.body), 1e-4);
}

TEST(CutStepTest, Errors) {
  const ConvexBody body = cap(kE3, kPi / 4);
  EXPECT_EQ(kind_of([&] { cut_step(body, on_cap(kPi / 4, 0.1), on_cap(kPi / 4, 0.1 + 1.2 * kPi)); }),
            ErrorKind::DualOverlap);
  const Polytope oct = octant();
  EXPECT_EQ(kind_of([&] { cut_step(to_body(oct), oct.vertices[0], oct.vertices[1]); }),
            ErrorKind::DualOverlap);
  EXPECT_EQ(kind_of([&] { cut_step(body, on_cap(1.0, 0), on_cap(1.0, 0.5)); }),
            ErrorKind::DualOverlap);
  const ConvexBody small = cap(kE3, kPi / 6);
  EXPECT_EQ(kind_of([&] { cut_step(small, on_cap(kPi / 6, 0), on_cap(kPi / 6, 1)); }),
            ErrorKind::NotSelfDual);
}

void expect_certified(const ConvexBody& input, double eps) {
  ApproximationConfig config;
  config.epsilon = eps;
  const auto res = approximate_polytope(input, config);
  ASSERT_TRUE(res.polytope.has_value());
  EXPECT_TRUE(res.certificate.passed) << res.certificate.violation;
  EXPECT_TRUE(validate(*res.polytope).ok());
  const ConvexBody poly = to_body(*res.polytope);
  EXPECT_TRUE(is_constant_width(poly, kHalfPi, 1e-6).pass);
  EXPECT_LE(res.certificate.hausdorff_bound, 2 * eps);
  EXPECT_LE(oracle_hausdorff(input, poly), 2 * eps);
  EXPECT_LE(oracle_hausdorff(input, poly), res.certificate.hausdorff_bound + 1e-6);
  EXPECT_EQ(res.certificate.steps, res.steps.size());
  for (const auto& s : res.steps) {
    EXPECT_LE(s.residual_after, kSelfDualTol);
    EXPECT_LT(s.convex_length_after, s.convex_length_before);
  }
}

TEST(ApproximateTest, CapsAtSeveralTolerances) {
  expect_certified(cap(kE3, kPi / 4), 0.1);
  expect_certified(cap(kE3, kPi / 4), 0.02);
  expect_certified(cap(UnitVector(1, -2, 0.5), kPi / 4), 0.05);
}

TEST(ApproximateTest, MixedArcCompletion) {
  const auto done = complete_selfdual(cap(UnitVector(0.3, 0.1, 1), kPi / 6), 1e-9, 7);
  ASSERT_TRUE(done.complete);
  ASSERT_FALSE(is_polytope_body(done.body));
  expect_certified(done.body, 0.05);
}

TEST(ApproximateTest, PolytopeInputNeedsNoSteps) {
  const auto res = approximate_polytope(to_body(octant()), ApproximationConfig{});
  ASSERT_TRUE(res.polytope.has_value());
  EXPECT_TRUE(res.steps.empty());
  EXPECT_EQ(res.polytope->vertices.size(), 3u);
  EXPECT_NEAR(res.certificate.hausdorff_bound, 0, 1e-7);
}

TEST(ApproximateTest, RejectsBadInput) {
  EXPECT_EQ(kind_of([] { approximate_polytope(cap(kE3, kPi / 6), ApproximationConfig{}); }),
            ErrorKind::NotConstantWidth);
  ApproximationConfig config;
  config.epsilon = 0;
  EXPECT_EQ(kind_of([&] { approximate_polytope(cap(kE3, kPi / 4), config); }), ErrorKind::BadConfig);
  config = {};
  config.max_rounds = 0;
  EXPECT_EQ(kind_of([&] { approximate_polytope(cap(kE3, kPi / 4), config); }), ErrorKind::BadConfig);
  config = {};
  config.subdivision_safety = 1;
  EXPECT_EQ(kind_of([&] { approximate_polytope(cap(kE3, kPi / 4), config); }), ErrorKind::BadConfig);
}

TEST(CertifyTest, FailsForDistantPolytope) {
  ApproximationConfig config;
  config.epsilon = 0.01;
  const Polytope far = rotated(octant(), UnitVector(1, 1, 1), 0);
  EXPECT_EQ(kind_of([&] { certify(cap(-kE3, kPi / 4), octant(), config); }),
            ErrorKind::CertificationFailed);
  const auto cert = evaluate_certificate(cap(-kE3, kPi / 4), far, config);
  EXPECT_FALSE(cert.passed);
  EXPECT_FALSE(cert.violation.empty());
}

}  // namespace
}  // namespace scw
