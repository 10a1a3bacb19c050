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

#include <filesystem>
#include <sstream>

#include "cli_app.hpp"
#include "support.hpp"

namespace scw {
namespace {

namespace fs = std::filesystem;
using namespace scw::testing;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("scw_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, GenerateCapAndOctant) {
  const auto cap_run = run({"generate", "cap", "--radius", "0.5", "--center", "1,0,0"});
  ASSERT_EQ(cap_run.code, 0) << cap_run.err;
  const BodyFile c = parse_body(cap_run.out);
  ASSERT_EQ(c.body.pieces.size(), 1u);
  const auto& arc = std::get<SmallCircleArc>(c.body.pieces[0]);
  EXPECT_EQ(arc.radius(), 0.5);
  EXPECT_EQ(arc.center().x(), 1);

  const auto oct = run({"generate", "octant", "-o", path("oct.json")});
  ASSERT_EQ(oct.code, 0);
  EXPECT_NE(oct.out.find("3 vertices"), std::string::npos);
  const BodyFile o = load_body(path("oct.json"));
  ASSERT_TRUE(o.polytope.has_value());
  EXPECT_EQ(o.polytope->vertices.size(), 3u);

  EXPECT_EQ(run({"generate", "cap", "--radius", "2"}).code, 1);
  EXPECT_EQ(run({"generate", "sphere"}).code, 1);
  EXPECT_NE(run({"generate", "cap", "--radius", "2"}).err.find("BadRadius"), std::string::npos);
}

TEST_F(CliTest, RandomPolytopeIsReproducible) {
  const auto a = run({"--seed", "17", "generate", "random-polytope", "--n", "6"});
  const auto b = run({"--seed", "17", "generate", "random-polytope", "--n", "6"});
  const auto c = run({"--seed", "18", "generate", "random-polytope", "--n", "6"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  const BodyFile p = parse_body(a.out);
  ASSERT_TRUE(p.polytope.has_value());
  EXPECT_EQ(serialize(*p.polytope), serialize(random_selfdual_polytope(6, 17)));
}

TEST_F(CliTest, CompletionFromDefaultSeed) {
  const auto r = run({"generate", "completion", "-o", path("done.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const ConvexBody body = load_body(path("done.json")).body;
  EXPECT_LE(oracle_hausdorff(body, polar_dual(body)), 1e-5);
}

TEST_F(CliTest, MetricsOfCap) {
  write_text(path("cap.json"), serialize(cap(kE3, kPi / 4)));
  const auto r = run({"metrics", path("cap.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["diameter"].get<double>(), kHalfPi, 1e-7);
  EXPECT_NEAR(j["thickness"].get<double>(), kHalfPi, 1e-7);
  EXPECT_NEAR(j["width_min"].get<double>(), kHalfPi, 1e-7);
  EXPECT_NEAR(j["width_max"].get<double>(), kHalfPi, 1e-7);
  EXPECT_LE(j["self_duality_residual"].get<double>(), 1e-7);

  write_text(path("small.json"), serialize(cap(kE3, kPi / 6)));
  const Json s = Json::parse(run({"metrics", path("small.json")}).out);
  EXPECT_NEAR(s["diameter"].get<double>(), kPi / 3, 1e-7);
  EXPECT_NEAR(s["width_min"].get<double>(), kPi / 3, 1e-7);

  write_text(path("junk.json"), "{");
  EXPECT_EQ(run({"metrics", path("junk.json")}).code, 1);
  EXPECT_EQ(run({"metrics", path("missing.json")}).code, 1);
}

TEST_F(CliTest, DualRoundTrip) {
  const Polytope p = random_selfdual_polytope(5, 4);
  write_text(path("p.json"), serialize(p));
  ASSERT_EQ(run({"dual", path("p.json"), "-o", path("d.json")}).code, 0);
  ASSERT_EQ(run({"dual", path("d.json"), "-o", path("dd.json")}).code, 0);
  const BodyFile back = load_body(path("dd.json"));
  ASSERT_TRUE(back.polytope.has_value());
  ASSERT_EQ(back.polytope->vertices.size(), p.vertices.size());
  for (const auto& v : back.polytope->vertices) {
    double best = kPi;
    for (const auto& w : p.vertices) best = std::min(best, geodesic_distance(v, w));
    EXPECT_LE(best, 1e-12);
  }
  EXPECT_LE(oracle_hausdorff(load_body(path("d.json")).body, to_body(p)), 1e-6);
}

TEST_F(CliTest, ApproximateAndCertify) {
  write_text(path("cap.json"), serialize(cap(UnitVector(1, 1, 1), kPi / 4)));
  const auto r = run({"approximate", path("cap.json"), "--epsilon", "0.1", "-o", path("poly.json"),
                      "--cert", path("cert.json"), "--log", path("steps.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json cert = Json::parse(read_text(path("cert.json")));
  EXPECT_TRUE(cert["passed"].get<bool>());
  const BodyFile poly = load_body(path("poly.json"));
  ASSERT_TRUE(poly.polytope.has_value());
  EXPECT_LE(oracle_hausdorff(cap(UnitVector(1, 1, 1), kPi / 4), poly.body), 0.2);
  const std::string log = read_text(path("steps.jsonl"));
  EXPECT_EQ(std::size_t(std::count(log.begin(), log.end(), '\n')), cert["steps"].get<std::size_t>());

  const auto ok = run({"certify", path("cap.json"), path("poly.json"), "--epsilon", "0.1"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  const auto tight = run({"certify", path("cap.json"), path("poly.json"), "--epsilon", "1e-4"});
  EXPECT_EQ(tight.code, 2);
  EXPECT_NE(tight.err.find("CertificationFailed"), std::string::npos);

  write_text(path("small.json"), serialize(cap(kE3, kPi / 6)));
  const auto bad = run({"approximate", path("small.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("NotConstantWidth"), std::string::npos);
  EXPECT_EQ(run({"approximate", path("cap.json"), "--epsilon", "0"}).code, 1);
}

TEST_F(CliTest, Render) {
  write_text(path("cap.json"), serialize(cap(kE3, kPi / 4)));
  write_text(path("oct.json"), serialize(octant()));
  const auto r = run({"render", path("cap.json"), path("oct.json"), "--view", "1,1,1.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("<?xml", 0), 0u);
  EXPECT_NE(r.out.find("layer-1"), std::string::npos);
  const auto zero = run({"render", path("cap.json"), "--view", "0,0,0"});
  EXPECT_EQ(zero.code, 1);
  EXPECT_NE(zero.err.find("DegenerateVector"), std::string::npos);
  EXPECT_EQ(run({"render", path("cap.json"), "--projection", "mercator"}).code, 1);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

}  // namespace
}  // namespace scw
