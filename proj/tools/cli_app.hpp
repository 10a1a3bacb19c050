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
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scw/scw.hpp"

namespace scw::cli {

enum ExitCode : int { kOk = 0, kInvalid = 1, kCertFailed = 2 };

struct Globals {
  double tol = 1e-6;
  std::uint64_t seed = 1;
};

namespace detail {

inline UnitVector parse_direction(const std::vector<double>& v, const char* what) {
  if (v.size() != 3) throw GeometryError(ErrorKind::BadConfig, std::string(what) + " needs 3 components");
  return UnitVector(Vec3{v[0], v[1], v[2]});
}

inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") out << text;
  else write_text(path, text);
}

inline std::string summary(const ConvexBody& body) {
  std::ostringstream s;
  std::size_t great = 0;
  for (const auto& p : body.pieces) great += is_great(p) ? 1 : 0;
  s << body.pieces.size() << " pieces (" << great << " great, " << body.pieces.size() - great
    << " small)";
  return s.str();
}

}  // namespace detail

/// Runs one command line (without the program name). Returns the exit code.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spherical bodies of constant width pi/2"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol", g.tol, "Tolerance for self-duality and width checks")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();

  // generate
  auto* gen = app.add_subcommand("generate", "Write a generated body");
  std::string kind, gen_out, gen_input;
  double radius = kPi / 4;
  bool radius_given = false;
  std::vector<double> center{0, 0, 1};
  std::size_t n_target = 8;
  gen->add_option("kind", kind, "octant | cap | completion | random-polytope")
      ->required()
      ->check(CLI::IsMember({"octant", "cap", "completion", "random-polytope"}));
  auto* radius_opt = gen->add_option("--radius", radius, "Cap radius (seed cap for completion)");
  gen->add_option("--center", center, "Cap center x,y,z")->delimiter(',')->expected(3);
  gen->add_option("--n", n_target, "Seed polygon size for random-polytope");
  gen->add_option("--input", gen_input, "Seed body file for completion");
  gen->add_option("-o,--out", gen_out, "Output file (default stdout)");

  // dual
  auto* dual_cmd = app.add_subcommand("dual", "Write the polar body");
  std::string dual_in, dual_out;
  dual_cmd->add_option("input", dual_in)->required();
  dual_cmd->add_option("-o,--out", dual_out);

  // metrics
  auto* met = app.add_subcommand("metrics", "Print thickness, diameter, widths and residual");
  std::string met_in;
  met->add_option("input", met_in)->required();

  // approximate
  auto* apx = app.add_subcommand("approximate", "Approximate by a polytope of constant width pi/2");
  std::string apx_in, apx_out, apx_cert, apx_log;
  double epsilon = 0.1;
  apx->add_option("input", apx_in)->required();
  apx->add_option("--epsilon", epsilon)->capture_default_str();
  apx->add_option("-o,--out", apx_out);
  apx->add_option("--cert", apx_cert);
  apx->add_option("--log", apx_log);

  // certify
  auto* cer = app.add_subcommand("certify", "Re-check a polytope against its original body");
  std::string cer_orig, cer_poly;
  double cer_eps = 0.1;
  cer->add_option("original", cer_orig)->required();
  cer->add_option("polytope", cer_poly)->required();
  cer->add_option("--epsilon", cer_eps)->capture_default_str();

  // render
  auto* ren = app.add_subcommand("render", "Draw bodies to SVG");
  std::vector<std::string> ren_in;
  std::string ren_out, projection = "orthographic";
  std::vector<double> view{0, 0, 1};
  ren->add_option("inputs", ren_in)->required();
  ren->add_option("--projection", projection)
      ->check(CLI::IsMember({"orthographic", "stereographic"}));
  ren->add_option("--view", view, "View direction x,y,z")->delimiter(',')->expected(3);
  ren->add_option("-o,--out", ren_out);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }
  radius_given = radius_opt->count() > 0;

  try {
    if (gen->parsed()) {
      std::string text;
      std::string line;
      if (kind == "octant") {
        text = serialize(octant());
        line = "octant: 3 vertices";
      } else if (kind == "cap") {
        const ConvexBody body = cap(detail::parse_direction(center, "--center"), radius);
        text = serialize(body);
        line = "cap: radius " + std::to_string(radius);
      } else if (kind == "completion") {
        ConvexBody seed_body;
        if (!gen_input.empty()) seed_body = load_body(gen_input).body;
        else seed_body = cap(detail::parse_direction(center, "--center"), radius_given ? radius : kPi / 6);
        const CompletionResult done = complete_selfdual(seed_body, g.tol, g.seed);
        text = serialize_any(done.body);
        line = "completion: " + detail::summary(done.body) + ", " +
               std::to_string(done.insertions) + " insertions, residual " +
               std::to_string(done.residual) + (done.complete ? "" : " (incomplete)");
      } else {
        const Polytope poly = random_selfdual_polytope(n_target, g.seed);
        text = serialize(poly);
        line = "random-polytope: " + std::to_string(poly.vertices.size()) + " vertices";
      }
      detail::emit(gen_out, text, out);
      if (!gen_out.empty()) out << line << "\n";
      return kOk;
    }
    if (dual_cmd->parsed()) {
      const BodyFile in = load_body(dual_in);
      const std::string text =
          in.polytope ? serialize(polar_dual(*in.polytope)) : serialize_any(polar_dual(in.body));
      detail::emit(dual_out, text, out);
      return kOk;
    }
    if (met->parsed()) {
      const BodyFile in = load_body(met_in);
      require_valid(in.body);
      const WidthReport w = is_constant_width(in.body, kHalfPi, g.tol);
      Json j;
      j["thickness"] = w.thickness;
      j["diameter"] = w.diameter;
      j["width_min"] = w.width_min;
      j["width_max"] = w.width_max;
      j["self_duality_residual"] = w.self_duality_residual.value_or(0);
      out << j.dump(1) << "\n";
      return kOk;
    }
    if (apx->parsed()) {
      ApproximationConfig config;
      config.epsilon = epsilon;
      config.self_dual_tol = g.tol;
      const BodyFile in = load_body(apx_in);
      const ApproximationResult res = approximate_polytope(in.body, config);
      if (!apx_log.empty()) write_text(apx_log, step_log(res.steps));
      if (!apx_cert.empty()) write_text(apx_cert, to_json(res.certificate).dump(1) + "\n");
      if (res.polytope) detail::emit(apx_out, serialize(*res.polytope), out);
      if (!res.certificate.passed) {
        err << to_string(ErrorKind::CertificationFailed) << ": " << res.certificate.violation << "\n";
        return kCertFailed;
      }
      if (!apx_out.empty())
        out << "approximate: " << res.polytope->vertices.size() << " vertices, "
            << res.steps.size() << " steps, hausdorff <= " << res.certificate.hausdorff_bound
            << "\n";
      return kOk;
    }
    if (cer->parsed()) {
      ApproximationConfig config;
      config.epsilon = cer_eps;
      config.self_dual_tol = g.tol;
      config.check();
      const BodyFile original = load_body(cer_orig);
      require_valid(original.body);
      const BodyFile poly = load_body(cer_poly);
      const Polytope p = poly.polytope ? *poly.polytope : to_polytope(poly.body);
      const Certificate cert = evaluate_certificate(original.body, p, config);
      out << to_json(cert).dump(1) << "\n";
      if (!cert.passed) {
        err << to_string(ErrorKind::CertificationFailed) << ": " << cert.violation << "\n";
        return kCertFailed;
      }
      return kOk;
    }
    if (ren->parsed()) {
      std::vector<ConvexBody> bodies;
      for (const auto& path : ren_in) {
        bodies.push_back(load_body(path).body);
        require_valid(bodies.back());
      }
      RenderOptions opts;
      opts.projection = projection == "stereographic" ? Projection::Stereographic
                                                      : Projection::Orthographic;
      opts.view = Vec3{view[0], view[1], view[2]};
      detail::emit(ren_out, render_svg(bodies, opts), out);
      return kOk;
    }
  } catch (const GeometryError& e) {
    err << e.what() << "\n";
    return e.kind() == ErrorKind::CertificationFailed ? kCertFailed : kInvalid;
  }
  return kInvalid;
}

}  // namespace scw::cli
