// Copyright 2026 The TilerScope Authors.
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

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tilerscope/combinatorics.hpp"
#include "tilerscope/geometry.hpp"
#include "tilerscope/io.hpp"
#include "tilerscope/search.hpp"
#include "tilerscope/tiling.hpp"

namespace {

constexpr int kExitCertified = 0;
constexpr int kExitNotUniversal = 1;
constexpr int kExitUnresolved = 2;
constexpr int kExitInputError = 64;

struct CommonOptions {
  std::string mesh_path;
  double eps_geom = 1e-9;
  double eps_len = 1e-7;
  double eps_angle = 1e-7;
  std::string format = "text";

  tilerscope::ToleranceConfig tolerance() const {
    return {eps_geom, eps_len, eps_angle};
  }
  tilerscope::ReportFormat report_format() const {
    return format == "json" ? tilerscope::ReportFormat::Json
                            : tilerscope::ReportFormat::Text;
  }
};

void add_common(CLI::App* cmd, CommonOptions* opts, bool with_format) {
  cmd->add_option("mesh", opts->mesh_path, "OFF-style mesh file")
      ->required();
  cmd->add_option("--eps-geom", opts->eps_geom,
                  "coplanarity/incidence tolerance");
  cmd->add_option("--eps-len", opts->eps_len, "length comparison tolerance");
  cmd->add_option("--eps-angle", opts->eps_angle,
                  "angle comparison tolerance (radians)");
  if (with_format) {
    cmd->add_option("--format", opts->format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
  }
}

tilerscope::ConvexPolyhedron load(const CommonOptions& opts,
                                  tilerscope::MeshData* mesh_out) {
  tilerscope::MeshData mesh = tilerscope::parse_mesh_file(opts.mesh_path);
  tilerscope::ConvexPolyhedron poly = tilerscope::validate_polyhedron(
      mesh.vertices, mesh.facets, opts.tolerance());
  if (mesh_out) *mesh_out = std::move(mesh);
  return poly;
}

int run_verify(const CommonOptions& opts, const tilerscope::SearchParams& params,
               const std::string& svg_out) {
  tilerscope::MeshData mesh;
  const tilerscope::ConvexPolyhedron poly = load(opts, &mesh);
  const tilerscope::UniversalVerdict verdict =
      tilerscope::verify_universal(poly, params);
  const tilerscope::ReportDocument report =
      tilerscope::build_report(mesh, poly, verdict, params);
  std::cout << tilerscope::emit_report(report, opts.report_format());

  if (!svg_out.empty()) {
    if (verdict.witness) {
      std::ofstream out(svg_out);
      if (!out) {
        std::cerr << "error: cannot write '" << svg_out << "'\n";
        return kExitInputError;
      }
      out << tilerscope::render_witness_svg(*verdict.witness);
    } else {
      std::cerr << "note: no witness to render, skipping " << svg_out << "\n";
    }
  }

  switch (verdict.outcome) {
    case tilerscope::VerdictOutcome::CertifiedUniversal:
      return kExitCertified;
    case tilerscope::VerdictOutcome::NotUniversal:
      return kExitNotUniversal;
    case tilerscope::VerdictOutcome::Unresolved:
      return kExitUnresolved;
  }
  return kExitUnresolved;
}

int run_screen(const CommonOptions& opts) {
  const tilerscope::ConvexPolyhedron poly = load(opts, nullptr);
  const tilerscope::ScreenVerdict screen =
      tilerscope::combinatorial_screen(poly);
  const tilerscope::CountProfile& c = screen.profile;

  std::cout << "screen: " << (screen.passed ? "pass" : "fail") << "\n";
  if (screen.passed) {
    const char* shape = "";
    switch (*screen.shape) {
      case tilerscope::ShapeClass::Tetrahedron:
        shape = "tetrahedron";
        break;
      case tilerscope::ShapeClass::QuadPyramid:
        shape = "quad_pyramid";
        break;
      case tilerscope::ShapeClass::TriangularBasePentahedron:
        shape = "triangular_base_pentahedron";
        break;
    }
    std::cout << "shape: " << shape << "\n";
  } else {
    const char* reason = "";
    switch (*screen.reason) {
      case tilerscope::ScreenFailReason::FacetTooManyEdges:
        reason = "facet_too_many_edges";
        break;
      case tilerscope::ScreenFailReason::InadmissibleValenceSet:
        reason = "inadmissible_valence_set";
        break;
      case tilerscope::ScreenFailReason::CountingViolationCubeType:
        reason = "counting_violation_cube_type";
        break;
      case tilerscope::ScreenFailReason::CountingViolationOther:
        reason = "counting_violation_other";
        break;
    }
    std::cout << "reason: " << reason << "\n";
    if (screen.facet_index >= 0) {
      std::cout << "facet: " << screen.facet_index << "\n";
    }
    if (screen.offending_set) {
      std::cout << "valence_set:";
      for (int d : screen.offending_set->values()) std::cout << " " << d;
      std::cout << "\n";
    }
  }
  std::cout << "profile: v=" << c.v << " e=" << c.e << " f=" << c.f
            << " f3=" << c.f3 << " f4=" << c.f4 << " v3=" << c.v3
            << " v4=" << c.v4 << (c.admissible ? " admissible" : "") << "\n";
  return screen.passed ? kExitCertified : kExitNotUniversal;
}

int run_section(const CommonOptions& opts, const std::vector<double>& coeffs) {
  const tilerscope::ConvexPolyhedron poly = load(opts, nullptr);
  const tilerscope::Vec3 normal{coeffs[0], coeffs[1], coeffs[2]};
  if (tilerscope::norm(normal) <= 0.0) {
    std::cerr << "error: plane normal must be nonzero\n";
    return kExitInputError;
  }
  const double scale = tilerscope::norm(normal);
  const tilerscope::Plane plane{normal / scale, coeffs[3] / scale};

  const tilerscope::SectionResult result =
      tilerscope::cross_section(poly, plane);
  if (std::holds_alternative<tilerscope::EmptySection>(result)) {
    std::cout << "section: empty\n";
    return kExitCertified;
  }
  if (const auto* pt = std::get_if<tilerscope::PointSection>(&result)) {
    std::cout << "section: point (" << pt->point.x << ", " << pt->point.y
              << ", " << pt->point.z << ")\n";
    return kExitCertified;
  }
  if (const auto* seg = std::get_if<tilerscope::SegmentSection>(&result)) {
    std::cout << "section: segment (" << seg->a.x << ", " << seg->a.y << ", "
              << seg->a.z << ") -- (" << seg->b.x << ", " << seg->b.y << ", "
              << seg->b.z << ")\n";
    return kExitCertified;
  }

  const tilerscope::SectionPolygon& sec = tilerscope::as_polygon(result);
  std::cout << "section: polygon with " << sec.size() << " vertices\n";
  const tilerscope::PolygonMetrics metrics =
      tilerscope::polygon_metrics(sec, opts.tolerance());
  std::cout << "vertices:\n";
  for (const auto& p : sec.vertices) {
    std::cout << "  (" << p.x << ", " << p.y << ", " << p.z << ")\n";
  }
  std::cout << "edge_lengths:";
  for (double len : metrics.edge_lengths) std::cout << " " << len;
  std::cout << "\nangles:";
  for (double a : metrics.angles) std::cout << " " << a;
  std::cout << "\nproper: " << (tilerscope::is_proper(sec) ? "yes" : "no")
            << "\n";
  const tilerscope::TilerVerdict tv =
      tilerscope::tiler_verdict(sec, opts.tolerance());
  const char* tiles = tv.tiles == tilerscope::Tiles::Yes
                          ? "yes"
                          : tv.tiles == tilerscope::Tiles::No ? "no"
                                                              : "unknown";
  std::cout << "tiles: " << tiles << "\n";
  return kExitCertified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tiler-scope: cross-section and plane-tiling analysis of "
               "convex polyhedra"};
  app.require_subcommand(1);

  CommonOptions verify_opts;
  tilerscope::SearchParams params;
  std::string svg_out;
  CLI::App* verify = app.add_subcommand(
      "verify", "full universal-tiler verdict with witness search");
  add_common(verify, &verify_opts, true);
  verify->add_option("--budget", params.budget, "max planes examined");
  verify->add_option("--seed", params.seed, "PRNG seed");
  verify->add_option("--svg-out", svg_out, "write witness drawing here");

  CommonOptions screen_opts;
  CLI::App* screen =
      app.add_subcommand("screen", "combinatorial screen only");
  add_common(screen, &screen_opts, false);

  CommonOptions section_opts;
  std::vector<double> plane_coeffs;
  CLI::App* section = app.add_subcommand(
      "section", "one cross-section with metrics and tiler verdict");
  add_common(section, &section_opts, false);
  section
      ->add_option("--plane", plane_coeffs,
                   "plane a,b,c,d meaning ax+by+cz=d")
      ->delimiter(',')
      ->expected(4)
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (verify->parsed()) {
      params.tolerance = verify_opts.tolerance();
      return run_verify(verify_opts, params, svg_out);
    }
    if (screen->parsed()) return run_screen(screen_opts);
    if (section->parsed()) return run_section(section_opts, plane_coeffs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
