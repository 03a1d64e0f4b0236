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

#include "tilerscope/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tilerscope/tiling.hpp"

namespace tilerscope {

namespace {

using nlohmann::json;

struct Token {
  std::string text;
  int line = 0;
  int column = 0;
};

// Whitespace-separated tokens with '#' comments stripped; positions kept
// for error reporting.
std::vector<Token> tokenize(std::istream& in) {
  std::vector<Token> tokens;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i >= line.size()) break;
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      tokens.push_back({line.substr(start, i - start), line_no,
                        static_cast<int>(start) + 1});
    }
  }
  return tokens;
}

class TokenCursor {
 public:
  explicit TokenCursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  bool done() const { return pos_ >= tokens_.size(); }
  int last_line() const {
    return tokens_.empty() ? 1 : tokens_.back().line;
  }

  const Token& next(const std::string& expectation) {
    if (done()) {
      throw ParseError("unexpected end of file, expected " + expectation,
                       last_line());
    }
    return tokens_[pos_++];
  }

  long long next_int(const std::string& expectation) {
    const Token& t = next(expectation);
    char* end = nullptr;
    const long long value = std::strtoll(t.text.c_str(), &end, 10);
    if (end == t.text.c_str() || *end != '\0') {
      throw ParseError("expected " + expectation + ", got '" + t.text + "'",
                       t.line, t.column);
    }
    return value;
  }

  double next_double(const std::string& expectation) {
    const Token& t = next(expectation);
    char* end = nullptr;
    const double value = std::strtod(t.text.c_str(), &end);
    if (end == t.text.c_str() || *end != '\0' || !std::isfinite(value)) {
      throw ParseError("expected " + expectation + ", got '" + t.text + "'",
                       t.line, t.column);
    }
    return value;
  }

  const Token& peek_last() const { return tokens_[pos_ - 1]; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

Vec3 facet_newell_normal(const MeshData& mesh, const std::vector<int>& cycle) {
  Vec3 n{0, 0, 0};
  const int k = static_cast<int>(cycle.size());
  for (int i = 0; i < k; ++i) {
    n += cross(mesh.vertices[cycle[i]], mesh.vertices[cycle[(i + 1) % k]]);
  }
  return n;
}

}  // namespace

MeshData parse_mesh(std::istream& in) {
  TokenCursor cursor(tokenize(in));

  const Token& header = cursor.next("OFF header");
  if (header.text != "OFF") {
    throw ParseError("expected OFF header, got '" + header.text + "'",
                     header.line, header.column);
  }
  const long long v = cursor.next_int("vertex count");
  const long long f = cursor.next_int("facet count");
  cursor.next_int("edge count");  // informational only
  if (v < 0 || f < 0) {
    throw ParseError("counts must be non-negative", header.line);
  }

  MeshData mesh;
  mesh.vertices.reserve(static_cast<std::size_t>(v));
  for (long long i = 0; i < v; ++i) {
    Vec3 p;
    p.x = cursor.next_double("vertex coordinate");
    p.y = cursor.next_double("vertex coordinate");
    p.z = cursor.next_double("vertex coordinate");
    mesh.vertices.push_back(p);
  }
  for (long long i = 0; i < f; ++i) {
    const long long k = cursor.next_int("facet vertex count");
    if (k < 3) {
      throw ParseError("facet " + std::to_string(i) +
                           " must list at least 3 vertices",
                       cursor.peek_last().line);
    }
    std::vector<int> cycle;
    cycle.reserve(static_cast<std::size_t>(k));
    for (long long j = 0; j < k; ++j) {
      const long long idx = cursor.next_int("facet vertex index");
      const int line = cursor.peek_last().line;
      if (idx < 0 || idx >= v) {
        throw IndexError("facet " + std::to_string(i) + " references vertex " +
                             std::to_string(idx) + " of " + std::to_string(v),
                         line);
      }
      cycle.push_back(static_cast<int>(idx));
    }
    mesh.facets.push_back(std::move(cycle));
  }
  if (!cursor.done()) {
    const Token& extra = cursor.next("end of file");
    throw ParseError("unexpected trailing content '" + extra.text + "'",
                     extra.line, extra.column);
  }

  // Hand-authored files often orient cycles inconsistently; flip so normals
  // point away from the vertex centroid.
  if (!mesh.vertices.empty()) {
    Vec3 centroid{0, 0, 0};
    for (const Vec3& p : mesh.vertices) centroid += p;
    centroid = centroid / static_cast<double>(mesh.vertices.size());
    for (auto& cycle : mesh.facets) {
      Vec3 fc{0, 0, 0};
      for (int idx : cycle) fc += mesh.vertices[idx];
      fc = fc / static_cast<double>(cycle.size());
      if (dot(facet_newell_normal(mesh, cycle), fc - centroid) < 0.0) {
        std::reverse(cycle.begin(), cycle.end());
      }
    }
  }
  return mesh;
}

MeshData parse_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open mesh file '" + path + "'");
  }
  return parse_mesh(in);
}

std::string emit_mesh(const MeshData& mesh) {
  std::set<std::pair<int, int>> undirected;
  for (const auto& cycle : mesh.facets) {
    const int k = static_cast<int>(cycle.size());
    for (int i = 0; i < k; ++i) {
      const int a = cycle[i];
      const int b = cycle[(i + 1) % k];
      undirected.insert({std::min(a, b), std::max(a, b)});
    }
  }
  std::string out = "OFF\n";
  out += std::to_string(mesh.vertices.size()) + " " +
         std::to_string(mesh.facets.size()) + " " +
         std::to_string(undirected.size()) + "\n";
  char buf[96];
  for (const Vec3& p : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", p.x, p.y, p.z);
    out += buf;
  }
  for (const auto& cycle : mesh.facets) {
    out += std::to_string(cycle.size());
    for (int idx : cycle) out += " " + std::to_string(idx);
    out += "\n";
  }
  return out;
}

std::string mesh_checksum(const MeshData& mesh) {
  const std::string dump = emit_mesh(mesh);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : dump) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, hash);
  return buf;
}

namespace {

// Floating-point values are rounded to 12 significant digits before they
// enter a report, so serialization is stable across runs.
double sig12(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

json vec_json(const Vec3& v) {
  return json::array({sig12(v.x), sig12(v.y), sig12(v.z)});
}

json doubles_json(const std::vector<double>& values) {
  json arr = json::array();
  for (double v : values) arr.push_back(sig12(v));
  return arr;
}

std::string tiles_name(Tiles t) {
  switch (t) {
    case Tiles::Yes: return "yes";
    case Tiles::No: return "no";
    case Tiles::Unknown: return "unknown";
  }
  return "unknown";
}

std::string reason_name(TilerReason r) {
  switch (r) {
    case TilerReason::TriangleAlwaysTiles: return "triangle_always_tiles";
    case TilerReason::QuadrilateralAlwaysTiles:
      return "quadrilateral_always_tiles";
    case TilerReason::HexagonClass: return "hexagon_class";
    case TilerReason::SevenPlusEdges: return "seven_plus_edges";
    case TilerReason::HexagonNoClass: return "hexagon_no_class";
    case TilerReason::PentagonParallelEdges: return "pentagon_parallel_edges";
    case TilerReason::PentagonUndetermined: return "pentagon_undetermined";
  }
  return "unknown";
}

std::string hex_class_name(HexClass c) {
  switch (c) {
    case HexClass::I: return "I";
    case HexClass::II: return "II";
    case HexClass::III: return "III";
  }
  return "?";
}

json verdict_json(const TilerVerdict& v) {
  json classes = json::array();
  for (const ReinhardtClass& rc : v.classes) {
    classes.push_back({{"kind", hex_class_name(rc.kind)},
                       {"rotation", rc.rotation},
                       {"reflected", rc.reflected}});
  }
  return {{"tiles", tiles_name(v.tiles)},
          {"reason", reason_name(v.reason)},
          {"classes", classes}};
}

json section_json(const SectionPolygon& sec) {
  json vertices = json::array();
  for (const Vec3& p : sec.vertices) vertices.push_back(vec_json(p));
  json incidences = json::array();
  for (const Incidence& inc : sec.incidences) {
    incidences.push_back(
        {{"kind", inc.kind == IncidenceKind::OnEdge ? "edge" : "vertex"},
         {"index", inc.index}});
  }
  return {{"carrier",
           {{"normal", vec_json(sec.carrier.normal)},
            {"offset", sig12(sec.carrier.offset)}}},
          {"vertices", vertices},
          {"incidences", incidences}};
}

json witness_json(const Witness& w) {
  json out = {{"plane",
               {{"normal", vec_json(w.plane.normal)},
                {"offset", sig12(w.plane.offset)}}},
              {"section", section_json(w.section)},
              {"verdict", verdict_json(w.verdict)},
              {"violates_opposite_edge_rule", w.violates_opposite_edge_rule},
              {"provenance", w.provenance}};
  try {
    const PolygonMetrics m = polygon_metrics(w.section, ToleranceConfig{});
    out["metrics"] = {{"edge_lengths", doubles_json(m.edge_lengths)},
                      {"angles", doubles_json(m.angles)}};
  } catch (const DegeneratePolygonError&) {
    out["metrics"] = nullptr;
  }
  return out;
}

std::string shape_name(ShapeClass s) {
  switch (s) {
    case ShapeClass::Tetrahedron: return "tetrahedron";
    case ShapeClass::QuadPyramid: return "quad_pyramid";
    case ShapeClass::TriangularBasePentahedron:
      return "triangular_base_pentahedron";
  }
  return "unknown";
}

std::string screen_fail_name(ScreenFailReason r) {
  switch (r) {
    case ScreenFailReason::FacetTooManyEdges: return "facet_too_many_edges";
    case ScreenFailReason::InadmissibleValenceSet:
      return "inadmissible_valence_set";
    case ScreenFailReason::CountingViolationCubeType:
      return "counting_violation_cube_type";
    case ScreenFailReason::CountingViolationOther:
      return "counting_violation_other";
  }
  return "unknown";
}

json screen_json(const ScreenVerdict& s) {
  json out = {{"passed", s.passed},
              {"shape", s.shape ? json(shape_name(*s.shape)) : json(nullptr)},
              {"reason", s.reason ? json(screen_fail_name(*s.reason))
                                  : json(nullptr)},
              {"facet_index", s.facet_index},
              {"profile",
               {{"v", s.profile.v},
                {"e", s.profile.e},
                {"f", s.profile.f},
                {"f3", s.profile.f3},
                {"f4", s.profile.f4},
                {"v3", s.profile.v3},
                {"v4", s.profile.v4},
                {"admissible", s.profile.admissible}}}};
  out["offending_valence_set"] =
      s.offending_set ? json(s.offending_set->values()) : json(nullptr);
  return out;
}

std::string outcome_name(VerdictOutcome o) {
  switch (o) {
    case VerdictOutcome::CertifiedUniversal: return "certified_universal";
    case VerdictOutcome::NotUniversal: return "not_universal";
    case VerdictOutcome::Unresolved: return "unresolved";
  }
  return "unknown";
}

json report_json(const ReportDocument& report) {
  const UniversalVerdict& v = report.verdict;
  json result = {
      {"outcome", outcome_name(v.outcome)},
      {"certificate",
       v.certificate
           ? json(v.certificate == CertificateKind::TetrahedronAllSections
                      ? "tetrahedron_all_sections"
                      : "pentahedron_parallel_facets")
           : json(nullptr)},
      {"screen", screen_json(v.screen)},
      {"witness", v.witness ? witness_json(*v.witness) : json(nullptr)},
      {"coverage",
       {{"corner_planes", v.coverage.corner_planes},
        {"shave_planes", v.coverage.shave_planes},
        {"chord_planes", v.coverage.chord_planes},
        {"random_planes", v.coverage.random_planes},
        {"planes_examined", v.coverage.planes_examined},
        {"max_section_edges", v.coverage.max_section_edges},
        {"unknown_pentagons", v.coverage.unknown_pentagons},
        {"budget_exhausted", v.coverage.budget_exhausted}}}};

  return {{"input",
           {{"vertex_count", report.vertex_count},
            {"edge_count", report.edge_count},
            {"facet_count", report.facet_count},
            {"checksum", report.checksum}}},
          {"validation", report.validation},
          {"result", result},
          {"params",
           {{"seed", report.params.seed},
            {"budget", report.params.budget},
            {"epsilon_steps", doubles_json(report.params.epsilon_steps)},
            {"eps_geom", sig12(report.params.tolerance.eps_geom)},
            {"eps_len", sig12(report.params.tolerance.eps_len)},
            {"eps_angle", sig12(report.params.tolerance.eps_angle)}}}};
}

void write_text(std::ostream& out, const json& j, int indent) {
  const std::string pad(indent, ' ');
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      out << pad << key << ":\n";
      write_text(out, value, indent + 2);
    } else {
      out << pad << key << ": " << value.dump() << "\n";
    }
  }
}

}  // namespace

ReportDocument build_report(const MeshData& mesh, const ConvexPolyhedron& poly,
                            const UniversalVerdict& verdict,
                            const SearchParams& params) {
  ReportDocument report;
  report.vertex_count = poly.vertex_count();
  report.edge_count = poly.edge_count();
  report.facet_count = poly.facet_count();
  report.checksum = mesh_checksum(mesh);
  report.validation = "ok";
  report.verdict = verdict;
  report.params = params;
  return report;
}

std::string emit_report(const ReportDocument& report, ReportFormat format) {
  const json doc = report_json(report);
  if (format == ReportFormat::Json) {
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  write_text(out, doc, 0);
  return out.str();
}

namespace {

std::string fmt6(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

}  // namespace

std::string render_witness_svg(const Witness& witness) {
  const SectionPolygon& sec = witness.section;
  const int n = sec.size();
  const auto [u, v] = plane_basis(sec.carrier.normal);

  Vec3 centroid{0, 0, 0};
  for (const Vec3& p : sec.vertices) centroid += p;
  centroid = centroid / static_cast<double>(std::max(n, 1));

  struct P2 {
    double x, y;
  };
  std::vector<P2> pts(n);
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (int i = 0; i < n; ++i) {
    const Vec3 r = sec.vertices[i] - centroid;
    pts[i] = {dot(u, r), dot(v, r)};
    xmin = std::min(xmin, pts[i].x);
    xmax = std::max(xmax, pts[i].x);
    ymin = std::min(ymin, pts[i].y);
    ymax = std::max(ymax, pts[i].y);
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double scale = 440.0 / span;
  const double cx = 0.5 * (xmin + xmax);
  const double cy = 0.5 * (ymin + ymax);
  const auto sx = [&](double x) { return 300.0 + (x - cx) * scale; };
  const auto sy = [&](double y) { return 300.0 - (y - cy) * scale; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" "
         "height=\"600\" viewBox=\"0 0 600 600\">\n";
  svg << "<title>" << witness.provenance << "</title>\n";
  svg << "<polygon fill=\"#eef3ff\" stroke=\"#27496d\" stroke-width=\"2\" "
         "points=\"";
  for (int i = 0; i < n; ++i) {
    if (i) svg << " ";
    svg << fmt6(sx(pts[i].x)) << "," << fmt6(sy(pts[i].y));
  }
  svg << "\"/>\n";

  bool have_metrics = true;
  PolygonMetrics metrics;
  try {
    metrics = polygon_metrics(sec, ToleranceConfig{});
  } catch (const DegeneratePolygonError&) {
    have_metrics = false;
  }

  if (have_metrics) {
    for (int i = 0; i < n; ++i) {
      const P2& a = pts[i];
      const P2& b = pts[(i + 1) % n];
      const double mx = 0.5 * (a.x + b.x);
      const double my = 0.5 * (a.y + b.y);
      double nx = b.y - a.y;
      double ny = a.x - b.x;
      const double len = std::hypot(nx, ny);
      if (len > 0.0) {
        nx /= len;
        ny /= len;
        if (nx * mx + ny * my < 0.0) {
          nx = -nx;
          ny = -ny;
        }
      }
      svg << "<text x=\"" << fmt6(sx(mx) + nx * 18.0) << "\" y=\""
          << fmt6(sy(my) - ny * 18.0)
          << "\" font-size=\"13\" text-anchor=\"middle\" fill=\"#27496d\">"
          << fmt6(metrics.edge_lengths[i]) << "</text>\n";
    }
    for (int i = 0; i < n; ++i) {
      const P2& a = pts[i];
      const double len = std::hypot(a.x, a.y);
      const double ix = len > 0.0 ? -a.x / len : 0.0;
      const double iy = len > 0.0 ? -a.y / len : 0.0;
      svg << "<text x=\"" << fmt6(sx(a.x) + ix * 26.0) << "\" y=\""
          << fmt6(sy(a.y) - iy * 26.0)
          << "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#8a3333\">"
          << fmt6(metrics.angles[i]) << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace tilerscope
