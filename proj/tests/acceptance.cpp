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

// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "hexagon_generators.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "tilerscope/combinatorics.hpp"
#include "tilerscope/geometry.hpp"
#include "tilerscope/io.hpp"
#include "tilerscope/search.hpp"
#include "tilerscope/tiling.hpp"

using namespace tilerscope;
using namespace tilerscope::testing;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

struct Context {
  std::ostringstream detail;
  bool ok = true;

  void require(bool condition, const std::string& message) {
    if (!condition && ok) {
      ok = false;
      detail << message;
    }
  }
};

// --- 1. Cube rejection -------------------------------------------------------

void cube_rejection(Context& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const ConvexPolyhedron cube = unit_cube();
  SearchParams params;
  const UniversalVerdict verdict = verify_universal(cube, params);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  c.require(verdict.outcome == VerdictOutcome::NotUniversal,
            "cube not rejected");
  c.require(verdict.witness.has_value(), "no witness");
  if (verdict.witness) {
    const SectionPolygon& sec = verdict.witness->section;
    c.require(sec.size() == 6, "witness is not hexagonal");
    const PolygonMetrics m = polygon_metrics(sec, params.tolerance);
    c.require(!has_equal_opposite_edges(m, params.tolerance),
              "witness has an equal opposite pair");
  }

  // The eps=0.25 corner plane has alternating lengths 0.75*sqrt2, 0.25*sqrt2.
  const Plane quarter = corner_hexagon_plane(cube, 0, 0.25);
  const SectionPolygon sec = as_polygon(cross_section(cube, quarter));
  c.require(sec.size() == 6, "quarter-plane section is not hexagonal");
  for (int i = 0; i < 6; ++i) {
    const double len = distance(sec.vertices[i], sec.vertices[(i + 1) % 6]);
    const double opposite =
        distance(sec.vertices[(i + 2) % 6], sec.vertices[(i + 3) % 6]);
    const double expected_hi = 0.75 * kSqrt2;
    const double expected_lo = 0.25 * kSqrt2;
    c.require(std::fabs(len - expected_hi) <= 1e-9 ||
                  std::fabs(len - expected_lo) <= 1e-9,
              "edge length off the {0.75sqrt2, 0.25sqrt2} family");
    c.require(std::fabs(len - opposite) <= 1e-9,
              "lengths do not alternate with period 2");
  }
  c.require(seconds < 1.0, "verify took " + std::to_string(seconds) + "s");
}

// --- 2. Tetrahedron certification --------------------------------------------

void tetrahedron_certification(Context& c) {
  std::mt19937_64 rng(20260810);
  SearchParams params;
  for (int t = 0; t < 25; ++t) {
    const ConvexPolyhedron tetra = random_tetrahedron(rng);
    const UniversalVerdict verdict = verify_universal(tetra, params);
    c.require(verdict.outcome == VerdictOutcome::CertifiedUniversal,
              "tetrahedron " + std::to_string(t) + " not certified");
    c.require(verdict.certificate == CertificateKind::TetrahedronAllSections,
              "wrong certificate");
    for (int k = 0; k < 10000; ++k) {
      const SectionResult res =
          cross_section(tetra, random_interior_plane(tetra, rng));
      if (!is_polygon(res)) {
        c.require(false, "interior plane missed the tetrahedron");
        return;
      }
      if (as_polygon(res).size() > 4) {
        c.require(false, "tetrahedron produced a section with " +
                             std::to_string(as_polygon(res).size()) +
                             " edges");
        return;
      }
    }
  }
}

// --- 3. Parallel-facet pentahedron certification ------------------------------

void pentahedron_certification(Context& c) {
  std::mt19937_64 rng(1503);
  SearchParams params;
  const ToleranceConfig tol = params.tolerance;
  std::vector<NamedSolid> solids;
  solids.push_back({"right prism", triangular_prism()});
  solids.push_back({"oblique prism", oblique_prism()});
  solids.push_back({"frustum pentahedron", frustum_pentahedron()});
  for (const NamedSolid& solid : solids) {
    const UniversalVerdict verdict = verify_universal(solid.poly, params);
    c.require(verdict.outcome == VerdictOutcome::CertifiedUniversal,
              std::string(solid.name) + " not certified");
    c.require(
        verdict.certificate == CertificateKind::PentahedronParallelFacets,
        std::string(solid.name) + ": wrong certificate");
    for (int k = 0; k < 10000; ++k) {
      const SectionResult res =
          cross_section(solid.poly, random_interior_plane(solid.poly, rng));
      if (!is_polygon(res)) {
        c.require(false, std::string(solid.name) + ": missed interior plane");
        return;
      }
      const SectionPolygon& sec = as_polygon(res);
      if (sec.size() > 5) {
        c.require(false, std::string(solid.name) + ": section with " +
                             std::to_string(sec.size()) + " edges");
        return;
      }
      if (sec.size() == 5) {
        const TilerVerdict tv = tiler_verdict(sec, tol);
        if (!(tv.tiles == Tiles::Yes &&
              tv.reason == TilerReason::PentagonParallelEdges)) {
          c.require(false, std::string(solid.name) +
                               ": pentagonal section did not classify as a "
                               "parallel-edge tiler");
          return;
        }
      }
    }
  }
}

// --- 4. Euler identities -------------------------------------------------------

void euler_identities(Context& c) {
  for (const NamedSolid& solid : five_solid_corpus()) {
    const CountProfile p = euler_counts(solid.poly);
    const std::string name = solid.name;
    c.require(p.f + p.v == p.e + 2, name + ": Euler fails");
    if (p.f == p.f3 + p.f4) {
      c.require(3 * p.f3 + 4 * p.f4 == 2 * p.e, name + ": facet split fails");
    }
    if (p.v == p.v3 + p.v4) {
      c.require(3 * p.v3 + 4 * p.v4 == 2 * p.e, name + ": valence split fails");
    }
    if (p.admissible) {
      c.require(p.f3 + p.v3 == 8, name + ": f3+v3 != 8");
      c.require(4 * (p.f4 - p.v4) == 3 * (p.v3 - p.f3),
                name + ": 4(f4-v4) != 3(v3-f3)");
    }
  }
  const CountProfile pyramid = euler_counts(quad_pyramid());
  c.require(pyramid.v == 5 && pyramid.e == 8 && pyramid.f == 5,
            "pyramid profile is not (5,8,5)");
  const CountProfile prism = euler_counts(triangular_prism());
  c.require(prism.v == 6 && prism.e == 9 && prism.f == 5,
            "prism profile is not (6,9,5)");
}

// --- 5. Shave-count law --------------------------------------------------------

void shave_count_law(Context& c) {
  const auto steps = default_epsilon_steps();
  for (const NamedSolid& solid : five_solid_corpus()) {
    const ConvexPolyhedron& p = solid.poly;
    for (int fi = 0; fi < p.facet_count(); ++fi) {
      const auto& cycle = p.facet(fi);
      const int n = static_cast<int>(cycle.size());
      int total = 0;
      for (int idx : cycle) total += p.valence(idx);
      for (int h = 0; h < n; ++h) {
        const int predicted = total - p.valence(cycle[h]) - 2 * n + 4;
        const Plane plane = construct_shave_plane(p, fi, h, steps);
        const SectionResult res = cross_section(p, plane);
        if (!is_polygon(res) || as_polygon(res).size() != predicted) {
          c.require(false, std::string(solid.name) + ": facet " +
                               std::to_string(fi) + ", h=" +
                               std::to_string(h) + " missed the predicted " +
                               std::to_string(predicted) + "-gon");
          return;
        }
      }
    }
  }
  const auto measured = [&](const ConvexPolyhedron& p) {
    return as_polygon(cross_section(p, construct_shave_plane(p, 0, 0, steps)))
        .size();
  };
  c.require(measured(unit_cube()) == 5, "cube shave is not a pentagon");
  c.require(measured(regular_octahedron()) == 6,
            "octahedron shave is not a hexagon");
  c.require(measured(regular_tetrahedron()) == 4,
            "tetrahedron shave is not a quadrilateral");
}

// --- 6. Facet admissibility ----------------------------------------------------

void facet_admissibility_criterion(Context& c) {
  for (int n = 3; n <= 6; ++n) {
    std::vector<int> pick(n, 3);
    for (;;) {
      const ValenceSet vs{std::vector<int>(pick)};
      const bool admissible = facet_admissible(vs).admissible;
      const bool expected = vs == ValenceSet({3, 3, 3}) ||
                            vs == ValenceSet({4, 3, 3}) ||
                            vs == ValenceSet({3, 3, 3, 3});
      if (admissible != expected) {
        std::string values;
        for (int d : vs.values()) values += std::to_string(d) + " ";
        c.require(false, "admissibility wrong for { " + values + "}");
        return;
      }
      int i = n - 1;
      while (i >= 0 && pick[i] == 5) {
        pick[i] = 3;
        --i;
      }
      if (i < 0) break;
      pick[i] += 1;
    }
  }
  const ScreenVerdict octa = combinatorial_screen(regular_octahedron());
  c.require(!octa.passed &&
                octa.reason == ScreenFailReason::InadmissibleValenceSet &&
                octa.offending_set == ValenceSet({4, 4, 4}),
            "octahedron screen reason wrong");
  const ScreenVerdict hexp = combinatorial_screen(hexagonal_prism());
  c.require(!hexp.passed && hexp.reason == ScreenFailReason::FacetTooManyEdges,
            "hexagonal prism screen reason wrong");
}

// --- 7. Reinhardt classifier ---------------------------------------------------

void reinhardt_classifier(Context& c) {
  std::mt19937_64 rng(777);
  const ToleranceConfig tol{};
  for (HexClass kind : {HexClass::I, HexClass::II, HexClass::III}) {
    for (int k = 0; k < 100; ++k) {
      const HexSample sample = generate_class_hexagon(kind, rng, tol);
      const PolygonMetrics noisy = perturb_metrics(sample.metrics, rng, tol);
      bool found = false;
      for (const ReinhardtClass& rc : classify_hexagon(noisy, tol)) {
        if (rc.kind == kind) found = true;
      }
      if (!found || !oracle_in_class(kind, noisy, tol)) {
        c.require(false, "generated hexagon lost its class after noise");
        return;
      }
    }
  }
  for (int k = 0; k < 100; ++k) {
    const HexSample sample = generate_violator_hexagon(rng, tol);
    if (!classify_hexagon(sample.metrics, tol).empty()) {
      c.require(false, "violator hexagon classified non-empty");
      return;
    }
    if (oracle_in_class(HexClass::I, sample.metrics, tol) ||
        oracle_in_class(HexClass::II, sample.metrics, tol) ||
        oracle_in_class(HexClass::III, sample.metrics, tol)) {
      c.require(false, "oracle disagrees on a violator hexagon");
      return;
    }
  }
}

// --- 8. Opposite-edge predicate -------------------------------------------------

void opposite_edge_predicate(Context& c) {
  const ToleranceConfig tol{};
  const ConvexPolyhedron cube = unit_cube();

  std::vector<SectionPolygon> family;
  for (double eps : {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45}) {
    family.push_back(
        as_polygon(cross_section(cube, corner_hexagon_plane(cube, 0, eps))));
  }
  // The symmetric section (all edges equal) and chord-rotated variants.
  const Vec3 n = Vec3{1, 1, 1} / std::numbers::sqrt3;
  const SectionPolygon symmetric =
      as_polygon(cross_section(cube, {n, 1.5 / std::numbers::sqrt3}));
  family.push_back(symmetric);
  for (double eps : {0.002, 0.01, 0.05}) {
    const Plane rotated = chord_rotation_sample(cube, symmetric, 1, 3, eps);
    const SectionResult res = cross_section(cube, rotated);
    if (is_polygon(res) && as_polygon(res).size() == 6) {
      family.push_back(as_polygon(res));
    }
  }

  bool saw_true = false, saw_false = false;
  for (const SectionPolygon& sec : family) {
    const PolygonMetrics m = polygon_metrics(sec, tol);
    // Direct recomputation oracle from the raw vertices.
    double min_gap = 1e300;
    for (int i = 0; i < 3; ++i) {
      const double a = distance(sec.vertices[i], sec.vertices[i + 1]);
      const double b =
          distance(sec.vertices[(i + 3) % 6], sec.vertices[(i + 4) % 6]);
      min_gap = std::min(min_gap, std::fabs(a - b));
    }
    const bool expected = min_gap <= tol.eps_len;
    if (has_equal_opposite_edges(m, tol) != expected) {
      c.require(false, "predicate disagrees with the recomputation oracle");
      return;
    }
    (expected ? saw_true : saw_false) = true;
  }
  c.require(saw_true && saw_false, "family did not exercise both outcomes");

  // Tetrahedra contribute no hexagonal sections: vacuously consistent.
  std::mt19937_64 rng(88);
  const ConvexPolyhedron tetra = regular_tetrahedron();
  for (int k = 0; k < 2000; ++k) {
    const SectionResult res =
        cross_section(tetra, random_interior_plane(tetra, rng));
    if (is_polygon(res) && as_polygon(res).size() == 6) {
      c.require(false, "tetrahedron produced a hexagonal section");
      return;
    }
  }
}

// --- 9. Section oracle equivalence ----------------------------------------------

void section_oracle_equivalence(Context& c) {
  std::mt19937_64 rng(909090);
  for (const NamedSolid& solid : five_solid_corpus()) {
    for (int k = 0; k < 200; ++k) {
      const Plane plane = random_interior_plane(solid.poly, rng);
      const SectionResult res = cross_section(solid.poly, plane);
      if (!is_polygon(res)) {
        c.require(false, std::string(solid.name) + ": missed interior plane");
        return;
      }
      const double area = as_polygon(res).area();
      const double estimate =
          monte_carlo_section_area(solid.poly, plane, 100000, rng);
      if (std::fabs(estimate - area) > 0.02 * area) {
        c.require(false, std::string(solid.name) + ": MC estimate " +
                             std::to_string(estimate) + " vs area " +
                             std::to_string(area));
        return;
      }
    }
  }
}

// --- 10. Determinism and replay --------------------------------------------------

void determinism_and_replay(Context& c) {
  SearchParams params;
  params.seed = 11;
  params.budget = 400;

  std::vector<NamedSolid> inputs;
  inputs.push_back({"cube", unit_cube()});
  inputs.push_back({"octahedron", regular_octahedron()});
  inputs.push_back({"hexagonal prism", hexagonal_prism()});
  inputs.push_back({"quad pyramid", quad_pyramid()});
  for (const NamedSolid& input : inputs) {
    MeshData mesh;
    mesh.vertices = input.poly.vertices();
    mesh.facets = input.poly.facets();

    const auto run = [&] {
      const UniversalVerdict verdict = verify_universal(input.poly, params);
      return emit_report(build_report(mesh, input.poly, verdict, params),
                         ReportFormat::Json);
    };
    const std::string first = run();
    const std::string second = run();
    if (first != second) {
      c.require(false, std::string(input.name) + ": reports differ");
      return;
    }

    // Replay every witness from its serialized plane.
    const nlohmann::json doc = nlohmann::json::parse(first);
    const auto& jwitness = doc["result"]["witness"];
    if (jwitness.is_null()) continue;
    const Plane plane{Vec3{jwitness["plane"]["normal"][0],
                           jwitness["plane"]["normal"][1],
                           jwitness["plane"]["normal"][2]},
                      jwitness["plane"]["offset"]};
    const SectionResult res = cross_section(input.poly, plane);
    if (!is_polygon(res)) {
      c.require(false,
                std::string(input.name) + ": witness plane lost its section");
      return;
    }
    const SectionPolygon& sec = as_polygon(res);
    const bool violates = jwitness["violates_opposite_edge_rule"].get<bool>();
    if (violates) {
      const PolygonMetrics m = polygon_metrics(sec, params.tolerance);
      if (!is_proper(sec) || has_equal_opposite_edges(m, params.tolerance)) {
        c.require(false, std::string(input.name) +
                             ": opposite-edge violation did not replay");
        return;
      }
    } else {
      if (tiler_verdict(sec, params.tolerance).tiles != Tiles::No) {
        c.require(false,
                  std::string(input.name) + ": NotTiler witness did not replay");
        return;
      }
    }
  }
}

struct Criterion {
  int number;
  const char* title;
  std::function<void(Context&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "cube rejection with alternating-hexagon witness", cube_rejection},
      {2, "tetrahedron certification over 25 random tetrahedra",
       tetrahedron_certification},
      {3, "parallel-facet pentahedron certification",
       pentahedron_certification},
      {4, "Euler identities on the five-solid corpus", euler_identities},
      {5, "shave-count law on every (facet, corner)", shave_count_law},
      {6, "facet admissibility over small valence multisets",
       facet_admissibility_criterion},
      {7, "Reinhardt classifier vs brute-force relabeling oracle",
       reinhardt_classifier},
      {8, "opposite-edge predicate on the cube falsification family",
       opposite_edge_predicate},
      {9, "section area vs Monte-Carlo membership estimate",
       section_oracle_equivalence},
      {10, "report determinism and witness replay", determinism_and_replay},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    Context context;
    try {
      criterion.run(context);
    } catch (const std::exception& e) {
      context.ok = false;
      context.detail << "exception: " << e.what();
    }
    if (context.ok) {
      std::printf("PASS  %2d  %s\n", criterion.number, criterion.title);
    } else {
      std::printf("FAIL  %2d  %s  [%s]\n", criterion.number, criterion.title,
                  context.detail.str().c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  return failures;
}
