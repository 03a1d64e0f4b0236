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

#include "tilerscope/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace tilerscope {

std::vector<double> default_epsilon_steps() {
  std::vector<double> steps;
  for (int k = 3; k <= 12; ++k) {
    steps.push_back(std::ldexp(1.0, -k));
  }
  return steps;
}

void SearchParams::validate() const {
  if (budget < 1) throw std::invalid_argument("budget must be at least 1");
  if (epsilon_steps.empty()) {
    throw std::invalid_argument("epsilon schedule must be nonempty");
  }
  double prev = std::numeric_limits<double>::infinity();
  for (double s : epsilon_steps) {
    if (!(s > 0.0) || !(s < prev)) {
      throw std::invalid_argument(
          "epsilon schedule must be strictly positive and decreasing");
    }
    prev = s;
  }
  tolerance.validate();
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// U1 on the edge entering the corner, U2 on the edge leaving it, both at
// parameter t from the corner's neighbors toward the corner resp. away.
Plane shave_plane_with_params(const ConvexPolyhedron& p, int facet_index,
                              int h, double t1, double t2,
                              std::span<const double> schedule) {
  const auto& cycle = p.facet(facet_index);
  const int n = static_cast<int>(cycle.size());
  if (h < 0 || h >= n) {
    throw std::out_of_range("facet position " + std::to_string(h) +
                            " out of range");
  }
  const ToleranceConfig& tol = p.tolerance();
  const int vh = cycle[h];
  const int vprev = cycle[(h + n - 1) % n];
  const int vnext = cycle[(h + 1) % n];
  const Vec3& corner = p.vertex(vh);
  const Vec3 u1 = p.vertex(vprev) + (corner - p.vertex(vprev)) * t1;
  const Vec3 u2 = corner + (p.vertex(vnext) - corner) * t2;

  // Local frame from the proof: x along U1->U2, z the inward facet normal,
  // y chosen so the cut corner sits at negative y.
  const Vec3 xhat = normalized(u2 - u1);
  const Vec3 zhat = -p.facet_plane(facet_index).normal;
  Vec3 yhat = cross(zhat, xhat);
  if (dot(yhat, corner - u1) > 0.0) yhat = -yhat;

  std::set<int> facet_vertices(cycle.begin(), cycle.end());
  for (int idx : cycle) {
    if (idx == vh) continue;
    if (dot(yhat, p.vertex(idx) - u1) <= tol.eps_geom) {
      throw ConstructionFailedError(
          "shave chord does not separate the cut corner from facet " +
          std::to_string(facet_index));
    }
  }

  double eta = std::numeric_limits<double>::infinity();
  for (int vi = 0; vi < p.vertex_count(); ++vi) {
    if (facet_vertices.count(vi)) continue;
    eta = std::min(eta, dot(zhat, p.vertex(vi) - u1));
  }
  if (!std::isfinite(eta) || eta <= tol.eps_geom) {
    throw ConstructionFailedError("no vertex above facet " +
                                  std::to_string(facet_index));
  }

  int valence_sum = 0;
  for (int idx : cycle) valence_sum += p.valence(idx);
  const int trial_vertices = valence_sum - 2 * n;
  const int expected = valence_sum - p.valence(vh) - 2 * n + 4;

  for (double step : schedule) {
    const double z0 = eta * step;
    const Plane trial_plane{zhat, dot(zhat, u1) + z0};
    const SectionResult trial = cross_section(p, trial_plane);
    if (!is_polygon(trial)) continue;
    const SectionPolygon& slice = as_polygon(trial);
    if (slice.size() != trial_vertices) continue;

    // The tilt grazes past every satellite of the kept vertices; satellites
    // of the cut corner fall below the plane on their own.
    bool usable = true;
    double min_ratio = z0;
    for (int i = 0; i < slice.size(); ++i) {
      const Incidence& inc = slice.incidences[i];
      if (inc.kind != IncidenceKind::OnEdge) {
        usable = false;
        break;
      }
      const auto [a, b] = p.edge(inc.index);
      const int root =
          dot(zhat, p.vertex(a) - u1) < dot(zhat, p.vertex(b) - u1) ? a : b;
      if (!facet_vertices.count(root)) {
        usable = false;
        break;
      }
      if (root == vh) continue;
      const double y = dot(yhat, slice.vertices[i] - u1);
      if (y <= tol.eps_geom) {
        usable = false;
        break;
      }
      min_ratio = std::min(min_ratio, z0 / y);
    }
    if (!usable) continue;

    const double eps0 = 0.5 * min_ratio;
    const Plane cut = Plane::from_point_normal(u1, yhat * eps0 - zhat);
    const SectionResult result = cross_section(p, cut);
    if (is_polygon(result)) {
      const SectionPolygon& sec = as_polygon(result);
      if (sec.size() == expected && is_proper(sec)) return cut;
    }
  }
  throw ConstructionFailedError(
      "no schedule step produced the predicted " + std::to_string(expected) +
      "-gon for facet " + std::to_string(facet_index) + ", position " +
      std::to_string(h));
}

struct CornerFrame {
  Vec3 normal;     // unit, pointing away from the corner vertex
  double base;     // plane value at the three neighbors
  double height;   // corner's distance below the neighbor plane
};

CornerFrame corner_frame(const ConvexPolyhedron& p, int vertex_index) {
  if (vertex_index < 0 || vertex_index >= p.vertex_count()) {
    throw std::out_of_range("vertex index out of range");
  }
  if (p.valence(vertex_index) != 3) {
    throw WrongValenceError("corner construction requires a valence-3 vertex");
  }
  const auto& nbrs = p.neighbors(vertex_index);
  const Vec3& a = p.vertex(nbrs[0]);
  const Vec3& b = p.vertex(nbrs[1]);
  const Vec3& c = p.vertex(nbrs[2]);
  const Vec3 raw = cross(b - a, c - a);
  if (norm(raw) <= p.tolerance().eps_geom) {
    throw WrongValenceError("corner neighbors are affinely dependent");
  }
  Vec3 n = normalized(raw);
  const Vec3& w = p.vertex(vertex_index);
  if (dot(n, w - a) > 0.0) n = -n;
  const double base = dot(n, a);
  const double height = base - dot(n, w);
  return {n, base, height};
}

}  // namespace

Plane construct_shave_plane(const ConvexPolyhedron& p, int facet_index, int h,
                            std::span<const double> eps_schedule) {
  if (facet_index < 0 || facet_index >= p.facet_count()) {
    throw std::out_of_range("facet index out of range");
  }
  return shave_plane_with_params(p, facet_index, h, 0.5, 0.5, eps_schedule);
}

double corner_epsilon_bound(const ConvexPolyhedron& p, int vertex_index) {
  const CornerFrame frame = corner_frame(p, vertex_index);
  const auto& nbrs = p.neighbors(vertex_index);
  double min_overshoot = std::numeric_limits<double>::infinity();
  for (int vi = 0; vi < p.vertex_count(); ++vi) {
    if (vi == vertex_index || std::find(nbrs.begin(), nbrs.end(), vi) != nbrs.end()) {
      continue;
    }
    const double s = (dot(frame.normal, p.vertex(vi)) - frame.base) / frame.height;
    if (s > 0.0) min_overshoot = std::min(min_overshoot, s);
  }
  if (!std::isfinite(min_overshoot)) return 0.0;
  return 0.5 * min_overshoot;
}

Plane corner_hexagon_plane(const ConvexPolyhedron& p, int vertex_index,
                           double epsilon) {
  const CornerFrame frame = corner_frame(p, vertex_index);
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("epsilon must be positive");
  }
  const double bound = corner_epsilon_bound(p, vertex_index);
  if (epsilon >= bound) {
    throw EpsilonTooLargeError(
        "epsilon " + fmt(epsilon) + " is not below the safe bound " +
            fmt(bound) + " at vertex " + std::to_string(vertex_index),
        bound);
  }
  return Plane{frame.normal, frame.base + epsilon * frame.height};
}

Plane chord_rotation_sample(const ConvexPolyhedron& p,
                            const SectionPolygon& section, int i, int j,
                            double epsilon, int direction) {
  const int n = section.size();
  if (i < 0 || i >= n || j < 0 || j >= n || i == j) {
    throw std::invalid_argument("chord endpoints must be distinct vertices");
  }
  if (direction != 1 && direction != -1) {
    throw std::invalid_argument("direction must be +1 or -1");
  }
  if (epsilon == 0.0) return section.carrier;
  const Vec3& anchor = section.vertices[i];
  const Vec3 axis = normalized(section.vertices[j] - anchor);
  for (double angle : {direction * epsilon, -direction * epsilon}) {
    const Plane rotated =
        rotate_plane_about_line(section.carrier, anchor, axis, angle);
    if (is_polygon(cross_section(p, rotated))) return rotated;
  }
  throw BothTrivialError("both chord rotations miss the polyhedron (epsilon " +
                         fmt(epsilon) + " too large)");
}

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Vec3 gaussian_direction(std::mt19937_64& rng) {
  for (;;) {
    // Box-Muller; the spare third coordinate comes from a second pair.
    const double u1 = std::max(uniform01(rng), 1e-300);
    const double u2 = uniform01(rng);
    const double u3 = std::max(uniform01(rng), 1e-300);
    const double u4 = uniform01(rng);
    const double r1 = std::sqrt(-2.0 * std::log(u1));
    const double r2 = std::sqrt(-2.0 * std::log(u3));
    const Vec3 g{r1 * std::cos(2.0 * std::numbers::pi * u2),
                 r1 * std::sin(2.0 * std::numbers::pi * u2),
                 r2 * std::cos(2.0 * std::numbers::pi * u4)};
    if (norm(g) > 1e-9) return normalized(g);
  }
}

Vec3 random_interior_point(const ConvexPolyhedron& p, std::mt19937_64& rng) {
  const auto [lo, hi] = p.bounding_box();
  const Vec3 ext = hi - lo;
  for (int tries = 0; tries < 10000; ++tries) {
    const Vec3 pt{lo.x + uniform01(rng) * ext.x, lo.y + uniform01(rng) * ext.y,
                  lo.z + uniform01(rng) * ext.z};
    if (p.contains(pt, 0.0)) return pt;
  }
  return p.centroid();
}

struct FalsifySearch {
  const ConvexPolyhedron& p;
  const SearchParams& params;
  CoverageReport cov;
  std::vector<std::pair<Plane, SectionPolygon>> hexagons;
  std::optional<Witness> witness;
  int last_section_size = 0;

  bool out_of_budget() {
    if (cov.planes_examined >= params.budget) {
      cov.budget_exhausted = true;
      return true;
    }
    return false;
  }

  // Sections the candidate plane and tests the rejection predicates:
  // 7+ edges, a proper hexagon with all opposite pairs unequal, or a
  // hexagon outside every Reinhardt family. Returns true on a witness.
  bool consider(const Plane& plane, int& stage_counter,
                const std::string& provenance, bool collect_hexagons) {
    const ToleranceConfig& tol = params.tolerance;
    cov.planes_examined += 1;
    stage_counter += 1;
    last_section_size = 0;

    const SectionResult res = cross_section(p, plane);
    if (!is_polygon(res)) return false;
    const SectionPolygon& sec = as_polygon(res);
    last_section_size = sec.size();
    cov.max_section_edges = std::max(cov.max_section_edges, sec.size());

    TilerVerdict verdict;
    try {
      verdict = tiler_verdict(sec, tol);
    } catch (const DegeneratePolygonError&) {
      return false;
    }

    if (sec.size() >= 7) {
      witness = Witness{plane, sec, verdict, false, provenance};
      return true;
    }
    if (sec.size() == 6) {
      if (collect_hexagons && hexagons.size() < 64) {
        hexagons.emplace_back(plane, sec);
      }
      const PolygonMetrics m = polygon_metrics(sec, tol);
      const bool broken_pairs = !has_equal_opposite_edges(m, tol);
      if (is_proper(sec) && broken_pairs) {
        witness = Witness{plane, sec, verdict, true, provenance};
        return true;
      }
      if (verdict.tiles == Tiles::No) {
        witness = Witness{plane, sec, verdict, false, provenance};
        return true;
      }
    }
    if (sec.size() == 5 && verdict.tiles == Tiles::Unknown) {
      cov.unknown_pentagons += 1;
    }
    return false;
  }

  bool corner_stage() {
    for (int w = 0; w < p.vertex_count(); ++w) {
      if (p.valence(w) != 3) continue;
      for (double eps : params.epsilon_steps) {
        if (out_of_budget()) return false;
        Plane plane;
        try {
          plane = corner_hexagon_plane(p, w, eps);
        } catch (const EpsilonTooLargeError&) {
          continue;
        } catch (const WrongValenceError&) {
          break;
        }
        if (consider(plane, cov.corner_planes,
                     "corner(vertex=" + std::to_string(w) + ",eps=" + fmt(eps) +
                         ")",
                     true)) {
          return true;
        }
      }
    }
    return false;
  }

  bool shave_stage() {
    // Chord parameters: the canonical midpoint cut first, then 1/3 and
    // golden-ratio offsets to break leftover edge equalities.
    const double golden = 0.6180339887498949;
    std::vector<double> chord_params = {0.5, 1.0 / 3.0};
    double t = 1.0 / 3.0;
    for (int k = 0; k < 3; ++k) {
      t += golden;
      t -= std::floor(t);
      chord_params.push_back(0.1 + 0.8 * t);  // keep well inside the edge
    }
    for (int fi = 0; fi < p.facet_count(); ++fi) {
      const int n = static_cast<int>(p.facet(fi).size());
      for (int h = 0; h < n; ++h) {
        for (double tparam : chord_params) {
          if (out_of_budget()) return false;
          Plane plane;
          try {
            plane = shave_plane_with_params(p, fi, h, tparam, tparam,
                                            params.epsilon_steps);
          } catch (const ConstructionFailedError&) {
            break;
          }
          if (consider(plane, cov.shave_planes,
                       "shave(facet=" + std::to_string(fi) + ",h=" +
                           std::to_string(h) + ",t=" + fmt(tparam) + ")",
                       true)) {
            return true;
          }
          if (last_section_size != 6) break;  // retries cannot change the count
        }
      }
    }
    return false;
  }

  bool chord_stage() {
    for (std::size_t k = 0; k < hexagons.size(); ++k) {
      const SectionPolygon hex = hexagons[k].second;
      for (int i = 0; i < 6; ++i) {
        const int j = (i + 2) % 6;
        for (double eps : params.epsilon_steps) {
          if (out_of_budget()) return false;
          Plane plane;
          try {
            plane = chord_rotation_sample(p, hex, i, j, eps, +1);
          } catch (const BothTrivialError&) {
            continue;
          }
          if (consider(plane, cov.chord_planes,
                       "chord(hexagon=" + std::to_string(k) + ",i=" +
                           std::to_string(i) + ",j=" + std::to_string(j) +
                           ",eps=" + fmt(eps) + ")",
                       false)) {
            return true;
          }
        }
      }
    }
    return false;
  }

  bool random_stage() {
    std::mt19937_64 rng(params.seed);
    int k = 0;
    while (!out_of_budget()) {
      const Vec3 point = random_interior_point(p, rng);
      const Vec3 normal = gaussian_direction(rng);
      const Plane plane = Plane::from_point_normal(point, normal);
      if (consider(plane, cov.random_planes,
                   "random(k=" + std::to_string(k) + ")", false)) {
        return true;
      }
      ++k;
    }
    return false;
  }
};

bool has_parallel_facet_pair(const ConvexPolyhedron& p,
                             const ToleranceConfig& tol) {
  const int f = p.facet_count();
  for (int i = 0; i < f; ++i) {
    for (int j = i + 1; j < f; ++j) {
      const Vec3& a = p.facet_plane(i).normal;
      const Vec3& b = p.facet_plane(j).normal;
      const double ang = std::atan2(norm(cross(a, b)), dot(a, b));
      // Outward normals of parallel facets point opposite ways.
      if (std::fabs(ang - std::numbers::pi) <= tol.eps_angle) return true;
    }
  }
  return false;
}

}  // namespace

std::optional<Witness> falsify_universal(const ConvexPolyhedron& p,
                                         const SearchParams& params,
                                         CoverageReport* coverage) {
  params.validate();
  FalsifySearch search{p, params, {}, {}, {}, 0};
  const bool found = search.corner_stage() || search.shave_stage() ||
                     search.chord_stage() || search.random_stage();
  if (coverage) *coverage = search.cov;
  return found ? search.witness : std::nullopt;
}

UniversalVerdict verify_universal(const ConvexPolyhedron& p,
                                  const SearchParams& params) {
  params.validate();
  UniversalVerdict verdict;
  verdict.screen = combinatorial_screen(p);

  if (!verdict.screen.passed) {
    verdict.outcome = VerdictOutcome::NotUniversal;
    verdict.witness = falsify_universal(p, params, &verdict.coverage);
    return verdict;
  }

  if (verdict.screen.shape == ShapeClass::Tetrahedron) {
    verdict.outcome = VerdictOutcome::CertifiedUniversal;
    verdict.certificate = CertificateKind::TetrahedronAllSections;
    return verdict;
  }

  if (has_parallel_facet_pair(p, params.tolerance)) {
    verdict.outcome = VerdictOutcome::CertifiedUniversal;
    verdict.certificate = CertificateKind::PentahedronParallelFacets;
    return verdict;
  }

  verdict.witness = falsify_universal(p, params, &verdict.coverage);
  verdict.outcome = verdict.witness ? VerdictOutcome::NotUniversal
                                    : VerdictOutcome::Unresolved;
  return verdict;
}

}  // namespace tilerscope
