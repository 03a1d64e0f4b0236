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

#include "tilerscope/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace tilerscope {

namespace {

std::string describe(const Vec3& v) {
  return "(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ", " +
         std::to_string(v.z) + ")";
}

}  // namespace

Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  if (n < 1e-300) {
    throw std::invalid_argument("cannot normalize near-zero vector " +
                                describe(v));
  }
  return v / n;
}

bool all_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

void ToleranceConfig::validate() const {
  if (!(eps_geom > 0.0) || !(eps_len > 0.0) || !(eps_angle > 0.0)) {
    throw std::invalid_argument("tolerances must be strictly positive");
  }
  if (eps_geom > eps_len) {
    throw std::invalid_argument("eps_geom must not exceed eps_len");
  }
}

Plane Plane::from_point_normal(const Vec3& point, const Vec3& normal_dir) {
  const Vec3 n = normalized(normal_dir);
  return Plane{n, dot(n, point)};
}

std::pair<Vec3, Vec3> plane_basis(const Vec3& normal) {
  const Vec3 n = normalized(normal);
  // Seed with the world axis least aligned with the normal.
  Vec3 seed{1.0, 0.0, 0.0};
  const double ax = std::fabs(n.x), ay = std::fabs(n.y), az = std::fabs(n.z);
  if (ay <= ax && ay <= az) {
    seed = {0.0, 1.0, 0.0};
  } else if (az <= ax && az <= ay) {
    seed = {0.0, 0.0, 1.0};
  }
  const Vec3 u = normalized(cross(seed, n));
  const Vec3 v = cross(n, u);
  return {u, v};
}

Vec3 rotate_about_axis(const Vec3& v, const Vec3& axis_unit, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return v * c + cross(axis_unit, v) * s +
         axis_unit * (dot(axis_unit, v) * (1.0 - c));
}

Plane rotate_plane_about_line(const Plane& plane, const Vec3& point,
                              const Vec3& dir_unit, double angle) {
  const Vec3 n = normalized(rotate_about_axis(plane.normal, dir_unit, angle));
  return Plane{n, dot(n, point)};
}

const SectionPolygon& as_polygon(const SectionResult& r) {
  if (!is_polygon(r)) {
    throw std::logic_error("section result is not a polygon");
  }
  return std::get<SectionPolygon>(r);
}

double SectionPolygon::area() const {
  const int n = size();
  if (n < 3) return 0.0;
  Vec3 c{0, 0, 0};
  for (const Vec3& v : vertices) c += v;
  c = c / static_cast<double>(n);
  double twice = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec3& a = vertices[i];
    const Vec3& b = vertices[(i + 1) % n];
    twice += dot(cross(a - c, b - c), carrier.normal);
  }
  return 0.5 * std::fabs(twice);
}

namespace {

// Newell plane fit; robust for near-planar cycles. Normal follows the cycle
// orientation (counterclockwise cycle seen from the normal side).
Plane facet_plane_newell(const std::vector<Vec3>& vertices,
                         const std::vector<int>& cycle) {
  Vec3 n{0, 0, 0};
  Vec3 centroid{0, 0, 0};
  const int k = static_cast<int>(cycle.size());
  for (int i = 0; i < k; ++i) {
    const Vec3& a = vertices[cycle[i]];
    const Vec3& b = vertices[cycle[(i + 1) % k]];
    n += cross(a, b);
    centroid += a;
  }
  centroid = centroid / static_cast<double>(k);
  if (norm(n) < 1e-300) {
    throw std::invalid_argument("facet cycle has zero area");
  }
  const Vec3 unit = normalized(n);
  return Plane{unit, dot(unit, centroid)};
}

}  // namespace

ConvexPolyhedron validate_polyhedron(std::vector<Vec3> vertices,
                                     std::vector<std::vector<int>> facets,
                                     const ToleranceConfig& tolerance) {
  tolerance.validate();
  const int v = static_cast<int>(vertices.size());
  const int f = static_cast<int>(facets.size());
  if (v < 4) throw std::invalid_argument("polyhedron needs at least 4 vertices");
  if (f < 4) throw std::invalid_argument("polyhedron needs at least 4 facets");
  for (const Vec3& p : vertices) {
    if (!all_finite(p)) {
      throw std::invalid_argument("vertex coordinates must be finite");
    }
  }

  for (int fi = 0; fi < f; ++fi) {
    const auto& cycle = facets[fi];
    if (cycle.size() < 3) {
      throw std::invalid_argument("facet " + std::to_string(fi) +
                                  " has fewer than 3 vertices");
    }
    std::set<int> distinct;
    for (int idx : cycle) {
      if (idx < 0 || idx >= v) {
        throw std::invalid_argument("facet " + std::to_string(fi) +
                                    " references vertex " + std::to_string(idx) +
                                    " out of range");
      }
      if (!distinct.insert(idx).second) {
        throw std::invalid_argument("facet " + std::to_string(fi) +
                                    " repeats vertex " + std::to_string(idx));
      }
    }
  }

  std::vector<Plane> planes;
  planes.reserve(facets.size());
  for (int fi = 0; fi < f; ++fi) {
    Plane plane = facet_plane_newell(vertices, facets[fi]);
    for (int idx : facets[fi]) {
      const double d = std::fabs(plane.signed_distance(vertices[idx]));
      if (d > tolerance.eps_geom) {
        throw ValidationError(
            ValidationFailure::NonPlanarFacet,
            "facet " + std::to_string(fi) + " is not planar: vertex " +
                std::to_string(idx) + " off by " + std::to_string(d));
      }
    }
    planes.push_back(plane);
  }

  // Each undirected edge must be traversed once in each direction.
  std::map<EdgeIndexPair, std::pair<int, int>> traversals;  // (a<b) -> counts
  for (int fi = 0; fi < f; ++fi) {
    const auto& cycle = facets[fi];
    const int k = static_cast<int>(cycle.size());
    for (int i = 0; i < k; ++i) {
      const int a = cycle[i];
      const int b = cycle[(i + 1) % k];
      auto& entry = traversals[{std::min(a, b), std::max(a, b)}];
      if (a < b) {
        entry.first += 1;
      } else {
        entry.second += 1;
      }
    }
  }
  std::vector<EdgeIndexPair> edges;
  edges.reserve(traversals.size());
  for (const auto& [key, counts] : traversals) {
    if (counts.first != 1 || counts.second != 1) {
      throw ValidationError(
          ValidationFailure::BadIncidence,
          "edge (" + std::to_string(key.first) + ", " +
              std::to_string(key.second) +
              ") is not shared by exactly two consistently oriented facets");
    }
    edges.push_back(key);
  }

  const int e = static_cast<int>(edges.size());
  if (f + v != e + 2) {
    throw ValidationError(ValidationFailure::EulerViolation,
                          "Euler check failed: f+v=" + std::to_string(f + v) +
                              " but e+2=" + std::to_string(e + 2));
  }

  for (int fi = 0; fi < f; ++fi) {
    for (int vi = 0; vi < v; ++vi) {
      const double d = planes[fi].signed_distance(vertices[vi]);
      if (d > tolerance.eps_geom) {
        throw ValidationError(
            ValidationFailure::NonConvex,
            "vertex " + std::to_string(vi) + " lies outside facet " +
                std::to_string(fi) + " plane by " + std::to_string(d));
      }
    }
  }

  std::vector<int> valences(v, 0);
  std::vector<std::vector<int>> neighbors(v);
  for (const auto& [a, b] : edges) {
    valences[a] += 1;
    valences[b] += 1;
    neighbors[a].push_back(b);
    neighbors[b].push_back(a);
  }
  for (int vi = 0; vi < v; ++vi) {
    if (valences[vi] == 0) {
      throw std::invalid_argument("vertex " + std::to_string(vi) +
                                  " is referenced by no facet");
    }
    if (valences[vi] < 3) {
      throw ValidationError(ValidationFailure::NonConvex,
                            "vertex " + std::to_string(vi) +
                                " has valence below 3 (not extreme)");
    }
    std::sort(neighbors[vi].begin(), neighbors[vi].end());
  }

  Vec3 centroid{0, 0, 0};
  for (const Vec3& p : vertices) centroid += p;
  centroid = centroid / static_cast<double>(v);

  ConvexPolyhedron out;
  out.vertices_ = std::move(vertices);
  out.facets_ = std::move(facets);
  out.edges_ = std::move(edges);
  out.facet_planes_ = std::move(planes);
  out.valences_ = std::move(valences);
  out.neighbors_ = std::move(neighbors);
  out.centroid_ = centroid;
  out.tolerance_ = tolerance;
  return out;
}

bool ConvexPolyhedron::contains(const Vec3& p, double slack) const {
  for (const Plane& plane : facet_planes_) {
    if (plane.signed_distance(p) > slack) return false;
  }
  return true;
}

std::pair<Vec3, Vec3> ConvexPolyhedron::bounding_box() const {
  Vec3 lo{std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity()};
  Vec3 hi = -lo;
  for (const Vec3& p : vertices_) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    lo.z = std::min(lo.z, p.z);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
    hi.z = std::max(hi.z, p.z);
  }
  return {lo, hi};
}

namespace {

struct Candidate {
  Vec3 position;
  Incidence incidence;
};

SectionResult classify_candidates(const ConvexPolyhedron& p, const Plane& pi,
                                  std::vector<Candidate> cands) {
  const double eps = p.tolerance().eps_geom;

  // Deduplicate by incidence, then drop OnEdge points that coincide with a
  // kept point (the plane grazing a vertex can report the same spot twice).
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.incidence.kind != b.incidence.kind) {
      return a.incidence.kind == IncidenceKind::OnVertex;
    }
    return a.incidence.index < b.incidence.index;
  });
  std::vector<Candidate> unique;
  for (const Candidate& c : cands) {
    bool drop = false;
    for (const Candidate& kept : unique) {
      if (kept.incidence == c.incidence ||
          distance(kept.position, c.position) <= eps) {
        drop = true;
        break;
      }
    }
    if (!drop) unique.push_back(c);
  }

  const int k = static_cast<int>(unique.size());
  if (k == 0) return EmptySection{};
  if (k == 1) return PointSection{unique[0].position};
  if (k == 2) return SegmentSection{unique[0].position, unique[1].position};

  // Collinear point sets degenerate to a segment between the extremes.
  {
    const Vec3 dir = unique[1].position - unique[0].position;
    if (norm(dir) > eps) {
      const Vec3 d = normalized(dir);
      double off_line = 0.0;
      double tmin = 0.0, tmax = 0.0;
      int imin = 0, imax = 0;
      for (int i = 0; i < k; ++i) {
        const Vec3 r = unique[i].position - unique[0].position;
        const double t = dot(r, d);
        off_line = std::max(off_line, norm(r - d * t));
        if (t < tmin) { tmin = t; imin = i; }
        if (t > tmax) { tmax = t; imax = i; }
      }
      if (off_line <= eps) {
        return SegmentSection{unique[imin].position, unique[imax].position};
      }
    }
  }

  Vec3 centroid{0, 0, 0};
  for (const Candidate& c : unique) centroid += c.position;
  centroid = centroid / static_cast<double>(k);

  const auto [u, v] = plane_basis(pi.normal);
  std::vector<int> order(k);
  std::vector<double> angle(k);
  for (int i = 0; i < k; ++i) {
    order[i] = i;
    const Vec3 r = unique[i].position - centroid;
    angle[i] = std::atan2(dot(v, r), dot(u, r));
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (angle[a] != angle[b]) return angle[a] < angle[b];
    const Incidence& ia = unique[a].incidence;
    const Incidence& ib = unique[b].incidence;
    if (ia.kind != ib.kind) return ia.kind == IncidenceKind::OnVertex;
    return ia.index < ib.index;
  });

  SectionPolygon poly;
  poly.carrier = Plane{normalized(pi.normal), pi.offset};
  poly.vertices.reserve(k);
  poly.incidences.reserve(k);
  for (int i : order) {
    poly.vertices.push_back(unique[i].position);
    poly.incidences.push_back(unique[i].incidence);
  }
  return poly;
}

}  // namespace

SectionResult cross_section(const ConvexPolyhedron& p, const Plane& pi) {
  const double eps = p.tolerance().eps_geom;
  const Plane plane{normalized(pi.normal), pi.offset};

  const int v = p.vertex_count();
  std::vector<double> dist(v);
  for (int i = 0; i < v; ++i) {
    dist[i] = plane.signed_distance(p.vertex(i));
  }

  std::vector<Candidate> cands;
  for (int i = 0; i < v; ++i) {
    if (std::fabs(dist[i]) <= eps) {
      cands.push_back({p.vertex(i), {IncidenceKind::OnVertex, i}});
    }
  }
  const int e = p.edge_count();
  for (int ei = 0; ei < e; ++ei) {
    const auto [a, b] = p.edge(ei);
    const double da = dist[a];
    const double db = dist[b];
    const bool straddles =
        (da > eps && db < -eps) || (da < -eps && db > eps);
    if (!straddles) continue;  // on-plane endpoints were captured above
    const double t = da / (da - db);
    const Vec3 point = p.vertex(a) + (p.vertex(b) - p.vertex(a)) * t;
    if (distance(point, p.vertex(a)) <= eps) {
      cands.push_back({p.vertex(a), {IncidenceKind::OnVertex, a}});
    } else if (distance(point, p.vertex(b)) <= eps) {
      cands.push_back({p.vertex(b), {IncidenceKind::OnVertex, b}});
    } else {
      cands.push_back({point, {IncidenceKind::OnEdge, ei}});
    }
  }

  return classify_candidates(p, plane, std::move(cands));
}

bool is_proper(const SectionPolygon& section) {
  for (const Incidence& inc : section.incidences) {
    if (inc.kind != IncidenceKind::OnEdge) return false;
  }
  return true;
}

Plane proper_nudge(const ConvexPolyhedron& p, const Plane& pi) {
  const SectionResult res = cross_section(p, pi);
  if (std::holds_alternative<EmptySection>(res)) {
    throw std::invalid_argument(
        "proper_nudge requires a plane that meets the polyhedron");
  }
  const Plane plane{normalized(pi.normal), pi.offset};
  const double eps = p.tolerance().eps_geom;

  double min_pos = std::numeric_limits<double>::infinity();
  double min_neg = std::numeric_limits<double>::infinity();
  for (const Vec3& vtx : p.vertices()) {
    const double d = plane.signed_distance(vtx);
    if (d > eps) min_pos = std::min(min_pos, d);
    if (d < -eps) min_neg = std::min(min_neg, -d);
  }
  if (std::isfinite(min_pos)) {
    return Plane{plane.normal, plane.offset + 0.5 * min_pos};
  }
  if (std::isfinite(min_neg)) {
    return Plane{plane.normal, plane.offset - 0.5 * min_neg};
  }
  throw std::logic_error(
      "proper_nudge: no room on either side of the plane (inconsistent "
      "polyhedron)");
}

int vertex_valence(const ConvexPolyhedron& p, int vertex_index) {
  if (vertex_index < 0 || vertex_index >= p.vertex_count()) {
    throw std::out_of_range("vertex index " + std::to_string(vertex_index) +
                            " out of range");
  }
  return p.valence(vertex_index);
}

}  // namespace tilerscope
