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

#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tilerscope {

/// 3-component vector, used for both points and directions.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
          a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

/// Unit-length copy of v. Throws std::invalid_argument on a near-zero input.
Vec3 normalized(const Vec3& v);

bool all_finite(const Vec3& v);

/// Comparison thresholds. eps_geom guards coplanarity/incidence decisions,
/// eps_len length equalities, eps_angle angle equalities (radians).
/// Defaults assume unit-scale inputs.
struct ToleranceConfig {
  double eps_geom = 1e-9;
  double eps_len = 1e-7;
  double eps_angle = 1e-7;

  /// Throws std::invalid_argument unless all entries are positive and
  /// eps_geom <= eps_len.
  void validate() const;
};

/// Oriented plane {p : dot(normal, p) == offset} with unit normal.
struct Plane {
  Vec3 normal;
  double offset = 0.0;

  static Plane from_point_normal(const Vec3& point, const Vec3& normal_dir);

  double signed_distance(const Vec3& p) const {
    return dot(normal, p) - offset;
  }
};

/// Orthonormal in-plane basis (u, v) with u x v == normal.
std::pair<Vec3, Vec3> plane_basis(const Vec3& normal);

/// Rodrigues rotation of v about the unit axis by angle (radians).
Vec3 rotate_about_axis(const Vec3& v, const Vec3& axis_unit, double angle);

/// Rotates a plane about the line through `point` with unit direction
/// `dir_unit`; the line stays inside the rotated plane.
Plane rotate_plane_about_line(const Plane& plane, const Vec3& point,
                              const Vec3& dir_unit, double angle);

enum class IncidenceKind { OnEdge, OnVertex };

/// Where a section vertex sits on the polyhedron boundary: the interior of
/// edge `index` or exactly at vertex `index`.
struct Incidence {
  IncidenceKind kind = IncidenceKind::OnEdge;
  int index = -1;

  bool operator==(const Incidence&) const = default;
};

/// A planar convex polygon cut out of a polyhedron. Vertices are stored in
/// cyclic order, counterclockwise about the carrier normal, with one
/// incidence record per vertex.
struct SectionPolygon {
  Plane carrier;
  std::vector<Vec3> vertices;
  std::vector<Incidence> incidences;

  int size() const { return static_cast<int>(vertices.size()); }
  double area() const;
};

struct EmptySection {};
struct PointSection {
  Vec3 point;
};
struct SegmentSection {
  Vec3 a;
  Vec3 b;
};

/// Plane/polyhedron intersection: trivial cases (empty, point, segment) or a
/// polygon with at least 3 vertices.
using SectionResult =
    std::variant<EmptySection, PointSection, SegmentSection, SectionPolygon>;

inline bool is_polygon(const SectionResult& r) {
  return std::holds_alternative<SectionPolygon>(r);
}

const SectionPolygon& as_polygon(const SectionResult& r);

enum class ValidationFailure {
  NonConvex,
  NonPlanarFacet,
  BadIncidence,
  EulerViolation,
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(ValidationFailure reason, const std::string& what)
      : std::runtime_error(what), reason_(reason) {}
  ValidationFailure reason() const { return reason_; }

 private:
  ValidationFailure reason_;
};

/// Unordered vertex-index pair with first < second.
using EdgeIndexPair = std::pair<int, int>;

/// A validated convex polyhedron: vertex coordinates plus facet cycles
/// ordered so facet normals point outward. Edges, facet planes, valences and
/// the centroid are derived at validation time. Immutable after construction;
/// all operations on it are pure and safe to call concurrently.
class ConvexPolyhedron {
 public:
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int facet_count() const { return static_cast<int>(facets_.size()); }

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<std::vector<int>>& facets() const { return facets_; }
  const std::vector<EdgeIndexPair>& edges() const { return edges_; }

  const Vec3& vertex(int i) const { return vertices_.at(i); }
  const std::vector<int>& facet(int i) const { return facets_.at(i); }
  const EdgeIndexPair& edge(int i) const { return edges_.at(i); }
  const Plane& facet_plane(int i) const { return facet_planes_.at(i); }

  int valence(int vertex_index) const { return valences_.at(vertex_index); }
  const std::vector<int>& neighbors(int vertex_index) const {
    return neighbors_.at(vertex_index);
  }

  const Vec3& centroid() const { return centroid_; }
  const ToleranceConfig& tolerance() const { return tolerance_; }

  /// True when the point lies in every facet half-space within `slack`.
  bool contains(const Vec3& p, double slack) const;

  /// Axis-aligned bounding box as (min corner, max corner).
  std::pair<Vec3, Vec3> bounding_box() const;

 private:
  ConvexPolyhedron() = default;
  friend ConvexPolyhedron validate_polyhedron(std::vector<Vec3> vertices,
                                              std::vector<std::vector<int>> facets,
                                              const ToleranceConfig& tolerance);

  std::vector<Vec3> vertices_;
  std::vector<std::vector<int>> facets_;
  std::vector<EdgeIndexPair> edges_;
  std::vector<Plane> facet_planes_;
  std::vector<int> valences_;
  std::vector<std::vector<int>> neighbors_;
  Vec3 centroid_;
  ToleranceConfig tolerance_;
};

/// Checks every polyhedron invariant and derives edges, facet planes and
/// valences. Facet cycles must already be oriented outward (the mesh parser
/// takes care of that for file input). Throws ValidationError with the
/// failure kind, or std::invalid_argument for structurally malformed input.
ConvexPolyhedron validate_polyhedron(std::vector<Vec3> vertices,
                                     std::vector<std::vector<int>> facets,
                                     const ToleranceConfig& tolerance = {});

/// Intersects the plane with every edge of P, merging points within eps_geom
/// and snapping near-endpoint hits to OnVertex incidences, then orders the
/// surviving points angularly about their centroid in the carrier plane.
/// A plane tangent to a facet yields that facet as a Section (facets count
/// as cross-sections here).
SectionResult cross_section(const ConvexPolyhedron& p, const Plane& pi);

/// True iff no section vertex is a polyhedron vertex (every incidence is
/// OnEdge).
bool is_proper(const SectionPolygon& section);

/// Translates the plane parallel to itself by half the minimum positive
/// vertex distance, toward a side where P has interior points. For a plane
/// cutting a polygon the result cuts a proper cross-section with at least as
/// many vertices; planes tangent at a vertex or edge get pushed into the
/// body the same way. Throws std::invalid_argument if the plane misses P.
Plane proper_nudge(const ConvexPolyhedron& p, const Plane& pi);

/// Number of edges incident to the vertex; at least 3 on a validated
/// polyhedron. Throws std::out_of_range for a bad index.
int vertex_valence(const ConvexPolyhedron& p, int vertex_index);

}  // namespace tilerscope
