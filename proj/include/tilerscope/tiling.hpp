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

#include <span>
#include <stdexcept>
#include <vector>

#include "tilerscope/geometry.hpp"

namespace tilerscope {

class DegeneratePolygonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WrongArityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Side lengths and interior angles of a convex polygon. Edge i joins
/// vertices i and i+1 (mod n); angles[i] is the interior angle at vertex i.
struct PolygonMetrics {
  int n = 0;
  std::vector<double> edge_lengths;
  std::vector<double> angles;
};

/// Measures a planar convex vertex loop. Throws DegeneratePolygonError for
/// zero-length edges, straight or reflex angles, or a non-planar loop.
PolygonMetrics polygon_metrics(std::span<const Vec3> loop,
                               const ToleranceConfig& tol);
PolygonMetrics polygon_metrics(const SectionPolygon& section,
                               const ToleranceConfig& tol);

/// Builds metrics from raw values (synthetic polygons in tests and
/// generators). Validates positivity, convexity ranges and the angle sum.
PolygonMetrics metrics_from_values(std::vector<double> edge_lengths,
                                   std::vector<double> angles,
                                   const ToleranceConfig& tol);

/// The three families of hexagonal tilers. Conditions are stated for one
/// vertex labeling; `rotation` and `reflected` record a relabeling under
/// which this hexagon satisfies the family's equalities.
enum class HexClass { I, II, III };

struct ReinhardtClass {
  HexClass kind = HexClass::I;
  int rotation = 0;
  bool reflected = false;

  bool operator==(const ReinhardtClass&) const = default;
};

/// Tests the class conditions under one specific dihedral relabeling:
/// condition position k maps to metrics position (rotation + k) mod 6, or
/// (rotation - k) mod 6 when reflected.
bool labeling_satisfies(HexClass kind, int rotation, bool reflected,
                        const PolygonMetrics& m, const ToleranceConfig& tol);

/// Classes satisfied under at least one of the 12 dihedral relabelings,
/// at most one entry per class (the first satisfying labeling in scan
/// order). Empty means the hexagon fits no family. Throws WrongArityError
/// unless n == 6.
std::vector<ReinhardtClass> classify_hexagon(const PolygonMetrics& m,
                                             const ToleranceConfig& tol);

/// True iff some opposite edge pair (i, i+3) has lengths within eps_len.
/// Throws WrongArityError unless n == 6.
bool has_equal_opposite_edges(const PolygonMetrics& m,
                              const ToleranceConfig& tol);

/// Number of interior angles within eps_angle of `target`.
int count_angles(const PolygonMetrics& m, double target,
                 const ToleranceConfig& tol);

/// True iff two edge directions are antiparallel within eps_angle.
bool has_parallel_edge_pair(std::span<const Vec3> loop,
                            const ToleranceConfig& tol);
bool has_parallel_edge_pair(const SectionPolygon& section,
                            const ToleranceConfig& tol);

enum class Tiles { Yes, No, Unknown };

enum class TilerReason {
  TriangleAlwaysTiles,
  QuadrilateralAlwaysTiles,
  HexagonClass,
  SevenPlusEdges,
  HexagonNoClass,
  PentagonParallelEdges,
  PentagonUndetermined,
};

/// Whether the polygon tiles the plane. `classes` is nonempty exactly when
/// the reason is HexagonClass.
struct TilerVerdict {
  Tiles tiles = Tiles::Unknown;
  TilerReason reason = TilerReason::PentagonUndetermined;
  std::vector<ReinhardtClass> classes;
};

/// Decision procedure: triangles and quadrilaterals always tile; polygons
/// with 7+ edges never do; hexagons tile iff they fit a Reinhardt family;
/// pentagons tile when they have a parallel edge pair and are otherwise
/// left Unknown.
TilerVerdict tiler_verdict(std::span<const Vec3> loop,
                           const ToleranceConfig& tol);
TilerVerdict tiler_verdict(const SectionPolygon& section,
                           const ToleranceConfig& tol);

}  // namespace tilerscope
