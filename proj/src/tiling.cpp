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

#include "tilerscope/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace tilerscope {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoThirdsPi = 2.0 * std::numbers::pi / 3.0;

Vec3 loop_normal(std::span<const Vec3> loop) {
  Vec3 n{0, 0, 0};
  const int k = static_cast<int>(loop.size());
  for (int i = 0; i < k; ++i) {
    n += cross(loop[i], loop[(i + 1) % k]);
  }
  if (norm(n) < 1e-300) {
    throw DegeneratePolygonError("polygon has zero area");
  }
  return normalized(n);
}

}  // namespace

PolygonMetrics polygon_metrics(std::span<const Vec3> loop,
                               const ToleranceConfig& tol) {
  tol.validate();
  const int n = static_cast<int>(loop.size());
  if (n < 3) {
    throw DegeneratePolygonError("polygon needs at least 3 vertices");
  }

  const Vec3 nrm = loop_normal(loop);
  {
    // Planarity: residuals against the Newell plane.
    double offset = 0.0;
    for (const Vec3& p : loop) offset += dot(nrm, p);
    offset /= static_cast<double>(n);
    for (const Vec3& p : loop) {
      if (std::fabs(dot(nrm, p) - offset) > tol.eps_geom) {
        throw DegeneratePolygonError("polygon vertices are not coplanar");
      }
    }
  }

  PolygonMetrics m;
  m.n = n;
  m.edge_lengths.resize(n);
  m.angles.resize(n);
  for (int i = 0; i < n; ++i) {
    const Vec3 e = loop[(i + 1) % n] - loop[i];
    const double len = norm(e);
    if (len <= tol.eps_geom) {
      throw DegeneratePolygonError("edge " + std::to_string(i) +
                                   " has near-zero length");
    }
    m.edge_lengths[i] = len;
  }
  for (int i = 0; i < n; ++i) {
    const Vec3 prev = loop[(i + n - 1) % n] - loop[i];
    const Vec3 next = loop[(i + 1) % n] - loop[i];
    const double ang = std::atan2(norm(cross(prev, next)), dot(prev, next));
    if (ang <= tol.eps_angle || ang >= kPi - tol.eps_angle) {
      throw DegeneratePolygonError("angle at vertex " + std::to_string(i) +
                                   " is degenerate");
    }
    // Reflex vertices mean the loop is not convex.
    if (dot(cross(next, prev), nrm) < 0.0) {
      throw DegeneratePolygonError("polygon is not convex at vertex " +
                                   std::to_string(i));
    }
    m.angles[i] = ang;
  }

  double sum = 0.0;
  for (double a : m.angles) sum += a;
  if (std::fabs(sum - (n - 2) * kPi) > n * tol.eps_angle) {
    throw DegeneratePolygonError("interior angle sum is off for a convex " +
                                 std::to_string(n) + "-gon");
  }
  return m;
}

PolygonMetrics polygon_metrics(const SectionPolygon& section,
                               const ToleranceConfig& tol) {
  return polygon_metrics(std::span<const Vec3>(section.vertices), tol);
}

PolygonMetrics metrics_from_values(std::vector<double> edge_lengths,
                                   std::vector<double> angles,
                                   const ToleranceConfig& tol) {
  tol.validate();
  if (edge_lengths.size() != angles.size() || edge_lengths.size() < 3) {
    throw DegeneratePolygonError("metrics need matching lists of >= 3 values");
  }
  const int n = static_cast<int>(edge_lengths.size());
  for (double len : edge_lengths) {
    if (!(len > tol.eps_geom)) {
      throw DegeneratePolygonError("edge lengths must exceed eps_geom");
    }
  }
  double sum = 0.0;
  for (double a : angles) {
    if (!(a > 0.0) || !(a < kPi)) {
      throw DegeneratePolygonError("angles must lie in (0, pi)");
    }
    sum += a;
  }
  if (std::fabs(sum - (n - 2) * kPi) > n * tol.eps_angle) {
    throw DegeneratePolygonError("angle sum must be (n-2)*pi");
  }
  PolygonMetrics m;
  m.n = n;
  m.edge_lengths = std::move(edge_lengths);
  m.angles = std::move(angles);
  return m;
}

namespace {

// Relabeled views: condition position k -> metrics position sigma(k).
int relabel_vertex(int rotation, bool reflected, int k) {
  return reflected ? ((rotation - k) % 6 + 6) % 6 : (rotation + k) % 6;
}

// The edge at condition position k joins vertices k and k+1; under a
// reflection those are adjacent in decreasing order, so the metrics edge
// index is sigma(k) - 1.
int relabel_edge(int rotation, bool reflected, int k) {
  return reflected ? ((rotation - k - 1) % 6 + 6) % 6 : (rotation + k) % 6;
}

}  // namespace

bool labeling_satisfies(HexClass kind, int rotation, bool reflected,
                        const PolygonMetrics& m, const ToleranceConfig& tol) {
  if (m.n != 6) {
    throw WrongArityError("hexagon classification requires n == 6");
  }
  const auto angle = [&](int k) {
    return m.angles[relabel_vertex(rotation, reflected, k)];
  };
  const auto edge = [&](int k) {
    return m.edge_lengths[relabel_edge(rotation, reflected, k)];
  };
  const auto angles_sum_to_two_pi = [&](int a, int b, int c) {
    return std::fabs(angle(a) + angle(b) + angle(c) - 2.0 * kPi) <=
           3.0 * tol.eps_angle;
  };
  const auto edges_equal = [&](int a, int b) {
    return std::fabs(edge(a) - edge(b)) <= tol.eps_len;
  };
  const auto angle_is = [&](int a, double value) {
    return std::fabs(angle(a) - value) <= tol.eps_angle;
  };

  switch (kind) {
    case HexClass::I:
      return angles_sum_to_two_pi(0, 1, 2) && edges_equal(2, 5);
    case HexClass::II:
      return angles_sum_to_two_pi(0, 1, 3) && edges_equal(1, 3) &&
             edges_equal(2, 5);
    case HexClass::III:
      return angle_is(0, kTwoThirdsPi) && angle_is(2, kTwoThirdsPi) &&
             angle_is(4, kTwoThirdsPi) && edges_equal(1, 2) &&
             edges_equal(3, 4) && edges_equal(5, 0);
  }
  return false;
}

std::vector<ReinhardtClass> classify_hexagon(const PolygonMetrics& m,
                                             const ToleranceConfig& tol) {
  if (m.n != 6) {
    throw WrongArityError("classify_hexagon requires n == 6");
  }
  std::vector<ReinhardtClass> found;
  for (HexClass kind : {HexClass::I, HexClass::II, HexClass::III}) {
    bool done = false;
    for (int reflected = 0; reflected < 2 && !done; ++reflected) {
      for (int rotation = 0; rotation < 6 && !done; ++rotation) {
        if (labeling_satisfies(kind, rotation, reflected != 0, m, tol)) {
          found.push_back({kind, rotation, reflected != 0});
          done = true;
        }
      }
    }
  }
  return found;
}

bool has_equal_opposite_edges(const PolygonMetrics& m,
                              const ToleranceConfig& tol) {
  if (m.n != 6) {
    throw WrongArityError("has_equal_opposite_edges requires n == 6");
  }
  for (int i = 0; i < 3; ++i) {
    if (std::fabs(m.edge_lengths[i] - m.edge_lengths[i + 3]) <= tol.eps_len) {
      return true;
    }
  }
  return false;
}

int count_angles(const PolygonMetrics& m, double target,
                 const ToleranceConfig& tol) {
  int count = 0;
  for (double a : m.angles) {
    if (std::fabs(a - target) <= tol.eps_angle) ++count;
  }
  return count;
}

bool has_parallel_edge_pair(std::span<const Vec3> loop,
                            const ToleranceConfig& tol) {
  const int n = static_cast<int>(loop.size());
  if (n < 3) return false;
  std::vector<Vec3> dirs(n);
  for (int i = 0; i < n; ++i) {
    dirs[i] = normalized(loop[(i + 1) % n] - loop[i]);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double ang =
          std::atan2(norm(cross(dirs[i], dirs[j])), dot(dirs[i], dirs[j]));
      // Convex traversal makes parallel edges antiparallel as vectors.
      if (std::fabs(ang - kPi) <= tol.eps_angle) return true;
    }
  }
  return false;
}

bool has_parallel_edge_pair(const SectionPolygon& section,
                            const ToleranceConfig& tol) {
  return has_parallel_edge_pair(std::span<const Vec3>(section.vertices), tol);
}

TilerVerdict tiler_verdict(std::span<const Vec3> loop,
                           const ToleranceConfig& tol) {
  const PolygonMetrics m = polygon_metrics(loop, tol);
  TilerVerdict verdict;
  if (m.n == 3) {
    verdict.tiles = Tiles::Yes;
    verdict.reason = TilerReason::TriangleAlwaysTiles;
  } else if (m.n == 4) {
    verdict.tiles = Tiles::Yes;
    verdict.reason = TilerReason::QuadrilateralAlwaysTiles;
  } else if (m.n >= 7) {
    verdict.tiles = Tiles::No;
    verdict.reason = TilerReason::SevenPlusEdges;
  } else if (m.n == 6) {
    verdict.classes = classify_hexagon(m, tol);
    if (verdict.classes.empty()) {
      verdict.tiles = Tiles::No;
      verdict.reason = TilerReason::HexagonNoClass;
    } else {
      verdict.tiles = Tiles::Yes;
      verdict.reason = TilerReason::HexagonClass;
    }
  } else {
    if (has_parallel_edge_pair(loop, tol)) {
      verdict.tiles = Tiles::Yes;
      verdict.reason = TilerReason::PentagonParallelEdges;
    } else {
      verdict.tiles = Tiles::Unknown;
      verdict.reason = TilerReason::PentagonUndetermined;
    }
  }
  return verdict;
}

TilerVerdict tiler_verdict(const SectionPolygon& section,
                           const ToleranceConfig& tol) {
  return tiler_verdict(std::span<const Vec3>(section.vertices), tol);
}

}  // namespace tilerscope
