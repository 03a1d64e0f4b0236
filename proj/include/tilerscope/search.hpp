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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tilerscope/combinatorics.hpp"
#include "tilerscope/geometry.hpp"
#include "tilerscope/tiling.hpp"

namespace tilerscope {

class ConstructionFailedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WrongValenceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EpsilonTooLargeError : public std::invalid_argument {
 public:
  EpsilonTooLargeError(const std::string& what, double bound)
      : std::invalid_argument(what), bound_(bound) {}
  double bound() const { return bound_; }

 private:
  double bound_ = 0.0;
};

class BothTrivialError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimensionless step schedule 2^-3 .. 2^-12. Samplers apply their own
/// scale: the corner sampler reads steps as overshoot fractions, the shave
/// construction as fractions of the off-facet vertex height, chord rotation
/// as radians.
std::vector<double> default_epsilon_steps();

struct SearchParams {
  std::uint64_t seed = 1;
  int budget = 2000;
  std::vector<double> epsilon_steps = default_epsilon_steps();
  ToleranceConfig tolerance{};

  void validate() const;
};

/// A plane whose cross-section breaks a tiling requirement, with everything
/// needed to replay the check from scratch.
struct Witness {
  Plane plane;
  SectionPolygon section;
  TilerVerdict verdict;
  /// Proper hexagon whose three opposite edge pairs all differ in length.
  bool violates_opposite_edge_rule = false;
  std::string provenance;
};

struct CoverageReport {
  int corner_planes = 0;
  int shave_planes = 0;
  int chord_planes = 0;
  int random_planes = 0;
  int planes_examined = 0;
  int max_section_edges = 0;
  int unknown_pentagons = 0;
  bool budget_exhausted = false;
};

enum class CertificateKind { TetrahedronAllSections, PentahedronParallelFacets };

enum class VerdictOutcome { CertifiedUniversal, NotUniversal, Unresolved };

struct UniversalVerdict {
  VerdictOutcome outcome = VerdictOutcome::Unresolved;
  std::optional<CertificateKind> certificate;
  std::optional<Witness> witness;
  ScreenVerdict screen;
  CoverageReport coverage;
};

/// Builds the facet-shaving plane: a cut through interior points of the two
/// facet edges adjacent to the vertex at position h, tilted into the body so
/// it grazes past every other facet vertex. The section's edge count equals
/// shave_edge_count of the facet's valence-set at that vertex. The schedule
/// controls the trial-slice height; ConstructionFailedError if no step
/// reproduces the predicted count.
Plane construct_shave_plane(const ConvexPolyhedron& p, int facet_index, int h,
                            std::span<const double> eps_schedule);

/// Largest safe overshoot fraction for corner_hexagon_plane: half the
/// smallest normalized height of any vertex beyond the neighbor plane
/// (zero when nothing lies beyond it).
double corner_epsilon_bound(const ConvexPolyhedron& p, int vertex_index);

/// Plane parallel to the one spanned by the three neighbors of a valence-3
/// vertex, pushed past it into the body by the fraction `epsilon` of the
/// vertex's height over that plane. Throws WrongValenceError unless the
/// valence is 3, EpsilonTooLargeError when epsilon >= the safe bound.
Plane corner_hexagon_plane(const ConvexPolyhedron& p, int vertex_index,
                           double epsilon);

/// Rotates the section's carrier plane about the chord through section
/// vertices i and j by direction*epsilon radians; falls back to the
/// opposite rotation if the first misses the body, and throws
/// BothTrivialError when both do.
Plane chord_rotation_sample(const ConvexPolyhedron& p,
                            const SectionPolygon& section, int i, int j,
                            double epsilon, int direction = +1);

/// Searches for a cross-section that cannot tile: corner hexagons at every
/// valence-3 vertex, facet shaves at every (facet, position) with retried
/// chord parameters, chord rotations of hexagons found on the way, then
/// seeded random planes until the budget runs out. Deterministic in
/// (p, params); returns the first witness in stage order or nothing.
std::optional<Witness> falsify_universal(const ConvexPolyhedron& p,
                                         const SearchParams& params,
                                         CoverageReport* coverage = nullptr);

/// Full pipeline: combinatorial screen, tetrahedron / parallel-facet
/// pentahedron certificates, and witness search for everything else.
/// Unresolved is an honest outcome for pentahedra without parallel facets.
UniversalVerdict verify_universal(const ConvexPolyhedron& p,
                                  const SearchParams& params);

}  // namespace tilerscope
