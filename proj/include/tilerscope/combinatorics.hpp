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

#include <optional>
#include <vector>

#include "tilerscope/geometry.hpp"

namespace tilerscope {

/// Multiset of vertex valences around one facet, stored descending.
class ValenceSet {
 public:
  explicit ValenceSet(std::vector<int> values);

  const std::vector<int>& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }
  int sum() const;

  bool operator==(const ValenceSet&) const = default;

 private:
  std::vector<int> values_;
};

/// Valences of the facet's vertices. Throws std::out_of_range.
ValenceSet valence_set(const ConvexPolyhedron& p, int facet_index);

/// Edge count of the cross-section that shaves the facet past all vertices
/// but the one at position h: sum(d_i) - d_h - 2n + 4.
int shave_edge_count(const ValenceSet& vs, int h);

enum class FacetRule {
  Admissible,
  TooManyEdges,      // facet has 5+ edges
  ShaveInequality,   // sum(d_i) - d_h > 2n + 2 for some h
  ExcludedSet,       // one of {4,4,3},{4,4,4},{5,3,3},{4,3,3,3},{3,3,3,3,3}
};

struct FacetAdmissibility {
  bool admissible = false;
  FacetRule rule = FacetRule::Admissible;
};

/// A facet valence-set is admissible iff it is {3,3,3}, {4,3,3} or
/// {3,3,3,3}; the rule records which screen rejects everything else.
FacetAdmissibility facet_admissible(const ValenceSet& vs);

/// Facet/vertex/edge counts split by facet size and vertex valence.
/// `admissible` flags that all facets have <= 4 edges and all valences are
/// <= 4, which is when the split identities are meaningful.
struct CountProfile {
  int v = 0, e = 0, f = 0;
  int f3 = 0, f4 = 0;
  int v3 = 0, v4 = 0;
  bool admissible = false;

  bool euler_holds() const { return f + v == e + 2; }
  bool facet_split_holds() const {
    return f == f3 + f4 && 3 * f3 + 4 * f4 == 2 * e;
  }
  bool valence_split_holds() const {
    return v == v3 + v4 && 3 * v3 + 4 * v4 == 2 * e;
  }
  bool corner_identities_hold() const {
    return f3 + v3 == 8 && 4 * (f4 - v4) == 3 * (v3 - f3);
  }
};

CountProfile euler_counts(const ConvexPolyhedron& p);

enum class ShapeClass { Tetrahedron, QuadPyramid, TriangularBasePentahedron };

enum class ScreenFailReason {
  FacetTooManyEdges,
  InadmissibleValenceSet,
  CountingViolationCubeType,
  CountingViolationOther,
};

struct ScreenVerdict {
  bool passed = false;
  std::optional<ShapeClass> shape;
  std::optional<ScreenFailReason> reason;
  int facet_index = -1;  // offending facet for the per-facet failures
  std::optional<ValenceSet> offending_set;
  CountProfile profile;
};

/// Combinatorial screen: per-facet size and valence-set admissibility first,
/// then the counting case split on (f3, f4). A Pass means "not excluded on
/// combinatorial grounds", never a certificate.
ScreenVerdict combinatorial_screen(const ConvexPolyhedron& p);

}  // namespace tilerscope
