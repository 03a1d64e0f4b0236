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

#include "tilerscope/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tilerscope {

ValenceSet::ValenceSet(std::vector<int> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("valence set must be nonempty");
  }
  for (int d : values_) {
    if (d < 1) throw std::invalid_argument("valences must be positive");
  }
  std::sort(values_.begin(), values_.end(), std::greater<int>());
}

int ValenceSet::sum() const {
  int total = 0;
  for (int d : values_) total += d;
  return total;
}

ValenceSet valence_set(const ConvexPolyhedron& p, int facet_index) {
  if (facet_index < 0 || facet_index >= p.facet_count()) {
    throw std::out_of_range("facet index " + std::to_string(facet_index) +
                            " out of range");
  }
  std::vector<int> values;
  values.reserve(p.facet(facet_index).size());
  for (int v : p.facet(facet_index)) {
    values.push_back(p.valence(v));
  }
  return ValenceSet(std::move(values));
}

int shave_edge_count(const ValenceSet& vs, int h) {
  if (h < 0 || h >= vs.size()) {
    throw std::out_of_range("valence position " + std::to_string(h) +
                            " out of range");
  }
  const int n = vs.size();
  return vs.sum() - vs.values()[h] - 2 * n + 4;
}

FacetAdmissibility facet_admissible(const ValenceSet& vs) {
  static const ValenceSet kTriangle({3, 3, 3});
  static const ValenceSet kTriangleOneFour({4, 3, 3});
  static const ValenceSet kQuad({3, 3, 3, 3});
  if (vs == kTriangle || vs == kTriangleOneFour || vs == kQuad) {
    return {true, FacetRule::Admissible};
  }

  const int n = vs.size();
  static const ValenceSet kAllThreePentagon({3, 3, 3, 3, 3});
  if (n > 4) {
    if (vs == kAllThreePentagon) return {false, FacetRule::ExcludedSet};
    return {false, FacetRule::TooManyEdges};
  }

  // The shave bound must hold for every spared position; the smallest
  // valence gives the tightest case.
  const int min_valence = vs.values().back();
  if (vs.sum() - min_valence > 2 * n + 2) {
    return {false, FacetRule::ShaveInequality};
  }
  return {false, FacetRule::ExcludedSet};
}

CountProfile euler_counts(const ConvexPolyhedron& p) {
  CountProfile profile;
  profile.v = p.vertex_count();
  profile.e = p.edge_count();
  profile.f = p.facet_count();
  bool admissible = true;
  for (const auto& cycle : p.facets()) {
    const int k = static_cast<int>(cycle.size());
    if (k == 3) profile.f3 += 1;
    if (k == 4) profile.f4 += 1;
    if (k > 4) admissible = false;
  }
  for (int vi = 0; vi < p.vertex_count(); ++vi) {
    const int d = p.valence(vi);
    if (d == 3) profile.v3 += 1;
    if (d == 4) profile.v4 += 1;
    if (d > 4) admissible = false;
  }
  profile.admissible = admissible;
  return profile;
}

ScreenVerdict combinatorial_screen(const ConvexPolyhedron& p) {
  ScreenVerdict verdict;
  verdict.profile = euler_counts(p);

  for (int fi = 0; fi < p.facet_count(); ++fi) {
    if (p.facet(fi).size() >= 5) {
      verdict.passed = false;
      verdict.reason = ScreenFailReason::FacetTooManyEdges;
      verdict.facet_index = fi;
      return verdict;
    }
  }
  for (int fi = 0; fi < p.facet_count(); ++fi) {
    ValenceSet vs = valence_set(p, fi);
    if (!facet_admissible(vs).admissible) {
      verdict.passed = false;
      verdict.reason = ScreenFailReason::InadmissibleValenceSet;
      verdict.facet_index = fi;
      verdict.offending_set = std::move(vs);
      return verdict;
    }
  }

  const CountProfile& c = verdict.profile;
  if (c.f3 == 4 && c.f4 == 0) {
    verdict.passed = true;
    verdict.shape = ShapeClass::Tetrahedron;
  } else if (c.f3 == 4 && c.f4 == 1) {
    verdict.passed = true;
    verdict.shape = ShapeClass::QuadPyramid;
  } else if (c.f3 == 2 && c.f4 == 3) {
    verdict.passed = true;
    verdict.shape = ShapeClass::TriangularBasePentahedron;
  } else if (c.f3 == 0) {
    verdict.passed = false;
    verdict.reason = ScreenFailReason::CountingViolationCubeType;
  } else {
    // Unreachable when every facet passed admissibility; kept as a net.
    verdict.passed = false;
    verdict.reason = ScreenFailReason::CountingViolationOther;
  }
  return verdict;
}

}  // namespace tilerscope
