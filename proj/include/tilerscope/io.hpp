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

#include <iosfwd>
#include <string>
#include <vector>

#include "tilerscope/geometry.hpp"
#include "tilerscope/search.hpp"

namespace tilerscope {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column = 0)
      : std::runtime_error("line " + std::to_string(line) +
                           (column > 0 ? ", column " + std::to_string(column)
                                       : std::string()) +
                           ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class IndexError : public std::runtime_error {
 public:
  IndexError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Unvalidated mesh as read from a file.
struct MeshData {
  std::vector<Vec3> vertices;
  std::vector<std::vector<int>> facets;
};

/// Reads the OFF-style format: an "OFF" header, a "v f e" count line, v
/// vertex lines, then f facet lines of "k i1 ... ik". '#' comments and blank
/// lines are skipped. Facet cycles are reoriented so normals point away from
/// the vertex centroid.
MeshData parse_mesh(std::istream& in);
MeshData parse_mesh_file(const std::string& path);

/// Canonical OFF dump; parse_mesh on the output reproduces the mesh.
std::string emit_mesh(const MeshData& mesh);

/// FNV-1a over the canonical dump, as a hex string.
std::string mesh_checksum(const MeshData& mesh);

enum class ReportFormat { Json, Text };

/// Everything a verify run decided, plus enough input digest and parameter
/// echo to replay it.
struct ReportDocument {
  int vertex_count = 0;
  int edge_count = 0;
  int facet_count = 0;
  std::string checksum;
  std::string validation = "ok";
  UniversalVerdict verdict;
  SearchParams params;
};

ReportDocument build_report(const MeshData& mesh, const ConvexPolyhedron& poly,
                            const UniversalVerdict& verdict,
                            const SearchParams& params);

/// Deterministic serialization with key-sorted objects; floating-point
/// values carry 12 significant digits.
std::string emit_report(const ReportDocument& report, ReportFormat format);

/// 2-D drawing of the witness section in its carrier plane, edges labeled
/// with lengths and vertices with interior angles.
std::string render_witness_svg(const Witness& witness);

}  // namespace tilerscope
