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

// Drives the installed binary end to end: exit codes, report output, SVG.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string out_path =
      (fs::temp_directory_path() / "tiler_scope_cli_out.txt").string();
  const std::string command =
      std::string(TILER_SCOPE_BIN) + " " + args + " > " + out_path + " 2>&1";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  result.output = buffer.str();
  return result;
}

std::string mesh(const std::string& name) {
  return std::string(TILER_SCOPE_MESH_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("verify exit codes: certified, not universal, unresolved") {
  CHECK(run("verify " + mesh("tetrahedron.off")).exit_code == 0);
  CHECK(run("verify " + mesh("triangular_prism.off")).exit_code == 0);
  CHECK(run("verify " + mesh("cube.off")).exit_code == 1);
  CHECK(run("verify " + mesh("octahedron.off")).exit_code == 1);
  CHECK(run("verify --budget 200 " + mesh("quad_pyramid.off")).exit_code == 2);
}

TEST_CASE("verify emits the verdict in both formats") {
  const RunResult text = run("verify " + mesh("cube.off"));
  CHECK(text.output.find("outcome: \"not_universal\"") != std::string::npos);
  const RunResult json = run("verify --format json " + mesh("cube.off"));
  CHECK(json.output.find("\"outcome\": \"not_universal\"") !=
        std::string::npos);
  const RunResult tetra = run("verify " + mesh("tetrahedron.off"));
  CHECK(tetra.output.find("certificate: \"tetrahedron_all_sections\"") !=
        std::string::npos);
}

TEST_CASE("verify runs are byte-identical and write the witness SVG") {
  const fs::path svg_path = fs::temp_directory_path() / "cube_witness.svg";
  const std::string args = "verify --seed 9 --format json --svg-out " +
                           svg_path.string() + " " + mesh("cube.off");
  const RunResult first = run(args);
  const RunResult second = run(args);
  CHECK(first.exit_code == 1);
  CHECK(first.output == second.output);

  std::ifstream svg(svg_path);
  REQUIRE(svg.good());
  std::ostringstream buffer;
  buffer << svg.rdbuf();
  CHECK(buffer.str().find("<svg") != std::string::npos);
  CHECK(buffer.str().find("<polygon") != std::string::npos);
}

TEST_CASE("screen subcommand") {
  const RunResult pass = run("screen " + mesh("triangular_prism.off"));
  CHECK(pass.exit_code == 0);
  CHECK(pass.output.find("screen: pass") != std::string::npos);
  CHECK(pass.output.find("triangular_base_pentahedron") != std::string::npos);

  const RunResult fail = run("screen " + mesh("hexagonal_prism.off"));
  CHECK(fail.exit_code == 1);
  CHECK(fail.output.find("facet_too_many_edges") != std::string::npos);

  const RunResult octa = run("screen " + mesh("octahedron.off"));
  CHECK(octa.exit_code == 1);
  CHECK(octa.output.find("inadmissible_valence_set") != std::string::npos);
  CHECK(octa.output.find("4 4 4") != std::string::npos);
}

TEST_CASE("section subcommand slices and classifies") {
  const RunResult hex =
      run("section " + mesh("cube.off") + " --plane 1,1,1,1.25");
  CHECK(hex.exit_code == 0);
  CHECK(hex.output.find("polygon with 6 vertices") != std::string::npos);
  CHECK(hex.output.find("tiles: no") != std::string::npos);

  const RunResult square =
      run("section " + mesh("cube.off") + " --plane 0,0,1,0.5");
  CHECK(square.output.find("polygon with 4 vertices") != std::string::npos);
  CHECK(square.output.find("tiles: yes") != std::string::npos);

  const RunResult empty =
      run("section " + mesh("cube.off") + " --plane 0,0,1,5");
  CHECK(empty.output.find("section: empty") != std::string::npos);
}

TEST_CASE("input errors exit with code 64") {
  CHECK(run("verify /nonexistent/mesh.off").exit_code == 64);
  CHECK(run("verify").exit_code == 64);
  CHECK(run("frobnicate " + mesh("cube.off")).exit_code == 64);

  const fs::path bad = fs::temp_directory_path() / "bad_mesh.off";
  {
    std::ofstream out(bad);
    out << "OFF\n4 1 4\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 1 9\n";
  }
  const RunResult result = run("verify " + bad.string());
  CHECK(result.exit_code == 64);
  CHECK(result.output.find("error") != std::string::npos);
}
