// Copyright 2026 The zpi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "zpi/io/json_io.hpp"

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Run {
  int status = 0;
  std::string out;
  ordered_json json() const { return ordered_json::parse(out); }
};

Run cli(const std::string& args) {
  const std::string cmd = std::string("ZPI_JOBS=1 ") + ZPI_CLI_PATH + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(ZPI_TEST_DATA) + "/" + name; }

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / ("zpi_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const ordered_json& j) { zpi::io::write_file(p.string(), j); }

}  // namespace

TEST_CASE("documented examples") {
  auto r = cli("check --in " + data("lens_25_4.json"));
  CHECK(r.status == 0);
  CHECK(r.json() == ordered_json::parse(R"({"boundary_ok":true,"acyclic":true})"));

  r = cli("surgery-eval --graph " + data("theta_111.json") + " --basis " + data("a2.json"));
  REQUIRE(r.status == 0);
  const auto s = r.json();
  CHECK(s["coordinates"] == ordered_json::parse(R"(["1"])"));
  CHECK(s["Z"] == ordered_json::parse(R"(["1/8"])"));
  CHECK(s["coordinates"] == s["target"]["coordinates"]);
  CHECK(s["diagnostics"]["graphs_h"] == 20);
  CHECK(s["diagnostics"]["aut"].get<int>() ==
        s["diagnostics"]["aut_e"].get<int>() * s["diagnostics"]["aut_v"].get<int>());

  r = cli("lk --in " + data("split.json") + " --pair 0 1");
  CHECK(r.status == 0);
  CHECK(r.json()["lk"] == "0");
}

TEST_CASE("complex pipeline") {
  const auto dir = scratch();
  auto r = cli("propagator --in " + data("lens_7_2.json") + " --out " + (dir / "g.json").string());
  REQUIRE(r.status == 0);
  CHECK(r.json()["verified"] == true);
  r = cli("homotopy --in " + data("lens_7_2.json") + " --g " + (dir / "g.json").string() + " --g2 " +
          data("lens_7_2_known.json"));
  REQUIRE(r.status == 0);
  CHECK(r.json()["verified"] == true);
  CHECK(r.json()["homotopy"]["degree"] == 2);

  r = cli("check --in " + data("torus_koszul.json"));
  CHECK(r.json()["acyclic"] == true);
  r = cli("end-acyclic --in " + data("torus_koszul.json"));
  CHECK(r.json()["end_acyclic"] == true);

  // Emitted propagators re-parse, including rational-function entries.
  for (const char* name : {"torus_koszul.json", "lens_25_4.json"}) {
    for (const char* flag : {"", " --adjoint"}) {
      r = cli(std::string("propagator --in ") + data(name) + flag);
      REQUIRE(r.status == 0);
      const auto c = zpi::io::complex_from_json(zpi::io::read_file(data(name)));
      const auto g = zpi::io::propagator_from_json(r.json(), c);
      CHECK(g.adjoint == (flag[0] != '\0'));
      CHECK(zpi::io::to_json(g) == r.json());
    }
  }

  // A complex with H_0 = Q is rejected by the solver.
  const ordered_json bad = ordered_json::parse(R"({"field":"ratfun","vars":1,"basis":[["p"],["q"]],
      "boundary":[[],[]]})");
  write(dir / "bad.json", bad);
  r = cli("check --in " + (dir / "bad.json").string());
  CHECK(r.json()["acyclic"] == false);
  r = cli("end-acyclic --in " + (dir / "bad.json").string());
  CHECK(r.json()["end_acyclic"] == false);
  r = cli("propagator --in " + (dir / "bad.json").string());
  CHECK(r.status != 0);
  CHECK(r.json()["error"]["kind"] == "NotAcyclic");
  fs::remove_all(dir);
}

TEST_CASE("basis and reduce") {
  const auto dir = scratch();
  const auto path = (dir / "b.json").string();
  auto r = cli("basis --degree 2 --group trivial --out " + path);
  REQUIRE(r.status == 0);
  CHECK(r.json()["dimension"] == 1);
  // The stored basis matches the checked-in one byte for byte.
  CHECK(zpi::io::read_file(path) == zpi::io::read_file(data("a2.json")));

  r = cli("reduce --basis " + path + " --in " + data("theta_sum.json"));
  CHECK(r.json()["coordinates"] == ordered_json::parse(R"(["3/2"])"));
  r = cli("reduce --basis " + path + " --in " + data("dumbbell.json"));
  CHECK(r.json()["coordinates"] == ordered_json::parse(R"(["0"])"));

  const auto z3 = (dir / "z3.json").string();
  r = cli("basis --degree 2 --group Z3 --support 1 --out " + z3);
  REQUIRE(r.status == 0);
  const auto dim = r.json()["dimension"].get<std::size_t>();
  const auto b = zpi::io::basis_from_json(zpi::io::read_file(z3));
  CHECK(b.dimension() == dim);
  CHECK(zpi::io::to_json(b) == zpi::io::read_file(z3));
  r = cli("reduce --basis " + z3 + " --in " + data("theta_z3.json"));
  REQUIRE(r.status == 0);
  const auto g = zpi::io::graph_from_json(zpi::io::read_file(data("theta_z3.json")), b.options().group);
  CHECK(r.json() == zpi::io::coordinates_json(b, b.reduce(g)));
  fs::remove_all(dir);
}

TEST_CASE("trace") {
  auto r = cli("trace --terms " + data("theta_terms.json") + " --propagators " + data("lens_props.json") +
               " --basis " + data("a2.json") + " --mode contract");
  REQUIRE(r.status == 0);
  CHECK(r.json()["coordinates"] == ordered_json::parse(R"(["3"])"));

  // Full assembly: prefactor 1/768 on 2 vertices times 3, plus a correction.
  const auto dir = scratch();
  write(dir / "full.json", ordered_json::parse(R"({"terms":[{"cgraph":
      {"vertices":2,"cyclic":[[0,1,2],[3,4,5]],"edges":[[0,3],[1,4],[2,5]]},
      "components":[{"counts":[{"edge_factors":["1","1","1"],"scale":"3"}],"local":"0"}]}]})"));
  r = cli("trace --terms " + (dir / "full.json").string() + " --propagators " + data("lens_props.json") +
          " --basis " + data("a2.json"));
  REQUIRE(r.status == 0);
  CHECK(r.json()["coordinates"] == ordered_json::parse(R"(["1/256"])"));

  // One separated edge in degree 3 -> 0: an entry of the lens propagator.
  write(dir / "sep.json", ordered_json::parse(R"({"terms":[{"cgraph":
      {"vertices":2,"cyclic":[[0,1,2],[3,4,5]],"edges":[[0,3],[1,4],[2,5]],
       "states":[{"input":"x","output":"w"},"compact","compact"]},
      "count":{"edge_factors":["1","1","1"]}}]})"));
  r = cli("trace --terms " + (dir / "sep.json").string() + " --propagators " + data("lens_props.json") +
          " --basis " + data("a2.json") + " --mode contract");
  CHECK(r.status != 0);
  CHECK(r.json()["error"]["kind"] == "InvalidInput");
  fs::remove_all(dir);
}

TEST_CASE("linking") {
  auto r = cli("lk --in " + data("hopf.json") + " --pair 0 1");
  const std::string v = r.json()["lk"];
  CHECK((v == "1" || v == "-1"));
  r = cli("lkmatrix --in " + data("hopf.json"));
  CHECK(r.json()["matrix"][0][1] == v);
  CHECK(r.json()["matrix"][1][0] == v);
  r = cli("split-check --in " + data("split.json"));
  CHECK(r.json()["split"] == true);
  r = cli("split-check --in " + data("hopf.json"));
  CHECK(r.json()["split"] == false);
  r = cli("lk --in " + data("hopf.json") + " --pair 0 5");
  CHECK(r.status != 0);
  CHECK(r.json()["error"]["kind"] == "InvalidInput");
}

TEST_CASE("casson") {
  const auto t = cli("casson --knot " + data("trefoil.json") + " --n 1 --basis " + data("a2.json")).json();
  const auto f = cli("casson --knot " + data("figure_eight.json") + " --n 1").json();
  const auto u = cli("casson --knot " + data("unknot.json")).json();
  CHECK(t["lambda"] == "1");
  CHECK(f["lambda"] == "-1");
  CHECK(u["lambda"] == "0");
  CHECK(u["lambda_pi"]["coordinates"] == ordered_json::parse(R"(["0"])"));
  const auto a = zpi::io::parse_rational(t["lambda_pi"]["coordinates"][0]);
  const auto b = zpi::io::parse_rational(f["lambda_pi"]["coordinates"][0]);
  CHECK(abs(a) == zpi::ring::Rational(1, 2));
  CHECK(a == -b);
  const auto t3 = cli("casson --knot " + data("trefoil.json") + " --n -3").json();
  CHECK(t3["lambda"] == "-3");
}

TEST_CASE("determinism and jobs") {
  const std::string args = "surgery-eval --graph " + data("theta_111.json") + " --basis " + data("a2.json");
  const auto a = cli(args);
  CHECK(a.out == cli(args).out);
  CHECK(a.out == cli("--jobs 4 " + args).out);
  const std::string args2 = "propagator --in " + data("torus_koszul.json");
  CHECK(cli(args2).out == cli("--jobs 3 " + args2).out);
}

TEST_CASE("errors are structured") {
  auto r = cli("check --in /nonexistent.json");
  CHECK(r.status != 0);
  CHECK(r.json()["error"]["kind"] == "ParseError");
  r = cli("basis --degree 2 --group Q8");
  CHECK(r.status != 0);
  CHECK(r.json()["error"].contains("message"));
  r = cli("frobnicate");
  CHECK(r.status != 0);
  CHECK(r.json()["error"]["kind"] == "UsageError");
  r = cli("surgery-eval --graph " + data("theta_111.json") + " --basis " + data("a2.json") + " --n-max 0");
  CHECK(r.status != 0);
  r = cli("reduce --basis " + data("a2.json") + " --in " + data("theta_z3.json"));
  CHECK(r.status != 0);
  CHECK(r.json().contains("error"));
  r = cli("casson --knot " + data("hopf.json"));
  CHECK(r.status != 0);
  CHECK(r.json()["error"]["kind"] == "ParseError");
}
