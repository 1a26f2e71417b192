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

#include <cstdlib>
#include <functional>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "zpi/casson/casson.hpp"
#include "zpi/error.hpp"
#include "zpi/io/json_io.hpp"
#include "zpi/linking/lattice.hpp"
#include "zpi/surgery/surgery.hpp"

namespace {

using namespace zpi;
using io::json;
using ring::Rational;

unsigned default_jobs() {
  if (const char* env = std::getenv("ZPI_JOBS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

json coords_array(const diagrams::GraphSpaceBasis::Coordinates& c) {
  json out = json::array();
  for (const auto& x : c) out.push_back(x.get_str());
  return out;
}

complex::Propagator load_propagator(const std::string& path, const complex::BasedChainComplex& c) {
  return io::propagator_from_json(io::read_file(path), c);
}

json cmd_check(const std::string& in) {
  const auto c = io::complex_from_json(io::read_file(in));
  return {{"boundary_ok", complex::verify_boundary(c)}, {"acyclic", complex::is_acyclic(c)}};
}

json cmd_propagator(const std::string& in, const std::string& out, bool adjoint) {
  const auto c = io::complex_from_json(io::read_file(in));
  auto g = complex::solve_propagator(c);
  if (adjoint) g = complex::adjoint_propagator(c, g);
  const json j = io::to_json(g);
  if (out.empty()) return j;
  io::write_file(out, j);
  return {{"written", out}, {"verified", complex::verify_propagator(c, g)}};
}

json cmd_homotopy(const std::string& in, const std::string& g_path, const std::string& g2_path) {
  const auto c = io::complex_from_json(io::read_file(in));
  const auto g = load_propagator(g_path, c);
  const auto g2 = g2_path.empty() ? complex::solve_propagator(c) : load_propagator(g2_path, c);
  if (!complex::verify_propagator(c, g) || !complex::verify_propagator(c, g2)) {
    throw PreconditionFailed("both maps must satisfy dg + gd = 1");
  }
  const auto h = complex::propagator_homotopy(c, g, g2);
  return {{"verified", complex::verify_homotopy(c, g, g2, h)}, {"homotopy", io::to_json(h)}};
}

json cmd_end_acyclic(const std::string& in) {
  return {{"end_acyclic", complex::end_complex_acyclic(io::complex_from_json(io::read_file(in)))}};
}

json cmd_basis(const diagrams::BasisOptions& o, const std::string& out) {
  const auto b = diagrams::GraphSpaceBasis::build(o);
  json j = io::to_json(b);
  if (out.empty()) return j;
  io::write_file(out, j);
  json summary = {{"written", out}};
  for (const char* k : {"degree", "group", "support", "dimension", "diagnostics"}) summary[k] = j[k];
  return summary;
}

json cmd_reduce(const std::string& basis_path, const std::string& in) {
  const auto b = io::basis_from_json(io::read_file(basis_path));
  const auto x = io::combination_from_json(io::read_file(in), b.options().group);
  return io::coordinates_json(b, b.reduce(x));
}

json cmd_trace(const std::string& terms_path, const std::string& props_path, const std::string& basis_path,
               const std::string& mode, const std::string& correction_path) {
  const auto b = io::basis_from_json(io::read_file(basis_path));
  const auto props = io::propagators_from_json(io::read_file(props_path));
  const json terms = io::read_file(terms_path);
  const auto& group = b.options().group;
  diagrams::GraphSpaceBasis::Coordinates c;
  if (mode == "contract") {
    c = trace::trace_contract(io::terms_from_json(terms, group), props, b);
  } else if (mode == "z") {
    c = trace::assemble_z(io::terms_from_json(terms, group), props, b);
  } else {
    const auto corr = correction_path.empty() ? trace::CorrectionData{} : io::correction_from_json(io::read_file(correction_path));
    c = trace::assemble_Z(io::full_terms_from_json(terms, group), props, corr, b);
  }
  json j = io::coordinates_json(b, c);
  j["mode"] = mode;
  return j;
}

json cmd_surgery(const std::string& graph_path, const std::string& basis_path, int n_max, unsigned jobs) {
  const auto b = io::basis_from_json(io::read_file(basis_path));
  const auto& group = b.options().group;
  const auto gamma = io::graph_from_json(io::read_file(graph_path), group);
  if (gamma.n_vertices > 2 * n_max) {
    throw ResourceLimit("graph has " + std::to_string(gamma.n_vertices) + " vertices; --n-max allows " +
                        std::to_string(2 * n_max));
  }
  const auto data = surgery::realize_ylink(gamma, group);
  surgery::EvalOptions opts;
  opts.jobs = jobs;
  const auto z = surgery::eval_Z_bracket(data, b, opts);
  const auto zt = surgery::eval_Ztilde_bracket(data, b, opts);
  Rational coefficient;
  const auto skeleton = diagrams::to_monomial(gamma, group, &coefficient);
  const auto aut = diagrams::automorphism_counts(skeleton);
  json j = io::coordinates_json(b, zt);
  j["Z"] = coords_array(z.value);
  j["Ztilde"] = coords_array(zt);
  j["target"] = io::coordinates_json(b, b.reduce(gamma));
  j["diagnostics"] = {{"graphs_h", z.graphs_h},
                      {"pairs", z.pairs},
                      {"matched_pairs", z.matched_pairs},
                      {"nonzero_terms", z.nonzero_terms},
                      {"aut", aut.total},
                      {"aut_e", aut.edge_fixing},
                      {"aut_v", aut.vertex_part},
                      {"labeling_count", diagrams::labeling_count(skeleton)},
                      {"prefactor", trace::prefactor(gamma.n_vertices).get_str()}};

  return j;
}

json cmd_lk(const std::string& in, std::size_t i, std::size_t k) {
  const auto link = io::link_from_json(io::read_file(in));
  if (i >= link.loops.size() || k >= link.loops.size()) throw InvalidInput("component index out of range");
  return {{"lk", linking::lk_equivariant(link, i, k).to_string()}};
}

json cmd_lkmatrix(const std::string& in) {
  const auto link = io::link_from_json(io::read_file(in));
  json rows = json::array();
  for (const auto& row : linking::linking_matrix(link)) {
    json r = json::array();
    for (const auto& x : row) r.push_back(x.to_string());
    rows.push_back(r);
  }
  return {{"matrix", rows}};
}

json cmd_split(const std::string& in) {
  return {{"split", linking::is_pi_algebraically_split(io::link_from_json(io::read_file(in)))}};
}

json cmd_casson(const std::string& knot_path, long n, const std::string& basis_path) {
  const auto k = io::knot_from_json(io::read_file(knot_path));
  diagrams::BasisOptions o;
  const auto b = basis_path.empty() ? diagrams::GraphSpaceBasis::build(o) : io::basis_from_json(io::read_file(basis_path));
  const Rational lambda = casson::casson_surgery({k, n});
  json j = {{"alexander", casson::alexander_polynomial(k).to_string()},
            {"writhe", k.writhe()},
            {"n", n},
            {"lambda", lambda.get_str()}};
  j["lambda_pi"] = io::coordinates_json(b, casson::lambda_pi(lambda, b));
  return j;
}

int emit_error(const std::string& kind, const std::string& message) {
  json j = {{"error", {{"kind", kind}, {"message", message}}}};
  std::cout << j.dump(2) << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for equivariant finite-type invariants of 3-manifolds"};
  app.require_subcommand(1);
  unsigned jobs = default_jobs();
  app.add_option("--jobs", jobs, "Worker threads (default: ZPI_JOBS or all cores)")->check(CLI::PositiveNumber);
  std::function<json()> run;

  std::string in, out, basis, g_path, g2_path, terms, props, correction, graph, knot;
  std::string mode = "Z";
  bool adjoint = false;
  int n_max = 2;
  long n = 1;
  std::vector<std::size_t> pair{0, 1};
  diagrams::BasisOptions bopt;
  std::string group = "trivial";
  std::string holonomy = "default";

  auto* check = app.add_subcommand("check", "Verify d^2 = 0 and acyclicity of a complex");
  check->add_option("--in", in)->required();
  check->callback([&] { run = [&] { return cmd_check(in); }; });

  auto* prop = app.add_subcommand("propagator", "Solve dg + gd = 1");
  prop->add_option("--in", in)->required();
  prop->add_option("--out", out);
  prop->add_flag("--adjoint", adjoint, "Emit the adjoint propagator");
  prop->callback([&] { run = [&] { return cmd_propagator(in, out, adjoint); }; });

  auto* hom = app.add_subcommand("homotopy", "Find h with g2 - g = dh - hd");
  hom->add_option("--in", in)->required();
  hom->add_option("--g", g_path)->required();
  hom->add_option("--g2", g2_path, "Second propagator (default: solved)");
  hom->callback([&] { run = [&] { return cmd_homotopy(in, g_path, g2_path); }; });

  auto* end = app.add_subcommand("end-acyclic", "Test acyclicity of End(C) in degrees 0 and 1");
  end->add_option("--in", in)->required();
  end->callback([&] { run = [&] { return cmd_end_acyclic(in); }; });

  auto* bas = app.add_subcommand("basis", "Build the quotient basis of the graph space");
  bas->add_option("--degree", bopt.degree)->check(CLI::PositiveNumber);
  bas->add_option("--group", group);
  bas->add_option("--support", bopt.support)->check(CLI::NonNegativeNumber);
  bas->add_flag("--connected", bopt.connected_only);
  bas->add_option("--holonomy", holonomy)->check(CLI::IsMember({"default", "mirrored"}));
  bas->add_option("--out", out);
  bas->callback([&] {
    run = [&] {
      bopt.group = diagrams::GroupSpec::parse(group);
      bopt.holonomy = holonomy == "mirrored" ? diagrams::HolonomyConvention::Mirrored
                                             : diagrams::HolonomyConvention::Default;
      return cmd_basis(bopt, out);
    };
  });

  auto* red = app.add_subcommand("reduce", "Coordinates of an element in a stored basis");
  red->add_option("--basis", basis)->required();
  red->add_option("--in", in)->required();
  red->callback([&] { run = [&] { return cmd_reduce(basis, in); }; });

  auto* tr = app.add_subcommand("trace", "Contract C-graph terms with propagators");
  tr->add_option("--terms", terms)->required();
  tr->add_option("--propagators", props)->required();
  tr->add_option("--basis", basis)->required();
  tr->add_option("--mode", mode)->check(CLI::IsMember({"contract", "z", "Z"}));
  tr->add_option("--correction", correction);
  tr->callback([&] { run = [&] { return cmd_trace(terms, props, basis, mode, correction); }; });

  auto* sur = app.add_subcommand("surgery-eval", "Evaluate Z and Z-tilde on the Y-link realizing a graph");
  sur->add_option("--graph", graph)->required();
  sur->add_option("--basis", basis)->required();
  sur->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
  sur->callback([&] { run = [&] { return cmd_surgery(graph, basis, n_max, jobs); }; });

  auto* lk = app.add_subcommand("lk", "Equivariant linking number of two components");
  lk->add_option("--in", in)->required();
  lk->add_option("--pair", pair, "Component indices")->expected(2)->required();
  lk->callback([&] { run = [&] { return cmd_lk(in, pair[0], pair[1]); }; });

  auto* lkm = app.add_subcommand("lkmatrix", "Equivariant linking matrix");
  lkm->add_option("--in", in)->required();
  lkm->callback([&] { run = [&] { return cmd_lkmatrix(in); }; });

  auto* spl = app.add_subcommand("split-check", "Test whether a link is algebraically split");
  spl->add_option("--in", in)->required();
  spl->callback([&] { run = [&] { return cmd_split(in); }; });

  auto* cas = app.add_subcommand("casson", "Casson invariant of 1/n surgery on a knot");
  cas->add_option("--knot", knot)->required();
  cas->add_option("--n", n);
  cas->add_option("--basis", basis);
  cas->callback([&] { run = [&] { return cmd_casson(knot, n, basis); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error("UsageError", e.what());
  }

  try {
    std::cout << run().dump(2) << '\n';
    return 0;
  } catch (const Error& e) {
    return emit_error(e.kind(), e.what());
  } catch (const std::exception& e) {
    return emit_error("InternalError", e.what());
  }
}
