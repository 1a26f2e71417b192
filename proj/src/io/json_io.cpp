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

#include "zpi/io/json_io.hpp"

#include <fstream>
#include <sstream>

#include "zpi/error.hpp"

namespace zpi::io {

using complex::Matrix;
using ring::FieldElement;
using ring::FieldSpec;
using ring::Rational;

namespace {

template <class F>
auto guarded(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
}

json triplets(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!m(r, c).is_zero()) out.push_back({r, c, m(r, c).to_string()});
    }
  }
  return out;
}

Matrix matrix_from_triplets(const json& j, const FieldSpec& f, std::size_t rows, std::size_t cols) {
  Matrix m(f, rows, cols);
  for (const auto& t : j) {
    const auto r = t.at(0).get<std::size_t>();
    const auto c = t.at(1).get<std::size_t>();
    if (r >= rows || c >= cols) {
      throw InvalidInput("entry (" + std::to_string(r) + ", " + std::to_string(c) + ") outside a " +
                         std::to_string(rows) + " x " + std::to_string(cols) + " block");
    }
    m(r, c) = ring::parse_field_element(t.at(2).get<std::string>(), f);
  }
  return m;
}

std::string holonomy_name(diagrams::HolonomyConvention h) {
  return h == diagrams::HolonomyConvention::Mirrored ? "mirrored" : "default";
}

}  // namespace

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << j.dump(2) << '\n';
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0) throw ParseError("not a rational number: '" + text + "'");
  if (r.get_den() == 0) throw DivisionByZero("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

json to_json(const FieldSpec& f) {
  if (f.kind == FieldSpec::Kind::Cyclotomic) return {{"field", "cyclotomic"}, {"p", f.p}};
  return {{"field", "ratfun"}, {"vars", f.vars}};
}

FieldSpec field_from_json(const json& j) {
  return guarded("field", [&] {
    const std::string kind = j.value("field", "ratfun");
    if (kind == "cyclotomic") {
      const int p = j.at("p").get<int>();
      if (p < 2) throw InvalidInput("cyclotomic field needs p >= 2");
      return FieldSpec::cyclotomic(p);
    }
    if (kind != "ratfun") throw InvalidInput("unknown field '" + kind + "'");
    const int vars = j.value("vars", 1);
    if (vars < 1 || vars > 3) throw InvalidInput("ratfun field needs 1 to 3 variables");
    return FieldSpec::rational_functions(vars);
  });
}

json to_json(const complex::BasedChainComplex& c) {
  json j = to_json(c.field);
  j["basis"] = c.basis;
  json blocks = json::array();
  for (const auto& m : c.boundary) blocks.push_back(triplets(m));
  j["boundary"] = blocks;
  return j;
}

complex::BasedChainComplex complex_from_json(const json& j) {
  return guarded("complex", [&] {
    complex::BasedChainComplex c{field_from_json(j), j.at("basis").get<std::vector<std::vector<std::string>>>(), {}};
    const json& blocks = j.at("boundary");
    if (blocks.size() != c.basis.size()) {
      throw InvalidInput("complex has " + std::to_string(c.basis.size()) + " degrees but " +
                         std::to_string(blocks.size()) + " boundary blocks");
    }
    for (std::size_t d = 0; d < blocks.size(); ++d) {
      const std::size_t rows = d == 0 ? 0 : c.basis[d - 1].size();
      c.boundary.push_back(matrix_from_triplets(blocks[d], c.field, rows, c.basis[d].size()));
    }
    if (!complex::verify_boundary(c)) throw InvalidInput("boundary does not square to zero");
    return c;
  });
}

json to_json(const complex::Propagator& g) {
  json j = to_json(g.field);
  j["adjoint"] = g.adjoint;
  json blocks = json::array();
  for (const auto& m : g.maps) blocks.push_back(triplets(m));
  j["maps"] = blocks;
  return j;
}

complex::Propagator propagator_from_json(const json& j, const complex::BasedChainComplex& c) {
  return guarded("propagator", [&] {
    complex::Propagator g{c.field, {}, j.value("adjoint", false)};
    if (j.contains("field") && field_from_json(j) != c.field) throw DomainMismatch("propagator and complex fields differ");
    const json& blocks = j.at("maps");
    for (std::size_t d = 0; d < blocks.size(); ++d) {
      const std::size_t lo = c.dim(static_cast<int>(d));
      const std::size_t hi = c.dim(static_cast<int>(d) + 1);
      g.maps.push_back(g.adjoint ? matrix_from_triplets(blocks[d], c.field, lo, hi)
                                 : matrix_from_triplets(blocks[d], c.field, hi, lo));
    }
    return g;
  });
}

json to_json(const complex::GradedMap& h) {
  json maps = json::array();
  for (const auto& m : h.maps) maps.push_back({{"rows", m.rows()}, {"cols", m.cols()}, {"entries", triplets(m)}});
  return {{"degree", h.degree}, {"maps", maps}};
}

json to_json(const diagrams::DecoratedGraph& g) {
  json decorations = json::array();
  for (const auto& d : g.decorations) decorations.push_back(d.to_string());
  return {{"vertices", g.n_vertices}, {"cyclic", g.cyclic}, {"edges", g.edges}, {"decorations", decorations}};
}

diagrams::DecoratedGraph graph_from_json(const json& j, const GroupSpec& group) {
  return guarded("graph", [&] {
    diagrams::DecoratedGraph g;
    g.n_vertices = j.at("vertices").get<int>();
    g.cyclic = j.at("cyclic").get<std::vector<std::array<int, 3>>>();
    g.edges = j.at("edges").get<std::vector<std::pair<int, int>>>();
    if (j.contains("decorations")) {
      for (const auto& d : j.at("decorations")) {
        g.decorations.push_back(group.normalize(ring::parse_laurent(d.get<std::string>(), group.arity())));
      }
    } else {
      g.decorations.assign(g.edges.size(), ring::LaurentPoly::constant(group.arity(), 1));
    }
    g.validate();
    return g;
  });
}

diagrams::BasisOptions basis_options_from_json(const json& j) {
  return guarded("basis options", [&] {
    diagrams::BasisOptions o;
    o.degree = j.value("degree", 2);
    o.group = GroupSpec::parse(j.value("group", "trivial"));
    o.support = j.value("support", 0);
    o.connected_only = j.value("connected_only", false);
    const std::string h = j.value("holonomy", "default");
    if (h != "default" && h != "mirrored") throw InvalidInput("holonomy must be 'default' or 'mirrored'");
    o.holonomy = h == "mirrored" ? diagrams::HolonomyConvention::Mirrored : diagrams::HolonomyConvention::Default;
    if (j.contains("max_generators")) o.max_generators = j.at("max_generators").get<std::size_t>();
    return o;
  });
}

json to_json(const GraphSpaceBasis& b) {
  const auto& o = b.options();
  json pivots = json::array();
  for (const auto& [col, row] : b.pivots()) {
    json entries = json::array();
    for (const auto& [c, x] : row) entries.push_back({c, x.get_str()});
    pivots.push_back({col, entries});
  }
  json keys = json::array();
  for (const auto& k : b.basis_keys()) keys.push_back(diagrams::key_to_string(k));
  const auto& d = b.diagnostics();
  json emitted = json::object();
  for (const auto& [kind, n] : d.emitted) emitted[diagrams::to_string(kind)] = n;
  json trivial = json::object();
  for (const auto& [kind, n] : d.trivial) trivial[diagrams::to_string(kind)] = n;
  return {{"degree", o.degree},
          {"group", o.group.name()},
          {"support", o.support},
          {"connected_only", o.connected_only},
          {"holonomy", holonomy_name(o.holonomy)},
          {"dimension", b.dimension()},
          {"basis", keys},
          {"diagnostics",
           {{"generators", d.generators},
            {"vanishing_generators", d.vanishing_generators},
            {"relations", emitted},
            {"trivial_relations", trivial},
            {"holonomy_skipped", d.holonomy_skipped}}},
          {"generators", b.generators()},
          {"pivots", pivots}};
}

GraphSpaceBasis basis_from_json(const json& j) {
  return guarded("basis", [&] {
    const auto options = basis_options_from_json(j);
    if (!j.contains("generators")) return GraphSpaceBasis::build(options);
    std::map<std::size_t, diagrams::SparseRow> pivots;
    for (const auto& p : j.at("pivots")) {
      diagrams::SparseRow row;
      for (const auto& e : p.at(1)) row.emplace_back(e.at(0).get<std::size_t>(), parse_rational(e.at(1).get<std::string>()));
      pivots.emplace(p.at(0).get<std::size_t>(), std::move(row));
    }
    diagrams::RelationDiagnostics diag;
    if (j.contains("diagnostics")) {
      diag.generators = j["diagnostics"].value("generators", std::size_t{0});
      diag.vanishing_generators = j["diagnostics"].value("vanishing_generators", std::size_t{0});
      diag.holonomy_skipped = j["diagnostics"].value("holonomy_skipped", std::size_t{0});
      const auto counts = [](const json& m, std::map<diagrams::RelationKind, std::size_t>& out) {
        for (auto kind : {diagrams::RelationKind::AS, diagrams::RelationKind::IHX, diagrams::RelationKind::OR,
                          diagrams::RelationKind::Holonomy}) {
          const auto name = diagrams::to_string(kind);
          if (m.contains(name)) out[kind] = m.at(name).get<std::size_t>();
        }
      };
      if (j["diagnostics"].contains("relations")) counts(j["diagnostics"]["relations"], diag.emitted);
      if (j["diagnostics"].contains("trivial_relations")) counts(j["diagnostics"]["trivial_relations"], diag.trivial);
    }
    GraphSpaceBasis b = GraphSpaceBasis::from_parts(options, j.at("generators").get<std::vector<diagrams::GraphKey>>(),
                                                    std::move(pivots), diag);
    if (j.contains("dimension") && j.at("dimension").get<std::size_t>() != b.dimension()) {
      throw InvalidInput("stored dimension does not match the stored relations");
    }
    return b;
  });
}

json coordinates_json(const GraphSpaceBasis& b, const GraphSpaceBasis::Coordinates& c) {
  json xs = json::array();
  for (const auto& x : c) xs.push_back(x.get_str());
  return {{"dimension", c.size()}, {"coordinates", xs}, {"combination", b.describe(c)}};
}

diagrams::GraphCombination combination_from_json(const json& j, const GroupSpec& group) {
  return guarded("element", [&] {
    diagrams::GraphCombination out;
    if (!j.contains("terms")) {
      out.emplace_back(1, graph_from_json(j, group));
      return out;
    }
    for (const auto& t : j.at("terms")) {
      out.emplace_back(parse_rational(t.value("coefficient", "1")), graph_from_json(t.at("graph"), group));
    }
    return out;
  });
}

json to_json(const linking::LatticeLink& link) {
  return {{"loops", link.loops}, {"framings", link.framings}, {"period", link.period}};
}

linking::LatticeLink link_from_json(const json& j) {
  return guarded("link", [&] {
    linking::LatticeLink link;
    link.loops = j.at("loops").get<std::vector<linking::Loop>>();
    link.framings = j.contains("framings") ? j.at("framings").get<std::vector<long>>()
                                           : std::vector<long>(link.loops.size(), 0);
    if (j.contains("period")) {
      link.period = j.at("period").get<long>();
    } else {
      long lo = 0;
      long hi = 0;
      bool first = true;
      for (const auto& loop : link.loops) {
        for (const auto& p : loop) {
          for (long x : p) {
            lo = first ? x : std::min(lo, x);
            hi = first ? x : std::max(hi, x);
            first = false;
          }
        }
      }
      link.period = hi - lo + 2;
    }
    link.validate();
    return link;
  });
}

json to_json(const casson::KnotDiagram& k) {
  return {{"crossings", k.crossings}, {"signs", k.signs.empty() ? k.crossing_signs() : k.signs}};
}

casson::KnotDiagram knot_from_json(const json& j) {
  return guarded("knot", [&] {
    if (j.contains("name")) {
      const std::string name = j.at("name").get<std::string>();
      if (name == "unknot") return casson::unknot();
      if (name == "trefoil") return casson::trefoil();
      if (name == "figure-eight" || name == "figure_eight") return casson::figure_eight();
      throw InvalidInput("unknown knot '" + name + "'");
    }
    casson::KnotDiagram k;
    k.crossings = j.at("crossings").get<std::vector<std::array<int, 4>>>();
    if (j.contains("signs")) k.signs = j.at("signs").get<std::vector<int>>();
    k.validate();
    return k;
  });
}

trace::CGraph cgraph_from_json(const json& j) {
  return guarded("cgraph", [&] {
    trace::CGraph g;
    const auto d = graph_from_json(j, GroupSpec::lattice3());
    g.base.n_vertices = d.n_vertices;
    g.base.cyclic = d.cyclic;
    g.base.edges = d.edges;
    for (const auto& x : d.decorations) {
      if (!x.is_monomial() || x.terms().begin()->second != 1) throw InvalidInput("C-graph decorations must be group elements");
      g.base.decorations.push_back(x.terms().begin()->first);
    }
    if (j.contains("states")) {
      for (const auto& s : j.at("states")) {
        if (s.is_string()) {
          if (s.get<std::string>() != "compact") throw InvalidInput("edge state must be 'compact' or an object");
          g.states.push_back(trace::EdgeState::compact());
        } else {
          g.states.push_back(trace::EdgeState::separated(s.at("input").get<std::string>(), s.at("output").get<std::string>()));
        }
      }
    } else {
      g.states.assign(g.base.edges.size(), trace::EdgeState::compact());
    }
    g.validate();
    return g;
  });
}

trace::ModuliCount count_from_json(const json& j, const GroupSpec& group) {
  return guarded("count", [&] {
    trace::ModuliCount m;
    for (const auto& f : j.at("edge_factors")) m.edge_factors.push_back(group.normalize(ring::parse_laurent(f.get<std::string>(), group.arity())));
    m.scale = parse_rational(j.value("scale", "1"));
    return m;
  });
}

std::vector<trace::Term> terms_from_json(const json& j, const GroupSpec& group) {
  return guarded("terms", [&] {
    std::vector<trace::Term> out;
    for (const auto& t : j.at("terms")) out.emplace_back(cgraph_from_json(t.at("cgraph")), count_from_json(t.at("count"), group));
    return out;
  });
}

std::vector<trace::FullTerm> full_terms_from_json(const json& j, const GroupSpec& group) {
  return guarded("terms", [&] {
    std::vector<trace::FullTerm> out;
    for (const auto& t : j.at("terms")) {
      trace::FullTerm f{cgraph_from_json(t.at("cgraph")), {}};
      for (const auto& c : t.at("components")) {
        trace::ComponentCount cc;
        for (const auto& m : c.at("counts")) cc.count.push_back(count_from_json(m, group));
        cc.local = parse_rational(c.value("local", "0"));
        f.components.push_back(std::move(cc));
      }
      out.push_back(std::move(f));
    }
    return out;
  });
}

trace::PropagatorSet propagators_from_json(const json& j) {
  return guarded("propagators", [&] {
    auto entry = [](const json& e) {
      trace::EdgeComplex ec{complex_from_json(e.at("complex")), {}};
      ec.propagator = e.contains("propagator") ? propagator_from_json(e.at("propagator"), ec.complex)
                                               : complex::solve_propagator(ec.complex);
      if (!complex::verify_propagator(ec.complex, ec.propagator)) throw PreconditionFailed("supplied propagator does not satisfy dg + gd = 1");
      if (e.value("adjoint", false)) ec.propagator = complex::adjoint_propagator(ec.complex, ec.propagator);
      return ec;
    };
    trace::PropagatorSet set;
    if (j.contains("default")) set.fallback = entry(j.at("default"));
    if (j.contains("by_label")) {
      for (const auto& [label, e] : j.at("by_label").items()) set.by_label.emplace(std::stoul(label), entry(e));
    }
    return set;
  });
}

trace::CorrectionData correction_from_json(const json& j) {
  return guarded("correction", [&] {
    trace::CorrectionData c;
    c.sign_x = parse_rational(j.value("sign_x", "0"));
    if (j.contains("a_coeffs")) {
      for (const auto& a : j.at("a_coeffs")) {
        const auto g = graph_from_json(a.at("graph"), GroupSpec::trivial());
        diagrams::MonomialGraph m{g.n_vertices, g.cyclic, g.edges, std::vector<ring::Exponent>(g.edges.size())};
        c.a_coeffs[diagrams::canonical_form(m, GroupSpec::trivial()).key] += parse_rational(a.value("coefficient", "1"));
      }
    }
    return c;
  });
}

}  // namespace zpi::io
