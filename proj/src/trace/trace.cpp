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

#include "zpi/trace/trace.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "zpi/error.hpp"

namespace zpi::trace {

using diagrams::DecoratedGraph;
using diagrams::GroupSpec;

namespace {

struct Located {
  int degree;
  std::size_t index;
};

std::optional<Located> locate(const complex::BasedChainComplex& c, const std::string& label) {
  for (int d = 0; d <= c.top_degree(); ++d) {
    const auto& names = c.basis[static_cast<std::size_t>(d)];
    auto it = std::find(names.begin(), names.end(), label);
    if (it != names.end()) return Located{d, static_cast<std::size_t>(it - names.begin())};
  }
  return std::nullopt;
}

const EdgeComplex& require(const PropagatorSet& props, std::size_t label) {
  const EdgeComplex* ec = props.find(label);
  if (ec == nullptr) throw InvalidInput("no propagator for edge label " + std::to_string(label));
  return *ec;
}

std::pair<Located, Located> endpoints(const EdgeComplex& ec, std::size_t label, const EdgeState& s) {
  auto p = locate(ec.complex, s.input);
  auto q = locate(ec.complex, s.output);
  if (!p || !q) {
    throw InvalidInput("edge " + std::to_string(label) + ": critical point '" + (p ? s.output : s.input) +
                       "' is not a generator of its complex");
  }
  return {*p, *q};
}

std::uint64_t factorial(int k) {
  std::uint64_t r = 1;
  for (int i = 2; i <= k; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

void CGraph::validate() const {
  DecoratedGraph probe = diagrams::to_decorated(base, GroupSpec::lattice3());
  probe.validate();
  if (states.size() != base.edges.size()) throw InvalidInput("one edge state per edge required");
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].kind == EdgeState::Kind::Separated && (states[i].input.empty() || states[i].output.empty())) {
      throw InvalidInput("separated edge " + std::to_string(i) + " needs input and output critical points");
    }
  }
}

std::vector<std::vector<int>> CGraph::components() const {
  const auto owner = base.vertex_of();
  std::vector<int> parent(static_cast<std::size_t>(base.n_vertices));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
    return v;
  };
  for (const auto& [a, b] : base.edges) {
    const int ra = find(owner[static_cast<std::size_t>(a)]);
    const int rb = find(owner[static_cast<std::size_t>(b)]);
    if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
  }
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < base.n_vertices; ++v) groups[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, vs] : groups) out.push_back(std::move(vs));
  return out;
}

const EdgeComplex* PropagatorSet::find(std::size_t label) const {
  auto it = by_label.find(label);
  if (it != by_label.end()) return &it->second;
  return fallback ? &*fallback : nullptr;
}

PropagatorSet PropagatorSet::adjoint() const {
  PropagatorSet out = *this;
  for (auto& [label, ec] : out.by_label) ec.propagator = complex::adjoint_propagator(ec.complex, ec.propagator);
  if (out.fallback) out.fallback->propagator = complex::adjoint_propagator(out.fallback->complex, out.fallback->propagator);
  return out;
}

std::vector<int> degree_vector(const CGraph& g, const PropagatorSet& props) {
  std::vector<int> out;
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    const EdgeState& s = g.states[i];
    if (s.kind == EdgeState::Kind::Compact) {
      out.push_back(1);
      continue;
    }
    const EdgeComplex& ec = require(props, i);
    const auto [p, q] = endpoints(ec, i, s);
    out.push_back(ec.propagator.adjoint ? q.degree - p.degree : p.degree - q.degree);
  }
  return out;
}

ring::FieldElement propagator_entry(const PropagatorSet& props, std::size_t label, const EdgeState& state) {
  const EdgeComplex& ec = require(props, label);
  const auto [p, q] = endpoints(ec, label, state);
  const bool adjoint = ec.propagator.adjoint;
  const int expected = adjoint ? q.degree - 1 : q.degree + 1;
  if (p.degree != expected) {
    throw InvalidInput("edge " + std::to_string(label) + ": no propagator entry from '" + state.output + "' to '" +
                       state.input + "' (degrees " + std::to_string(q.degree) + " -> " + std::to_string(p.degree) +
                       ")");
  }
  const int block = std::min(p.degree, q.degree);
  const auto& maps = ec.propagator.maps;
  if (block < 0 || static_cast<std::size_t>(block) >= maps.size()) {
    throw InvalidInput("edge " + std::to_string(label) + ": propagator block missing");
  }
  return maps[static_cast<std::size_t>(block)](p.index, q.index);
}

LaurentPoly to_group_ring(const ring::FieldElement& x, const GroupSpec& group) {
  if (const auto* c = x.as_cyclotomic()) {
    if (group.kind != GroupSpec::Kind::Zp || group.p != c->modulus()) {
      throw DomainMismatch("Q(zeta_" + std::to_string(c->modulus()) + ") entry used with group " + group.name());
    }
    LaurentPoly out(1);
    const auto coeffs = c->coefficients();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] != 0) out += LaurentPoly::monomial(1, {static_cast<int>(i), 0, 0}, coeffs[i]);
    }
    return group.normalize(out);
  }
  const auto lp = x.as_rational_function()->as_laurent();
  if (!lp) {
    throw InvalidInput("decoration " + x.to_string() +
                       " is a proper fraction; only Laurent polynomial decorations reduce to group ring classes");
  }
  if (lp->arity() != group.arity()) {
    if (!lp->is_constant()) {
      throw DomainMismatch("decoration of arity " + std::to_string(lp->arity()) + " used with group " + group.name());
    }
    return LaurentPoly::constant(group.arity(), lp->coefficient(ring::Exponent{}));
  }
  return group.normalize(*lp);
}

Coordinates add(const Coordinates& a, const Coordinates& b) {
  if (a.size() != b.size()) throw InvalidInput("coordinate vectors of different lengths");
  Coordinates out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

Coordinates scale(const Rational& c, const Coordinates& a) {
  Coordinates out = a;
  for (auto& x : out) x *= c;
  return out;
}

Coordinates trace_contract(const std::vector<Term>& terms, const PropagatorSet& props, const GraphSpaceBasis& basis) {
  const GroupSpec& group = basis.group();
  Coordinates total = basis.zero();
  for (const auto& [g, count] : terms) {
    g.validate();
    if (count.edge_factors.size() != g.base.edges.size()) {
      throw InvalidInput("moduli count has " + std::to_string(count.edge_factors.size()) + " edge factors for " +
                         std::to_string(g.base.edges.size()) + " edges");
    }
    if (count.scale == 0) continue;
    DecoratedGraph d = diagrams::to_decorated(g.base, group);
    bool vanishes = false;
    for (std::size_t i = 0; i < g.base.edges.size(); ++i) {
      LaurentPoly u = group.normalize(count.edge_factors[i]);
      d.decorations[i] = group.normalize(d.decorations[i] * u);
      if (g.states[i].kind == EdgeState::Kind::Separated) {
        const LaurentPoly entry = to_group_ring(propagator_entry(props, i, g.states[i]), group);
        d.decorations[i] = group.normalize(-(d.decorations[i] * entry));
      }
      vanishes = vanishes || d.decorations[i].is_zero();
    }
    if (vanishes) continue;
    total = add(total, scale(count.scale, basis.reduce(d)));
  }
  return total;
}

Coordinates assemble_z(const std::vector<Term>& terms, const PropagatorSet& props, const GraphSpaceBasis& basis) {
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const CGraph& g = terms[k].first;
    g.validate();
    if (!g.is_primitive()) throw InvalidInput("term " + std::to_string(k) + " is not a primitive C-graph");
    const auto deg = degree_vector(g, props);
    if (std::any_of(deg.begin(), deg.end(), [](int x) { return x != 1; })) {
      throw InvalidInput("term " + std::to_string(k) + " has degree vector other than (1, ..., 1)");
    }
  }
  return trace_contract(terms, props, basis);
}

Rational prefactor(int n_vertices) {
  if (n_vertices <= 0 || n_vertices % 2 != 0) throw InvalidInput("prefactor needs 2n > 0 vertices");
  const int n = n_vertices / 2;
  Rational denom = 1;
  for (int i = 0; i < 6 * n; ++i) denom *= 2;
  denom *= Rational(static_cast<unsigned long>(factorial(2 * n)));
  denom *= Rational(static_cast<unsigned long>(factorial(3 * n)));
  return 1 / denom;
}

Coordinates assemble_Z(const std::vector<FullTerm>& terms, const PropagatorSet& props, const CorrectionData& correction,
                       const GraphSpaceBasis& basis) {
  const GroupSpec& group = basis.group();
  std::vector<Term> expanded;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const CGraph& g = terms[k].graph;
    g.validate();
    const auto comps = g.components();
    if (terms[k].components.size() != comps.size()) {
      throw InvalidInput("term " + std::to_string(k) + " has " + std::to_string(comps.size()) +
                         " components but counts for " + std::to_string(terms[k].components.size()));
    }
    const auto owner = g.base.vertex_of();
    // Partial tensors over the edges seen so far.
    std::vector<ModuliCount> partial{
        ModuliCount{std::vector<LaurentPoly>(g.base.edges.size(), LaurentPoly::constant(group.arity(), 1)), 1}};
    for (std::size_t c = 0; c < comps.size(); ++c) {
      std::vector<std::size_t> edges;
      for (std::size_t e = 0; e < g.base.edges.size(); ++e) {
        const int v = owner[static_cast<std::size_t>(g.base.edges[e].first)];
        if (std::find(comps[c].begin(), comps[c].end(), v) != comps[c].end()) edges.push_back(e);
      }
      const bool all_compact = std::all_of(edges.begin(), edges.end(), [&](std::size_t e) {
        return g.states[e].kind == EdgeState::Kind::Compact;
      });
      std::vector<ModuliCount> local = terms[k].components[c].count;
      for (const auto& m : local) {
        if (m.edge_factors.size() != edges.size()) {
          throw InvalidInput("term " + std::to_string(k) + ", component " + std::to_string(c) + ": expected " +
                             std::to_string(edges.size()) + " edge factors");
        }
      }
      if (all_compact) {
        // Component as a standalone graph, for the a-coefficient lookup.
        std::map<int, int> vmap;
        for (int v : comps[c]) vmap.emplace(v, static_cast<int>(vmap.size()));
        diagrams::MonomialGraph sub;
        sub.n_vertices = static_cast<int>(comps[c].size());
        std::map<int, int> hmap;
        for (int v : comps[c]) {
          std::array<int, 3> cyc{};
          for (std::size_t s = 0; s < 3; ++s) {
            const int h = g.base.cyclic[static_cast<std::size_t>(v)][s];
            cyc[s] = 3 * vmap[v] + static_cast<int>(s);
            hmap[h] = cyc[s];
          }
          sub.cyclic.push_back(cyc);
        }
        for (std::size_t e : edges) {
          sub.edges.emplace_back(hmap[g.base.edges[e].first], hmap[g.base.edges[e].second]);
          sub.decorations.push_back(ring::Exponent{});
        }
        Rational a = 0;
        if (sub.n_vertices % 2 == 0) {
          auto it = correction.a_coeffs.find(diagrams::canonical_form(sub, GroupSpec::trivial()).key);
          if (it != correction.a_coeffs.end()) a = it->second;
        }
        const Rational shift = a * correction.sign_x - terms[k].components[c].local;
        if (shift != 0) {
          local.push_back(ModuliCount{std::vector<LaurentPoly>(edges.size(), LaurentPoly::constant(group.arity(), 1)),
                                      shift});
        }
      }
      std::vector<ModuliCount> next;
      for (const auto& left : partial) {
        for (const auto& right : local) {
          ModuliCount m = left;
          m.scale *= right.scale;
          for (std::size_t j = 0; j < edges.size(); ++j) m.edge_factors[edges[j]] = right.edge_factors[j];
          if (m.scale != 0) next.push_back(std::move(m));
        }
      }
      partial = std::move(next);
    }
    for (auto& m : partial) expanded.emplace_back(g, std::move(m));
  }
  const Coordinates raw = trace_contract(expanded, props, basis);
  return scale(prefactor(basis.options().degree), raw);
}

Coordinates sum_over_signs(int m, const std::function<Coordinates(const std::vector<int>&)>& evaluator,
                           unsigned jobs) {
  if (m < 0 || m > 24) throw InvalidInput("sign vectors of length " + std::to_string(m) + " not supported");
  const std::size_t count = std::size_t{1} << m;
  std::vector<std::optional<Coordinates>> results(count);
  auto run = [&](std::size_t k) {
    std::vector<int> eps(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) eps[static_cast<std::size_t>(i)] = ((k >> i) & 1U) != 0 ? -1 : 1;
    results[k] = evaluator(eps);
  };
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (jobs == 1) {
    for (std::size_t k = 0; k < count; ++k) run(k);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    for (unsigned t = 0; t < jobs; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t k = t; k < count; k += jobs) run(k);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  Coordinates total = *results[0];
  for (std::size_t k = 1; k < count; ++k) total = add(total, *results[k]);
  return total;
}

}  // namespace zpi::trace
