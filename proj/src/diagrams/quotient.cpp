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

#include "zpi/diagrams/quotient.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "zpi/error.hpp"

namespace zpi::diagrams {

std::string to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::AS: return "AS";
    case RelationKind::IHX: return "IHX";
    case RelationKind::OR: return "OR";
    case RelationKind::Holonomy: return "holonomy";
  }
  return "?";
}

namespace {

int complexity(const GraphKey& key, const GroupSpec& group) {
  int c = 0;
  for (std::size_t i = 1; i < key.size(); i += 5) {
    for (std::size_t k = 0; k < 3; ++k) {
      int e = key[i + 2 + k];
      if (group.kind == GroupSpec::Kind::Zp) e = std::min(e, group.p - e);
      c += std::abs(e);
    }
  }
  return c;
}

std::array<int, 3> rotate_to_back(const std::array<int, 3>& c, int h) {
  for (int r = 0; r < 3; ++r) {
    if (c[static_cast<std::size_t>((r + 2) % 3)] == h) {
      return {c[static_cast<std::size_t>(r)], c[static_cast<std::size_t>((r + 1) % 3)], h};
    }
  }
  throw InvalidInput("half-edge not at vertex");
}

std::array<int, 3> rotate_to_front(const std::array<int, 3>& c, int h) {
  for (int r = 0; r < 3; ++r) {
    if (c[static_cast<std::size_t>(r)] == h) {
      return {h, c[static_cast<std::size_t>((r + 1) % 3)], c[static_cast<std::size_t>((r + 2) % 3)]};
    }
  }
  throw InvalidInput("half-edge not at vertex");
}

SparseRow axpy(const SparseRow& x, const Rational& a, const SparseRow& y) {
  SparseRow out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, a * y[j].second);
      ++j;
    } else {
      Rational s = x[i].second + a * y[j].second;
      if (s != 0) out.emplace_back(x[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseRow to_row(const std::map<std::size_t, Rational>& m) {
  SparseRow r;
  for (const auto& [c, v] : m) {
    if (v != 0) r.emplace_back(c, v);
  }
  return r;
}

void reduce_row(SparseRow& r, const std::map<std::size_t, SparseRow>& pivots) {
  std::size_t i = 0;
  while (i < r.size()) {
    auto it = pivots.find(r[i].first);
    if (it == pivots.end()) {
      ++i;
      continue;
    }
    const Rational f = r[i].second;
    r = axpy(r, -f, it->second);
  }
}

}  // namespace

std::vector<Relation> relations_for(const MonomialGraph& g, const GroupSpec& group, int support,
                                    std::size_t* holonomy_skipped, HolonomyConvention convention) {
  std::vector<Relation> out;
  const auto own = g.vertex_of();
  for (int v = 0; v < g.n_vertices; ++v) {
    MonomialGraph h = g;
    std::swap(h.cyclic[static_cast<std::size_t>(v)][1], h.cyclic[static_cast<std::size_t>(v)][2]);
    out.push_back({RelationKind::AS, {{Rational(1), g}, {Rational(1), std::move(h)}}});
  }
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    MonomialGraph h = g;
    std::swap(h.edges[i].first, h.edges[i].second);
    h.decorations[i] = group.bar(h.decorations[i]);
    out.push_back({RelationKind::OR, {{Rational(1), g}, {Rational(-1), std::move(h)}}});
  }
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto [tail, head] = g.edges[i];
    const int u = own[static_cast<std::size_t>(tail)];
    const int v = own[static_cast<std::size_t>(head)];
    if (u == v || !group.is_identity(g.decorations[i])) continue;
    const auto cu = rotate_to_back(g.cyclic[static_cast<std::size_t>(u)], tail);
    const auto cv = rotate_to_front(g.cyclic[static_cast<std::size_t>(v)], head);
    const int x = cu[0];
    const int y = cu[1];
    const int z = cv[1];
    const int w = cv[2];
    auto term = [&](int a, int b, int c) {
      MonomialGraph h = g;
      h.cyclic[static_cast<std::size_t>(u)] = {a, b, tail};
      h.cyclic[static_cast<std::size_t>(v)] = {head, c, w};
      return h;
    };
    out.push_back({RelationKind::IHX,
                   {{Rational(1), term(x, y, z)}, {Rational(1), term(y, z, x)}, {Rational(1), term(z, x, y)}}});
  }
  for (int v = 0; v < g.n_vertices; ++v) {
    for (const Exponent& gen : group.generators()) {
      const bool mirrored = convention == HolonomyConvention::Mirrored;
      const Exponent out_factor = mirrored ? gen : group.bar(gen);
      const Exponent in_factor = mirrored ? group.bar(gen) : gen;
      MonomialGraph h = g;
      bool inside = true;
      for (std::size_t i = 0; i < h.edges.size(); ++i) {
        const bool at_tail = own[static_cast<std::size_t>(h.edges[i].first)] == v;
        const bool at_head = own[static_cast<std::size_t>(h.edges[i].second)] == v;
        if (at_tail && at_head) continue;
        if (at_tail) h.decorations[i] = group.mul(out_factor, h.decorations[i]);
        if (at_head) h.decorations[i] = group.mul(h.decorations[i], in_factor);
        inside = inside && group.in_support(h.decorations[i], support);
      }
      if (!inside) {
        if (holonomy_skipped != nullptr) ++*holonomy_skipped;
        continue;
      }
      out.push_back({RelationKind::Holonomy, {{Rational(1), g}, {Rational(-1), std::move(h)}}});
    }
  }
  return out;
}

std::vector<GraphKey> monomial_generators(const BasisOptions& options, RelationDiagnostics* diagnostics) {
  const GroupSpec& group = options.group;
  const std::vector<Exponent> values = group.support(options.support);
  std::set<GraphKey> keys;
  std::set<GraphKey> vanishing;
  for (const MonomialGraph& skeleton : trivalent_skeletons(options.degree, options.connected_only)) {
    const std::size_t m = skeleton.edges.size();
    double raw = 1;
    for (std::size_t i = 0; i < m; ++i) raw *= static_cast<double>(values.size());
    if (raw > 40.0 * static_cast<double>(options.max_generators)) {
      throw ResourceLimit("decoration enumeration of " + std::to_string(static_cast<long long>(raw)) +
                          " assignments exceeds the generator cap");
    }
    std::vector<std::size_t> digit(m, 0);
    MonomialGraph g = skeleton;
    while (true) {
      for (std::size_t i = 0; i < m; ++i) g.decorations[i] = values[digit[i]];
      const CanonicalForm cf = canonical_form(g, group);
      if (cf.vanishes) {
        vanishing.insert(cf.key);
      } else {
        keys.insert(cf.key);
        if (keys.size() > options.max_generators) {
          throw ResourceLimit("more than " + std::to_string(options.max_generators) + " generators");
        }
      }
      std::size_t i = 0;
      while (i < m && digit[i] + 1 == values.size()) digit[i++] = 0;
      if (i == m) break;
      ++digit[i];
    }
  }
  std::vector<GraphKey> out(keys.begin(), keys.end());
  std::stable_sort(out.begin(), out.end(), [&](const GraphKey& a, const GraphKey& b) {
    return complexity(a, group) > complexity(b, group);
  });
  if (options.shuffle_seed) {
    std::mt19937_64 rng(*options.shuffle_seed);
    std::shuffle(out.begin(), out.end(), rng);
  }
  if (diagnostics != nullptr) {
    diagnostics->generators = out.size();
    diagnostics->vanishing_generators = vanishing.size();
  }
  return out;
}

std::vector<Relation> relation_generators(const BasisOptions& options, RelationDiagnostics* diagnostics) {
  RelationDiagnostics local;
  RelationDiagnostics& d = diagnostics != nullptr ? *diagnostics : local;
  std::vector<Relation> out;
  for (const GraphKey& key : monomial_generators(options, &d)) {
    for (auto& r : relations_for(graph_from_key(key), options.group, options.support, &d.holonomy_skipped,
                                options.holonomy)) {
      ++d.emitted[r.kind];
      out.push_back(std::move(r));
    }
  }
  return out;
}

GraphSpaceBasis GraphSpaceBasis::build(const BasisOptions& options) {
  GraphSpaceBasis b;
  b.options_ = options;
  b.generators_ = monomial_generators(options, &b.diagnostics_);
  b.index();
  for (const GraphKey& key : b.generators_) {
    for (const Relation& r : relations_for(graph_from_key(key), options.group, options.support,
                                           &b.diagnostics_.holonomy_skipped, options.holonomy)) {
      ++b.diagnostics_.emitted[r.kind];
      std::map<std::size_t, Rational> acc;
      for (const auto& [c, g] : r.terms) {
        const CanonicalForm cf = canonical_form(g, options.group);
        if (cf.vanishes) continue;
        auto it = b.column_.find(cf.key);
        if (it == b.column_.end()) {
          throw InvalidInput("relation term outside the generator set: " + key_to_string(cf.key));
        }
        acc[it->second] += c * cf.sign;
      }
      SparseRow row = to_row(acc);
      if (row.empty()) {
        ++b.diagnostics_.trivial[r.kind];
        continue;
      }
      reduce_row(row, b.pivots_);
      if (row.empty()) continue;
      const Rational inv = 1 / row.front().second;
      for (auto& [c, v] : row) v *= inv;
      b.pivots_.emplace(row.front().first, std::move(row));
    }
  }
  b.index();
  return b;
}

GraphSpaceBasis GraphSpaceBasis::from_parts(const BasisOptions& options, std::vector<GraphKey> generators,
                                            std::map<std::size_t, SparseRow> pivots,
                                            RelationDiagnostics diagnostics) {
  GraphSpaceBasis b;
  b.options_ = options;
  b.generators_ = std::move(generators);
  b.pivots_ = std::move(pivots);
  b.diagnostics_ = std::move(diagnostics);
  for (const auto& [c, row] : b.pivots_) {
    if (row.empty() || row.front().first != c || row.front().second != 1 || row.back().first >= b.generators_.size()) {
      throw InvalidInput("malformed pivot row for column " + std::to_string(c));
    }
  }
  b.index();
  return b;
}

void GraphSpaceBasis::index() {
  column_.clear();
  for (std::size_t i = 0; i < generators_.size(); ++i) column_.emplace(generators_[i], i);
  if (column_.size() != generators_.size()) throw InvalidInput("duplicate generators in basis");
  basis_columns_.clear();
  coordinate_of_.clear();
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (pivots_.count(i) == 0) {
      coordinate_of_[i] = basis_columns_.size();
      basis_columns_.push_back(i);
    }
  }
}

std::vector<GraphKey> GraphSpaceBasis::basis_keys() const {
  std::vector<GraphKey> out;
  for (std::size_t c : basis_columns_) out.push_back(generators_[c]);
  return out;
}

std::vector<DecoratedGraph> GraphSpaceBasis::basis_graphs() const {
  std::vector<DecoratedGraph> out;
  for (const auto& k : basis_keys()) out.push_back(to_decorated(graph_from_key(k), options_.group));
  return out;
}

std::optional<std::size_t> GraphSpaceBasis::column_of(const GraphKey& key) const {
  auto it = column_.find(key);
  if (it == column_.end()) return std::nullopt;
  return it->second;
}

GraphSpaceBasis::Coordinates GraphSpaceBasis::reduce_keys(
    const std::vector<std::pair<Rational, GraphKey>>& x) const {
  std::map<std::size_t, Rational> acc;
  for (const auto& [c, key] : x) {
    auto it = column_.find(key);
    if (it == column_.end()) throw InvalidInput("graph outside the basis support: " + key_to_string(key));
    acc[it->second] += c;
  }
  SparseRow row = to_row(acc);
  reduce_row(row, pivots_);
  Coordinates out = zero();
  for (const auto& [c, v] : row) out[coordinate_of_.at(c)] = v;
  return out;
}

void GraphSpaceBasis::check_graph(const MonomialGraph& g) const {
  if (g.n_vertices != options_.degree) {
    throw InvalidInput("graph of degree " + std::to_string(g.n_vertices) + " reduced in a degree " +
                       std::to_string(options_.degree) + " basis");
  }
  for (const auto& d : g.decorations) {
    if (!options_.group.in_support(d, options_.support)) throw InvalidInput("decoration outside the basis support");
  }
  if (options_.connected_only && !g.is_connected()) throw InvalidInput("disconnected graph in a connected basis");
}

GraphSpaceBasis::Coordinates GraphSpaceBasis::reduce(const MonomialCombination& x) const {
  std::vector<std::pair<Rational, GraphKey>> keys;
  for (const auto& [c, g] : x) {
    if (c == 0) continue;
    check_graph(g);
    const CanonicalForm cf = canonical_form(g, options_.group);
    if (cf.vanishes) continue;
    keys.emplace_back(c * cf.sign, cf.key);
  }
  return reduce_keys(keys);
}

GraphSpaceBasis::Coordinates GraphSpaceBasis::reduce(const GraphCombination& x) const {
  MonomialCombination m;
  for (const auto& [c, g] : x) {
    for (auto& [a, mg] : expand(g, options_.group)) {
      if (a * c != 0) m.emplace_back(a * c, std::move(mg));
    }
  }
  return reduce(m);
}

GraphSpaceBasis::Coordinates GraphSpaceBasis::reduce(const DecoratedGraph& g) const {
  return reduce(GraphCombination{{Rational(1), g}});
}

GraphSpaceBasis::Coordinates GraphSpaceBasis::reduce(const MonomialGraph& g) const {
  return reduce(MonomialCombination{{Rational(1), g}});
}

std::string GraphSpaceBasis::describe(const Coordinates& c) const {
  std::ostringstream out;
  bool first = true;
  const auto keys = basis_keys();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << ring::to_string(c[i]) << "*[" << key_to_string(keys[i]) << "]";
  }
  return first ? "0" : out.str();
}

bool is_zero(const GraphSpaceBasis::Coordinates& c) {
  return std::all_of(c.begin(), c.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace zpi::diagrams
