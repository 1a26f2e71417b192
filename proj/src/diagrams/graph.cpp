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

#include "zpi/diagrams/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "zpi/error.hpp"

namespace zpi::diagrams {

namespace {

template <class G>
std::vector<int> owners(const G& g) {
  std::vector<int> v(static_cast<std::size_t>(3 * g.n_vertices), -1);
  for (int i = 0; i < g.n_vertices; ++i) {
    for (int h : g.cyclic[static_cast<std::size_t>(i)]) v[static_cast<std::size_t>(h)] = i;
  }
  return v;
}

template <class G>
bool connected(const G& g) {
  if (g.n_vertices == 0) return true;
  const auto own = owners(g);
  std::vector<int> parent(static_cast<std::size_t>(g.n_vertices));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  int components = g.n_vertices;
  for (const auto& [a, b] : g.edges) {
    const int ra = find(own[static_cast<std::size_t>(a)]);
    const int rb = find(own[static_cast<std::size_t>(b)]);
    if (ra != rb) {
      parent[static_cast<std::size_t>(ra)] = rb;
      --components;
    }
  }
  return components == 1;
}

std::vector<int> partners(const MonomialGraph& g) {
  std::vector<int> p(static_cast<std::size_t>(3 * g.n_vertices), -1);
  for (const auto& [a, b] : g.edges) {
    p[static_cast<std::size_t>(a)] = b;
    p[static_cast<std::size_t>(b)] = a;
  }
  return p;
}

void validate_structure(int n, const std::vector<std::array<int, 3>>& cyclic,
                        const std::vector<std::pair<int, int>>& edges) {
  if (n < 0 || n % 2 != 0) throw InvalidInput("trivalent graph needs an even number of vertices, got " + std::to_string(n));
  if (static_cast<int>(cyclic.size()) != n) throw InvalidInput("one cyclic order per vertex required");
  const int halves = 3 * n;
  if (static_cast<int>(edges.size()) * 2 != halves) throw InvalidInput("edge count must be 3n/2");
  std::vector<int> seen(static_cast<std::size_t>(halves), 0);
  for (const auto& c : cyclic) {
    for (int h : c) {
      if (h < 0 || h >= halves) throw InvalidInput("half-edge index out of range");
      if (seen[static_cast<std::size_t>(h)]++ != 0) throw InvalidInput("half-edge listed at two vertices");
    }
  }
  std::fill(seen.begin(), seen.end(), 0);
  for (const auto& [a, b] : edges) {
    for (int h : {a, b}) {
      if (h < 0 || h >= halves) throw InvalidInput("edge endpoint out of range");
      if (seen[static_cast<std::size_t>(h)]++ != 0) throw InvalidInput("half-edge used by two edges");
    }
  }
}

// Depth-first labelling search for canonical_form.
class Canonicalizer {
 public:
  Canonicalizer(const MonomialGraph& g, const GroupSpec& group)
      : g_(g), group_(group), own_(owners(g)), partner_(partners(g)),
        new_vertex_(static_cast<std::size_t>(g.n_vertices), -1),
        new_half_(static_cast<std::size_t>(3 * g.n_vertices), -1) {
    // Edge index per half-edge, and whether the half-edge is the tail.
    edge_of_.assign(static_cast<std::size_t>(3 * g.n_vertices), -1);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      edge_of_[static_cast<std::size_t>(g.edges[i].first)] = static_cast<int>(i);
      edge_of_[static_cast<std::size_t>(g.edges[i].second)] = static_cast<int>(i);
    }
  }

  CanonicalForm run() {
    if (g_.n_vertices == 0) return {{0}, 1, false};
    search(0, 1);
    CanonicalForm out;
    out.key = best_;
    out.vanishes = best_signs_ == 3;
    out.sign = (best_signs_ & 1) != 0 ? 1 : -1;
    if (out.vanishes) out.sign = 0;
    return out;
  }

 private:
  // Labels vertex v as the next one with slots (s0, s1, s2).
  int place(int v, int next, const std::array<int, 3>& slots) {
    new_vertex_[static_cast<std::size_t>(v)] = next;
    for (int i = 0; i < 3; ++i) new_half_[static_cast<std::size_t>(slots[static_cast<std::size_t>(i)])] = 3 * next + i;
    const auto& c = g_.cyclic[static_cast<std::size_t>(v)];
    int pos0 = 0;
    int pos1 = 0;
    for (int i = 0; i < 3; ++i) {
      if (c[static_cast<std::size_t>(i)] == slots[0]) pos0 = i;
      if (c[static_cast<std::size_t>(i)] == slots[1]) pos1 = i;
    }
    return ((pos1 - pos0 + 3) % 3 == 1) ? 1 : -1;
  }

  void unplace(int v, const std::array<int, 3>& slots) {
    new_vertex_[static_cast<std::size_t>(v)] = -1;
    for (int h : slots) new_half_[static_cast<std::size_t>(h)] = -1;
  }

  void search(int next, int sign) {
    if (next == g_.n_vertices) {
      evaluate(sign);
      return;
    }
    // Smallest labelled half-edge leading to an unlabelled vertex.
    int from = -1;
    int best_id = 1 << 30;
    for (std::size_t h = 0; h < new_half_.size(); ++h) {
      const int id = new_half_[h];
      if (id < 0 || id >= best_id) continue;
      const int w = own_[static_cast<std::size_t>(partner_[h])];
      if (new_vertex_[static_cast<std::size_t>(w)] < 0) {
        best_id = id;
        from = static_cast<int>(h);
      }
    }
    if (from >= 0) {
      const int entry = partner_[static_cast<std::size_t>(from)];
      const int w = own_[static_cast<std::size_t>(entry)];
      std::array<int, 2> rest{};
      int k = 0;
      for (int h : g_.cyclic[static_cast<std::size_t>(w)]) {
        if (h != entry) rest[static_cast<std::size_t>(k++)] = h;
      }
      for (int flip = 0; flip < 2; ++flip) {
        const std::array<int, 3> slots = {entry, rest[static_cast<std::size_t>(flip)], rest[static_cast<std::size_t>(1 - flip)]};
        const int s = place(w, next, slots);
        search(next + 1, sign * s);
        unplace(w, slots);
      }
      return;
    }
    // New component: any unlabelled vertex, any order.
    for (int w = 0; w < g_.n_vertices; ++w) {
      if (new_vertex_[static_cast<std::size_t>(w)] >= 0) continue;
      std::array<int, 3> slots = g_.cyclic[static_cast<std::size_t>(w)];
      std::sort(slots.begin(), slots.end());
      do {
        const int s = place(w, next, slots);
        search(next + 1, sign * s);
        unplace(w, slots);
      } while (std::next_permutation(slots.begin(), slots.end()));
    }
  }

  void evaluate(int sign) {
    std::vector<std::array<int, 5>> rows;
    rows.reserve(g_.edges.size());
    for (std::size_t i = 0; i < g_.edges.size(); ++i) {
      int a = new_half_[static_cast<std::size_t>(g_.edges[i].first)];
      int b = new_half_[static_cast<std::size_t>(g_.edges[i].second)];
      Exponent d = group_.reduce(g_.decorations[i]);
      if (a > b) {
        std::swap(a, b);
        d = group_.bar(d);
      }
      rows.push_back({a, b, d[0], d[1], d[2]});
    }
    std::sort(rows.begin(), rows.end());
    GraphKey key;
    key.reserve(1 + 5 * rows.size());
    key.push_back(g_.n_vertices);
    for (const auto& r : rows) key.insert(key.end(), r.begin(), r.end());
    const int bit = sign > 0 ? 1 : 2;
    if (best_.empty() || key < best_) {
      best_ = std::move(key);
      best_signs_ = bit;
    } else if (key == best_) {
      best_signs_ |= bit;
    }
  }

  const MonomialGraph& g_;
  const GroupSpec& group_;
  std::vector<int> own_;
  std::vector<int> partner_;
  std::vector<int> edge_of_;
  std::vector<int> new_vertex_;
  std::vector<int> new_half_;
  GraphKey best_;
  int best_signs_ = 0;
};

std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

void DecoratedGraph::validate() const {
  validate_structure(n_vertices, cyclic, edges);
  if (decorations.size() != edges.size()) throw InvalidInput("one decoration per edge required");
}

std::vector<int> DecoratedGraph::vertex_of() const { return owners(*this); }
bool DecoratedGraph::is_connected() const { return connected(*this); }
std::vector<int> MonomialGraph::vertex_of() const { return owners(*this); }
bool MonomialGraph::is_connected() const { return connected(*this); }

CanonicalForm canonical_form(const MonomialGraph& g, const GroupSpec& group) {
  validate_structure(g.n_vertices, g.cyclic, g.edges);
  if (g.decorations.size() != g.edges.size()) throw InvalidInput("one decoration per edge required");
  return Canonicalizer(g, group).run();
}

MonomialGraph graph_from_key(const GraphKey& key) {
  if (key.empty() || (key.size() - 1) % 5 != 0) throw InvalidInput("malformed graph key");
  MonomialGraph g;
  g.n_vertices = key[0];
  for (int v = 0; v < g.n_vertices; ++v) g.cyclic.push_back({3 * v, 3 * v + 1, 3 * v + 2});
  for (std::size_t i = 1; i < key.size(); i += 5) {
    g.edges.emplace_back(key[i], key[i + 1]);
    g.decorations.push_back(Exponent{key[i + 2], key[i + 3], key[i + 4]});
  }
  validate_structure(g.n_vertices, g.cyclic, g.edges);
  return g;
}

MonomialGraph to_monomial(const DecoratedGraph& g, const GroupSpec& group, Rational* coefficient) {
  g.validate();
  MonomialGraph m{g.n_vertices, g.cyclic, g.edges, {}};
  Rational c = 1;
  for (const auto& d : g.decorations) {
    const ring::LaurentPoly x = group.normalize(d);
    if (!x.is_monomial()) throw InvalidInput("decoration '" + d.to_string() + "' is not a monomial");
    const auto& [e, a] = *x.terms().begin();
    m.decorations.push_back(e);
    c *= a;
  }
  if (coefficient != nullptr) *coefficient = c;
  return m;
}

DecoratedGraph to_decorated(const MonomialGraph& g, const GroupSpec& group, const Rational& coefficient) {
  DecoratedGraph d{g.n_vertices, g.cyclic, g.edges, {}};
  for (std::size_t i = 0; i < g.decorations.size(); ++i) {
    const Rational c = i == 0 ? coefficient : Rational(1);
    d.decorations.push_back(ring::LaurentPoly::monomial(group.arity(), group.reduce(g.decorations[i]), c));
  }
  return d;
}

std::vector<std::pair<Rational, MonomialGraph>> expand(const DecoratedGraph& g, const GroupSpec& group) {
  g.validate();
  std::vector<std::pair<Rational, MonomialGraph>> out;
  out.emplace_back(Rational(1), MonomialGraph{g.n_vertices, g.cyclic, g.edges, {}});
  for (const auto& d : g.decorations) {
    const ring::LaurentPoly x = group.normalize(d);
    std::vector<std::pair<Rational, MonomialGraph>> next;
    for (const auto& [c, m] : out) {
      for (const auto& [e, a] : x.terms()) {
        MonomialGraph mm = m;
        mm.decorations.push_back(e);
        next.emplace_back(c * a, std::move(mm));
      }
    }
    out = std::move(next);
  }
  return out;
}

AutomorphismCounts automorphism_counts(const MonomialGraph& g) {
  validate_structure(g.n_vertices, g.cyclic, g.edges);
  const int n = g.n_vertices;
  const auto partner = partners(g);
  static const std::array<std::array<int, 3>, 6> kPerms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  AutomorphismCounts out;
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<int> choice(static_cast<std::size_t>(n), 0);
  std::vector<int> phi(static_cast<std::size_t>(3 * n));
  do {
    std::uint64_t found = 0;
    std::fill(choice.begin(), choice.end(), 0);
    while (true) {
      for (int v = 0; v < n; ++v) {
        const auto& perm = kPerms[static_cast<std::size_t>(choice[static_cast<std::size_t>(v)])];
        for (int i = 0; i < 3; ++i) {
          phi[static_cast<std::size_t>(g.cyclic[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)])] =
              g.cyclic[static_cast<std::size_t>(sigma[static_cast<std::size_t>(v)])][static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
        }
      }
      bool ok = true;
      for (const auto& [a, b] : g.edges) {
        if (partner[static_cast<std::size_t>(phi[static_cast<std::size_t>(a)])] != phi[static_cast<std::size_t>(b)]) {
          ok = false;
          break;
        }
      }
      if (ok) ++found;
      int v = 0;
      while (v < n && choice[static_cast<std::size_t>(v)] == 5) choice[static_cast<std::size_t>(v++)] = 0;
      if (v == n) break;
      ++choice[static_cast<std::size_t>(v)];
    }
    out.total += found;
    if (found > 0) ++out.vertex_part;
    if (std::is_sorted(sigma.begin(), sigma.end())) out.edge_fixing = found;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

std::uint64_t labeling_count(const MonomialGraph& g) {
  if (g.n_vertices % 2 != 0 || g.n_vertices == 0) throw InvalidInput("labeling count needs 2n > 0 vertices");
  const int n = g.n_vertices / 2;
  const std::uint64_t top = (std::uint64_t{1} << (3 * n)) * factorial(2 * n) * factorial(3 * n);
  const std::uint64_t aut = automorphism_counts(g).total;
  if (aut == 0 || top % aut != 0) throw InvalidInput("automorphism count does not divide 2^{3n}(2n)!(3n)!");
  return top / aut;
}

std::vector<MonomialGraph> trivalent_skeletons(int n_vertices, bool connected_only) {
  if (n_vertices < 0 || n_vertices % 2 != 0) throw InvalidInput("trivalent graphs need an even vertex count");
  const GroupSpec trivial = GroupSpec::trivial();
  const int halves = 3 * n_vertices;
  std::set<GraphKey> keys;
  MonomialGraph g;
  g.n_vertices = n_vertices;
  for (int v = 0; v < n_vertices; ++v) g.cyclic.push_back({3 * v, 3 * v + 1, 3 * v + 2});
  std::vector<bool> used(static_cast<std::size_t>(halves), false);
  // Perfect matchings: pair the smallest free half-edge with each later one.
  auto rec = [&](auto&& self) -> void {
    int a = 0;
    while (a < halves && used[static_cast<std::size_t>(a)]) ++a;
    if (a == halves) {
      if (!connected_only || g.is_connected()) keys.insert(canonical_form(g, trivial).key);
      return;
    }
    used[static_cast<std::size_t>(a)] = true;
    for (int b = a + 1; b < halves; ++b) {
      if (used[static_cast<std::size_t>(b)]) continue;
      used[static_cast<std::size_t>(b)] = true;
      g.edges.emplace_back(a, b);
      g.decorations.push_back(Exponent{});
      self(self);
      g.edges.pop_back();
      g.decorations.pop_back();
      used[static_cast<std::size_t>(b)] = false;
    }
    used[static_cast<std::size_t>(a)] = false;
  };
  rec(rec);
  std::vector<MonomialGraph> out;
  for (const auto& k : keys) out.push_back(graph_from_key(k));
  return out;
}

MonomialGraph theta_graph() {
  return MonomialGraph{2, {{0, 1, 2}, {3, 4, 5}}, {{0, 3}, {1, 4}, {2, 5}}, {Exponent{}, Exponent{}, Exponent{}}};
}

MonomialGraph dumbbell_graph() {
  return MonomialGraph{2, {{0, 1, 2}, {3, 4, 5}}, {{0, 1}, {2, 3}, {4, 5}}, {Exponent{}, Exponent{}, Exponent{}}};
}

std::string key_to_string(const GraphKey& key) {
  std::ostringstream out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i > 0) out << (i % 5 == 1 ? ';' : ',');
    out << key[i];
  }
  return out.str();
}

}  // namespace zpi::diagrams
