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

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "zpi/diagrams/quotient.hpp"

namespace zpi::surgery {

using diagrams::GraphSpaceBasis;
using diagrams::GroupSpec;
using ring::LaurentPoly;
using ring::Rational;
using Coordinates = GraphSpaceBasis::Coordinates;

/// Leaf of the Y-graph at a vertex: (vertex, slot) with slot in 0..2, the
/// position of the half-edge in the vertex's cyclic order.
using Leaf = std::pair<int, int>;
using LeafPair = std::pair<Leaf, Leaf>;
using LinkingTable = std::map<LeafPair, LaurentPoly>;

struct YLinkSurgeryData {
  diagrams::DecoratedGraph target;
  GroupSpec group;
  /// Equivariant linking numbers of ordered leaf pairs; absent means 0.
  LinkingTable lk_hat;
  /// Normalized triple products of the three 2-cycles at each vertex.
  std::vector<Rational> triple;

  int n_vertices() const { return target.n_vertices; }
  const LaurentPoly* lk(const Leaf& a, const Leaf& b) const;
  /// lk_hat[(x, y)] = bar(lk_hat[(y, x)]) for all pairs.
  bool is_bar_symmetric() const;
};

/// Hopf-paired leaves along every edge of a monomial graph: the edge from
/// slot a at j to slot b at k with decoration alpha gives lk (j,a),(k,b) =
/// alpha and the mirrored entry bar(alpha). Throws InvalidInput on a
/// decoration that is not a single group element.
YLinkSurgeryData realize_ylink(const diagrams::DecoratedGraph& gamma, const GroupSpec& group);
YLinkSurgeryData realize_ylink(const diagrams::MonomialGraph& gamma, const GroupSpec& group);

/// Sum over the 3 x 3 leaf pairs of an ordered vertex pair.
LaurentPoly edge_factor(const YLinkSurgeryData& data, int j, int k);

/// Edge-labelled, edge-oriented trivalent graph on vertices 0..2n-1. Edge i
/// owns half-edges 2i (tail) and 2i+1 (head); each vertex is oriented by the
/// ascending order of its half-edges.
struct LabeledGraphH {
  int n_vertices = 0;
  std::vector<std::pair<int, int>> edges;

  std::array<int, 3> halves_at(int v) const;
  /// The underlying graph with the given edge decorations.
  diagrams::DecoratedGraph with_decorations(std::vector<LaurentPoly> decorations) const;
};

/// Every H on n_vertices vertices (loops unordered, parallel edges allowed),
/// in lexicographic order of the edge list. Throws ResourceLimit above `cap`.
std::vector<LabeledGraphH> enumerate_graphs_h(int n_vertices, std::size_t cap = 5'000'000);

/// Leaf linking numbers computed through a chain-level model: each leaf c
/// bounds a disk D in a complex with boundary D -> c, and the values are
/// <g(c), c'> (sign +1) or <g*(D), D'> (sign -1) over an intersection table
/// holding the given linking numbers. Both tables are built eagerly.
struct LeafModel {
  LinkingTable forward;
  LinkingTable adjoint;

  static LeafModel build(const YLinkSurgeryData& data);
};

struct SHResult {
  Coordinates value;
  /// Slot assignments with a nonzero linking product.
  std::size_t nonzero_assignments = 0;
};

/// S_H(sigma(1), ..., sigma(2n)): vertex i of H sits at vertex sigma[i] of the
/// Y-link. Sum over slot bijections at every vertex of the Levi-Civita signs
/// times the triple products times the product of leaf linking numbers, each
/// term pushed through the basis as a decorated copy of H. `tables[i]` is
/// the linking table for edge label i (defaults to data.lk_hat).
SHResult match_SH(const LabeledGraphH& h, const std::vector<int>& sigma, const YLinkSurgeryData& data,
                  const GraphSpaceBasis& basis, const std::vector<const LinkingTable*>& tables = {});

struct EvalOptions {
  /// Per edge label: +1 evaluates with g, -1 with g*. Empty means the raw
  /// linking table.
  std::vector<int> signs;
  unsigned jobs = 1;
  /// Bound on the number of (H, sigma) pairs visited.
  std::uint64_t max_pairs = 50'000'000;
  /// Wall-clock bound in seconds; 0 disables it.
  double time_budget = 0;
};

struct EvalReport {
  Coordinates value;
  /// Sum over H and sigma before the prefactor.
  Coordinates raw;
  std::size_t graphs_h = 0;
  std::uint64_t pairs = 0;
  /// (H, sigma) pairs with a nonzero contribution.
  std::uint64_t matched_pairs = 0;
  std::uint64_t nonzero_terms = 0;
};

/// Z_{2n}([N, G]) by literal enumeration of all H and sigma, with the exact
/// prefactor. Throws ResourceLimit when a bound in `options` is exceeded.
EvalReport eval_Z_bracket(const YLinkSurgeryData& data, const GraphSpaceBasis& basis, const EvalOptions& options = {});

/// Z-tilde: sum of eval_Z_bracket over all 2^{3n} sign vectors. Sign vectors
/// that select identical linking tables share one enumeration.
Coordinates eval_Ztilde_bracket(const YLinkSurgeryData& data, const GraphSpaceBasis& basis,
                                const EvalOptions& options = {});

}  // namespace zpi::surgery
