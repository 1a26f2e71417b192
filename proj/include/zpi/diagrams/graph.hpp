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
#include <string>
#include <utility>
#include <vector>

#include "zpi/diagrams/group.hpp"
#include "zpi/ring/rational.hpp"

namespace zpi::diagrams {

using ring::Rational;

/// Vertex-oriented, edge-oriented trivalent graph with group ring decorations.
/// Half-edges are numbered 0 .. 3 * n_vertices - 1; cyclic[v] lists the three
/// half-edges at v in their cyclic order; edges[i] is (tail, head).
struct DecoratedGraph {
  int n_vertices = 0;
  std::vector<std::array<int, 3>> cyclic;
  std::vector<std::pair<int, int>> edges;
  std::vector<ring::LaurentPoly> decorations;

  /// Throws InvalidInput unless the structure is a trivalent graph with an
  /// even number of vertices and one decoration per edge.
  void validate() const;
  /// Vertex owning each half-edge.
  std::vector<int> vertex_of() const;
  bool is_connected() const;
};

/// A graph whose decorations are single group elements.
struct MonomialGraph {
  int n_vertices = 0;
  std::vector<std::array<int, 3>> cyclic;
  std::vector<std::pair<int, int>> edges;
  std::vector<Exponent> decorations;

  std::vector<int> vertex_of() const;
  bool is_connected() const;
};

/// Canonical code: vertex count, then sorted (a, b, e0, e1, e2) per edge in
/// canonical half-edge numbering with a < b.
using GraphKey = std::vector<int>;

struct CanonicalForm {
  GraphKey key;
  /// The input equals sign times the canonical representative.
  int sign = 1;
  /// The graph is equal to its own negative, hence zero.
  bool vanishes = false;
};

/// Canonical form up to relabelling vertices and half-edges, rotating and
/// reordering cyclic orders (odd reorderings contribute -1) and reversing
/// edges (barring decorations, no sign).
CanonicalForm canonical_form(const MonomialGraph& g, const GroupSpec& group);

/// Canonical representative encoded by a key (vertex v owns half-edges
/// 3v, 3v+1, 3v+2 in that cyclic order).
MonomialGraph graph_from_key(const GraphKey& key);

MonomialGraph to_monomial(const DecoratedGraph& g, const GroupSpec& group, Rational* coefficient);
DecoratedGraph to_decorated(const MonomialGraph& g, const GroupSpec& group, const Rational& coefficient = 1);

/// Multilinear expansion of group ring decorations into monomial graphs.
std::vector<std::pair<Rational, MonomialGraph>> expand(const DecoratedGraph& g, const GroupSpec& group);

struct AutomorphismCounts {
  std::uint64_t total = 0;     // |Aut|
  std::uint64_t edge_fixing = 0;  // |Aut_e|: automorphisms fixing every vertex
  std::uint64_t vertex_part = 0;  // |Aut_v|: vertex permutations that extend
};

/// Brute force over vertex permutations and half-edge bijections at each
/// vertex; orientations and decorations ignored.
AutomorphismCounts automorphism_counts(const MonomialGraph& g);

/// 2^{3n} (2n)! (3n)! / |Aut| for a graph with 2n vertices. Throws if the
/// division is not exact.
std::uint64_t labeling_count(const MonomialGraph& g);

/// One representative per isomorphism class of trivalent multigraphs on
/// n_vertices vertices (identity decorations), ordered by key.
std::vector<MonomialGraph> trivalent_skeletons(int n_vertices, bool connected_only);

/// The standard theta with identity decorations: vertex 0 = (0, 1, 2),
/// vertex 1 = (3, 4, 5), edges 0->3, 1->4, 2->5.
MonomialGraph theta_graph();
/// Loop at each vertex joined by a bridge.
MonomialGraph dumbbell_graph();

std::string key_to_string(const GraphKey& key);

}  // namespace zpi::diagrams
