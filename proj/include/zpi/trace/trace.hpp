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

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zpi/complex/chain_complex.hpp"
#include "zpi/diagrams/quotient.hpp"

namespace zpi::trace {

using diagrams::GraphSpaceBasis;
using ring::LaurentPoly;
using ring::Rational;
using Coordinates = GraphSpaceBasis::Coordinates;

/// State of one edge of a C-graph. A separated edge carries the critical
/// points attached to its input and output white vertices, named by basis
/// labels of the complex for that edge label.
struct EdgeState {
  enum class Kind { Compact, Separated };
  Kind kind = Kind::Compact;
  std::string input;   // p
  std::string output;  // q

  static EdgeState compact() { return {}; }
  static EdgeState separated(std::string p, std::string q) {
    return {Kind::Separated, std::move(p), std::move(q)};
  }
};

/// Trivalent graph with labelled edges (indices into base.edges) and one
/// state per edge. Base decorations multiply into the counts (identity by
/// default).
struct CGraph {
  diagrams::MonomialGraph base;
  std::vector<EdgeState> states;

  void validate() const;
  bool is_primitive() const { return base.is_connected(); }
  /// Vertex sets of the connected components, ordered by smallest vertex.
  std::vector<std::vector<int>> components() const;
};

/// A pure tensor u_1 (x) ... (x) u_m of per-edge group ring factors, times a
/// rational scale. Sums are lists of these.
struct ModuliCount {
  std::vector<LaurentPoly> edge_factors;
  Rational scale = 1;
};

/// Complex and propagator used for one edge label.
struct EdgeComplex {
  complex::BasedChainComplex complex;
  complex::Propagator propagator;
};

struct PropagatorSet {
  std::map<std::size_t, EdgeComplex> by_label;
  /// Used for labels without their own entry.
  std::optional<EdgeComplex> fallback;

  const EdgeComplex* find(std::size_t label) const;
  /// Same complexes, every propagator replaced by its adjoint.
  PropagatorSet adjoint() const;
};

using Term = std::pair<CGraph, ModuliCount>;

/// Per-edge degrees: 1 for compact edges, ind p - ind q for separated ones
/// (indices read in the reversed grading for an adjoint propagator).
std::vector<int> degree_vector(const CGraph& g, const PropagatorSet& props);

/// The coefficient g_{qp} of p in g(q) for a separated edge.
ring::FieldElement propagator_entry(const PropagatorSet& props, std::size_t label, const EdgeState& state);

/// Coefficient field value as a group ring element of `group`: Laurent
/// rational functions map to themselves, cyclotomic numbers to their
/// canonical representative in Q[Z/p].
LaurentPoly to_group_ring(const ring::FieldElement& x, const diagrams::GroupSpec& group);

/// Tr_g: each separated edge's decoration is multiplied by -g_{qp}, white
/// vertices are merged, and the result is reduced in the basis.
Coordinates trace_contract(const std::vector<Term>& terms, const PropagatorSet& props, const GraphSpaceBasis& basis);

/// z_{2n}: trace of the sum over primitive C-graphs of degree (1, ..., 1).
/// Throws InvalidInput on any other term.
Coordinates assemble_z(const std::vector<Term>& terms, const PropagatorSet& props, const GraphSpaceBasis& basis);

/// Count data for one connected component of a C-graph.
struct ComponentCount {
  /// I, a sum of pure tensors over the component's edges (ascending label).
  std::vector<ModuliCount> count;
  /// Local (anomaly) count, used only when the component has no separated edge.
  Rational local = 0;
};

struct FullTerm {
  CGraph graph;
  /// One entry per component, in the order of CGraph::components().
  std::vector<ComponentCount> components;
};

/// sign X and the coefficients a_Gamma realizing the opaque constant mu as
/// a combination of connected graphs, keyed by canonical skeleton key.
struct CorrectionData {
  Rational sign_x = 0;
  std::map<diagrams::GraphKey, Rational> a_coeffs;
};

/// 1 / (2^{6n} (2n)! (3n)!) for a graph with 2n vertices.
Rational prefactor(int n_vertices);

/// Z-hat_{2n}: prefactor times the trace of the tensor products of the
/// corrected component counts (I - local + a sign X on all-compact
/// components). With zero correction this is Z_{2n}.
Coordinates assemble_Z(const std::vector<FullTerm>& terms, const PropagatorSet& props, const CorrectionData& correction,
                       const GraphSpaceBasis& basis);

/// Sum of an evaluator over all sign vectors in {+1,-1}^m, in a fixed order
/// (vector k has epsilon_i = -1 iff bit i of k is set). Evaluations may run
/// on `jobs` threads; the sum is always accumulated in order.
Coordinates sum_over_signs(int m, const std::function<Coordinates(const std::vector<int>&)>& evaluator,
                           unsigned jobs = 1);

Coordinates add(const Coordinates& a, const Coordinates& b);
Coordinates scale(const Rational& c, const Coordinates& a);

}  // namespace zpi::trace
