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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zpi/diagrams/graph.hpp"

namespace zpi::diagrams {

using MonomialCombination = std::vector<std::pair<Rational, MonomialGraph>>;
using GraphCombination = std::vector<std::pair<Rational, DecoratedGraph>>;

enum class RelationKind { AS, IHX, OR, Holonomy };
std::string to_string(RelationKind kind);

struct Relation {
  RelationKind kind;
  MonomialCombination terms;
};

/// Holonomy relation convention. Default: at vertex v, outgoing decorations
/// become g^{-1} a and incoming ones a g. Mirrored swaps the two.
enum class HolonomyConvention { Default, Mirrored };

struct BasisOptions {
  int degree = 2;  // number of vertices
  GroupSpec group = GroupSpec::trivial();
  int support = 0;
  bool connected_only = false;
  HolonomyConvention holonomy = HolonomyConvention::Default;
  std::size_t max_generators = 250000;
  /// When set, the generator (column) order is shuffled with this seed.
  std::optional<std::uint64_t> shuffle_seed;
};

struct RelationDiagnostics {
  std::size_t generators = 0;
  std::size_t vanishing_generators = 0;
  std::map<RelationKind, std::size_t> emitted;
  /// Rows that are already zero after canonicalisation (AS and OR always are).
  std::map<RelationKind, std::size_t> trivial;
  /// Holonomy relations whose relabelled decorations leave the support box.
  std::size_t holonomy_skipped = 0;
};

/// Canonical monomial generators of the free space (graphs equal to their
/// own negative are dropped and counted).
std::vector<GraphKey> monomial_generators(const BasisOptions& options, RelationDiagnostics* diagnostics = nullptr);

/// AS, IHX, OR and holonomy relations for every generator within support.
std::vector<Relation> relation_generators(const BasisOptions& options, RelationDiagnostics* diagnostics = nullptr);

/// The local relations emitted for one generator (exposed for tests).
std::vector<Relation> relations_for(const MonomialGraph& g, const GroupSpec& group, int support,
                                    std::size_t* holonomy_skipped = nullptr,
                                    HolonomyConvention convention = HolonomyConvention::Default);

/// Sparse rational row: (column, coefficient) sorted by column, no zeros.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

/// Quotient of the free space on canonical monomial generators by the span
/// of the relations, as an echelon form over Q. Basis elements are the
/// non-pivot generators.
class GraphSpaceBasis {
 public:
  using Coordinates = std::vector<Rational>;

  static GraphSpaceBasis build(const BasisOptions& options);
  /// Reassembles a basis from stored generators and pivot rows.
  static GraphSpaceBasis from_parts(const BasisOptions& options, std::vector<GraphKey> generators,
                                    std::map<std::size_t, SparseRow> pivots, RelationDiagnostics diagnostics);

  const BasisOptions& options() const { return options_; }
  const GroupSpec& group() const { return options_.group; }
  std::size_t dimension() const { return basis_columns_.size(); }
  const std::vector<GraphKey>& generators() const { return generators_; }
  const std::map<std::size_t, SparseRow>& pivots() const { return pivots_; }
  const RelationDiagnostics& diagnostics() const { return diagnostics_; }
  /// Keys of the basis elements, in coordinate order.
  std::vector<GraphKey> basis_keys() const;
  std::vector<DecoratedGraph> basis_graphs() const;

  std::optional<std::size_t> column_of(const GraphKey& key) const;

  /// Coordinates of a combination of canonical keys with coefficients.
  Coordinates reduce_keys(const std::vector<std::pair<Rational, GraphKey>>& x) const;
  Coordinates reduce(const MonomialCombination& x) const;
  Coordinates reduce(const GraphCombination& x) const;
  Coordinates reduce(const DecoratedGraph& g) const;
  Coordinates reduce(const MonomialGraph& g) const;
  Coordinates zero() const { return Coordinates(dimension(), Rational(0)); }

  /// Human-readable combination of basis element keys.
  std::string describe(const Coordinates& c) const;

 private:
  void index();
  void check_graph(const MonomialGraph& g) const;

  BasisOptions options_;
  std::vector<GraphKey> generators_;
  std::map<GraphKey, std::size_t> column_;
  std::map<std::size_t, SparseRow> pivots_;
  std::vector<std::size_t> basis_columns_;
  std::map<std::size_t, std::size_t> coordinate_of_;
  RelationDiagnostics diagnostics_;
};

bool is_zero(const GraphSpaceBasis::Coordinates& c);

}  // namespace zpi::diagrams
