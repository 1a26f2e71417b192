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
#include <map>
#include <string>
#include <vector>

#include "zpi/complex/chain_complex.hpp"
#include "zpi/ring/field_element.hpp"

namespace zpi::linking {

using ring::Exponent;
using ring::FieldElement;
using ring::LaurentPoly;
using ring::Rational;

/// Element of Lambda^{(x)3}: monomial triples with rational coefficients.
using Tensor3 = std::map<std::array<Exponent, 3>, Rational>;

struct PairRecord {
  std::string first;
  std::string second;
  LaurentPoly weight;
};

struct TripleRecord {
  std::array<std::string, 3> cells;
  Tensor3 weight;
};

/// Transversal intersections of based cells with holonomy weights.
struct IntersectionTable {
  int arity = 3;
  std::vector<PairRecord> pairs;
  std::vector<TripleRecord> triples;

  /// Whether every pair record (a, b, w) is matched by total weight bar(w)
  /// on (b, a).
  bool is_bar_symmetric() const;
};

/// Linear combination of cells.
using Chain = std::map<std::string, FieldElement>;
using LaurentChain = std::map<std::string, LaurentPoly>;

/// Bilinear extension of the pair records. Throws InvalidInput on a cell
/// label absent from the table.
FieldElement pairing(const IntersectionTable& table, const Chain& c1, const Chain& c2);

/// Trilinear extension of the triple records; coefficient i multiplies the
/// i-th tensor factor.
Tensor3 pairing(const IntersectionTable& table, const LaurentChain& c1, const LaurentChain& c2,
                const LaurentChain& c3);

/// Image of a generator under g (or under g* for an adjoint propagator).
Chain apply_propagator(const complex::BasedChainComplex& c, const complex::Propagator& g,
                       const std::string& generator);

/// <g(c), c'> through the table, after checking that the boundary of g(c)
/// is c (with the adjoint boundary when g is adjoint). Throws
/// PreconditionFailed otherwise.
FieldElement lkhat_from_propagator(const IntersectionTable& table, const complex::BasedChainComplex& c,
                                   const complex::Propagator& g, const std::string& cycle,
                                   const std::string& other);

/// Divides out the monomial content (lex-least exponent moved to zero), the
/// residual ambiguity of equivariant linking numbers.
LaurentPoly normalize_monomial(const LaurentPoly& x);

std::string to_string(const Tensor3& t);

}  // namespace zpi::linking
