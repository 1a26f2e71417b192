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
#include <optional>
#include <string>
#include <vector>

#include "zpi/diagrams/quotient.hpp"

namespace zpi::casson {

using ring::LaurentPoly;
using ring::Rational;

/// Planar diagram code. Edges are labelled 1..2c in the order of the knot's
/// orientation; crossing (i, j, k, l) lists the four edges counterclockwise
/// starting from the incoming under-edge i, so k = i + 1 and the over-edges
/// are j and l. Signs are optional and checked against the code when given.
struct KnotDiagram {
  std::vector<std::array<int, 4>> crossings;
  std::vector<int> signs;

  /// Throws InvalidInput unless the code describes a single oriented curve.
  void validate() const;
  /// Right-handed crossings are +1.
  std::vector<int> crossing_signs() const;
  int writhe() const;
};

struct SurgeryPresentation {
  KnotDiagram knot;
  long n = 1;  // surgery coefficient 1/n
};

KnotDiagram unknot();
/// Three-crossing right-handed trefoil, and a four-crossing diagram of the
/// same knot with an added kink.
KnotDiagram trefoil();
KnotDiagram trefoil_with_kink();
KnotDiagram figure_eight();

/// Determinant of a square matrix over Z[t, t^-1] by fraction-free
/// elimination.
LaurentPoly determinant(std::vector<std::vector<LaurentPoly>> m);

/// Alexander polynomial from the Fox derivatives of the Wirtinger relations,
/// normalized so that Delta(t) = Delta(1/t) and Delta(1) = 1.
LaurentPoly alexander_polynomial(const KnotDiagram& k);

/// Second derivative at t = 1.
Rational second_derivative_at_one(const LaurentPoly& p);

/// Casson invariant (n / 2) Delta''(1) of 1/n surgery on the knot.
Rational casson_surgery(const SurgeryPresentation& s);

/// The 1-decorated theta in its blackboard orientation: both vertices read
/// counterclockwise in the plane, edges drawn left, middle, right.
diagrams::MonomialGraph blackboard_theta();

/// (lambda / 2) [Theta] in a degree-2 basis.
diagrams::GraphSpaceBasis::Coordinates lambda_pi(const Rational& lambda, const diagrams::GraphSpaceBasis& basis);

}  // namespace zpi::casson
