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
#include <vector>

#include "zpi/ring/laurent_poly.hpp"

namespace zpi::linking {

using Point = std::array<long, 3>;
/// Closed lattice path: consecutive points (cyclically) differ by a unit step.
using Loop = std::vector<Point>;

/// Framed link in the torus R^3 / (period Z)^3. Loops are given by lifts in
/// R^3; the coordinates supplied are the lifts used by lk_equivariant.
struct LatticeLink {
  std::vector<Loop> loops;
  std::vector<long> framings;
  long period = 1;

  /// Unit steps, matching framings, disjointness in the torus.
  void validate() const;
};

/// Holonomy t^n of a lattice path (not necessarily closed), where n_i counts
/// signed crossings of the planes x_i = period * k - 1/2.
ring::LaurentPoly holonomy_of_path(const std::vector<Point>& path, long period = 1);

/// Sum of the steps of a loop including the closing step (zero iff it
/// closes in R^3). A loop that is closed in R^3 always closes that way.
Point displacement(const Loop& loop, long period = 1);

/// Gauss linking number of two disjoint closed polygons in R^3, counted
/// exactly as signed crossings of `a` through a cone over `b`. The cone apex
/// is rational and re-drawn when a crossing is not transversal.
long lk_integer(const Loop& a, const Loop& b);

/// sum_z lk(c_i, c_j - period * z) t^z over the translates z whose bounding
/// boxes meet. Translating c_j by period * v multiplies the result by t^v.
ring::LaurentPoly lk_equivariant(const LatticeLink& link, std::size_t i, std::size_t j);

/// Off-diagonal entries lk_equivariant, diagonal entries the framings.
std::vector<std::vector<ring::LaurentPoly>> linking_matrix(const LatticeLink& link);

bool is_pi_algebraically_split(const LatticeLink& link);

/// Translates every loop by a period vector so that its lexicographically
/// least vertex lies in [0, period)^3.
LatticeLink normalize_lifts(const LatticeLink& link);

/// Loop translated by v.
Loop translated(const Loop& loop, const Point& v);

}  // namespace zpi::linking
