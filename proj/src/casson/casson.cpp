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

#include "zpi/casson/casson.hpp"

#include <numeric>

#include "zpi/error.hpp"

namespace zpi::casson {

namespace {

LaurentPoly t_pow(int e, const Rational& c = 1) { return LaurentPoly::monomial(1, {e, 0, 0}, c); }

int find(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
  }
  return x;
}

}  // namespace

void KnotDiagram::validate() const {
  const int edges = 2 * static_cast<int>(crossings.size());
  std::vector<int> seen(static_cast<std::size_t>(edges) + 1, 0);
  auto next = [edges](int e) { return e % edges + 1; };
  for (std::size_t c = 0; c < crossings.size(); ++c) {
    for (int e : crossings[c]) {
      if (e < 1 || e > edges) {
        throw InvalidInput("crossing " + std::to_string(c) + ": edge label " + std::to_string(e) + " outside 1.." +
                           std::to_string(edges));
      }
      ++seen[static_cast<std::size_t>(e)];
    }
    const auto [i, j, k, l] = crossings[c];
    if (k != next(i)) throw InvalidInput("crossing " + std::to_string(c) + ": under-strand does not continue");
    if (j != next(l) && l != next(j)) {
      throw InvalidInput("crossing " + std::to_string(c) + ": over-strand edges are not consecutive");
    }
  }
  for (int e = 1; e <= edges; ++e) {
    if (seen[static_cast<std::size_t>(e)] != 2) {
      throw InvalidInput("edge " + std::to_string(e) + " appears " + std::to_string(seen[static_cast<std::size_t>(e)]) +
                         " times");
    }
  }
  if (!signs.empty()) {
    if (signs.size() != crossings.size()) throw InvalidInput("one sign per crossing required");
    const auto derived = crossing_signs();
    for (std::size_t c = 0; c < signs.size(); ++c) {
      if (signs[c] != derived[c]) {
        throw InvalidInput("crossing " + std::to_string(c) + ": sign " + std::to_string(signs[c]) +
                           " disagrees with the diagram");
      }
    }
  }
}

std::vector<int> KnotDiagram::crossing_signs() const {
  const int edges = 2 * static_cast<int>(crossings.size());
  std::vector<int> out;
  for (const auto& [i, j, k, l] : crossings) {
    // The over-strand runs l -> j when j follows l.
    const bool l_to_j = j == l % edges + 1;
    // Degenerate two-edge diagrams: both readings agree, use the labels.
    out.push_back((edges == 2 ? j - l == 1 || l - j > 1 : l_to_j) ? 1 : -1);
  }
  return out;
}

int KnotDiagram::writhe() const {
  const auto s = crossing_signs();
  return std::accumulate(s.begin(), s.end(), 0);
}

KnotDiagram unknot() { return {}; }
KnotDiagram trefoil() { return {{{1, 5, 2, 4}, {3, 1, 4, 6}, {5, 3, 6, 2}}, {}}; }
KnotDiagram trefoil_with_kink() { return {{{1, 5, 2, 4}, {3, 1, 4, 8}, {5, 3, 6, 2}, {6, 8, 7, 7}}, {}}; }
KnotDiagram figure_eight() { return {{{4, 2, 5, 1}, {8, 6, 1, 5}, {6, 3, 7, 4}, {2, 7, 3, 8}}, {}}; }

LaurentPoly determinant(std::vector<std::vector<LaurentPoly>> m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw InvalidInput("determinant of a non-square matrix");
  }
  if (n == 0) return t_pow(0);
  int sign = 1;
  LaurentPoly prev = t_pow(0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return LaurentPoly(1);
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const LaurentPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto q = ring::divide_exact(num, prev);
        if (!q) throw Degenerate("fraction-free elimination produced an inexact quotient");
        m[i][j] = std::move(*q);
      }
      m[i][k] = LaurentPoly(1);
    }
    prev = m[k][k];
  }
  return sign < 0 ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

LaurentPoly alexander_polynomial(const KnotDiagram& k) {
  k.validate();
  const std::size_t c = k.crossings.size();
  if (c == 0) return t_pow(0);
  const int edges = static_cast<int>(2 * c);
  // Wirtinger arcs: edges joined where they pass over a crossing.
  std::vector<int> parent(static_cast<std::size_t>(edges) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& x : k.crossings) parent[static_cast<std::size_t>(find(parent, x[1]))] = find(parent, x[3]);
  std::map<int, std::size_t> arc;
  for (int e = 1; e <= edges; ++e) arc.emplace(find(parent, e), arc.size());
  if (arc.size() != c) throw InvalidInput("diagram has " + std::to_string(arc.size()) + " arcs for " + std::to_string(c) + " crossings");
  auto arc_of = [&](int e) { return arc.at(find(parent, e)); };

  // Relation x_out = x_o^s x_in x_o^-s, abelianized Fox derivatives.
  const auto signs = k.crossing_signs();
  std::vector<std::vector<LaurentPoly>> rows(c, std::vector<LaurentPoly>(c, LaurentPoly(1)));
  for (std::size_t r = 0; r < c; ++r) {
    const auto& x = k.crossings[r];
    const std::size_t in = arc_of(x[0]);
    const std::size_t out = arc_of(x[2]);
    const std::size_t over = arc_of(x[1]);
    const int s = signs[r];
    rows[r][over] += s > 0 ? t_pow(0) - t_pow(1) : t_pow(0) - t_pow(-1);
    rows[r][in] += s > 0 ? t_pow(1) : t_pow(-1);
    rows[r][out] -= t_pow(0);
  }
  std::vector<std::vector<LaurentPoly>> minor;
  for (std::size_t r = 1; r < c; ++r) minor.emplace_back(rows[r].begin() + 1, rows[r].end());
  LaurentPoly delta = determinant(minor);
  if (delta.is_zero()) throw InvalidInput("diagram gives a vanishing Alexander polynomial");
  const int lo = delta.min_exponents()[0];
  const int hi = delta.max_exponents()[0];
  if ((lo + hi) % 2 != 0) throw InvalidInput("Alexander polynomial of odd span " + delta.to_string());
  delta = delta.shifted({-(lo + hi) / 2, 0, 0});
  const Rational at_one = delta.augmentation();
  if (at_one != 1 && at_one != -1) throw InvalidInput("Alexander polynomial with Delta(1) = " + at_one.get_str());
  if (at_one < 0) delta = -delta;
  if (delta != delta.involute()) throw InvalidInput("Alexander polynomial is not symmetric: " + delta.to_string());
  return delta;
}

Rational second_derivative_at_one(const LaurentPoly& p) {
  Rational sum = 0;
  for (const auto& [e, c] : p.terms()) sum += c * Rational(static_cast<long>(e[0]) * (e[0] - 1));
  return sum;
}

Rational casson_surgery(const SurgeryPresentation& s) {
  if (s.n == 0) throw InvalidInput("surgery coefficient 1/n needs n != 0");
  Rational lambda = Rational(s.n) * second_derivative_at_one(alexander_polynomial(s.knot)) / 2;
  lambda.canonicalize();
  if (lambda.get_den() != 1) throw Degenerate("Casson invariant " + lambda.get_str() + " is not an integer");
  return lambda;
}

diagrams::MonomialGraph blackboard_theta() {
  diagrams::MonomialGraph g;
  g.n_vertices = 2;
  // Top vertex: left, middle, right; bottom vertex counterclockwise: right,
  // middle, left.
  g.cyclic = {{0, 1, 2}, {3, 4, 5}};
  g.edges = {{0, 5}, {1, 4}, {2, 3}};
  g.decorations.assign(3, ring::Exponent{});
  return g;
}

diagrams::GraphSpaceBasis::Coordinates lambda_pi(const Rational& lambda, const diagrams::GraphSpaceBasis& basis) {
  if (basis.options().degree != 2) {
    throw InvalidInput("lambda_pi needs a degree-2 basis, got degree " + std::to_string(basis.options().degree));
  }
  auto out = basis.reduce(blackboard_theta());
  for (auto& x : out) x *= lambda / 2;
  return out;
}

}  // namespace zpi::casson
