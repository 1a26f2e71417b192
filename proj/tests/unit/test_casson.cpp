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

#include <numeric>
#include <random>

#include "doctest.h"
#include "zpi/casson/casson.hpp"
#include "zpi/error.hpp"
#include "zpi/ring/field_element.hpp"

using namespace zpi::casson;
using zpi::diagrams::BasisOptions;
using zpi::diagrams::GraphSpaceBasis;
using zpi::diagrams::GroupSpec;

namespace {

LaurentPoly lp(const char* s) { return zpi::ring::parse_laurent(s, 1); }

LaurentPoly cofactor_det(const std::vector<std::vector<LaurentPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return lp("1");
  LaurentPoly sum = lp("0");
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<LaurentPoly>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<LaurentPoly> row;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c) row.push_back(m[r][j]);
      }
      sub.push_back(row);
    }
    const LaurentPoly term = m[0][c] * cofactor_det(sub);
    sum += c % 2 == 0 ? term : -term;
  }
  return sum;
}

// Unit multiple: a = +-t^k b.
bool associate(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  const int shift = b.min_exponents()[0] - a.min_exponents()[0];
  const LaurentPoly s = a.shifted({shift, 0, 0});
  return s == b || s == -b;
}

// Abelianized Fox derivative d/dx of a word in x = 1, y = 2 (negative for
// inverses), both generators sent to t. For a two-generator one-relator knot
// group this is the Alexander polynomial up to a unit.
LaurentPoly fox_x(const std::vector<int>& word) {
  LaurentPoly sum = lp("0");
  int prefix = 0;
  for (int letter : word) {
    if (letter == 1) sum += LaurentPoly::monomial(1, {prefix, 0, 0}, 1);
    if (letter == -1) sum -= LaurentPoly::monomial(1, {prefix - 1, 0, 0}, 1);
    prefix += letter > 0 ? 1 : -1;
  }
  return sum;
}

Rational q(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

// Closed 2-braid sigma_1^k, k odd: the (2, k) torus knot.
KnotDiagram torus_2k(int k) {
  const int edges = 2 * k;
  auto wrap = [edges](int e) { return ((e - 1) % edges + edges) % edges + 1; };
  KnotDiagram d;
  for (int r = 0; r < k; ++r) {
    const int i = 2 * r + 1;
    d.crossings.push_back({i, wrap(i + k), wrap(i + 1), wrap(i + k + 1)});
  }
  return d;
}

KnotDiagram mirror(const KnotDiagram& k) {
  KnotDiagram m;
  for (const auto& [i, j, kk, l] : k.crossings) m.crossings.push_back({i, l, kk, j});
  return m;
}

GraphSpaceBasis basis(int degree) {
  BasisOptions opt;
  opt.degree = degree;
  return GraphSpaceBasis::build(opt);
}

}  // namespace

TEST_CASE("fraction-free determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> co(-3, 3);
  std::uniform_int_distribution<int> ex(-2, 2);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
    std::vector<std::vector<LaurentPoly>> m(n, std::vector<LaurentPoly>(n, lp("0")));
    for (auto& row : m) {
      for (auto& x : row) {
        if (co(rng) == 0) continue;  // some zeros, to exercise pivoting
        x = LaurentPoly::monomial(1, {ex(rng), 0, 0}, co(rng)) + LaurentPoly::monomial(1, {ex(rng), 0, 0}, co(rng));
      }
    }
    CHECK(determinant(m) == cofactor_det(m));
  }
  CHECK(determinant({}) == lp("1"));
  CHECK(determinant({{lp("0"), lp("1")}, {lp("1"), lp("0")}}) == lp("-1"));
}

TEST_CASE("Alexander polynomials") {
  CHECK(alexander_polynomial(unknot()) == lp("1"));
  CHECK(alexander_polynomial(trefoil()) == lp("t-1+t^-1"));
  CHECK(alexander_polynomial(figure_eight()) == lp("-t+3-t^-1"));
  CHECK(alexander_polynomial(trefoil_with_kink()) == alexander_polynomial(trefoil()));
  CHECK(alexander_polynomial(mirror(trefoil())) == alexander_polynomial(trefoil()));
  CHECK(alexander_polynomial({{{1, 1, 2, 2}}, {}}) == lp("1"));  // a single kink

  // One-relator presentations of the knot groups, independent of the diagrams.
  CHECK(associate(fox_x({1, 2, 1, -2, -1, -2}), alexander_polynomial(trefoil())));
  CHECK(associate(fox_x({2, -1, 2, 1, -2, -1, 2, -1, -2, 1}), alexander_polynomial(figure_eight())));
}

TEST_CASE("torus knots T(2,k)") {
  for (int k = 3; k <= 11; k += 2) {
    CAPTURE(k);
    const KnotDiagram d = torus_2k(k);
    REQUIRE_NOTHROW(d.validate());
    const LaurentPoly delta = alexander_polynomial(d);
    // (t^k + 1) / (t + 1), centred.
    LaurentPoly want = lp("0");
    for (int e = 0; e < k; ++e) want += LaurentPoly::monomial(1, {e - (k - 1) / 2, 0, 0}, e % 2 == 0 ? 1 : -1);
    CHECK(delta == want);
    CHECK(delta == delta.involute());
    CHECK(delta.augmentation() == 1);
    CHECK(second_derivative_at_one(delta) == q(k * k - 1, 4));
    CHECK(std::abs(d.writhe()) == k);
    CHECK(mirror(d).writhe() == -d.writhe());
    for (long n : {-2L, 1L, 3L}) CHECK(casson_surgery({d, n}) == q(n * (k * k - 1), 8));
  }
}

TEST_CASE("Casson invariant of 1/n surgeries") {
  for (long n = -3; n <= 3; ++n) {
    if (n == 0) continue;
    CHECK(casson_surgery({unknot(), n}) == 0);
    CHECK(casson_surgery({trefoil(), n}) == Rational(n));
    CHECK(casson_surgery({figure_eight(), n}) == Rational(-n));
  }
  CHECK(casson_surgery({trefoil_with_kink(), 1}) == 1);
  CHECK_THROWS_AS(casson_surgery({trefoil(), 0}), zpi::InvalidInput);
}

TEST_CASE("lambda_pi is half lambda times the theta") {
  const GraphSpaceBasis b = basis(2);
  const auto theta = b.reduce(blackboard_theta());
  REQUIRE_FALSE(zpi::diagrams::is_zero(theta));
  // The blackboard theta has one vertex order reversed relative to the
  // standard theta.
  auto sym = b.reduce(zpi::diagrams::theta_graph());
  for (auto& x : sym) x = -x;
  CHECK(theta == sym);

  CHECK(zpi::diagrams::is_zero(lambda_pi(0, b)));
  auto half = theta;
  for (auto& x : half) x /= 2;
  CHECK(lambda_pi(1, b) == half);
  auto neg = theta;
  for (auto& x : neg) x = -x;
  CHECK(lambda_pi(-2, b) == neg);

  const auto tref = lambda_pi(casson_surgery({trefoil(), 1}), b);
  const auto fig8 = lambda_pi(casson_surgery({figure_eight(), 1}), b);
  CHECK(tref == half);
  for (std::size_t i = 0; i < tref.size(); ++i) CHECK(tref[i] == -fig8[i]);
  CHECK_THROWS_AS(lambda_pi(1, basis(4)), zpi::InvalidInput);
}

TEST_CASE("diagram validation") {
  CHECK_THROWS_AS(KnotDiagram({{{1, 5, 3, 4}, {3, 1, 4, 6}, {5, 3, 6, 2}}, {}}).validate(), zpi::InvalidInput);
  CHECK_THROWS_AS(KnotDiagram({{{1, 5, 2, 4}, {3, 1, 4, 6}, {5, 3, 6, 7}}, {}}).validate(), zpi::InvalidInput);
  CHECK_THROWS_AS(KnotDiagram({{{1, 4, 2, 6}, {3, 1, 4, 6}, {5, 3, 6, 2}}, {}}).validate(), zpi::InvalidInput);
  KnotDiagram signed_trefoil = trefoil();
  signed_trefoil.signs = trefoil().crossing_signs();
  CHECK_NOTHROW(signed_trefoil.validate());
  signed_trefoil.signs[1] = -signed_trefoil.signs[1];
  CHECK_THROWS_AS(signed_trefoil.validate(), zpi::InvalidInput);
  CHECK(trefoil().crossing_signs() == std::vector<int>{1, 1, 1});
  const auto fig = figure_eight().crossing_signs();
  CHECK(std::accumulate(fig.begin(), fig.end(), 0) == 0);
}
