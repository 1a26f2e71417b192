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

#include <algorithm>
#include <random>

#include "doctest.h"
#include "zpi/complex/chain_complex.hpp"
#include "zpi/error.hpp"

using namespace zpi::complex;
using zpi::ring::CyclotomicNumber;
using zpi::ring::LaurentPoly;
using zpi::ring::make_rational;
using zpi::ring::parse_field_element;

namespace {

BasedChainComplex zero_complex() {
  const FieldSpec f = FieldSpec::rational_functions(1);
  return BasedChainComplex{f, {{}}, {Matrix(f, 0, 0)}};
}

// 0 -> Q(t) --(1 - t)--> Q(t) -> 0 in degrees 1, 0.
BasedChainComplex one_by_one() {
  const FieldSpec f = FieldSpec::rational_functions(1);
  BasedChainComplex c{f, {{"a"}, {"b"}}, {Matrix(f, 0, 1), Matrix(f, 1, 1)}};
  c.boundary[1](0, 0) = parse_field_element("1-t", f);
  return c;
}

FieldElement random_element(std::mt19937& rng, const FieldSpec& f) {
  std::uniform_int_distribution<int> coin(0, 2), c(-3, 3), e(-1, 2);
  if (f.kind == FieldSpec::Kind::Cyclotomic) {
    return CyclotomicNumber::zeta_power(f.p, e(rng) + 1) * FieldElement::constant(f, c(rng));
  }
  LaurentPoly p(f.vars);
  for (int i = 0; i < 2; ++i) {
    zpi::ring::Exponent ex{};
    for (int k = 0; k < f.vars; ++k) ex[static_cast<std::size_t>(k)] = e(rng);
    p += LaurentPoly::monomial(f.vars, ex, c(rng));
  }
  return coin(rng) == 0 ? FieldElement::constant(f, 0) : FieldElement(p);
}

// Unit upper-triangular matrix and its inverse.
std::pair<Matrix, Matrix> random_unitriangular(std::mt19937& rng, const FieldSpec& f, std::size_t n) {
  Matrix u = Matrix::identity(f, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) u(i, j) = random_element(rng, f);
  }
  Matrix inv(f, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<FieldElement> e(n, FieldElement::zero(f));
    e[j] = FieldElement::one(f);
    auto x = solve(u, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = (*x)[i];
  }
  return {u, inv};
}

// Random acyclic complex: a sum of elementary complexes 0 -> F --c--> F -> 0
// (c a nonzero unit-ish scalar) placed between consecutive degrees, then
// conjugated by random changes of basis.
BasedChainComplex random_acyclic(std::mt19937& rng, const FieldSpec& f, int top) {
  std::uniform_int_distribution<int> count(0, 2);
  std::vector<int> pieces(static_cast<std::size_t>(top));  // pieces[d]: copies between d+1 and d
  std::vector<std::size_t> dims(static_cast<std::size_t>(top) + 1, 0);
  for (int d = 0; d < top; ++d) {
    pieces[static_cast<std::size_t>(d)] = count(rng);
    dims[static_cast<std::size_t>(d)] += static_cast<std::size_t>(pieces[static_cast<std::size_t>(d)]);
    dims[static_cast<std::size_t>(d) + 1] += static_cast<std::size_t>(pieces[static_cast<std::size_t>(d)]);
  }
  BasedChainComplex c{f, {}, {}};
  for (int d = 0; d <= top; ++d) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < dims[static_cast<std::size_t>(d)]; ++i) {
      labels.push_back("g" + std::to_string(d) + "_" + std::to_string(i));
    }
    c.basis.push_back(labels);
  }
  c.boundary.emplace_back(f, 0, dims[0]);
  for (int d = 1; d <= top; ++d) {
    Matrix m(f, dims[static_cast<std::size_t>(d) - 1], dims[static_cast<std::size_t>(d)]);
    // Lower pieces occupy the first slots of C_d, upper pieces the last.
    const std::size_t lower_in_d = static_cast<std::size_t>(d >= 1 && d - 1 < top ? pieces[static_cast<std::size_t>(d) - 1] : 0);
    const std::size_t below_upper = d >= 2 ? static_cast<std::size_t>(pieces[static_cast<std::size_t>(d) - 2]) : 0;
    for (std::size_t i = 0; i < lower_in_d; ++i) {
      FieldElement s = random_element(rng, f);
      if (s.is_zero()) s = FieldElement::one(f);
      m(below_upper + i, i) = s;
    }
    c.boundary.push_back(m);
  }
  std::vector<Matrix> p, pinv;
  for (int d = 0; d <= top; ++d) {
    auto [u, ui] = random_unitriangular(rng, f, dims[static_cast<std::size_t>(d)]);
    p.push_back(u);
    pinv.push_back(ui);
  }
  for (int d = 1; d <= top; ++d) {
    const auto ud = static_cast<std::size_t>(d);
    c.boundary[ud] = p[ud - 1] * c.boundary[ud] * pinv[ud];
  }
  return c;
}

std::vector<std::vector<std::size_t>> reversal(const BasedChainComplex& c) {
  std::vector<std::vector<std::size_t>> perm;
  for (const auto& b : c.basis) {
    std::vector<std::size_t> v(b.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = v.size() - 1 - i;
    perm.push_back(v);
  }
  return perm;
}

}  // namespace

TEST_CASE("zero complex") {
  const auto c = zero_complex();
  CHECK(verify_boundary(c));
  CHECK(is_acyclic(c));
  CHECK(end_complex_acyclic(c));
}

TEST_CASE("modular inverse for the lens complex") {
  CHECK(inverse_mod(4, 25) == 19);
  CHECK(inverse_mod(9, 25) == 14);
  CHECK(inverse_mod(2, 5) == 3);
  CHECK(inverse_mod(1, 5) == 1);
  CHECK(inverse_mod(-1, 7) == 6);
  CHECK_THROWS_AS(inverse_mod(5, 25), zpi::InvalidInput);
  CHECK_THROWS_AS(build_lens_complex(1, 1), zpi::InvalidInput);
  CHECK_THROWS_AS(build_lens_complex(6, 3), zpi::InvalidInput);
}

TEST_CASE("lens complex and its known propagator") {
  const auto c = build_lens_complex(5, 2);
  CHECK(verify_boundary(c));
  CHECK(is_acyclic(c));
  CHECK(end_complex_acyclic(c));
  const auto known = known_lens_propagator(5, 2);
  CHECK(verify_propagator(c, known));
  const FieldSpec f = FieldSpec::cyclotomic(5);
  CHECK(known.entry(2, 0, 0) == parse_field_element("1/(1-z^3)", f));
  CHECK(known.entry(0, 0, 0) == parse_field_element("1/(1-z)", f));
  CHECK(known.entry(1, 0, 0).is_zero());

  const auto solved = solve_propagator(c);
  CHECK(verify_propagator(c, solved));
  const auto h = propagator_homotopy(c, solved, known);
  CHECK(verify_homotopy(c, solved, known, h));

  CHECK(build_lens_complex(5, 1).boundary[3](0, 0) == parse_field_element("1-z", f));
  CHECK(known_lens_propagator(7, 1).entry(2, 0, 0) == parse_field_element("1/(1-z)", FieldSpec::cyclotomic(7)));
}

TEST_CASE("lens complex acyclic for (25, 4) and (25, 9)") {
  for (long q : {4L, 9L}) {
    const auto c = build_lens_complex(25, q);
    CHECK(verify_boundary(c));
    CHECK(is_acyclic(c));
  }
  CHECK(end_complex_acyclic(build_lens_complex(7, 2)));
}

TEST_CASE("adjoint of the lens propagator") {
  const auto c = build_lens_complex(5, 2);
  const auto g = known_lens_propagator(5, 2);
  const auto gs = adjoint_propagator(c, g);
  CHECK(gs.adjoint);
  // g*(z) = (1 - zeta^{-1})^{-1} w
  CHECK(gs.maps[0](0, 0) == parse_field_element("1/(1-z^4)", FieldSpec::cyclotomic(5)));
  CHECK(verify_propagator(c, gs));
  const auto back = adjoint_propagator(c, gs);
  CHECK_FALSE(back.adjoint);
  for (std::size_t d = 0; d < g.maps.size(); ++d) CHECK(back.maps[d] == g.maps[d]);
  // Homotopy accepts either form.
  CHECK(verify_homotopy(c, g, gs, propagator_homotopy(c, g, gs)));
}

TEST_CASE("boundary failures are detected") {
  auto c = build_lens_complex(5, 2);
  c.boundary[2](0, 0) = FieldElement::one(c.field);
  CHECK_FALSE(verify_boundary(c));
  auto bad = build_lens_complex(5, 2);
  bad.boundary[2] = Matrix(bad.field, 2, 1);
  CHECK_THROWS_AS(verify_boundary(bad), zpi::InvalidInput);
}

TEST_CASE("non-acyclic complexes") {
  const FieldSpec f = FieldSpec::rational_functions(1);
  const BasedChainComplex c{f, {{"p"}}, {Matrix(f, 0, 1)}};
  CHECK(verify_boundary(c));
  CHECK_FALSE(is_acyclic(c));
  CHECK_FALSE(end_complex_acyclic(c));
  CHECK_THROWS_AS(solve_propagator(c), zpi::NotAcyclic);
}

TEST_CASE("one-by-one complex") {
  const auto c = one_by_one();
  const auto g = solve_propagator(c);
  CHECK(g.maps.size() == 1);
  CHECK(g.maps[0](0, 0) == parse_field_element("1/(1-t)", c.field));
  CHECK(verify_propagator(c, g));
}

TEST_CASE("torus Koszul complex") {
  const auto c = build_torus_koszul();
  CHECK(c.dim(0) == 1);
  CHECK(c.dim(1) == 3);
  CHECK(c.dim(2) == 3);
  CHECK(c.dim(3) == 1);
  CHECK(verify_boundary(c));
  CHECK(is_acyclic(c));
  CHECK(end_complex_acyclic(c));
  const auto g = solve_propagator(c);
  CHECK(verify_propagator(c, g));
  const auto gs = adjoint_propagator(c, g);
  CHECK(verify_propagator(c, gs));

  const auto perm = reversal(c);
  const auto c2 = permute_basis(c, perm);
  CHECK(verify_boundary(c2));
  const auto g2 = unpermute_propagator(solve_propagator(c2), perm);
  CHECK(verify_propagator(c, g2));
  const auto h = propagator_homotopy(c, g, g2);
  CHECK(verify_homotopy(c, g, g2, h));
}

TEST_CASE("random acyclic complexes") {
  std::mt19937 rng(2024);
  const std::vector<FieldSpec> fields = {FieldSpec::rational_functions(1), FieldSpec::rational_functions(2),
                                         FieldSpec::cyclotomic(7), FieldSpec::cyclotomic(12)};
  for (const auto& f : fields) {
    for (int trial = 0; trial < 6; ++trial) {
      const auto c = random_acyclic(rng, f, 3);
      REQUIRE(verify_boundary(c));
      CHECK(is_acyclic(c));
      CHECK(end_complex_acyclic(c));
      const auto g = solve_propagator(c);
      CHECK(verify_propagator(c, g));
      const auto gs = adjoint_propagator(c, g);
      CHECK(verify_propagator(c, gs));
      const auto perm = reversal(c);
      const auto g2 = unpermute_propagator(solve_propagator(permute_basis(c, perm)), perm);
      CHECK(verify_propagator(c, g2));
      CHECK(verify_homotopy(c, g, g2, propagator_homotopy(c, g, g2)));
      const auto same = propagator_homotopy(c, g, g);
      for (const auto& m : same.maps) CHECK(m.is_zero());
    }
  }
}
