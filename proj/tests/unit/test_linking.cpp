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

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "zpi/error.hpp"
#include "zpi/linking/lattice.hpp"
#include "zpi/linking/pairing.hpp"

using namespace zpi::linking;
using zpi::ring::parse_laurent;

namespace {

LaurentPoly lp(const char* text) { return parse_laurent(text, 3); }

// Unit square in the xy-plane and a square in the xz-plane threading it.
Loop square_xy() { return {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}; }

Loop square_xz_through() {
  // Passes through the face of square_xy at x in (0,1): the segment at
  // x = 0.5 is not a lattice segment, so use a 2x scaled configuration.
  return {{1, 1, -1}, {1, 1, 0}, {1, 1, 1}, {2, 1, 1}, {2, 1, 0}, {2, 1, -1}};
}

// Hopf pair on the lattice: a 2x2 square around the z-axis point (1,1) and a
// 2x2 square in the plane y = 1 passing through it.
Loop hopf_a() { return {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {2, 1, 0}, {2, 2, 0}, {1, 2, 0}, {0, 2, 0}, {0, 1, 0}}; }
Loop hopf_b() { return {{1, 1, -1}, {2, 1, -1}, {3, 1, -1}, {3, 1, 0}, {3, 1, 1}, {2, 1, 1}, {1, 1, 1}, {1, 1, 0}}; }

long rounded_oracle(const Loop& a, const Loop& b) {
  const double f = zpi_test::gauss_linking_float(a, b);
  const long r = std::lround(f);
  CHECK(std::fabs(f - static_cast<double>(r)) < 0.25);
  return r;
}

}  // namespace

TEST_CASE("holonomy of lattice paths") {
  CHECK(holonomy_of_path({{0, 0, 0}, {1, 0, 0}}) == lp("t1"));
  CHECK(holonomy_of_path(hopf_a()) == lp("t2"));  // open path, displacement (0,1,0)
  CHECK(holonomy_of_path({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {2, -1, 0}}) == lp("t1^2*t2^-1"));
  Loop closed = hopf_a();
  closed.push_back(closed.front());
  CHECK(holonomy_of_path(closed) == lp("1"));
  // Homomorphism under concatenation, several periods.
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> step(0, 5);
  for (long period : {1L, 2L, 3L, 5L}) {
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Point> path{{0, 0, 0}};
      for (int k = 0; k < 20; ++k) {
        Point p = path.back();
        const int s = step(rng);
        p[s / 2] += s % 2 == 0 ? 1 : -1;
        path.push_back(p);
      }
      const std::vector<Point> first(path.begin(), path.begin() + 9);
      const std::vector<Point> second(path.begin() + 8, path.end());
      CHECK(holonomy_of_path(path, period) == holonomy_of_path(first, period) * holonomy_of_path(second, period));
    }
  }
}

TEST_CASE("integer linking numbers") {
  const long hopf = lk_integer(hopf_a(), hopf_b());
  CHECK(std::labs(hopf) == 1);
  CHECK(hopf == rounded_oracle(hopf_a(), hopf_b()));
  CHECK(lk_integer(hopf_b(), hopf_a()) == hopf);
  Loop reversed = hopf_b();
  std::reverse(reversed.begin(), reversed.end());
  CHECK(lk_integer(hopf_a(), reversed) == -hopf);
  CHECK(lk_integer(hopf_a(), translated(hopf_b(), {5, 5, 5})) == 0);
  CHECK(lk_integer(square_xy(), translated(square_xy(), {0, 0, 3})) == 0);
  // Far apart unit squares.
  CHECK(lk_integer(square_xy(), translated(square_xy(), {7, 0, 0})) == 0);
  CHECK_THROWS_AS(lk_integer(hopf_a(), hopf_a()), zpi::InvalidInput);
  CHECK_THROWS_AS(lk_integer(hopf_a(), {{0, 0, 0}, {2, 0, 0}, {2, 1, 0}}), zpi::InvalidInput);

  std::mt19937 rng(17);
  int linked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto [a, b] = zpi_test::random_loop_pair(rng);
    const long exact = lk_integer(a, b);
    CHECK(exact == rounded_oracle(a, b));
    CHECK(lk_integer(b, a) == exact);
    linked += exact != 0;
  }
  CHECK(linked > 10);
}

TEST_CASE("equivariant linking") {
  LatticeLink hopf;
  hopf.period = 5;
  hopf.loops = {hopf_a(), hopf_b()};
  hopf.framings = {1, 1};
  const LaurentPoly one_domain = lk_equivariant(hopf, 0, 1);
  CHECK((one_domain == lp("1") || one_domain == lp("-1")));
  LatticeLink moved = hopf;
  moved.loops[1] = translated(hopf_b(), {5, 0, 0});
  const LaurentPoly shifted = lk_equivariant(moved, 0, 1);
  CHECK(shifted == one_domain * lp("t1"));
  CHECK(lk_equivariant(moved, 1, 0) == shifted.involute());
  // The basepoint rule removes the translation again.
  CHECK(lk_equivariant(normalize_lifts(moved), 0, 1) == lk_equivariant(normalize_lifts(hopf), 0, 1));

  LatticeLink split;
  split.period = 5;
  split.loops = {hopf_a(), translated(hopf_b(), {0, 0, 2})};
  split.framings = {1, -1};
  CHECK(lk_equivariant(split, 0, 1).is_zero());
  CHECK(is_pi_algebraically_split(split));
  const auto m = linking_matrix(split);
  CHECK(m[0][0] == lp("1"));
  CHECK(m[1][1] == lp("-1"));
  split.framings = {2, 1};
  CHECK_FALSE(is_pi_algebraically_split(split));
  hopf.framings = {1, -1};
  CHECK_FALSE(is_pi_algebraically_split(hopf));
  const auto mh = linking_matrix(hopf);
  CHECK(mh[1][0] == mh[0][1].involute());

  LatticeLink single;
  single.period = 4;
  single.loops = {hopf_a()};
  single.framings = {1};
  CHECK(linking_matrix(single)[0][0] == lp("1"));

  // Non-nullhomotopic loop: a straight run around the torus.
  LatticeLink wrap;
  wrap.period = 3;
  wrap.loops = {{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}, hopf_b()};
  wrap.loops[1] = translated(wrap.loops[1], {0, 0, 0});
  wrap.framings = {1, 1};
  CHECK_THROWS(lk_equivariant(wrap, 0, 1));
  LatticeLink clash = hopf;
  clash.loops[1] = translated(hopf_a(), {5, 0, 0});
  CHECK_THROWS_AS(clash.validate(), zpi::InvalidInput);
}

TEST_CASE("equivariant linking on random torus links") {
  std::mt19937 rng(23);
  int nonzero = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const LatticeLink link = zpi_test::random_torus_link(rng, 8);
    const LaurentPoly lk01 = lk_equivariant(link, 0, 1);
    nonzero += lk01.is_zero() ? 0 : 1;
    CHECK(lk_equivariant(link, 1, 0) == lk01.involute());
    // Augmentation against a brute-force sum of floating Gauss integrals over
    // a window of translates wide enough to contain every overlap.
    long total = 0;
    for (long x = -3; x <= 3; ++x) {
      for (long y = -3; y <= 3; ++y) {
        for (long z = -3; z <= 3; ++z) {
          total += rounded_oracle(link.loops[0], translated(link.loops[1], {8 * x, 8 * y, 8 * z}));
        }
      }
    }
    CHECK(lk01.augmentation() == total);
    // Translating the second component by a period vector multiplies by t^v.
    LatticeLink moved = link;
    moved.loops[1] = translated(link.loops[1], {8, -16, 8});
    CHECK(lk_equivariant(moved, 0, 1) == lk01 * lp("t1*t2^-2*t3"));
    CHECK(normalize_monomial(lk_equivariant(normalize_lifts(moved), 0, 1)) == normalize_monomial(lk01));
  }
  CHECK(nonzero > 5);
}

TEST_CASE("holonomy pairings") {
  IntersectionTable empty;
  const auto f = zpi::ring::FieldSpec::rational_functions(3);
  CHECK(pairing(empty, Chain{}, Chain{}).is_zero());
  IntersectionTable t;
  t.pairs = {{"a", "b", lp("t1")}, {"b", "a", lp("t1^-1")}};
  CHECK(t.is_bar_symmetric());
  const Chain a{{"a", FieldElement::one(f)}};
  const Chain b{{"b", FieldElement::one(f)}};
  CHECK(pairing(t, a, b) == FieldElement(lp("t1")));
  CHECK(pairing(t, b, a) == pairing(t, a, b).involute());
  const Chain a2{{"a", FieldElement(lp("2*t2"))}};
  CHECK(pairing(t, a2, b) == FieldElement(lp("2*t1*t2")));
  CHECK_THROWS_AS(pairing(t, Chain{{"zz", FieldElement::one(f)}}, b), zpi::InvalidInput);
  t.pairs.push_back({"a", "b", lp("1")});
  CHECK_FALSE(t.is_bar_symmetric());

  IntersectionTable tri;
  tri.triples = {{{"x", "y", "z"}, Tensor3{{{Exponent{1, 0, 0}, Exponent{}, Exponent{0, 0, -1}}, 1}}}};
  const LaurentChain x{{"x", lp("t2")}}, y{{"y", lp("1")}}, z{{"z", lp("3")}};
  const Tensor3 r = pairing(tri, x, y, z);
  CHECK(r.size() == 1);
  CHECK(r.begin()->first == std::array<Exponent, 3>{Exponent{1, 1, 0}, Exponent{}, Exponent{0, 0, -1}});
  CHECK(r.begin()->second == 3);
  CHECK(pairing(tri, LaurentChain{}, y, z).empty());
}

TEST_CASE("linking through a propagator") {
  using namespace zpi::complex;
  const auto f = zpi::ring::FieldSpec::rational_functions(3);
  // Two leaves c, c2 bounding cells D, D2.
  BasedChainComplex c{f, {{}, {"c", "c2"}, {"D", "D2"}}, {Matrix(f, 0, 0), Matrix(f, 0, 2), Matrix::identity(f, 2)}};
  Propagator g = solve_propagator(c);
  REQUIRE(verify_propagator(c, g));
  IntersectionTable t;
  t.pairs = {{"D", "c2", lp("t2")}, {"c2", "D", lp("t2^-1")}, {"c", "D2", lp("t2")}, {"D2", "c", lp("t2^-1")}};
  CHECK(lkhat_from_propagator(t, c, g, "c", "c2") == FieldElement(lp("t2")));
  // Adjoint form: <g*(D), D2> = <c, D2>.
  const Propagator gs = adjoint_propagator(c, g);
  CHECK(lkhat_from_propagator(t, c, gs, "D", "D2") == FieldElement(lp("t2")));
  // A cycle that does not bound under g.
  Propagator bad = g;
  bad.maps[1](0, 0) = FieldElement(lp("2"));
  CHECK_THROWS_AS(lkhat_from_propagator(t, c, bad, "c", "c2"), zpi::PreconditionFailed);
  CHECK(normalize_monomial(lp("t1^-1*t3+2*t1^-1")) == lp("t3+2"));
}

TEST_CASE("propagator pairing reproduces a lattice Hopf link") {
  using namespace zpi::complex;
  // Cells: leaf c = hopf_a, its bounding disk D (the 2x2 square face); leaf
  // c2 = hopf_b shifted by a period, bounding D2. Intersections are read off
  // the lattice: hopf_b crosses the face of hopf_a once.
  LatticeLink link;
  link.period = 5;
  link.loops = {hopf_a(), translated(hopf_b(), {0, 5, 0})};
  link.framings = {1, 1};
  const LaurentPoly lattice = lk_equivariant(link, 0, 1);
  const long crossing = lk_integer(hopf_a(), hopf_b());
  const auto f = zpi::ring::FieldSpec::rational_functions(3);
  BasedChainComplex c{f, {{}, {"c", "c2"}, {"D", "D2"}}, {Matrix(f, 0, 0), Matrix(f, 0, 2), Matrix::identity(f, 2)}};
  const Propagator g = solve_propagator(c);
  IntersectionTable t;
  // The disk meets the translate of c2 by -period * (0,1,0); the weight is
  // the holonomy of the path from the base of D to the base of c2.
  const LaurentPoly w = LaurentPoly::monomial(3, {0, -1, 0}, crossing);
  t.pairs = {{"D", "c2", w}, {"c2", "D", w.involute()}};
  const auto hat = lkhat_from_propagator(t, c, g, "c", "c2");
  const LaurentPoly hat_poly = *hat.as_rational_function()->as_laurent();
  CHECK(normalize_monomial(hat_poly) == normalize_monomial(lattice));
}
