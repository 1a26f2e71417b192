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

#include <string>
#include <vector>

#include "zpi/ring/laurent_poly.hpp"

namespace zpi::diagrams {

using ring::Exponent;

/// The abelian group pi decorating edges: trivial, Z, Z/p or Z^3. Elements are
/// exponent vectors (t^e); for Z/p the single exponent lives in [0, p).
struct GroupSpec {
  enum class Kind { Trivial, Z, Zp, Z3 };

  Kind kind = Kind::Trivial;
  int p = 0;

  static GroupSpec trivial() { return {Kind::Trivial, 0}; }
  static GroupSpec integers() { return {Kind::Z, 0}; }
  static GroupSpec cyclic(int p);
  static GroupSpec lattice3() { return {Kind::Z3, 0}; }
  /// "trivial", "Z", "Z3", "Zp:<p>" or "Z/<p>".
  static GroupSpec parse(const std::string& text);
  std::string name() const;

  /// Number of independent exponent slots in use.
  int rank() const;
  /// Arity of the Laurent polynomials used for group ring elements (>= 1).
  int arity() const { return rank() == 0 ? 1 : rank(); }

  Exponent reduce(Exponent e) const;
  Exponent mul(const Exponent& a, const Exponent& b) const;
  Exponent bar(const Exponent& a) const;
  bool is_identity(const Exponent& a) const { return reduce(a) == Exponent{}; }

  /// One generator per free slot (t, or t1, t2, t3); empty for trivial.
  std::vector<Exponent> generators() const;
  /// Elements with a representative in [-B, B]^rank, sorted.
  std::vector<Exponent> support(int bound) const;
  bool in_support(const Exponent& e, int bound) const;

  /// Reduces exponents of a group ring element (mod p for Z/p) and checks
  /// unused slots are zero. Throws InvalidInput otherwise.
  ring::LaurentPoly normalize(const ring::LaurentPoly& x) const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.kind == b.kind && a.p == b.p; }
  friend bool operator!=(const GroupSpec& a, const GroupSpec& b) { return !(a == b); }
};

}  // namespace zpi::diagrams
