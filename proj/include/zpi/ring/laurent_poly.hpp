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
#include <optional>
#include <string>

#include "zpi/ring/rational.hpp"

namespace zpi::ring {

inline constexpr int kMaxArity = 3;

/// Exponent vector of a monomial t1^e[0] t2^e[1] t3^e[2]. Slots beyond the
/// arity of the owning polynomial are always zero, so plain lexicographic
/// comparison of the array is the term order used throughout.
using Exponent = std::array<int, kMaxArity>;

/// Element of Q[t1^{±1}, ..., tk^{±1}] for k in {1, 2, 3}.
///
/// Terms are kept in a map keyed by exponent; zero coefficients are never
/// stored. Operations between polynomials of different arity throw
/// DomainMismatch rather than promoting.
class LaurentPoly {
 public:
  using TermMap = std::map<Exponent, Rational>;

  explicit LaurentPoly(int arity = 1);

  static LaurentPoly constant(int arity, const Rational& c);
  static LaurentPoly monomial(int arity, const Exponent& e, const Rational& c = 1);
  /// t_index (1-based).
  static LaurentPoly variable(int arity, int index);

  int arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  /// All exponents non-negative.
  bool is_polynomial() const;

  /// Coefficient of t^e (zero when absent).
  Rational coefficient(const Exponent& e) const;
  /// Largest / smallest term in lexicographic exponent order. Requires nonzero.
  const std::pair<const Exponent, Rational>& leading_term() const;
  const std::pair<const Exponent, Rational>& trailing_term() const;

  /// Componentwise minimum / maximum exponent over all terms.
  Exponent min_exponents() const;
  Exponent max_exponents() const;
  /// Degree in variable `var` (0-based); -1 for the zero polynomial.
  int degree_in(int var) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const LaurentPoly& other);
  LaurentPoly& operator*=(const Rational& c);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
  friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  /// Multiply by t^e.
  LaurentPoly shifted(const Exponent& e) const;

  /// t^z -> t^{-z}, extended Q-linearly.
  LaurentPoly involute() const;

  /// Inverse in the Laurent ring; only nonzero monomials are units.
  std::optional<LaurentPoly> unit_inverse() const;

  /// Value at t1 = ... = tk = 1.
  Rational augmentation() const;

  /// Same terms with every exponent in slot `var` set to zero is not a ring
  /// map; these two helpers support recursive gcd: coefficient of v^d where
  /// v = t_{var+1}, returned with that slot zeroed.
  LaurentPoly coefficient_in(int var, int d) const;

  /// Canonical text form, e.g. "t1^2*t2^-1-3/2". Arity-1 polynomials print
  /// their variable as "t".
  std::string to_string() const;

 private:
  void add_term(const Exponent& e, const Rational& c);
  void check_arity(const LaurentPoly& other) const;

  int arity_;
  TermMap terms_;
};

/// Exponent helpers.
Exponent operator+(const Exponent& a, const Exponent& b);
Exponent operator-(const Exponent& a, const Exponent& b);
Exponent negate(const Exponent& e);

/// Exact quotient a / b in the Laurent ring when b divides a; std::nullopt
/// otherwise. Both arguments of equal arity.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b);

/// Greatest common divisor of two Laurent polynomials, normalized to have
/// non-negative exponents with every variable's minimum exponent zero and the
/// lexicographically-least term equal to 1 (so gcd is defined up to no unit).
/// gcd(0, 0) = 0.
LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);

/// Shift `p` so that every variable's minimum exponent is zero; returns the
/// shift that was removed (p == result.shifted(removed)).
LaurentPoly strip_monomial_content(const LaurentPoly& p, Exponent* removed = nullptr);

}  // namespace zpi::ring
