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

#include <memory>
#include <string>
#include <vector>

#include "zpi/ring/rational.hpp"

namespace zpi::ring {

/// Dense univariate polynomial over Q, coefficients low degree first, no
/// trailing zeros (the zero polynomial is empty).
using UPoly = std::vector<Rational>;

/// The p-th cyclotomic polynomial Phi_p.
const UPoly& cyclotomic_polynomial(int p);

/// Element of Q(zeta_p) = Q[x]/(Phi_p), stored as the unique residue of
/// degree < deg Phi_p.
class CyclotomicNumber {
 public:
  /// Zero of Q(zeta_p). Throws InvalidInput unless p >= 1.
  explicit CyclotomicNumber(int p);
  /// Residue of sum_i coeffs[i] zeta^i (any length; reduced on construction).
  CyclotomicNumber(int p, std::vector<Rational> coeffs);

  static CyclotomicNumber constant(int p, const Rational& c);
  /// zeta^m for any integer m.
  static CyclotomicNumber zeta_power(int p, long m);

  int modulus() const { return p_; }
  /// Degree of Phi_p, i.e. Euler phi(p).
  int degree() const;
  /// Reduced coefficients, padded to `degree()` entries.
  std::vector<Rational> coefficients() const;

  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

  CyclotomicNumber operator-() const;
  friend CyclotomicNumber operator+(const CyclotomicNumber& a, const CyclotomicNumber& b);
  friend CyclotomicNumber operator-(const CyclotomicNumber& a, const CyclotomicNumber& b);
  friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b);
  friend CyclotomicNumber operator/(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    return a * b.inverse();
  }
  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    return a.p_ == b.p_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const CyclotomicNumber& a, const CyclotomicNumber& b) { return !(a == b); }

  /// Extended Euclid modulo Phi_p. Throws DivisionByZero on zero.
  CyclotomicNumber inverse() const;
  /// zeta^m -> zeta^{-m}.
  CyclotomicNumber involute() const;

  /// Polynomial in "z", highest power first, e.g. "z^3-2*z+1".
  std::string to_string() const;

 private:
  void check(const CyclotomicNumber& other) const;

  int p_;
  UPoly coeffs_;
};

namespace upoly {
void trim(UPoly& a);
UPoly mul(const UPoly& a, const UPoly& b);
UPoly sub(const UPoly& a, const UPoly& b);
/// Quotient and remainder; b nonzero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
}  // namespace upoly

}  // namespace zpi::ring
