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

#include <optional>
#include <string>

#include "zpi/ring/laurent_poly.hpp"

namespace zpi::ring {

/// Element of the fraction field Q(t1, ..., tk) of the Laurent ring.
///
/// Canonical form: the denominator is an honest polynomial with no monomial
/// factor, coprime to the numerator, and its lexicographically-least term has
/// coefficient 1; any monomial unit lives in the numerator. Two fractions are
/// equal iff their stored numerator/denominator pairs are identical.
class RationalFunction {
 public:
  explicit RationalFunction(int arity = 1);
  RationalFunction(const LaurentPoly& numerator);  // NOLINT(google-explicit-constructor)
  RationalFunction(const LaurentPoly& numerator, const LaurentPoly& denominator);

  static RationalFunction constant(int arity, const Rational& c);

  int arity() const { return num_.arity(); }
  const LaurentPoly& numerator() const { return num_; }
  const LaurentPoly& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  /// Denominator is 1, i.e. the value lies in the Laurent ring.
  bool is_laurent() const { return den_.is_one(); }
  std::optional<LaurentPoly> as_laurent() const;

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  /// Throws DivisionByZero on zero.
  RationalFunction inverse() const;
  RationalFunction involute() const;

  /// "N" when the denominator is 1, otherwise "(N)/(D)".
  std::string to_string() const;

 private:
  void canonicalize();

  LaurentPoly num_;
  LaurentPoly den_;
};

}  // namespace zpi::ring
