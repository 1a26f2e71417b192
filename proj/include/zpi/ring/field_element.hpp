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
#include <string_view>
#include <variant>

#include "zpi/ring/cyclotomic.hpp"
#include "zpi/ring/laurent_poly.hpp"
#include "zpi/ring/rational_function.hpp"

namespace zpi::ring {

/// Which coefficient field a computation runs over.
struct FieldSpec {
  enum class Kind { RationalFunctions, Cyclotomic };

  Kind kind = Kind::RationalFunctions;
  int vars = 1;  // arity for RationalFunctions
  int p = 0;     // modulus for Cyclotomic

  static FieldSpec rational_functions(int vars) { return {Kind::RationalFunctions, vars, 0}; }
  static FieldSpec cyclotomic(int p) { return {Kind::Cyclotomic, 0, p}; }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind == b.kind && a.vars == b.vars && a.p == b.p;
  }
  friend bool operator!=(const FieldSpec& a, const FieldSpec& b) { return !(a == b); }

  std::string describe() const;
};

/// A value in one of the supported coefficient fields: Q(t1..tk) or Q(zeta_p).
/// Mixed-field arithmetic throws DomainMismatch.
class FieldElement {
 public:
  using Value = std::variant<RationalFunction, CyclotomicNumber>;

  FieldElement(RationalFunction v) : value_(std::move(v)) {}  // NOLINT
  FieldElement(CyclotomicNumber v) : value_(std::move(v)) {}  // NOLINT
  FieldElement(const LaurentPoly& v) : value_(RationalFunction(v)) {}  // NOLINT

  static FieldElement zero(const FieldSpec& spec);
  static FieldElement one(const FieldSpec& spec);
  static FieldElement constant(const FieldSpec& spec, const Rational& c);

  FieldSpec spec() const;
  const Value& value() const { return value_; }
  const RationalFunction* as_rational_function() const { return std::get_if<RationalFunction>(&value_); }
  const CyclotomicNumber* as_cyclotomic() const { return std::get_if<CyclotomicNumber>(&value_); }

  bool is_zero() const;
  bool is_one() const;

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.value_ == b.value_; }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  /// Throws DivisionByZero for zero.
  FieldElement inverse() const;
  FieldElement involute() const;

  std::string to_string() const;

 private:
  Value value_;
};

/// ring_mul: exact product, same domain required.
inline FieldElement ring_mul(const FieldElement& a, const FieldElement& b) { return a * b; }
inline FieldElement involute(const FieldElement& a) { return a.involute(); }
inline FieldElement field_inverse(const FieldElement& a) { return a.inverse(); }

/// Text grammar shared by every JSON file: sums and products of rationals,
/// variables t/t1/t2/t3 (Laurent and fraction fields) or z (cyclotomic), with
/// integer exponents and parentheses, e.g. "(t1-1)/(t2^2+3/2)" or "z^3-z".
FieldElement parse_field_element(std::string_view text, const FieldSpec& spec);
LaurentPoly parse_laurent(std::string_view text, int arity);

}  // namespace zpi::ring
