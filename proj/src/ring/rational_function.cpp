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

#include "zpi/ring/rational_function.hpp"

#include "zpi/error.hpp"

namespace zpi::ring {

RationalFunction::RationalFunction(int arity)
    : num_(arity), den_(LaurentPoly::constant(arity, 1)) {}

RationalFunction::RationalFunction(const LaurentPoly& numerator)
    : num_(numerator), den_(LaurentPoly::constant(numerator.arity(), 1)) {}

RationalFunction::RationalFunction(const LaurentPoly& numerator, const LaurentPoly& denominator)
    : num_(numerator), den_(denominator) {
  if (num_.arity() != den_.arity()) throw DomainMismatch("fraction with mixed arity");
  if (den_.is_zero()) throw DivisionByZero("fraction with zero denominator");
  canonicalize();
}

RationalFunction RationalFunction::constant(int arity, const Rational& c) {
  return RationalFunction(LaurentPoly::constant(arity, c));
}

void RationalFunction::canonicalize() {
  const int k = num_.arity();
  if (num_.is_zero()) {
    den_ = LaurentPoly::constant(k, 1);
    return;
  }
  if (den_.is_monomial()) {
    num_ = num_ * *den_.unit_inverse();
    den_ = LaurentPoly::constant(k, 1);
    return;
  }
  Exponent den_shift{};
  LaurentPoly d = strip_monomial_content(den_, &den_shift);
  LaurentPoly n = num_.shifted(negate(den_shift));
  const LaurentPoly g = gcd(n, d);
  if (!g.is_constant()) {
    n = *divide_exact(n, g);
    d = *divide_exact(d, g);
  }
  Exponent extra{};
  d = strip_monomial_content(d, &extra);
  n = n.shifted(negate(extra));
  const Rational lead = d.trailing_term().second;
  const Rational scale = 1 / lead;
  num_ = n * scale;
  den_ = d * scale;
}

std::optional<LaurentPoly> RationalFunction::as_laurent() const {
  if (!den_.is_one()) return std::nullopt;
  return num_;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r(*this);
  r.num_ = -r.num_;
  return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.arity() != b.arity()) throw DomainMismatch("rational function arity mismatch");
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.arity() != b.arity()) throw DomainMismatch("rational function arity mismatch");
  if (a.is_zero() || b.is_zero()) return RationalFunction(a.arity());
  if (a.is_laurent() && b.is_laurent()) return RationalFunction(a.num_ * b.num_);
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  return a * b.inverse();
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero rational function");
  return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::involute() const {
  return RationalFunction(num_.involute(), den_.involute());
}

std::string RationalFunction::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace zpi::ring
