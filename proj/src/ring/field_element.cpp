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

#include "zpi/ring/field_element.hpp"

#include <cctype>

#include "zpi/error.hpp"

namespace zpi::ring {

std::string FieldSpec::describe() const {
  if (kind == Kind::Cyclotomic) return "Q(zeta_" + std::to_string(p) + ")";
  return "Q(t1..t" + std::to_string(vars) + ")";
}

FieldElement FieldElement::zero(const FieldSpec& spec) { return constant(spec, 0); }

FieldElement FieldElement::one(const FieldSpec& spec) { return constant(spec, 1); }

FieldElement FieldElement::constant(const FieldSpec& spec, const Rational& c) {
  if (spec.kind == FieldSpec::Kind::Cyclotomic) return CyclotomicNumber::constant(spec.p, c);
  return RationalFunction::constant(spec.vars, c);
}

FieldSpec FieldElement::spec() const {
  if (const auto* r = as_rational_function()) return FieldSpec::rational_functions(r->arity());
  return FieldSpec::cyclotomic(as_cyclotomic()->modulus());
}

bool FieldElement::is_zero() const {
  return std::visit([](const auto& v) { return v.is_zero(); }, value_);
}

bool FieldElement::is_one() const {
  return std::visit([](const auto& v) { return v.is_one(); }, value_);
}

namespace {

template <class Op>
FieldElement binary(const FieldElement& a, const FieldElement& b, Op op) {
  const auto* ra = a.as_rational_function();
  const auto* rb = b.as_rational_function();
  if (ra != nullptr && rb != nullptr) return FieldElement(op(*ra, *rb));
  const auto* ca = a.as_cyclotomic();
  const auto* cb = b.as_cyclotomic();
  if (ca != nullptr && cb != nullptr) return FieldElement(op(*ca, *cb));
  throw DomainMismatch("field elements from " + a.spec().describe() + " and " + b.spec().describe());
}

}  // namespace

FieldElement FieldElement::operator-() const {
  return std::visit([](const auto& v) { return FieldElement(-v); }, value_);
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  return binary(a, b, [](const auto& x, const auto& y) { return x + y; });
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  return binary(a, b, [](const auto& x, const auto& y) { return x - y; });
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  return binary(a, b, [](const auto& x, const auto& y) { return x * y; });
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  return binary(a, b, [](const auto& x, const auto& y) { return x / y; });
}

FieldElement FieldElement::inverse() const {
  return std::visit([](const auto& v) { return FieldElement(v.inverse()); }, value_);
}

FieldElement FieldElement::involute() const {
  return std::visit([](const auto& v) { return FieldElement(v.involute()); }, value_);
}

std::string FieldElement::to_string() const {
  return std::visit([](const auto& v) { return v.to_string(); }, value_);
}

namespace {

// Recursive-descent parser evaluating directly in the target field.
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := power (('*'|'/') power)*
//   power  := atom ['^' ['-'] digits]
//   atom   := digits | variable | '(' expr ')'
class Parser {
 public:
  Parser(std::string_view text, const FieldSpec& spec) : text_(text), spec_(spec) {}

  FieldElement parse() {
    FieldElement v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  FieldElement expr() {
    skip_space();
    bool negate = false;
    if (consume('-')) {
      negate = true;
    } else {
      consume('+');
    }
    FieldElement acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (consume('+')) {
        acc = acc + term();
      } else if (consume('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  FieldElement term() {
    FieldElement acc = power();
    while (true) {
      if (consume('*')) {
        acc = acc * power();
      } else if (consume('/')) {
        FieldElement d = power();
        if (d.is_zero()) fail("division by zero");
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  long integer() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    if (pos_ - start > 9) fail("integer literal too long for an exponent");
    return std::stol(std::string(text_.substr(start, pos_ - start)));
  }

  FieldElement power() {
    FieldElement base = atom();
    if (!consume('^')) return base;
    const bool neg = consume('-');
    const long e = integer();
    FieldElement r = FieldElement::one(spec_);
    for (long i = 0; i < e; ++i) r = r * base;
    if (neg) {
      if (r.is_zero()) fail("negative power of zero");
      r = r.inverse();
    }
    return r;
  }

  FieldElement atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      FieldElement v = expr();
      if (!consume(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      Rational r(std::string(text_.substr(start, pos_ - start)), 10);
      return FieldElement::constant(spec_, r);
    }
    if (c == 'z') {
      ++pos_;
      if (spec_.kind != FieldSpec::Kind::Cyclotomic) fail("'z' outside a cyclotomic field");
      return CyclotomicNumber::zeta_power(spec_.p, 1);
    }
    if (c == 't') {
      ++pos_;
      if (spec_.kind != FieldSpec::Kind::RationalFunctions) fail("'t' inside a cyclotomic field");
      int index = 1;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        index = text_[pos_] - '0';
        ++pos_;
      } else if (spec_.vars != 1) {
        fail("bare 't' requires a single variable");
      }
      if (index < 1 || index > spec_.vars) fail("variable index out of range");
      return RationalFunction(LaurentPoly::variable(spec_.vars, index));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  FieldSpec spec_;
  std::size_t pos_ = 0;
};

}  // namespace

FieldElement parse_field_element(std::string_view text, const FieldSpec& spec) {
  return Parser(text, spec).parse();
}

LaurentPoly parse_laurent(std::string_view text, int arity) {
  FieldElement v = parse_field_element(text, FieldSpec::rational_functions(arity));
  auto p = v.as_rational_function()->as_laurent();
  if (!p) throw ParseError("'" + std::string(text) + "' is not a Laurent polynomial");
  return *p;
}

}  // namespace zpi::ring
