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

#include "zpi/ring/laurent_poly.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <sstream>
#include <vector>

#include "zpi/error.hpp"

namespace zpi::ring {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational");
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    const bool ok = (c >= '0' && c <= '9') || c == '/' || (i == 0 && (c == '-' || c == '+'));
    if (!ok) throw ParseError("bad rational '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  Rational r;
  if (r.set_str(s, 10) != 0) throw ParseError("bad rational '" + std::string(text) + "'");
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

Exponent operator+(const Exponent& a, const Exponent& b) {
  Exponent r{};
  for (int i = 0; i < kMaxArity; ++i) r[i] = a[i] + b[i];
  return r;
}

Exponent operator-(const Exponent& a, const Exponent& b) {
  Exponent r{};
  for (int i = 0; i < kMaxArity; ++i) r[i] = a[i] - b[i];
  return r;
}

Exponent negate(const Exponent& e) {
  Exponent r{};
  for (int i = 0; i < kMaxArity; ++i) r[i] = -e[i];
  return r;
}

LaurentPoly::LaurentPoly(int arity) : arity_(arity) {
  if (arity < 1 || arity > kMaxArity) {
    throw InvalidInput("Laurent polynomial arity must be 1, 2 or 3");
  }
}

LaurentPoly LaurentPoly::constant(int arity, const Rational& c) {
  LaurentPoly p(arity);
  p.add_term(Exponent{}, c);
  return p;
}

LaurentPoly LaurentPoly::monomial(int arity, const Exponent& e, const Rational& c) {
  LaurentPoly p(arity);
  for (int i = arity; i < kMaxArity; ++i) {
    if (e[i] != 0) throw DomainMismatch("exponent exceeds polynomial arity");
  }
  p.add_term(e, c);
  return p;
}

LaurentPoly LaurentPoly::variable(int arity, int index) {
  if (index < 1 || index > arity) throw DomainMismatch("variable index out of range");
  Exponent e{};
  e[index - 1] = 1;
  return monomial(arity, e);
}

bool LaurentPoly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first == Exponent{} && terms_.begin()->second == 1;
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{});
}

bool LaurentPoly::is_polynomial() const {
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < arity_; ++i) {
      if (e[i] < 0) return false;
    }
  }
  return true;
}

Rational LaurentPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

const std::pair<const Exponent, Rational>& LaurentPoly::leading_term() const {
  if (terms_.empty()) throw InvalidInput("leading term of zero polynomial");
  return *terms_.rbegin();
}

const std::pair<const Exponent, Rational>& LaurentPoly::trailing_term() const {
  if (terms_.empty()) throw InvalidInput("trailing term of zero polynomial");
  return *terms_.begin();
}

Exponent LaurentPoly::min_exponents() const {
  Exponent m{};
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < arity_; ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
    first = false;
  }
  return m;
}

Exponent LaurentPoly::max_exponents() const {
  Exponent m{};
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < arity_; ++i) m[i] = first ? e[i] : std::max(m[i], e[i]);
    first = false;
  }
  return m;
}

int LaurentPoly::degree_in(int var) const {
  if (terms_.empty()) return -1;
  int d = INT_MIN;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

void LaurentPoly::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void LaurentPoly::check_arity(const LaurentPoly& other) const {
  if (arity_ != other.arity_) {
    throw DomainMismatch("Laurent polynomials of arity " + std::to_string(arity_) + " and " +
                         std::to_string(other.arity_));
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  check_arity(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  check_arity(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_arity(b);
  LaurentPoly r(a.arity_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  }
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) {
  *this = *this * other;
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

LaurentPoly LaurentPoly::shifted(const Exponent& e) const {
  LaurentPoly r(arity_);
  for (const auto& [ex, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), ex + e, c);
  return r;
}

LaurentPoly LaurentPoly::involute() const {
  LaurentPoly r(arity_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(negate(e), c);
  return r;
}

std::optional<LaurentPoly> LaurentPoly::unit_inverse() const {
  if (!is_monomial()) return std::nullopt;
  const auto& [e, c] = *terms_.begin();
  return monomial(arity_, negate(e), 1 / c);
}

Rational LaurentPoly::augmentation() const {
  Rational s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

LaurentPoly LaurentPoly::coefficient_in(int var, int d) const {
  LaurentPoly r(arity_);
  for (const auto& [e, c] : terms_) {
    if (e[var] != d) continue;
    Exponent f = e;
    f[var] = 0;
    r.terms_.emplace(f, c);
  }
  return r;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Exponent& e = it->first;
    Rational c = it->second;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (negative) {
      out << '-';
    } else if (!first) {
      out << '+';
    }
    first = false;
    std::string mono;
    for (int i = 0; i < arity_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += arity_ == 1 ? "t" : "t" + std::to_string(i + 1);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out << ring::to_string(c);
    } else if (c == 1) {
      out << mono;
    } else {
      out << ring::to_string(c) << '*' << mono;
    }
  }
  return out.str();
}

std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.arity() != b.arity()) throw DomainMismatch("divide_exact: arity mismatch");
  if (b.is_zero()) throw DivisionByZero("divide_exact by zero polynomial");
  const int k = a.arity();
  LaurentPoly q(k);
  if (a.is_zero()) return q;
  if (b.is_monomial()) return a * *b.unit_inverse();
  // Newton polytopes add under multiplication, so every quotient exponent sits
  // in the box [min(a) - min(b), max(a) - max(b)].
  const Exponent lo = a.min_exponents() - b.min_exponents();
  const Exponent hi = a.max_exponents() - b.max_exponents();
  for (int i = 0; i < k; ++i) {
    if (lo[i] > hi[i]) return std::nullopt;
  }
  const auto& [eb, cb] = b.leading_term();
  LaurentPoly r = a;
  while (!r.is_zero()) {
    const auto [er, cr] = r.leading_term();
    const Exponent e = er - eb;
    for (int i = 0; i < k; ++i) {
      if (e[i] < lo[i] || e[i] > hi[i]) return std::nullopt;
    }
    const Rational c = cr / cb;
    LaurentPoly t = LaurentPoly::monomial(k, e, c);
    q += t;
    r -= t * b;
  }
  return q;
}

LaurentPoly strip_monomial_content(const LaurentPoly& p, Exponent* removed) {
  const Exponent m = p.min_exponents();
  if (removed != nullptr) *removed = m;
  return p.shifted(negate(m));
}

namespace {

// Scale a nonzero polynomial so its lexicographically-least coefficient is 1.
LaurentPoly normalize_unit(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  const Rational c = p.trailing_term().second;
  return p * Rational(1 / c);
}

LaurentPoly gcd_rec(const LaurentPoly& a, const LaurentPoly& b, int var);

// Arithmetic in Z/P for the coprimality filter below.
using Word = std::uint64_t;

Word pow_mod(Word b, Word e, Word m) {
  Word r = 1;
  b %= m;
  while (e > 0) {
    if (e & 1U) r = r * b % m;
    b = b * b % m;
    e >>= 1U;
  }
  return r;
}

// Rational c modulo m; nullopt when the denominator vanishes mod m.
std::optional<Word> rational_mod(const Rational& c, Word m) {
  const mpz_class mm(static_cast<unsigned long>(m));
  mpz_class n = c.get_num() % mm;
  if (n < 0) n += mm;
  mpz_class d = c.get_den() % mm;
  if (d == 0) return std::nullopt;
  const Word dn = d.get_ui();
  return static_cast<Word>(n.get_ui()) * pow_mod(dn, m - 2, m) % m;
}

// Image of p in (Z/m)[t_{var+1}] after substituting point[k] for every other
// variable. Exponents are assumed non-negative.
std::optional<std::vector<Word>> univariate_image(const LaurentPoly& p, int var,
                                                  const std::array<Word, kMaxArity>& point, Word m) {
  std::vector<Word> out(static_cast<std::size_t>(p.degree_in(var)) + 1, 0);
  for (const auto& [e, c] : p.terms()) {
    auto v = rational_mod(c, m);
    if (!v) return std::nullopt;
    Word x = *v;
    for (int k = 0; k < p.arity(); ++k) {
      if (k != var) x = x * pow_mod(point[k], static_cast<Word>(e[k]), m) % m;
    }
    Word& slot = out[static_cast<std::size_t>(e[var])];
    slot = (slot + x) % m;
  }
  return out;
}

// Degree of the gcd of two univariate polynomials over Z/m (m prime).
int gcd_degree_mod(std::vector<Word> a, std::vector<Word> b, Word m) {
  auto trim = [](std::vector<Word>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    const Word inv = pow_mod(b.back(), m - 2, m);
    while (a.size() >= b.size()) {
      const Word q = a.back() * inv % m;
      const std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) {
        a[shift + j] = (a[shift + j] + (m - q) * b[j] % m) % m;
      }
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

// Sufficient test for gcd(a, b) = 1. For each variable in which both have
// positive degree, specialise the others modulo a prime at a point where
// neither leading coefficient vanishes; a constant univariate gcd bounds the
// true degree in that variable by zero.
bool certainly_coprime(const LaurentPoly& a, const LaurentPoly& b) {
  static constexpr Word kPrime = 2147483629ULL;
  static const std::array<std::array<Word, kMaxArity>, 3> kPoints = {
      {{1234567, 7654321, 3141592}, {2718281, 1618033, 1414213}, {998244353, 1000003, 5}}};
  for (int var = 0; var < a.arity(); ++var) {
    if (a.degree_in(var) == 0 || b.degree_in(var) == 0) continue;
    bool separated = false;
    for (const auto& point : kPoints) {
      auto ia = univariate_image(a, var, point, kPrime);
      auto ib = univariate_image(b, var, point, kPrime);
      if (!ia || !ib || ia->back() == 0 || ib->back() == 0) continue;
      separated = gcd_degree_mod(std::move(*ia), std::move(*ib), kPrime) == 0;
      break;
    }
    if (!separated) return false;
  }
  return true;
}

// gcd of the coefficients of `p` viewed as a polynomial in t_{var+1}.
LaurentPoly content_in(const LaurentPoly& p, int var) {
  const int k = p.arity();
  LaurentPoly g(k);
  const int deg = p.degree_in(var);
  for (int d = 0; d <= deg; ++d) {
    LaurentPoly c = p.coefficient_in(var, d);
    if (c.is_zero()) continue;
    if (c.is_constant()) return LaurentPoly::constant(k, 1);
    g = g.is_zero() ? normalize_unit(c) : gcd_rec(g, c, var - 1);
    if (g.is_constant()) return LaurentPoly::constant(k, 1);
  }
  return g;
}

LaurentPoly primitive_part(const LaurentPoly& p, int var) {
  LaurentPoly c = content_in(p, var);
  auto q = divide_exact(p, c);
  return normalize_unit(*q);
}

// Lazy pseudo-remainder of a by b with respect to t_{var+1}.
LaurentPoly pseudo_remainder(const LaurentPoly& a, const LaurentPoly& b, int var) {
  const int k = a.arity();
  const int db = b.degree_in(var);
  const LaurentPoly lb = b.coefficient_in(var, db);
  LaurentPoly r = a;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    const int dr = r.degree_in(var);
    const LaurentPoly lr = r.coefficient_in(var, dr);
    Exponent shift{};
    shift[var] = dr - db;
    r = lb * r - lr * b.shifted(shift);
    if (!r.is_zero()) r = normalize_unit(r);
  }
  (void)k;
  return r;
}

// gcd of polynomials (non-negative exponents) involving only t_1..t_{var+1}.
LaurentPoly gcd_rec(const LaurentPoly& a, const LaurentPoly& b, int var) {
  const int k = a.arity();
  if (a.is_zero()) return normalize_unit(b);
  if (b.is_zero()) return normalize_unit(a);
  if (a.is_constant() || b.is_constant()) return LaurentPoly::constant(k, 1);
  if (certainly_coprime(a, b)) return LaurentPoly::constant(k, 1);
  while (var >= 0 && a.degree_in(var) == 0 && b.degree_in(var) == 0) --var;
  if (var < 0) return LaurentPoly::constant(k, 1);
  const int da = a.degree_in(var);
  const int db = b.degree_in(var);
  if (da == 0) return gcd_rec(a, content_in(b, var), var - 1);
  if (db == 0) return gcd_rec(content_in(a, var), b, var - 1);

  const LaurentPoly ca = content_in(a, var);
  const LaurentPoly cb = content_in(b, var);
  const LaurentPoly c = gcd_rec(ca, cb, var - 1);
  LaurentPoly pa = normalize_unit(*divide_exact(a, ca));
  LaurentPoly pb = normalize_unit(*divide_exact(b, cb));
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  while (!pb.is_zero()) {
    LaurentPoly r = pseudo_remainder(pa, pb, var);
    pa = std::move(pb);
    if (r.is_zero()) {
      pb = LaurentPoly(k);
    } else if (r.degree_in(var) == 0) {
      // Remainder free of the main variable: primitive parts are coprime.
      pa = LaurentPoly::constant(k, 1);
      pb = LaurentPoly(k);
    } else {
      pb = primitive_part(r, var);
    }
  }
  return normalize_unit(c * primitive_part(pa, var));
}

// Integer-coefficient helpers for the heuristic gcd.
mpz_class integer_content(const LaurentPoly& p) {
  mpz_class g = 0;
  for (const auto& [e, c] : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

// Clear denominators and divide by the integer content.
LaurentPoly integer_primitive(const LaurentPoly& p) {
  mpz_class l = 1;
  for (const auto& [e, c] : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  LaurentPoly q = p * Rational(l);
  return q * Rational(mpz_class(1), integer_content(q));
}

mpz_class max_norm(const LaurentPoly& p) {
  mpz_class m = 0;
  for (const auto& [e, c] : p.terms()) {
    const mpz_class a = abs(c.get_num());
    if (a > m) m = a;
  }
  return m;
}

LaurentPoly evaluate_at(const LaurentPoly& p, int var, const mpz_class& xi) {
  LaurentPoly out(p.arity());
  std::vector<mpz_class> powers{1};
  for (const auto& [e, c] : p.terms()) {
    while (static_cast<int>(powers.size()) <= e[var]) powers.push_back(powers.back() * xi);
    Exponent f = e;
    f[var] = 0;
    out += LaurentPoly::monomial(p.arity(), f, c * powers[static_cast<std::size_t>(e[var])]);
  }
  return out;
}

// Symmetric xi-adic expansion of gamma into a polynomial in t_{var+1}.
LaurentPoly xi_adic_lift(LaurentPoly gamma, int var, const mpz_class& xi) {
  const int k = gamma.arity();
  LaurentPoly out(k);
  const mpz_class half = xi / 2;
  for (int i = 0; !gamma.is_zero(); ++i) {
    LaurentPoly digit(k);
    for (const auto& [e, c] : gamma.terms()) {
      mpz_class r = c.get_num() % xi;
      if (r < 0) r += xi;
      if (r > half) r -= xi;
      if (r != 0) digit += LaurentPoly::monomial(k, e, Rational(r));
    }
    Exponent shift{};
    shift[var] = i;
    out += digit.shifted(shift);
    gamma = (gamma - digit) * Rational(mpz_class(1), xi);
    if (i > 4096) return LaurentPoly(k);
  }
  return out;
}

// Heuristic gcd of integer polynomials with non-negative exponents; the
// result is exact (verified by division) or nullopt.
std::optional<LaurentPoly> heuristic_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  const int k = a.arity();
  const mpz_class ca = integer_content(a);
  const mpz_class cb = integer_content(b);
  mpz_class c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  if (a.is_constant() || b.is_constant()) return LaurentPoly::constant(k, Rational(c));
  const LaurentPoly pa = a * Rational(mpz_class(1), ca);
  const LaurentPoly pb = b * Rational(mpz_class(1), cb);
  int var = k - 1;
  while (pa.degree_in(var) == 0 && pb.degree_in(var) == 0) --var;
  const int deg = std::max(pa.degree_in(var), pb.degree_in(var));
  mpz_class xi = 2 * std::min(max_norm(pa), max_norm(pb)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) * static_cast<std::size_t>(deg) > 20000) return std::nullopt;
    auto gamma = heuristic_gcd(evaluate_at(pa, var, xi), evaluate_at(pb, var, xi));
    if (gamma) {
      LaurentPoly g = xi_adic_lift(*gamma, var, xi);
      if (!g.is_zero()) {
        g = g * Rational(mpz_class(1), integer_content(g));
        if (divide_exact(pa, g) && divide_exact(pb, g)) return g * Rational(c);
      }
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

}  // namespace

LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.arity() != b.arity()) throw DomainMismatch("gcd: arity mismatch");
  if (a.is_zero() && b.is_zero()) return a;
  const LaurentPoly pa = strip_monomial_content(a);
  const LaurentPoly pb = strip_monomial_content(b);
  if (pa.is_zero()) return normalize_unit(pb);
  if (pb.is_zero()) return normalize_unit(pa);
  if (certainly_coprime(pa, pb)) return LaurentPoly::constant(a.arity(), 1);
  if (auto g = heuristic_gcd(integer_primitive(pa), integer_primitive(pb))) {
    return normalize_unit(strip_monomial_content(*g));
  }
  return strip_monomial_content(gcd_rec(pa, pb, a.arity() - 1));
}

}  // namespace zpi::ring
