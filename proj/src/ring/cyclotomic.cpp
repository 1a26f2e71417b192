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

#include "zpi/ring/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "zpi/error.hpp"

namespace zpi::ring {

namespace upoly {

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

UPoly sub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.empty()) throw DivisionByZero("polynomial division by zero");
  UPoly r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  UPoly q(r.size() - b.size() + 1, Rational(0));
  const Rational& lb = b.back();
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const Rational c = r.back() / lb;
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
    trim(r);
  }
  trim(q);
  return {q, r};
}

}  // namespace upoly

namespace {

struct CycloCache {
  std::mutex mutex;
  std::map<int, UPoly> phi;
};

CycloCache& cache() {
  static CycloCache c;
  return c;
}

UPoly compute_phi(int n) {
  // x^n - 1 = prod_{d | n} Phi_d(x)
  UPoly num(static_cast<std::size_t>(n) + 1, Rational(0));
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    num = upoly::divmod(num, cyclotomic_polynomial(d)).first;
  }
  return num;
}

}  // namespace

const UPoly& cyclotomic_polynomial(int p) {
  if (p < 1) throw InvalidInput("cyclotomic modulus must be positive");
  {
    std::lock_guard<std::mutex> lock(cache().mutex);
    auto it = cache().phi.find(p);
    if (it != cache().phi.end()) return it->second;
  }
  UPoly phi = compute_phi(p);
  std::lock_guard<std::mutex> lock(cache().mutex);
  return cache().phi.emplace(p, std::move(phi)).first->second;
}

CyclotomicNumber::CyclotomicNumber(int p) : p_(p) {
  if (p < 1) throw InvalidInput("cyclotomic modulus must be positive");
}

CyclotomicNumber::CyclotomicNumber(int p, std::vector<Rational> coeffs) : p_(p) {
  if (p < 1) throw InvalidInput("cyclotomic modulus must be positive");
  upoly::trim(coeffs);
  coeffs_ = upoly::divmod(coeffs, cyclotomic_polynomial(p)).second;
}

CyclotomicNumber CyclotomicNumber::constant(int p, const Rational& c) {
  return CyclotomicNumber(p, UPoly{c});
}

CyclotomicNumber CyclotomicNumber::zeta_power(int p, long m) {
  long r = m % p;
  if (r < 0) r += p;
  UPoly c(static_cast<std::size_t>(r) + 1, Rational(0));
  c[r] = 1;
  return CyclotomicNumber(p, std::move(c));
}

int CyclotomicNumber::degree() const {
  return static_cast<int>(cyclotomic_polynomial(p_).size()) - 1;
}

std::vector<Rational> CyclotomicNumber::coefficients() const {
  std::vector<Rational> out = coeffs_;
  out.resize(static_cast<std::size_t>(degree()), Rational(0));
  return out;
}

void CyclotomicNumber::check(const CyclotomicNumber& other) const {
  if (p_ != other.p_) {
    throw DomainMismatch("cyclotomic moduli " + std::to_string(p_) + " and " +
                         std::to_string(other.p_));
  }
}

CyclotomicNumber CyclotomicNumber::operator-() const {
  CyclotomicNumber r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CyclotomicNumber operator+(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  a.check(b);
  UPoly r(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
  upoly::trim(r);
  CyclotomicNumber out(a.p_);
  out.coeffs_ = std::move(r);
  return out;
}

CyclotomicNumber operator-(const CyclotomicNumber& a, const CyclotomicNumber& b) { return a + (-b); }

CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  a.check(b);
  return CyclotomicNumber(a.p_, upoly::mul(a.coeffs_, b.coeffs_));
}

CyclotomicNumber CyclotomicNumber::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in Q(zeta_" + std::to_string(p_) + ")");
  // Extended Euclid: maintain s with s * a == r (mod Phi).
  UPoly r0 = cyclotomic_polynomial(p_);
  UPoly r1 = coeffs_;
  UPoly s0{};
  UPoly s1{Rational(1)};
  while (r1.size() > 1) {
    auto [q, rem] = upoly::divmod(r0, r1);
    UPoly s2 = upoly::sub(s0, upoly::mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw NotInvertible("element shares a factor with Phi_p");
  const Rational c = 1 / r1[0];
  for (auto& x : s1) x *= c;
  return CyclotomicNumber(p_, std::move(s1));
}

CyclotomicNumber CyclotomicNumber::involute() const {
  CyclotomicNumber out(p_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    CyclotomicNumber term = zeta_power(p_, -static_cast<long>(i));
    for (auto& c : term.coeffs_) c *= coeffs_[i];
    out = out + term;
  }
  return out;
}

std::string CyclotomicNumber::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    Rational c = coeffs_[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (negative) {
      out << '-';
    } else if (!first) {
      out << '+';
    }
    first = false;
    std::string mono;
    if (k == 1) mono = "z";
    if (k > 1) mono = "z^" + std::to_string(k);
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

}  // namespace zpi::ring
