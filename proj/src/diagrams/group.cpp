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

#include "zpi/diagrams/group.hpp"

#include <algorithm>

#include "zpi/error.hpp"

namespace zpi::diagrams {

GroupSpec GroupSpec::cyclic(int p) {
  if (p < 2) throw InvalidInput("Z/p needs p >= 2");
  return {Kind::Zp, p};
}

GroupSpec GroupSpec::parse(const std::string& text) {
  if (text == "trivial" || text == "1") return trivial();
  if (text == "Z") return integers();
  if (text == "Z3" || text == "Z^3") return lattice3();
  for (const std::string prefix : {"Zp:", "Z/", "Z_"}) {
    if (text.rfind(prefix, 0) == 0) {
      try {
        return cyclic(std::stoi(text.substr(prefix.size())));
      } catch (const std::logic_error&) {
        break;
      }
    }
  }
  throw InvalidInput("unknown group '" + text + "' (expected trivial, Z, Z3 or Zp:<p>)");
}

std::string GroupSpec::name() const {
  switch (kind) {
    case Kind::Trivial: return "trivial";
    case Kind::Z: return "Z";
    case Kind::Zp: return "Zp:" + std::to_string(p);
    case Kind::Z3: return "Z3";
  }
  return "?";
}

int GroupSpec::rank() const {
  switch (kind) {
    case Kind::Trivial: return 0;
    case Kind::Z:
    case Kind::Zp: return 1;
    case Kind::Z3: return 3;
  }
  return 0;
}

Exponent GroupSpec::reduce(Exponent e) const {
  for (int i = rank(); i < ring::kMaxArity; ++i) e[static_cast<std::size_t>(i)] = 0;
  if (kind == Kind::Zp) e[0] = ((e[0] % p) + p) % p;
  return e;
}

Exponent GroupSpec::mul(const Exponent& a, const Exponent& b) const { return reduce(ring::operator+(a, b)); }

Exponent GroupSpec::bar(const Exponent& a) const { return reduce(ring::negate(a)); }

std::vector<Exponent> GroupSpec::generators() const {
  std::vector<Exponent> out;
  for (int i = 0; i < rank(); ++i) {
    Exponent e{};
    e[static_cast<std::size_t>(i)] = 1;
    out.push_back(reduce(e));
  }
  return out;
}

std::vector<Exponent> GroupSpec::support(int bound) const {
  if (bound < 0) throw InvalidInput("support bound must be non-negative");
  std::vector<Exponent> out;
  const int r = rank();
  Exponent e{};
  // Odometer over [-B, B]^r.
  for (int i = 0; i < r; ++i) e[static_cast<std::size_t>(i)] = -bound;
  while (true) {
    out.push_back(reduce(e));
    int i = 0;
    while (i < r && e[static_cast<std::size_t>(i)] == bound) {
      e[static_cast<std::size_t>(i)] = -bound;
      ++i;
    }
    if (i >= r) break;
    ++e[static_cast<std::size_t>(i)];
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool GroupSpec::in_support(const Exponent& e, int bound) const {
  const Exponent r = reduce(e);
  if (kind == Kind::Zp) return r[0] <= bound || p - r[0] <= bound;
  for (int i = 0; i < rank(); ++i) {
    if (std::abs(r[static_cast<std::size_t>(i)]) > bound) return false;
  }
  return true;
}

ring::LaurentPoly GroupSpec::normalize(const ring::LaurentPoly& x) const {
  if (x.arity() != arity()) {
    throw InvalidInput("decoration has arity " + std::to_string(x.arity()) + ", group " + name() +
                       " expects " + std::to_string(arity()));
  }
  ring::LaurentPoly out(arity());
  for (const auto& [e, c] : x.terms()) {
    if (rank() == 0 && e != Exponent{}) throw InvalidInput("trivial group decorations must be constants");
    out += ring::LaurentPoly::monomial(arity(), reduce(e), c);
  }
  return out;
}

}  // namespace zpi::diagrams
