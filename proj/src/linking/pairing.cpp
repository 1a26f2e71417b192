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

#include "zpi/linking/pairing.hpp"

#include <set>
#include <sstream>

#include "zpi/error.hpp"

namespace zpi::linking {

namespace {

std::set<std::string> pair_cells(const IntersectionTable& t) {
  std::set<std::string> out;
  for (const auto& r : t.pairs) {
    out.insert(r.first);
    out.insert(r.second);
  }
  return out;
}

std::set<std::string> triple_cells(const IntersectionTable& t) {
  std::set<std::string> out;
  for (const auto& r : t.triples) out.insert(r.cells.begin(), r.cells.end());
  return out;
}

template <class ChainT>
void check_labels(const ChainT& c, const std::set<std::string>& known) {
  for (const auto& [label, coef] : c) {
    if (known.count(label) == 0) throw InvalidInput("cell '" + label + "' does not appear in the intersection table");
  }
}

FieldElement to_field(const LaurentPoly& p, const ring::FieldSpec& spec) {
  if (spec.kind != ring::FieldSpec::Kind::RationalFunctions || spec.vars != p.arity()) {
    throw DomainMismatch("table weights of arity " + std::to_string(p.arity()) + " paired with coefficients in " +
                         spec.describe());
  }
  return FieldElement(p);
}

}  // namespace

bool IntersectionTable::is_bar_symmetric() const {
  std::map<std::pair<std::string, std::string>, LaurentPoly> total;
  for (const auto& r : pairs) {
    auto [it, fresh] = total.try_emplace({r.first, r.second}, LaurentPoly(arity));
    it->second += r.weight;
  }
  for (const auto& [key, w] : total) {
    auto it = total.find({key.second, key.first});
    const LaurentPoly mirror = it == total.end() ? LaurentPoly(arity) : it->second;
    if (mirror != w.involute()) return false;
  }
  return true;
}

FieldElement pairing(const IntersectionTable& table, const Chain& c1, const Chain& c2) {
  const auto known = pair_cells(table);
  check_labels(c1, known);
  check_labels(c2, known);
  FieldElement out = FieldElement::zero(ring::FieldSpec::rational_functions(table.arity));
  for (const auto& r : table.pairs) {
    auto a = c1.find(r.first);
    auto b = c2.find(r.second);
    if (a == c1.end() || b == c2.end()) continue;
    out += a->second * b->second * to_field(r.weight, a->second.spec());
  }
  return out;
}

Tensor3 pairing(const IntersectionTable& table, const LaurentChain& c1, const LaurentChain& c2,
                const LaurentChain& c3) {
  const auto known = triple_cells(table);
  check_labels(c1, known);
  check_labels(c2, known);
  check_labels(c3, known);
  Tensor3 out;
  const std::array<const LaurentChain*, 3> chains{&c1, &c2, &c3};
  for (const auto& r : table.triples) {
    std::array<const LaurentPoly*, 3> coef{};
    bool present = true;
    for (std::size_t k = 0; k < 3; ++k) {
      auto it = chains[k]->find(r.cells[k]);
      present = present && it != chains[k]->end();
      if (present) coef[k] = &it->second;
    }
    if (!present) continue;
    for (const auto& [w, wc] : r.weight) {
      for (const auto& [e0, x0] : coef[0]->terms()) {
        for (const auto& [e1, x1] : coef[1]->terms()) {
          for (const auto& [e2, x2] : coef[2]->terms()) {
            const std::array<Exponent, 3> key{ring::operator+(w[0], e0), ring::operator+(w[1], e1),
                                              ring::operator+(w[2], e2)};
            Rational& slot = out[key];
            slot += wc * x0 * x1 * x2;
            if (slot == 0) out.erase(key);
          }
        }
      }
    }
  }
  return out;
}

Chain apply_propagator(const complex::BasedChainComplex& c, const complex::Propagator& g,
                       const std::string& generator) {
  for (int d = 0; d <= c.top_degree(); ++d) {
    const auto& names = c.basis[static_cast<std::size_t>(d)];
    for (std::size_t q = 0; q < names.size(); ++q) {
      if (names[q] != generator) continue;
      const int target = g.adjoint ? d - 1 : d + 1;
      Chain out;
      if (target < 0 || target > c.top_degree()) return out;
      const complex::Matrix& m = g.maps[static_cast<std::size_t>(g.adjoint ? d - 1 : d)];
      const auto& tnames = c.basis[static_cast<std::size_t>(target)];
      for (std::size_t p = 0; p < tnames.size(); ++p) {
        if (!m(p, q).is_zero()) out.emplace(tnames[p], m(p, q));
      }
      return out;
    }
  }
  throw InvalidInput("generator '" + generator + "' not in the complex");
}

FieldElement lkhat_from_propagator(const IntersectionTable& table, const complex::BasedChainComplex& c,
                                   const complex::Propagator& g, const std::string& cycle,
                                   const std::string& other) {
  const Chain image = apply_propagator(c, g, cycle);
  // Boundary of the image: with d for g, with the adjoint d* (bar transpose
  // of d, raising degree) for g*.
  int degree = -1;
  for (int d = 0; d <= c.top_degree(); ++d) {
    for (const auto& n : c.basis[static_cast<std::size_t>(d)]) {
      if (n == cycle) degree = d;
    }
  }
  const int source = g.adjoint ? degree - 1 : degree + 1;
  Chain boundary;
  if (source >= 0 && source <= c.top_degree()) {
    const complex::Matrix dm = g.adjoint ? c.differential(degree).adjoint() : c.differential(source);
    const auto& snames = c.basis[static_cast<std::size_t>(source)];
    const auto& tnames = c.basis[static_cast<std::size_t>(degree)];
    for (std::size_t q = 0; q < snames.size(); ++q) {
      auto it = image.find(snames[q]);
      if (it == image.end()) continue;
      for (std::size_t p = 0; p < tnames.size(); ++p) {
        if (dm(p, q).is_zero()) continue;
        auto [slot, fresh] = boundary.try_emplace(tnames[p], FieldElement::zero(c.field));
        slot->second += dm(p, q) * it->second;
      }
    }
  }
  for (auto it = boundary.begin(); it != boundary.end();) {
    it = it->second.is_zero() ? boundary.erase(it) : std::next(it);
  }
  const Chain expected{{cycle, FieldElement::one(c.field)}};
  if (boundary != expected) {
    throw PreconditionFailed("boundary of the propagator image of '" + cycle + "' is not '" + cycle + "'");
  }
  Chain target;
  for (int d = 0; d <= c.top_degree(); ++d) {
    for (const auto& n : c.basis[static_cast<std::size_t>(d)]) {
      if (n == other) target.emplace(other, FieldElement::one(c.field));
    }
  }
  if (target.empty()) throw InvalidInput("generator '" + other + "' not in the complex");
  // Cells without recorded intersections contribute nothing.
  const auto known = pair_cells(table);
  Chain met;
  for (const auto& [label, coef] : image) {
    if (known.count(label) != 0) met.emplace(label, coef);
  }
  if (met.empty() || known.count(other) == 0) return FieldElement::zero(c.field);
  return pairing(table, met, target);
}

LaurentPoly normalize_monomial(const LaurentPoly& x) {
  if (x.is_zero()) return x;
  return x.shifted(ring::negate(x.trailing_term().first));
}

std::string to_string(const Tensor3& t) {
  if (t.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, c] : t) {
    if (!first) out << " + ";
    first = false;
    out << ring::to_string(c) << "*";
    for (std::size_t k = 0; k < 3; ++k) {
      if (k != 0) out << "(x)";
      out << LaurentPoly::monomial(3, key[k]).to_string();
    }
  }
  return out.str();
}

}  // namespace zpi::linking
