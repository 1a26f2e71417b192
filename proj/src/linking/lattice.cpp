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

#include "zpi/linking/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>

#include "zpi/error.hpp"

namespace zpi::linking {

using ring::LaurentPoly;
using ring::Rational;

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

bool is_unit_step(const Point& a, const Point& b) {
  long total = 0;
  for (int i = 0; i < 3; ++i) total += std::labs(b[i] - a[i]);
  return total == 1;
}

// Closing step of a cyclic loop: the unit step s with last + s = first modulo
// the period lattice.
std::optional<Point> closing_step(const Loop& loop, long period) {
  const Point& last = loop.back();
  const Point& first = loop.front();
  if (is_unit_step(last, first)) {
    Point s{};
    for (int i = 0; i < 3; ++i) s[i] = first[i] - last[i];
    return s;
  }
  for (int axis = 0; axis < 3; ++axis) {
    for (long dir : {-1L, 1L}) {
      Point end = last;
      end[axis] += dir;
      bool ok = true;
      for (int i = 0; i < 3; ++i) ok = ok && (end[i] - first[i]) % period == 0;
      if (ok) {
        Point s{};
        s[axis] = dir;
        return s;
      }
    }
  }
  return std::nullopt;
}

// Vertices and step midpoints at doubled coordinates; two unit-step lattice
// curves meet iff they share one of these.
std::vector<Point> refined_points(const Loop& loop, const Point& closing) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Point& a = loop[i];
    Point b{};
    if (i + 1 < loop.size()) {
      b = loop[i + 1];
    } else {
      for (int k = 0; k < 3; ++k) b[k] = a[k] + closing[k];
    }
    out.push_back({2 * a[0], 2 * a[1], 2 * a[2]});
    out.push_back({a[0] + b[0], a[1] + b[1], a[2] + b[2]});
  }
  return out;
}

Point reduce_mod(Point p, long modulus) {
  for (auto& x : p) {
    x %= modulus;
    if (x < 0) x += modulus;
  }
  return p;
}

void check_lattice_loop(const Loop& loop, long period, const std::string& name) {
  if (loop.size() < 2) throw InvalidInput(name + " needs at least two vertices");
  for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
    if (!is_unit_step(loop[i], loop[i + 1])) {
      throw InvalidInput(name + ": step " + std::to_string(i) + " is not a unit lattice step");
    }
  }
  if (!closing_step(loop, period)) throw InvalidInput(name + " does not close with a unit step");
}

// Exact geometry for the cone count.
using Vec = std::array<Rational, 3>;

Vec to_vec(const Point& p) { return {Rational(p[0]), Rational(p[1]), Rational(p[2])}; }

Vec sub(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Vec cross(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Rational dot(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

int sgn(const Rational& x) { return mpq_sgn(x.get_mpq_t()); }

// Sign of det(b - a, c - a, d - a).
int orient(const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
  return sgn(dot(cross(sub(b, a), sub(c, a)), sub(d, a)));
}

using Vec2 = std::array<Rational, 2>;

int orient2(const Vec2& a, const Vec2& b, const Vec2& c) {
  return sgn((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
}

bool on_segment2(const Vec2& a, const Vec2& b, const Vec2& p) {
  return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) && std::min(a[1], b[1]) <= p[1] &&
         p[1] <= std::max(a[1], b[1]);
}

bool segments_meet2(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const int o1 = orient2(a, b, c), o2 = orient2(a, b, d), o3 = orient2(c, d, a), o4 = orient2(c, d, b);
  if (o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0 && (o1 != 0 || o2 != 0)) return true;
  if (o1 == 0 && on_segment2(a, b, c)) return true;
  if (o2 == 0 && on_segment2(a, b, d)) return true;
  if (o3 == 0 && on_segment2(c, d, a)) return true;
  if (o4 == 0 && on_segment2(c, d, b)) return true;
  return false;
}

bool in_triangle2(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
  const int s1 = orient2(a, b, p), s2 = orient2(b, c, p), s3 = orient2(c, a, p);
  const bool has_neg = s1 < 0 || s2 < 0 || s3 < 0;
  const bool has_pos = s1 > 0 || s2 > 0 || s3 > 0;
  return !(has_neg && has_pos);
}

// Projection onto the coordinate plane best aligned with the normal.
struct Projector {
  int drop;
  explicit Projector(const Vec& normal) {
    drop = 0;
    for (int i = 1; i < 3; ++i) {
      if (abs(normal[static_cast<std::size_t>(i)]) > abs(normal[static_cast<std::size_t>(drop)])) drop = i;
    }
  }
  Vec2 operator()(const Vec& v) const {
    Vec2 out;
    int k = 0;
    for (int i = 0; i < 3; ++i) {
      if (i != drop) out[static_cast<std::size_t>(k++)] = v[static_cast<std::size_t>(i)];
    }
    return out;
  }
};

enum class Crossing { None, Positive, Negative, Degenerate };

// Crossing of segment a0 a1 with the triangle (apex, b0, b1).
Crossing cross_triangle(const Vec& a0, const Vec& a1, const Vec& apex, const Vec& b0, const Vec& b1) {
  const Vec normal = cross(sub(b0, apex), sub(b1, apex));
  if (normal[0] == 0 && normal[1] == 0 && normal[2] == 0) return Crossing::Degenerate;
  const int o1 = orient(apex, b0, b1, a0);
  const int o2 = orient(apex, b0, b1, a1);
  if (o1 != 0 && o1 == o2) return Crossing::None;
  if (o1 == 0 || o2 == 0) {
    const Projector proj(normal);
    const Vec2 p = proj(apex), q = proj(b0), r = proj(b1);
    bool touches = false;
    if (o1 == 0 && o2 == 0) {
      const Vec2 s = proj(a0), t = proj(a1);
      touches = in_triangle2(s, p, q, r) || in_triangle2(t, p, q, r) || segments_meet2(s, t, p, q) ||
                segments_meet2(s, t, q, r) || segments_meet2(s, t, r, p);
    } else {
      touches = in_triangle2(proj(o1 == 0 ? a0 : a1), p, q, r);
    }
    return touches ? Crossing::Degenerate : Crossing::None;
  }
  const int e1 = orient(a0, a1, apex, b0);
  const int e2 = orient(a0, a1, b0, b1);
  const int e3 = orient(a0, a1, b1, apex);
  const bool has_neg = e1 < 0 || e2 < 0 || e3 < 0;
  const bool has_pos = e1 > 0 || e2 > 0 || e3 > 0;
  if (has_neg && has_pos) return Crossing::None;
  if (e2 == 0) throw InvalidInput("loops intersect");
  if (e1 == 0 || e3 == 0) return Crossing::Degenerate;
  return o2 > 0 ? Crossing::Positive : Crossing::Negative;
}

std::optional<long> cone_count(const std::vector<Vec>& a, const std::vector<Vec>& b, const Vec& apex) {
  long total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Vec& a0 = a[i];
    const Vec& a1 = a[(i + 1) % a.size()];
    for (std::size_t k = 0; k < b.size(); ++k) {
      switch (cross_triangle(a0, a1, apex, b[k], b[(k + 1) % b.size()])) {
        case Crossing::None:
          break;
        case Crossing::Positive:
          ++total;
          break;
        case Crossing::Negative:
          --total;
          break;
        case Crossing::Degenerate:
          return std::nullopt;
      }
    }
  }
  return total;
}

}  // namespace

void LatticeLink::validate() const {
  if (period < 1) throw InvalidInput("period must be positive");
  if (framings.size() != loops.size()) throw InvalidInput("one framing per loop required");
  std::set<Point> seen;
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const std::string name = "loop " + std::to_string(i);
    check_lattice_loop(loops[i], period, name);
    std::set<Point> own;
    for (const Point& p : refined_points(loops[i], *closing_step(loops[i], period))) {
      if (!own.insert(reduce_mod(p, 2 * period)).second) throw InvalidInput(name + " is not embedded in the torus");
    }
    for (const Point& p : own) {
      if (!seen.insert(p).second) throw InvalidInput(name + " meets an earlier loop in the torus");
    }
  }
}

LaurentPoly holonomy_of_path(const std::vector<Point>& path, long period) {
  if (period < 1) throw InvalidInput("period must be positive");
  ring::Exponent e{};
  if (!path.empty()) {
    // Planes sit at x = period * k - 1/2; with doubled coordinates that is
    // 2x = 2 period k - 1.
    for (int i = 0; i < 3; ++i) {
      const long start = floor_div(2 * path.front()[i] + 1, 2 * period);
      const long end = floor_div(2 * path.back()[i] + 1, 2 * period);
      e[static_cast<std::size_t>(i)] = static_cast<int>(end - start);
    }
  }
  return LaurentPoly::monomial(3, e);
}

Point displacement(const Loop& loop, long period) {
  if (loop.empty()) return {0, 0, 0};
  const auto s = closing_step(loop, period);
  if (!s) throw InvalidInput("loop does not close with a unit step");
  Point d{};
  for (int i = 0; i < 3; ++i) d[i] = loop.back()[i] + (*s)[i] - loop.front()[i];
  return d;
}

Loop translated(const Loop& loop, const Point& v) {
  Loop out = loop;
  for (auto& p : out) {
    for (int i = 0; i < 3; ++i) p[i] += v[i];
  }
  return out;
}

long lk_integer(const Loop& a, const Loop& b) {
  check_lattice_loop(a, 1, "first loop");
  check_lattice_loop(b, 1, "second loop");
  if (!is_unit_step(a.back(), a.front()) || !is_unit_step(b.back(), b.front())) {
    throw InvalidInput("linking number needs loops closed in R^3");
  }
  {
    std::set<Point> pa;
    for (const Point& p : refined_points(a, *closing_step(a, 1))) pa.insert(p);
    for (const Point& p : refined_points(b, *closing_step(b, 1))) {
      if (pa.count(p) != 0) throw InvalidInput("loops intersect");
    }
  }
  std::vector<Vec> va, vb;
  for (const Point& p : a) va.push_back(to_vec(p));
  for (const Point& p : b) vb.push_back(to_vec(p));
  Vec centre{};
  for (const Vec& v : vb) {
    for (int i = 0; i < 3; ++i) centre[static_cast<std::size_t>(i)] += v[static_cast<std::size_t>(i)];
  }
  for (auto& x : centre) x /= static_cast<long>(vb.size());

  std::mt19937_64 rng(0x6c6b);
  std::uniform_int_distribution<long> offset(-997, 997);
  static constexpr long kDenominators[3] = {1009, 1013, 1019};
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec apex = centre;
    for (std::size_t i = 0; i < 3; ++i) {
      Rational r(offset(rng), kDenominators[i]);
      r.canonicalize();
      apex[i] += r;
      if (apex[i].get_den() == 1) apex[i] += Rational(1, 2 * kDenominators[i]);
    }
    if (auto count = cone_count(va, vb, apex)) return *count;
  }
  throw Degenerate("no transversal cone apex found after 64 attempts");
}

LaurentPoly lk_equivariant(const LatticeLink& link, std::size_t i, std::size_t j) {
  link.validate();
  if (i >= link.loops.size() || j >= link.loops.size()) throw InvalidInput("component index out of range");
  if (i == j) throw InvalidInput("equivariant linking needs two distinct components");
  const Loop& a = link.loops[i];
  const Loop& b = link.loops[j];
  for (std::size_t k : {i, j}) {
    if (displacement(link.loops[k], link.period) != Point{0, 0, 0}) {
      throw InvalidInput("component " + std::to_string(k) + " is not nullhomotopic");
    }
  }
  Point amin = a[0], amax = a[0], bmin = b[0], bmax = b[0];
  for (const Point& p : a) {
    for (int k = 0; k < 3; ++k) {
      amin[k] = std::min(amin[k], p[k]);
      amax[k] = std::max(amax[k], p[k]);
    }
  }
  for (const Point& p : b) {
    for (int k = 0; k < 3; ++k) {
      bmin[k] = std::min(bmin[k], p[k]);
      bmax[k] = std::max(bmax[k], p[k]);
    }
  }
  const long m = link.period;
  Point lo{}, hi{};
  for (int k = 0; k < 3; ++k) {
    lo[k] = ceil_div(bmin[k] - amax[k], m);
    hi[k] = floor_div(bmax[k] - amin[k], m);
  }
  LaurentPoly out(3);
  for (long z0 = lo[0]; z0 <= hi[0]; ++z0) {
    for (long z1 = lo[1]; z1 <= hi[1]; ++z1) {
      for (long z2 = lo[2]; z2 <= hi[2]; ++z2) {
        const long lk = lk_integer(a, translated(b, {-m * z0, -m * z1, -m * z2}));
        if (lk != 0) {
          out += LaurentPoly::monomial(3, {static_cast<int>(z0), static_cast<int>(z1), static_cast<int>(z2)}, lk);
        }
      }
    }
  }
  return out;
}

std::vector<std::vector<LaurentPoly>> linking_matrix(const LatticeLink& link) {
  link.validate();
  const std::size_t n = link.loops.size();
  std::vector<std::vector<LaurentPoly>> m(n, std::vector<LaurentPoly>(n, LaurentPoly(3)));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = LaurentPoly::constant(3, link.framings[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      m[i][j] = lk_equivariant(link, i, j);
      m[j][i] = m[i][j].involute();
    }
  }
  return m;
}

bool is_pi_algebraically_split(const LatticeLink& link) {
  const auto m = linking_matrix(link);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i == j) {
        const long f = link.framings[i];
        if (f != 1 && f != -1) return false;
      } else if (!m[i][j].is_zero()) {
        return false;
      }
    }
  }
  return true;
}

LatticeLink normalize_lifts(const LatticeLink& link) {
  LatticeLink out = link;
  for (auto& loop : out.loops) {
    if (loop.empty()) continue;
    const Point least = *std::min_element(loop.begin(), loop.end());
    Point shift{};
    for (int k = 0; k < 3; ++k) shift[k] = -link.period * floor_div(least[k], link.period);
    loop = translated(loop, shift);
  }
  return out;
}

}  // namespace zpi::linking
