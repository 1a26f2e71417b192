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

// Independent reference computations shared by the unit tests and the
// acceptance binary.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "zpi/linking/lattice.hpp"

namespace zpi_test {

using zpi::linking::Loop;
using zpi::linking::Point;

using V3 = std::array<double, 3>;

inline V3 sub3(const V3& a, const V3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline V3 cross3(const V3& a, const V3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double dot3(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Solid-angle contribution of a segment pair (Klenin-Langowski), divided by 4 pi.
inline double segment_pair_linking(const V3& p1, const V3& p2, const V3& p3, const V3& p4) {
  const V3 r13 = sub3(p3, p1), r14 = sub3(p4, p1), r23 = sub3(p3, p2), r24 = sub3(p4, p2);
  std::array<V3, 4> n{cross3(r13, r14), cross3(r14, r24), cross3(r24, r23), cross3(r23, r13)};
  for (auto& v : n) {
    const double len = std::sqrt(dot3(v, v));
    if (len < 1e-12) return 0.0;
    for (auto& x : v) x /= len;
  }
  double omega = 0;
  for (int i = 0; i < 4; ++i) omega += std::asin(std::clamp(dot3(n[i], n[(i + 1) % 4]), -1.0, 1.0));
  const double orientation = dot3(cross3(sub3(p4, p3), sub3(p2, p1)), r13);
  if (orientation == 0) return 0.0;
  return (orientation > 0 ? omega : -omega) / (4 * M_PI);
}

// Floating Gauss linking integral of two closed polygons.
inline double gauss_linking_float(const Loop& a, const Loop& b) {
  auto v = [](const Point& p) { return V3{double(p[0]), double(p[1]), double(p[2])}; };
  double total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      total += segment_pair_linking(v(a[i]), v(a[(i + 1) % a.size()]), v(b[j]), v(b[(j + 1) % b.size()]));
    }
  }
  return total;
}

// Random embedded lattice polygon: a rectangle in a random coordinate plane,
// then a few outward pushes of single edges that keep it embedded.
inline Loop random_lattice_loop(std::mt19937& rng, long lo, long hi, long max_side) {
  std::uniform_int_distribution<long> pos(lo, hi), side(1, max_side);
  std::uniform_int_distribution<int> axis(0, 2), coin(0, 1), pushes(0, 4);
  const int u = axis(rng);
  int w = axis(rng);
  while (w == u) w = axis(rng);
  Point origin{pos(rng), pos(rng), pos(rng)};
  const long su = side(rng), sw = side(rng);
  Loop loop;
  Point p = origin;
  for (long k = 0; k < su; ++k, ++p[u]) loop.push_back(p);
  for (long k = 0; k < sw; ++k, ++p[w]) loop.push_back(p);
  for (long k = 0; k < su; ++k, --p[u]) loop.push_back(p);
  for (long k = 0; k < sw; ++k, --p[w]) loop.push_back(p);
  const int n_push = pushes(rng);
  for (int t = 0; t < n_push; ++t) {
    std::uniform_int_distribution<std::size_t> at(0, loop.size() - 1);
    const std::size_t i = at(rng);
    const Point a = loop[i], b = loop[(i + 1) % loop.size()];
    int along = 0;
    while (a[along] == b[along]) ++along;
    int dir = axis(rng);
    while (dir == along) dir = axis(rng);
    const long sgn = coin(rng) == 0 ? -1 : 1;
    Point a2 = a, b2 = b;
    a2[dir] += sgn;
    b2[dir] += sgn;
    std::set<Point> used(loop.begin(), loop.end());
    if (used.count(a2) != 0 || used.count(b2) != 0) continue;
    loop.insert(loop.begin() + static_cast<long>(i) + 1, {a2, b2});
  }
  return loop;
}

// Doubled-coordinate vertices and midpoints, for disjointness checks in R^3.
inline std::set<Point> refined(const Loop& loop) {
  std::set<Point> out;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Point& a = loop[i];
    const Point& b = loop[(i + 1) % loop.size()];
    out.insert({2 * a[0], 2 * a[1], 2 * a[2]});
    out.insert({a[0] + b[0], a[1] + b[1], a[2] + b[2]});
  }
  return out;
}

inline bool disjoint(const Loop& a, const Loop& b) {
  const auto ra = refined(a);
  for (const Point& p : refined(b)) {
    if (ra.count(p) != 0) return false;
  }
  return true;
}

// Random pushes applied to a loop, keeping it embedded and away from `avoid`.
inline void perturb(std::mt19937& rng, Loop& loop, const Loop& avoid, int count) {
  std::uniform_int_distribution<int> axis(0, 2), coin(0, 1);
  const auto blocked = refined(avoid);
  for (int t = 0; t < count; ++t) {
    std::uniform_int_distribution<std::size_t> at(0, loop.size() - 1);
    const std::size_t i = at(rng);
    const Point a = loop[i], b = loop[(i + 1) % loop.size()];
    int along = 0;
    while (a[along] == b[along]) ++along;
    int dir = axis(rng);
    while (dir == along) dir = axis(rng);
    const long sgn = coin(rng) == 0 ? -1 : 1;
    Point a2 = a, b2 = b;
    a2[dir] += sgn;
    b2[dir] += sgn;
    Loop next = loop;
    next.insert(next.begin() + static_cast<long>(i) + 1, {a2, b2});
    std::set<Point> seen;
    bool ok = true;
    for (std::size_t k = 0; k < next.size() && ok; ++k) {
      const Point& p = next[k];
      const Point& q = next[(k + 1) % next.size()];
      for (const Point& r : {Point{2 * p[0], 2 * p[1], 2 * p[2]}, Point{p[0] + q[0], p[1] + q[1], p[2] + q[2]}}) {
        ok = ok && seen.insert(r).second && blocked.count(r) == 0;
      }
    }
    if (ok) loop = next;
  }
}

// Threaded pair: a rectangle in the xy-plane and a rectangle in a plane y = k
// crossing its interior once, then perturbed and moved by a random signed
// axis permutation.
inline std::pair<Loop, Loop> random_threaded_pair(std::mt19937& rng) {
  std::uniform_int_distribution<long> side(2, 4), small(1, 2);
  const long su = side(rng), sw = side(rng);
  std::uniform_int_distribution<long> ky(1, sw - 1), kx(1, su - 1);
  const long y = ky(rng), xb = kx(rng), len = su - xb + small(rng), h1 = small(rng), h2 = small(rng);
  Loop a, b;
  for (long x = 0; x < su; ++x) a.push_back({x, 0, 0});
  for (long v = 0; v < sw; ++v) a.push_back({su, v, 0});
  for (long x = su; x > 0; --x) a.push_back({x, sw, 0});
  for (long v = sw; v > 0; --v) a.push_back({0, v, 0});
  for (long x = xb; x < xb + len; ++x) b.push_back({x, y, -h1});
  for (long z = -h1; z < h2; ++z) b.push_back({xb + len, y, z});
  for (long x = xb + len; x > xb; --x) b.push_back({x, y, h2});
  for (long z = h2; z > -h1; --z) b.push_back({xb, y, z});
  std::uniform_int_distribution<int> pushes(0, 3), coin(0, 1);
  perturb(rng, a, b, pushes(rng));
  perturb(rng, b, a, pushes(rng));
  std::array<int, 3> perm{0, 1, 2};
  std::shuffle(perm.begin(), perm.end(), rng);
  std::array<long, 3> flip{coin(rng) ? 1L : -1L, coin(rng) ? 1L : -1L, coin(rng) ? 1L : -1L};
  auto move = [&](Loop& l) {
    for (auto& p : l) {
      Point q{};
      for (int k = 0; k < 3; ++k) q[k] = flip[k] * p[perm[k]];
      p = q;
    }
  };
  move(a);
  move(b);
  if (coin(rng)) std::reverse(b.begin(), b.end());
  return {a, b};
}

// Pair of disjoint loops: half of them threaded, half placed at random.
inline std::pair<Loop, Loop> random_loop_pair(std::mt19937& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  if (coin(rng) == 0) return random_threaded_pair(rng);
  while (true) {
    Loop a = random_lattice_loop(rng, 0, 2, 3);
    Loop b = random_lattice_loop(rng, 0, 2, 3);
    if (disjoint(a, b)) return {a, b};
  }
}

// Two-component link in the torus of the given period (at least 8): either
// a threaded pair or two random loops, each lifted into one of a few
// fundamental domains.
inline zpi::linking::LatticeLink random_torus_link(std::mt19937& rng, long period) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<long> cell(-1, 1);
  while (true) {
    zpi::linking::LatticeLink link;
    link.period = period;
    if (coin(rng) == 0) {
      auto [a, b] = random_threaded_pair(rng);
      link.loops = {a, b};
    } else {
      link.loops = {random_lattice_loop(rng, 0, period / 2, period / 2 - 1),
                    random_lattice_loop(rng, 0, period / 2, period / 2 - 1)};
    }
    for (auto& loop : link.loops) {
      loop = zpi::linking::translated(loop, {period * cell(rng), period * cell(rng), period * cell(rng)});
    }
    link.framings = {1, 1};
    try {
      link.validate();
      return link;
    } catch (const std::exception&) {
    }
  }
}

}  // namespace zpi_test
