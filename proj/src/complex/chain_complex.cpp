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

#include "zpi/complex/chain_complex.hpp"

#include <numeric>
#include <utility>

#include "zpi/error.hpp"

namespace zpi::complex {

std::size_t BasedChainComplex::dim(int d) const {
  if (d < 0 || d > top_degree()) return 0;
  return basis[static_cast<std::size_t>(d)].size();
}

Matrix BasedChainComplex::differential(int d) const {
  if (d >= 1 && d <= top_degree()) return boundary[static_cast<std::size_t>(d)];
  return Matrix(field, dim(d - 1), dim(d));
}

namespace {

void check_shapes(const BasedChainComplex& c) {
  if (c.boundary.size() != c.basis.size()) {
    throw InvalidInput("complex has " + std::to_string(c.basis.size()) + " degrees but " +
                       std::to_string(c.boundary.size()) + " boundary matrices");
  }
  for (int d = 0; d <= c.top_degree(); ++d) {
    const Matrix& m = c.boundary[static_cast<std::size_t>(d)];
    if (m.rows() != c.dim(d - 1) || m.cols() != c.dim(d)) {
      throw InvalidInput("boundary in degree " + std::to_string(d) + " has shape " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                         std::to_string(c.dim(d - 1)) + "x" + std::to_string(c.dim(d)));
    }
    if (m.spec() != c.field) throw DomainMismatch("boundary matrix over the wrong field");
  }
}

// Blocks of End_k: source degrees d with 0 <= d, d + k <= D, in ascending
// order, each flattened row-major.
struct EndLayout {
  int k;
  std::vector<int> sources;
  std::vector<std::size_t> offsets;
  std::size_t size = 0;
};

EndLayout end_layout(const BasedChainComplex& c, int k) {
  EndLayout l{k, {}, {}, 0};
  for (int d = 0; d <= c.top_degree(); ++d) {
    if (d + k < 0 || d + k > c.top_degree()) continue;
    l.sources.push_back(d);
    l.offsets.push_back(l.size);
    l.size += c.dim(d + k) * c.dim(d);
  }
  return l;
}

// Offset of block with source degree d, or npos.
std::size_t block_offset(const EndLayout& l, int d) {
  for (std::size_t i = 0; i < l.sources.size(); ++i) {
    if (l.sources[i] == d) return l.offsets[i];
  }
  return std::string::npos;
}

// Matrix of D(f) = df - (-1)^k fd from End_k to End_{k-1}.
Matrix end_differential(const BasedChainComplex& c, int k) {
  const EndLayout src = end_layout(c, k);
  const EndLayout dst = end_layout(c, k - 1);
  Matrix m(c.field, dst.size, src.size);
  const bool odd = (k % 2) != 0;
  for (std::size_t b = 0; b < src.sources.size(); ++b) {
    const int d = src.sources[b];
    const std::size_t rows = c.dim(d + k);
    const std::size_t cols = c.dim(d);
    const Matrix dt = c.differential(d + k);   // C_{d+k} -> C_{d+k-1}
    const Matrix ds = c.differential(d + 1);   // C_{d+1} -> C_d
    const std::size_t off_df = block_offset(dst, d);
    const std::size_t off_fd = block_offset(dst, d + 1);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        const std::size_t col = src.offsets[b] + i * cols + j;
        // (df)(r, j) = dt(r, i)
        if (off_df != std::string::npos) {
          for (std::size_t r = 0; r < c.dim(d + k - 1); ++r) {
            if (!dt(r, i).is_zero()) m(off_df + r * cols + j, col) += dt(r, i);
          }
        }
        // (fd)(i, s) = ds(j, s), entering with sign -(-1)^k
        if (off_fd != std::string::npos) {
          const std::size_t w = c.dim(d + 1);
          for (std::size_t s = 0; s < w; ++s) {
            if (ds(j, s).is_zero()) continue;
            if (odd) {
              m(off_fd + i * w + s, col) += ds(j, s);
            } else {
              m(off_fd + i * w + s, col) -= ds(j, s);
            }
          }
        }
      }
    }
  }
  return m;
}

std::vector<FieldElement> flatten(const BasedChainComplex& c, int k, const std::vector<Matrix>& maps) {
  const EndLayout l = end_layout(c, k);
  std::vector<FieldElement> v(l.size, FieldElement::zero(c.field));
  for (std::size_t b = 0; b < l.sources.size(); ++b) {
    const Matrix& m = maps[static_cast<std::size_t>(l.sources[b])];
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) v[l.offsets[b] + i * m.cols() + j] = m(i, j);
    }
  }
  return v;
}

// Blocks indexed by source degree 0..D; out-of-range targets give 0-row blocks.
std::vector<Matrix> unflatten(const BasedChainComplex& c, int k, const std::vector<FieldElement>& v,
                              int count) {
  std::vector<Matrix> maps;
  const EndLayout l = end_layout(c, k);
  for (int d = 0; d < count; ++d) {
    Matrix m(c.field, c.dim(d + k), c.dim(d));
    const std::size_t off = block_offset(l, d);
    if (off != std::string::npos) {
      for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = v[off + i * m.cols() + j];
      }
    }
    maps.push_back(std::move(m));
  }
  return maps;
}

std::vector<Matrix> padded(const BasedChainComplex& c, const std::vector<Matrix>& maps, int k) {
  std::vector<Matrix> out;
  for (int d = 0; d <= c.top_degree(); ++d) {
    if (static_cast<std::size_t>(d) < maps.size()) {
      out.push_back(maps[static_cast<std::size_t>(d)]);
    } else {
      out.emplace_back(c.field, c.dim(d + k), c.dim(d));
    }
  }
  return out;
}

void check_propagator_shape(const BasedChainComplex& c, const Propagator& g) {
  if (g.field != c.field) throw DomainMismatch("propagator over the wrong field");
  if (g.maps.size() != static_cast<std::size_t>(std::max(c.top_degree(), 0))) {
    throw InvalidInput("propagator has " + std::to_string(g.maps.size()) + " blocks, expected " +
                       std::to_string(std::max(c.top_degree(), 0)));
  }
  for (int d = 0; d < c.top_degree(); ++d) {
    const Matrix& m = g.maps[static_cast<std::size_t>(d)];
    const std::size_t r = g.adjoint ? c.dim(d) : c.dim(d + 1);
    const std::size_t s = g.adjoint ? c.dim(d + 1) : c.dim(d);
    if (m.rows() != r || m.cols() != s) {
      throw InvalidInput("propagator block " + std::to_string(d) + " has the wrong shape");
    }
  }
}

Propagator plain(const BasedChainComplex& c, const Propagator& g) {
  check_propagator_shape(c, g);
  return g.adjoint ? adjoint_propagator(c, g) : g;
}

}  // namespace

bool verify_boundary(const BasedChainComplex& c) {
  check_shapes(c);
  for (int d = 2; d <= c.top_degree(); ++d) {
    if (!(c.differential(d - 1) * c.differential(d)).is_zero()) return false;
  }
  return true;
}

bool is_acyclic(const BasedChainComplex& c) {
  check_shapes(c);
  for (int d = 0; d <= c.top_degree(); ++d) {
    if (rank(c.differential(d)) + rank(c.differential(d + 1)) != c.dim(d)) return false;
  }
  return true;
}

Propagator solve_propagator(const BasedChainComplex& c) {
  check_shapes(c);
  std::vector<Matrix> ident;
  for (int d = 0; d <= c.top_degree(); ++d) ident.push_back(Matrix::identity(c.field, c.dim(d)));
  auto x = solve(end_differential(c, 1), flatten(c, 0, ident));
  if (!x) throw NotAcyclic("dg + gd = 1 has no solution");
  return Propagator{c.field, unflatten(c, 1, *x, std::max(c.top_degree(), 0)), false};
}

bool verify_propagator(const BasedChainComplex& c, const Propagator& g) {
  check_shapes(c);
  check_propagator_shape(c, g);
  const int top = c.top_degree();
  for (int d = 0; d <= top; ++d) {
    Matrix lhs(c.field, c.dim(d), c.dim(d));
    if (!g.adjoint) {
      if (d < top) lhs = lhs + c.differential(d + 1) * g.maps[static_cast<std::size_t>(d)];
      if (d > 0) lhs = lhs + g.maps[static_cast<std::size_t>(d - 1)] * c.differential(d);
    } else {
      if (d < top) lhs = lhs + g.maps[static_cast<std::size_t>(d)] * c.differential(d + 1).adjoint();
      if (d > 0) lhs = lhs + c.differential(d).adjoint() * g.maps[static_cast<std::size_t>(d - 1)];
    }
    if (lhs != Matrix::identity(c.field, c.dim(d))) return false;
  }
  return true;
}

GradedMap propagator_homotopy(const BasedChainComplex& c, const Propagator& g, const Propagator& g2) {
  check_shapes(c);
  const Propagator a = plain(c, g);
  const Propagator b = plain(c, g2);
  std::vector<Matrix> diff;
  for (std::size_t d = 0; d < a.maps.size(); ++d) diff.push_back(b.maps[d] - a.maps[d]);
  auto x = solve(end_differential(c, 2), flatten(c, 1, padded(c, diff, 1)));
  if (!x) throw NoSolution("g2 - g = dh - hd has no solution: H_1(End C) is nonzero");
  return GradedMap{2, unflatten(c, 2, *x, c.top_degree() + 1)};
}

bool verify_homotopy(const BasedChainComplex& c, const Propagator& g, const Propagator& g2,
                     const GradedMap& h) {
  const Propagator a = plain(c, g);
  const Propagator b = plain(c, g2);
  for (int d = 0; d < c.top_degree(); ++d) {
    const auto ud = static_cast<std::size_t>(d);
    Matrix rhs(c.field, c.dim(d + 1), c.dim(d));
    if (ud < h.maps.size() && h.maps[ud].rows() > 0) rhs = rhs + c.differential(d + 2) * h.maps[ud];
    if (d > 0 && h.maps[ud - 1].rows() > 0) rhs = rhs - h.maps[ud - 1] * c.differential(d);
    if (b.maps[ud] - a.maps[ud] != rhs) return false;
  }
  return true;
}

bool end_complex_acyclic(const BasedChainComplex& c) {
  check_shapes(c);
  for (int k = 0; k <= 1; ++k) {
    const std::size_t n = end_layout(c, k).size;
    if (rank(end_differential(c, k)) + rank(end_differential(c, k + 1)) != n) return false;
  }
  return true;
}

Propagator adjoint_propagator(const BasedChainComplex& c, const Propagator& g) {
  check_propagator_shape(c, g);
  Propagator out{g.field, {}, !g.adjoint};
  for (const auto& m : g.maps) out.maps.push_back(m.adjoint());
  return out;
}

BasedChainComplex permute_basis(const BasedChainComplex& c, const std::vector<std::vector<std::size_t>>& perm) {
  check_shapes(c);
  if (perm.size() != c.basis.size()) throw InvalidInput("permutation per degree required");
  BasedChainComplex out{c.field, c.basis, {}};
  for (int d = 0; d <= c.top_degree(); ++d) {
    const auto& pd = perm[static_cast<std::size_t>(d)];
    if (pd.size() != c.dim(d)) throw InvalidInput("permutation of the wrong length");
    for (std::size_t i = 0; i < pd.size(); ++i) out.basis[static_cast<std::size_t>(d)][i] = c.basis[static_cast<std::size_t>(d)][pd[i]];
  }
  for (int d = 0; d <= c.top_degree(); ++d) {
    const Matrix& m = c.boundary[static_cast<std::size_t>(d)];
    Matrix r(c.field, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        r(i, j) = m(perm[static_cast<std::size_t>(d - 1)][i], perm[static_cast<std::size_t>(d)][j]);
      }
    }
    out.boundary.push_back(std::move(r));
  }
  return out;
}

Propagator unpermute_propagator(const Propagator& g, const std::vector<std::vector<std::size_t>>& perm) {
  if (g.adjoint) throw InvalidInput("unpermute expects a plain propagator");
  Propagator out{g.field, {}, false};
  for (std::size_t d = 0; d < g.maps.size(); ++d) {
    const Matrix& m = g.maps[d];
    Matrix r(g.field, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) r(perm[d + 1][i], perm[d][j]) = m(i, j);
    }
    out.maps.push_back(std::move(r));
  }
  return out;
}

long inverse_mod(long q, long p) {
  if (p <= 1) throw InvalidInput("modulus must exceed 1");
  long old_r = ((q % p) + p) % p;
  long r = p;
  long old_s = 1;
  long s = 0;
  while (r != 0) {
    const long t = old_r / r;
    old_r = std::exchange(r, old_r - t * r);
    old_s = std::exchange(s, old_s - t * s);
  }
  if (old_r != 1) throw InvalidInput(std::to_string(q) + " is not invertible modulo " + std::to_string(p));
  return ((old_s % p) + p) % p;
}

BasedChainComplex build_lens_complex(long p, long q) {
  if (p <= 1) throw InvalidInput("lens complex needs p > 1");
  if (std::gcd(p, q) != 1) throw InvalidInput("lens complex needs gcd(p, q) = 1");
  const long qbar = inverse_mod(q, p);
  const FieldSpec f = FieldSpec::cyclotomic(static_cast<int>(p));
  const FieldElement one = FieldElement::one(f);
  BasedChainComplex c{f, {{"w"}, {"z"}, {"y"}, {"x"}}, {}};
  c.boundary.emplace_back(f, 0, 1);
  Matrix d1(f, 1, 1);
  d1(0, 0) = one - ring::CyclotomicNumber::zeta_power(static_cast<int>(p), 1);
  c.boundary.push_back(d1);
  c.boundary.emplace_back(f, 1, 1);
  Matrix d3(f, 1, 1);
  d3(0, 0) = one - ring::CyclotomicNumber::zeta_power(static_cast<int>(p), qbar);
  c.boundary.push_back(d3);
  return c;
}

Propagator known_lens_propagator(long p, long q) {
  const BasedChainComplex c = build_lens_complex(p, q);
  Propagator g{c.field, {}, false};
  g.maps.emplace_back(c.field, 1, 1);
  g.maps[0](0, 0) = c.boundary[1](0, 0).inverse();  // g(w) = (1 - zeta)^{-1} z
  g.maps.emplace_back(c.field, 1, 1);              // g(z) = 0
  g.maps.emplace_back(c.field, 1, 1);
  g.maps[2](0, 0) = c.boundary[3](0, 0).inverse();  // g(y) = (1 - zeta^qbar)^{-1} x
  return g;
}

BasedChainComplex build_torus_koszul() {
  const FieldSpec f = FieldSpec::rational_functions(3);
  // Generators e_I for I a subset of {1, 2, 3}, by size then lexicographically.
  const std::vector<std::vector<std::vector<int>>> subsets = {
      {{}}, {{1}, {2}, {3}}, {{1, 2}, {1, 3}, {2, 3}}, {{1, 2, 3}}};
  BasedChainComplex c{f, {}, {}};
  for (const auto& deg : subsets) {
    std::vector<std::string> labels;
    for (const auto& s : deg) {
      std::string l = "e";
      for (int i : s) l += std::to_string(i);
      labels.push_back(l);
    }
    c.basis.push_back(labels);
  }
  c.boundary.emplace_back(f, 0, 1);
  for (std::size_t d = 1; d < subsets.size(); ++d) {
    Matrix m(f, subsets[d - 1].size(), subsets[d].size());
    for (std::size_t j = 0; j < subsets[d].size(); ++j) {
      const auto& s = subsets[d][j];
      for (std::size_t pos = 0; pos < s.size(); ++pos) {
        std::vector<int> rest = s;
        rest.erase(rest.begin() + static_cast<long>(pos));
        std::size_t row = 0;
        while (subsets[d - 1][row] != rest) ++row;
        FieldElement coef = ring::LaurentPoly::variable(3, s[pos]) - ring::LaurentPoly::constant(3, 1);
        m(row, j) = (pos % 2 == 0) ? coef : -coef;
      }
    }
    c.boundary.push_back(std::move(m));
  }
  return c;
}

}  // namespace zpi::complex
