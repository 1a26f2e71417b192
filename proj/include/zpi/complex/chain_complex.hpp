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

#include <string>
#include <vector>

#include "zpi/complex/matrix.hpp"

namespace zpi::complex {

/// Finite based free chain complex C_0 <- C_1 <- ... <- C_D over a field.
///
/// boundary[d] maps C_d to C_{d-1}: its rows are indexed by the degree d-1
/// basis and its columns by the degree d basis. boundary[0] is the 0 x dim C_0
/// matrix.
struct BasedChainComplex {
  FieldSpec field;
  std::vector<std::vector<std::string>> basis;
  std::vector<Matrix> boundary;

  int top_degree() const { return static_cast<int>(basis.size()) - 1; }
  /// Rank of C_d; zero outside 0..D.
  std::size_t dim(int d) const;
  /// Matrix of the boundary C_d -> C_{d-1}, zero-sized outside the range.
  Matrix differential(int d) const;
};

/// Degree +1 endomorphism. maps[d] sends C_d to C_{d+1} (rows: degree d+1).
/// With adjoint set, maps[d] instead sends C_{d+1} to C_d: this is the form
/// returned by adjoint_propagator.
struct Propagator {
  FieldSpec field;
  std::vector<Matrix> maps;
  bool adjoint = false;

  /// Coefficient of basis element p (degree d+1) in g(q), q of degree d:
  /// the entry g_{q p}.
  const FieldElement& entry(int d, std::size_t q, std::size_t p) const { return maps[d](p, q); }
};

/// Element of End(C) of a fixed degree k: maps[d] sends C_d to C_{d+k}.
struct GradedMap {
  int degree = 0;
  std::vector<Matrix> maps;
};

/// Checks matrix shapes (throws InvalidInput) and returns whether the
/// boundary squares to zero.
bool verify_boundary(const BasedChainComplex& c);

bool is_acyclic(const BasedChainComplex& c);

/// Particular solution of dg + gd = 1: one linear system in the entries of g
/// (ascending degree, row-major within each block), reduced to echelon form
/// with free variables set to zero. Throws NotAcyclic when unsolvable.
Propagator solve_propagator(const BasedChainComplex& c);

/// Exact check of dg + gd = 1 in every degree; also accepts adjoint form,
/// checked against the adjoint complex.
bool verify_propagator(const BasedChainComplex& c, const Propagator& g);

/// h of degree 2 with g2 - g = dh - hd. Throws NoSolution.
GradedMap propagator_homotopy(const BasedChainComplex& c, const Propagator& g, const Propagator& g2);

/// Checks g2 - g = dh - hd exactly.
bool verify_homotopy(const BasedChainComplex& c, const Propagator& g, const Propagator& g2,
                     const GradedMap& h);

/// H_0 and H_1 of the Hom complex with differential f -> df - (-1)^k fd vanish.
bool end_complex_acyclic(const BasedChainComplex& c);

/// Bar-involuted transpose of every block of g (toggles the adjoint flag).
Propagator adjoint_propagator(const BasedChainComplex& c, const Propagator& g);

/// Relabels generators: perm[d][i] is the old index of new generator i.
BasedChainComplex permute_basis(const BasedChainComplex& c, const std::vector<std::vector<std::size_t>>& perm);
/// Transports a propagator of permute_basis(c, perm) back to c's basis.
Propagator unpermute_propagator(const Propagator& g, const std::vector<std::vector<std::size_t>>& perm);

/// Inverse of q modulo p; throws InvalidInput unless gcd(p, q) = 1.
long inverse_mod(long q, long p);

/// Lens complex over Q(zeta_p): x (deg 3) -> y (deg 2) -> z (deg 1) -> w
/// (deg 0) with differentials 1 - zeta^qbar, 0, 1 - zeta.
BasedChainComplex build_lens_complex(long p, long q);

/// g(w) = (1 - zeta)^{-1} z, g(y) = (1 - zeta^qbar)^{-1} x, g(z) = g(x) = 0.
Propagator known_lens_propagator(long p, long q);

/// Koszul complex of (t1 - 1, t2 - 1, t3 - 1) over Q(t1, t2, t3).
BasedChainComplex build_torus_koszul();

}  // namespace zpi::complex
