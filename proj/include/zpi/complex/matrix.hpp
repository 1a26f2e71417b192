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

#include <cstddef>
#include <optional>
#include <vector>

#include "zpi/ring/field_element.hpp"

namespace zpi::complex {

using ring::FieldElement;
using ring::FieldSpec;

/// Dense matrix over one of the coefficient fields, row-major.
class Matrix {
 public:
  Matrix(const FieldSpec& spec, std::size_t rows, std::size_t cols);

  static Matrix identity(const FieldSpec& spec, std::size_t n);

  const FieldSpec& spec() const { return spec_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const FieldElement& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  FieldElement& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  bool is_zero() const;

  Matrix operator-() const;
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix transpose() const;
  /// Entrywise bar involution.
  Matrix involute() const;
  /// Bar-involuted transpose.
  Matrix adjoint() const { return involute().transpose(); }

 private:
  FieldSpec spec_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<FieldElement> data_;
};

/// Reduced row echelon form and the pivot column of each nonzero row.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

Echelon rref(Matrix m);
std::size_t rank(const Matrix& m);

/// Particular solution of a x = b with every free variable set to zero, or
/// nullopt when the system is inconsistent.
std::optional<std::vector<FieldElement>> solve(const Matrix& a, const std::vector<FieldElement>& b);

}  // namespace zpi::complex
