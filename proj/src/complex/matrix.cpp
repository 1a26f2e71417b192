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

#include "zpi/complex/matrix.hpp"

#include "zpi/error.hpp"

namespace zpi::complex {

Matrix::Matrix(const FieldSpec& spec, std::size_t rows, std::size_t cols)
    : spec_(spec), rows_(rows), cols_(cols), data_(rows * cols, FieldElement::zero(spec)) {}

Matrix Matrix::identity(const FieldSpec& spec, std::size_t n) {
  Matrix m(spec, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = FieldElement::one(spec);
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

namespace {

void check_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidInput("matrix shapes " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                       " and " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  if (a.spec() != b.spec()) throw DomainMismatch("matrices over different fields");
}

}  // namespace

Matrix Matrix::operator-() const {
  Matrix r(*this);
  for (auto& x : r.data_) x = -x;
  return r;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  check_same_shape(a, b);
  Matrix r(a);
  for (std::size_t i = 0; i < r.data_.size(); ++i) {
    if (!b.data_[i].is_zero()) r.data_[i] += b.data_[i];
  }
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matrix product with incompatible shapes");
  if (a.spec() != b.spec()) throw DomainMismatch("matrices over different fields");
  Matrix r(a.spec(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const FieldElement& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!b(k, j).is_zero()) r(i, j) += x * b(k, j);
      }
    }
  }
  return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.spec_ == b.spec_ && a.data_ == b.data_;
}

Matrix Matrix::transpose() const {
  Matrix r(spec_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  }
  return r;
}

Matrix Matrix::involute() const {
  Matrix r(*this);
  for (auto& x : r.data_) x = x.involute();
  return r;
}

Echelon rref(Matrix m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    }
    const FieldElement inv = m(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) {
      if (!m(row, j).is_zero()) m(row, j) *= inv;
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const FieldElement f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return rref(m).pivots.size();
}

std::optional<std::vector<FieldElement>> solve(const Matrix& a, const std::vector<FieldElement>& b) {
  if (b.size() != a.rows()) throw InvalidInput("right-hand side length does not match the system");
  Matrix aug(a.spec(), a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const Echelon e = rref(std::move(aug));
  std::vector<FieldElement> x(a.cols(), FieldElement::zero(a.spec()));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    const std::size_t c = e.pivots[r];
    if (c == a.cols()) return std::nullopt;
    x[c] = e.reduced(r, a.cols());
  }
  return x;
}

}  // namespace zpi::complex
