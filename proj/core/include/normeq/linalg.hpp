// Copyright 2026 The normeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NORMEQ_LINALG_HPP
#define NORMEQ_LINALG_HPP

#include <optional>
#include <vector>

#include "normeq/arith.hpp"

namespace normeq {

// Small dense exact linear algebra over Q; everything at desk scale (n <= 8).
using Matrix = std::vector<std::vector<Rational>>;

inline Matrix identity_matrix(std::size_t n) {
  Matrix m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Rational(1);
  return m;
}

inline Rational matrix_det(Matrix a) {
  std::size_t n = a.size();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    Rational inv_p = inverse(a[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      Rational f = a[r][col] * inv_p;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

/// Particular solution of A x = b (A rectangular allowed); nullopt when the
/// system is inconsistent. Free variables are set to zero.
inline std::optional<std::vector<Rational>> solve_linear(Matrix a, std::vector<Rational> b) {
  std::size_t rows = a.size();
  std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    std::swap(b[pivot], b[rank]);
    Rational inv_p = inverse(a[rank][col]);
    for (std::size_t c = col; c < cols; ++c) a[rank][c] *= inv_p;
    b[rank] *= inv_p;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][col].is_zero()) continue;
      Rational f = a[r][col];
      for (std::size_t c = col; c < cols; ++c) a[r][c] -= f * a[rank][c];
      b[r] -= f * b[rank];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r) {
    if (!b[r].is_zero()) return std::nullopt;
  }
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t i = 0; i < rank; ++i) x[pivot_col[i]] = b[i];
  return x;
}

inline std::optional<Matrix> matrix_inverse(const Matrix& a) {
  std::size_t n = a.size();
  Matrix aug(n, std::vector<Rational>(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = Rational(1);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && aug[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(aug[pivot], aug[col]);
    Rational inv_p = inverse(aug[col][col]);
    for (std::size_t c = 0; c < 2 * n; ++c) aug[col][c] *= inv_p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || aug[r][col].is_zero()) continue;
      Rational f = aug[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) aug[r][c] -= f * aug[col][c];
    }
  }
  Matrix inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  }
  return inv;
}

inline std::vector<Rational> matrix_apply(const Matrix& a, const std::vector<Rational>& x) {
  std::vector<Rational> y(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  }
  return y;
}

}  // namespace normeq

#endif  // NORMEQ_LINALG_HPP
