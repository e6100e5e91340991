// Copyright 2026 The tpfollow Authors
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

#ifndef TPF_LINALG_HPP_
#define TPF_LINALG_HPP_

#include <array>
#include <cmath>
#include <cstddef>

namespace tpf {

// Dense 2x2 matrix, row-major.
struct Matrix2 {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

  friend Matrix2 operator*(const Matrix2& l, const Matrix2& r) {
    return {l.a11 * r.a11 + l.a12 * r.a21, l.a11 * r.a12 + l.a12 * r.a22,
            l.a21 * r.a11 + l.a22 * r.a21, l.a21 * r.a12 + l.a22 * r.a22};
  }
  friend Matrix2 operator+(const Matrix2& l, const Matrix2& r) {
    return {l.a11 + r.a11, l.a12 + r.a12, l.a21 + r.a21, l.a22 + r.a22};
  }
  friend Matrix2 operator*(double c, const Matrix2& m) {
    return {c * m.a11, c * m.a12, c * m.a21, c * m.a22};
  }
  Matrix2 transpose() const { return {a11, a21, a12, a22}; }
  double trace() const { return a11 + a22; }
  double det() const { return a11 * a22 - a12 * a21; }
};

// Symmetric 2x2 matrix; stores the upper triangle.
struct SymMatrix2 {
  double a11 = 0.0, a12 = 0.0, a22 = 0.0;

  Matrix2 full() const { return {a11, a12, a12, a22}; }
  double trace() const { return a11 + a22; }
  double det() const { return a11 * a22 - a12 * a12; }
  bool positive_definite() const { return a11 > 0.0 && det() > 0.0; }
  // Largest absolute eigenvalue (operator norm for symmetric matrices).
  double operator_norm() const {
    const double m = 0.5 * (a11 + a22);
    const double r = std::hypot(0.5 * (a11 - a22), a12);
    return std::fmax(std::fabs(m + r), std::fabs(m - r));
  }
  double min_eigenvalue() const {
    const double m = 0.5 * (a11 + a22);
    const double r = std::hypot(0.5 * (a11 - a22), a12);
    return m - r;
  }
};

// Symmetric 4x4 matrix; stores the upper triangle row-major
// (10 entries: 00 01 02 03 11 12 13 22 23 33).
struct SymMatrix4 {
  std::array<double, 10> u{};

  static constexpr std::size_t index(std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    // offset of row i = i*4 - i*(i-1)/2 relative to column i
    return i * 4 - i * (i - 1) / 2 + (j - i);
  }
  double at(std::size_t i, std::size_t j) const { return u[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double v) { u[index(i, j)] = v; }

  double quad_form(const std::array<double, 4>& z) const {
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) s += z[i] * at(i, j) * z[j];
    return s;
  }
};

// Eigenvalues of a symmetric 4x4 matrix by cyclic Jacobi rotations,
// returned in ascending order.
std::array<double, 4> sym4_eigenvalues(const SymMatrix4& m);

}  // namespace tpf

#endif  // TPF_LINALG_HPP_
