// Copyright 2026 The ptree Authors.
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

#ifndef PTREE_MATRIX_HPP_
#define PTREE_MATRIX_HPP_

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "ptree/complex.hpp"
#include "ptree/errors.hpp"
#include "ptree/rational.hpp"

namespace ptree {

// Dense row-major matrix. Element access through operator() is 0-based;
// index sets handed to minor() are 1-based.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw InvalidInput("matrix data length does not match rows*cols");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) : rows_(rows.size()) {
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw InvalidInput("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<T>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
template <class Real>
using ComplexMatrixOf = Matrix<Complex<Real>>;
using ComplexMatrix = ComplexMatrixOf<double>;

inline RationalMatrix zero_rational(std::size_t rows, std::size_t cols) { return RationalMatrix(rows, cols, Rational(0)); }

inline RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matrix product shape mismatch");
  RationalMatrix c = zero_rational(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

inline RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidInput("matrix difference shape mismatch");
  RationalMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

namespace detail {

inline std::vector<bool> deletion_mask(std::size_t extent, const std::vector<std::size_t>& deleted, const char* what) {
  std::vector<bool> mask(extent, false);
  for (std::size_t idx : deleted) {
    if (idx < 1 || idx > extent) {
      throw InvalidInput(std::string("minor: ") + what + " index " + std::to_string(idx) + " out of range 1.." +
                         std::to_string(extent));
    }
    if (mask[idx - 1]) throw InvalidInput(std::string("minor: duplicate ") + what + " index " + std::to_string(idx));
    mask[idx - 1] = true;
  }
  return mask;
}

}  // namespace detail

// Submatrix with the listed rows and columns removed (1-based indices).
template <class T>
Matrix<T> minor(const Matrix<T>& m, const std::vector<std::size_t>& deleted_rows,
                const std::vector<std::size_t>& deleted_cols) {
  auto drop_row = detail::deletion_mask(m.rows(), deleted_rows, "row");
  auto drop_col = detail::deletion_mask(m.cols(), deleted_cols, "column");
  const std::size_t rows = m.rows() - deleted_rows.size();
  const std::size_t cols = m.cols() - deleted_cols.size();
  std::vector<T> out;
  out.reserve(rows * cols);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (drop_row[r]) continue;
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!drop_col[c]) out.push_back(m(r, c));
  }
  return Matrix<T>(rows, cols, std::move(out));
}

// Submatrix keeping the listed rows and columns (0-based, in the given order).
template <class T>
Matrix<T> select(const Matrix<T>& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  Matrix<T> out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

template <class Real>
ComplexMatrixOf<Real> to_complex(const RationalMatrix& m, long precision = 53) {
  ComplexMatrixOf<Real> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(i, j) = Complex<Real>(RealTraits<Real>::from_rational(m(i, j), precision), RealTraits<Real>::make(0.0, precision));
  return out;
}

}  // namespace ptree

#endif  // PTREE_MATRIX_HPP_
