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

#ifndef PTREE_EXACTLA_HPP_
#define PTREE_EXACTLA_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "ptree/complex.hpp"
#include "ptree/errors.hpp"
#include "ptree/matrix.hpp"
#include "ptree/rational.hpp"

namespace ptree {

namespace detail {

// Row-scales a rational matrix to integers. Returns the integer rows and the
// product of the scale factors, so det(M) = det(rows) / scale.
inline std::pair<std::vector<BigInt>, BigInt> integerize(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<BigInt> a(n * m.cols());
  BigInt scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt lcm = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const mpz_class& den = m(i, j).get_den();
      if (den != 1) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& q = m(i, j);
      if (lcm == 1) {
        a[i * m.cols() + j] = q.get_num();
      } else {
        BigInt f;
        mpz_divexact(f.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
        a[i * m.cols() + j] = q.get_num() * f;
      }
    }
    scale *= lcm;
  }
  return {std::move(a), std::move(scale)};
}

// Fraction-free (Bareiss) determinant of an n x n integer matrix stored
// row-major. Every intermediate value is a minor of the input, so each
// division is exact. Rows whose pivot-column entry is zero only rescale their
// nonzero entries, which keeps sparse Laplacians cheap.
inline BigInt bareiss_determinant(std::vector<BigInt> a, std::size_t n) {
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  BigInt t;
  auto at = [&](std::size_t r, std::size_t c) -> BigInt& { return a[r * n + c]; };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && sgn(at(p, k)) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t c = k; c < n; ++c) std::swap(at(p, c), at(k, c));
      sign = -sign;
    }
    const BigInt& pivot = at(k, k);
    const bool unit_step = pivot == prev;
    for (std::size_t i = k + 1; i < n; ++i) {
      BigInt& aik = at(i, k);
      if (sgn(aik) == 0) {
        if (unit_step) continue;
        for (std::size_t j = k + 1; j < n; ++j) {
          BigInt& aij = at(i, j);
          if (sgn(aij) == 0) continue;
          mpz_mul(t.get_mpz_t(), aij.get_mpz_t(), pivot.get_mpz_t());
          mpz_divexact(aij.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        }
        continue;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt& aij = at(i, j);
        const BigInt& akj = at(k, j);
        if (sgn(akj) == 0) {
          if (sgn(aij) == 0 || unit_step) continue;
          mpz_mul(t.get_mpz_t(), aij.get_mpz_t(), pivot.get_mpz_t());
        } else {
          mpz_mul(t.get_mpz_t(), aij.get_mpz_t(), pivot.get_mpz_t());
          mpz_submul(t.get_mpz_t(), aik.get_mpz_t(), akj.get_mpz_t());
        }
        mpz_divexact(aij.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      aik = 0;
    }
    prev = pivot;
  }
  BigInt det = at(n - 1, n - 1);
  return sign < 0 ? BigInt(-det) : det;
}

}  // namespace detail

// Exact determinant. Rows are cleared of denominators first, so matrices with
// integer entries never leave the integers.
inline Rational det_rational(const RationalMatrix& m) {
  if (!m.is_square()) throw InvalidInput("det_rational: matrix is not square");
  auto [ints, scale] = detail::integerize(m);
  Rational det(detail::bareiss_determinant(std::move(ints), m.rows()), scale);
  det.canonicalize();
  return det;
}

// Exact solution X of A X = B by Gauss-Jordan elimination over the rationals.
inline RationalMatrix solve_rational(const RationalMatrix& a, const RationalMatrix& b) {
  if (!a.is_square()) throw InvalidInput("solve_rational: coefficient matrix is not square");
  if (a.rows() != b.rows()) throw InvalidInput("solve_rational: row counts differ");
  const std::size_t n = a.rows();
  const std::size_t r = b.cols();
  RationalMatrix lhs = a;
  RationalMatrix rhs = b;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && sgn(lhs(p, k)) == 0) ++p;
    if (p == n) throw SingularMatrix("solve_rational: coefficient matrix is singular");
    if (p != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lhs(p, c), lhs(k, c));
      for (std::size_t c = 0; c < r; ++c) std::swap(rhs(p, c), rhs(k, c));
    }
    const Rational inv = 1 / lhs(k, k);
    for (std::size_t c = k; c < n; ++c) lhs(k, c) *= inv;
    for (std::size_t c = 0; c < r; ++c) rhs(k, c) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || sgn(lhs(i, k)) == 0) continue;
      const Rational f = lhs(i, k);
      for (std::size_t c = k; c < n; ++c) lhs(i, c) -= f * lhs(k, c);
      for (std::size_t c = 0; c < r; ++c) rhs(i, c) -= f * rhs(k, c);
    }
  }
  return rhs;
}

// Determinant by Gaussian elimination with partial pivoting: the pivot is the
// entry of largest modulus in the column, ties going to the lowest row. The
// working precision (bits) only matters for multiprecision reals.
template <class Real>
Complex<Real> det_complex(const ComplexMatrixOf<Real>& m, long precision = 53) {
  if (!m.is_square()) throw InvalidInput("det_complex: matrix is not square");
  for (const auto& z : m.data()) {
    if (!z.is_finite()) throw NumericError("det_complex: non-finite entry");
  }
  const std::size_t n = m.rows();
  if (n == 0) return Complex<Real>::one(precision);
  ComplexMatrixOf<Real> a = m;
  Complex<Real> det = Complex<Real>::one(precision);
  const Real zero = RealTraits<Real>::make(0.0, precision);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    Real best = a(k, k).norm();
    for (std::size_t i = k + 1; i < n; ++i) {
      Real v = a(i, k).norm();
      if (v > best) {
        best = std::move(v);
        p = i;
      }
    }
    if (best == zero) return Complex<Real>::zero(precision);
    if (p != k) {
      for (std::size_t c = k; c < n; ++c) std::swap(a(p, c), a(k, c));
      det = -det;
    }
    const Complex<Real> pivot = a(k, k);
    det *= pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).norm() == zero) continue;
      const Complex<Real> f = a(i, k) / pivot;
      for (std::size_t c = k + 1; c < n; ++c) a(i, c) -= f * a(k, c);
    }
  }
  if (!det.is_finite()) throw NumericError("det_complex: determinant overflowed");
  return det;
}

}  // namespace ptree

#endif  // PTREE_EXACTLA_HPP_
