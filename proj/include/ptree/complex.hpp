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

#ifndef PTREE_COMPLEX_HPP_
#define PTREE_COMPLEX_HPP_

#include <cmath>
#include <ostream>
#include <utility>

#include "ptree/bigfloat.hpp"

namespace ptree {

// Complex scalar over an arbitrary real type (double or BigFloat).
// std::complex is only specified for the built-in floating types.
template <class Real>
struct Complex {
  Real re;
  Real im;

  Complex() : re(RealTraits<Real>::make(0.0, 53)), im(RealTraits<Real>::make(0.0, 53)) {}
  Complex(Real real, Real imag) : re(std::move(real)), im(std::move(imag)) {}

  static Complex zero(long precision) {
    return {RealTraits<Real>::make(0.0, precision), RealTraits<Real>::make(0.0, precision)};
  }
  static Complex one(long precision) {
    return {RealTraits<Real>::make(1.0, precision), RealTraits<Real>::make(0.0, precision)};
  }
  static Complex from_real(Real r) {
    Real zero = r * RealTraits<Real>::make(0.0, 53);
    return {std::move(r), std::move(zero)};
  }

  Complex conj() const { return {re, -im}; }
  Real norm() const { return re * re + im * im; }  // |z|^2
  Real modulus() const {
    using std::sqrt;
    return sqrt(norm());
  }
  bool is_finite() const {
    using std::isfinite;
    return isfinite(re) && isfinite(im);
  }

  Complex operator-() const { return {-re, -im}; }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    Real i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    Real d = o.norm();
    Real r = (re * o.re + im * o.im) / d;
    Real i = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  Complex& operator*=(const Real& s) {
    re *= s;
    im *= s;
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator*(Complex a, const Real& s) { return a *= s; }
  friend Complex operator*(const Real& s, Complex a) { return a *= s; }

  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Complex& z) {
    return os << '(' << z.re << (z.im < RealTraits<Real>::make(0.0, 53) ? "" : "+") << z.im << "i)";
  }
};

using ComplexScalar = Complex<double>;

// Principal square root.
template <class Real>
Complex<Real> sqrt(const Complex<Real>& z) {
  using std::abs;
  using std::sqrt;
  const long prec = RealTraits<Real>::precision_of(z.re);
  const Real zero = RealTraits<Real>::make(0.0, prec);
  const Real half = RealTraits<Real>::make(0.5, prec);
  Real r = z.modulus();
  if (r == zero) return Complex<Real>::zero(prec);
  Real a = sqrt((r + abs(z.re)) * half);
  if (z.re >= zero) {
    return {a, z.im / (a + a)};
  }
  Real b = abs(z.im) / (a + a);
  return {b, z.im < zero ? -a : a};
}

// Integer power by repeated squaring.
template <class Real>
Complex<Real> pow(Complex<Real> base, unsigned long exponent) {
  Complex<Real> result = Complex<Real>::one(RealTraits<Real>::precision_of(base.re));
  while (exponent > 0) {
    if (exponent & 1UL) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

// w^k with w = exp(2*pi*i/n), k reduced modulo n before evaluation.
template <class Real>
Complex<Real> root_of_unity(long k, long n, long precision = 53) {
  long r = ((k % n) + n) % n;
  if (r == 0) return Complex<Real>::one(precision);
  if (2 * r == n) return {RealTraits<Real>::make(-1.0, precision), RealTraits<Real>::make(0.0, precision)};
  using std::cos;
  using std::sin;
  Real angle = RealTraits<Real>::pi(precision) * RealTraits<Real>::make(2.0 * static_cast<double>(r), precision) /
               RealTraits<Real>::make(static_cast<double>(n), precision);
  return {cos(angle), sin(angle)};
}

}  // namespace ptree

#endif  // PTREE_COMPLEX_HPP_
