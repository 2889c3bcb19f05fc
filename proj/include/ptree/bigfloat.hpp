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

#ifndef PTREE_BIGFLOAT_HPP_
#define PTREE_BIGFLOAT_HPP_

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ptree/rational.hpp"

namespace ptree {

// Owning MPFR float with a per-value precision. Binary operations produce a
// result at the larger of the operand precisions; conversions from double or
// Rational take the precision explicitly, so no global state is involved.
class BigFloat {
 public:
  static constexpr mpfr_prec_t kDefaultPrecision = 128;

  BigFloat() : BigFloat(0.0, kDefaultPrecision) {}

  BigFloat(double value, mpfr_prec_t precision) {
    mpfr_init2(value_, precision);
    mpfr_set_d(value_, value, MPFR_RNDN);
  }

  BigFloat(const Rational& value, mpfr_prec_t precision) {
    mpfr_init2(value_, precision);
    mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
  }

  BigFloat(const BigFloat& other) {
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }

  BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
  }

  BigFloat& operator=(const BigFloat& other) {
    if (this != &other) {
      mpfr_set_prec(value_, other.precision());
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }

  BigFloat& operator=(BigFloat&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
  }

  ~BigFloat() { mpfr_clear(value_); }

  static BigFloat pi(mpfr_prec_t precision) {
    BigFloat r(precision);
    mpfr_const_pi(r.value_, MPFR_RNDN);
    return r;
  }

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(value_, MPFR_RNDN); }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  BigInt round_to_integer() const {
    BigInt z;
    mpfr_get_z(z.get_mpz_t(), value_, MPFR_RNDN);
    return z;
  }

  // log2(|x|) as a double; -inf for zero.
  double log2_abs() const {
    BigFloat r(precision());
    mpfr_abs(r.value_, value_, MPFR_RNDN);
    mpfr_log2(r.value_, r.value_, MPFR_RNDN);
    return r.to_double();
  }

  // Scientific notation with the requested number of significant digits.
  std::string to_string(int significant_digits = 17) const {
    if (!is_finite()) return mpfr_nan_p(value_) ? "nan" : (sign() < 0 ? "-inf" : "inf");
    char* buffer = nullptr;
    std::string format = "%." + std::to_string(significant_digits - 1) + "Re";
    mpfr_asprintf(&buffer, format.c_str(), value_);
    std::string out(buffer);
    mpfr_free_str(buffer);
    return out;
  }

  BigFloat operator-() const {
    BigFloat r(precision());
    mpfr_neg(r.value_, value_, MPFR_RNDN);
    return r;
  }

  BigFloat& operator+=(const BigFloat& o) { return apply(o, mpfr_add); }
  BigFloat& operator-=(const BigFloat& o) { return apply(o, mpfr_sub); }
  BigFloat& operator*=(const BigFloat& o) { return apply(o, mpfr_mul); }
  BigFloat& operator/=(const BigFloat& o) { return apply(o, mpfr_div); }

  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return b < a; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return b <= a; }

  friend BigFloat abs(const BigFloat& x) { return x.unary(mpfr_abs); }
  friend BigFloat sqrt(const BigFloat& x) { return x.unary(mpfr_sqrt); }
  friend BigFloat cos(const BigFloat& x) { return x.unary(mpfr_cos); }
  friend BigFloat sin(const BigFloat& x) { return x.unary(mpfr_sin); }
  friend BigFloat log(const BigFloat& x) { return x.unary(mpfr_log); }
  friend bool isfinite(const BigFloat& x) { return x.is_finite(); }

  friend BigFloat pow(const BigFloat& x, long n) {
    BigFloat r(x.precision());
    mpfr_pow_si(r.value_, x.value_, n, MPFR_RNDN);
    return r;
  }

  const __mpfr_struct* raw() const { return value_; }

 private:
  explicit BigFloat(mpfr_prec_t precision) {
    mpfr_init2(value_, precision);
    mpfr_set_zero(value_, 1);
  }

  template <class Op>
  BigFloat& apply(const BigFloat& o, Op op) {
    if (o.precision() > precision()) mpfr_prec_round(value_, o.precision(), MPFR_RNDN);
    op(value_, value_, o.value_, MPFR_RNDN);
    return *this;
  }

  template <class Op>
  BigFloat unary(Op op) const {
    BigFloat r(precision());
    op(r.value_, value_, MPFR_RNDN);
    return r;
  }

  mpfr_t value_;
};

// Uniform construction of a real scalar at a requested binary precision. The
// precision is ignored for hardware floats.
template <class Real>
struct RealTraits;

template <>
struct RealTraits<double> {
  static double make(double v, long /*precision*/) { return v; }
  static double from_rational(const Rational& q, long /*precision*/) { return q.get_d(); }
  static double pi(long /*precision*/) { return 3.14159265358979323846; }
  static long precision_of(double /*v*/) { return 53; }
  static long double to_long_double(double v) { return v; }
  static double log2_abs(double v) { return std::log2(std::fabs(v)); }
  static BigInt round_to_integer(double v) {
    BigInt z;
    mpz_set_d(z.get_mpz_t(), std::nearbyint(v));
    return z;
  }
};

template <>
struct RealTraits<BigFloat> {
  static BigFloat make(double v, long precision) { return BigFloat(v, precision); }
  static BigFloat from_rational(const Rational& q, long precision) { return BigFloat(q, precision); }
  static BigFloat pi(long precision) { return BigFloat::pi(precision); }
  static long precision_of(const BigFloat& v) { return v.precision(); }
  static long double to_long_double(const BigFloat& v) { return v.to_long_double(); }
  static double log2_abs(const BigFloat& v) { return v.log2_abs(); }
  static BigInt round_to_integer(const BigFloat& v) { return v.round_to_integer(); }
};

}  // namespace ptree

#endif  // PTREE_BIGFLOAT_HPP_
