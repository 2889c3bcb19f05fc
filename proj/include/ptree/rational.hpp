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

#ifndef PTREE_RATIONAL_HPP_
#define PTREE_RATIONAL_HPP_

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "ptree/errors.hpp"

namespace ptree {

// Arbitrary-precision integers and canonical rationals (GMP). mpq_class keeps
// the denominator positive and the fraction reduced after canonicalize().
using BigInt = mpz_class;
using Rational = mpq_class;

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// "p/q" for proper fractions, "p" for integers.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline std::string to_string(const BigInt& z) { return z.get_str(); }

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

inline BigInt parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw ParseError("malformed integer literal '" + std::string(s) + "'");
  }
  BigInt z(std::string(s), 10);
  return negative ? BigInt(-z) : z;
}

// Exact value of a decimal literal such as "-12.375" or "2.5e-3".
inline Rational parse_decimal(std::string_view s) {
  std::string_view mantissa = s;
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = s.substr(0, e);
    std::string_view exp_text = s.substr(e + 1);
    BigInt ez = parse_integer(exp_text);
    if (!ez.fits_slong_p() || abs(ez) > 100000) {
      throw ParseError("exponent out of range in '" + std::string(s) + "'");
    }
    exponent = ez.get_si();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long scale = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view whole = mantissa.substr(0, dot);
    std::string_view frac = mantissa.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw ParseError("malformed decimal literal '" + std::string(s) + "'");
    }
    digits = std::string(whole) + std::string(frac);
    scale = static_cast<long>(frac.size());
  } else {
    if (!all_digits(mantissa)) {
      throw ParseError("malformed decimal literal '" + std::string(s) + "'");
    }
    digits = std::string(mantissa);
  }
  BigInt num(digits, 10);
  if (negative) num = -num;
  exponent -= scale;
  BigInt pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational q = exponent < 0 ? Rational(num, pow10) : Rational(num * pow10);
  q.canonicalize();
  return q;
}

}  // namespace detail

// Parses "p/q", an integer, or a decimal literal into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty rational literal");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt num = detail::parse_integer(s.substr(0, slash));
    std::string_view den_text = s.substr(slash + 1);
    if (!den_text.empty() && den_text.front() == '+') {
      throw ParseError("malformed rational literal '" + std::string(text) + "'");
    }
    BigInt den = detail::parse_integer(den_text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (s.find_first_of(".eE") != std::string_view::npos) return detail::parse_decimal(s);
  return Rational(detail::parse_integer(s));
}

}  // namespace ptree

#endif  // PTREE_RATIONAL_HPP_
