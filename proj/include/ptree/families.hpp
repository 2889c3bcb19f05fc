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

#ifndef PTREE_FAMILIES_HPP_
#define PTREE_FAMILIES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ptree/bigfloat.hpp"
#include "ptree/complex.hpp"
#include "ptree/counting.hpp"
#include "ptree/errors.hpp"
#include "ptree/factor.hpp"
#include "ptree/periodic.hpp"
#include "ptree/rational.hpp"

namespace ptree {

// a_n = (l1^{n+1} - l2^{n+1}) / (l1 - l2), l1 and l2 the roots of
// l^2 - q l + p = 0. Valid for n >= -1 (a_{-1} = 0). Near a double root the
// quotient is evaluated as sum_k l1^k l2^{n-k}, which is the same polynomial
// and tends to (n+1) l^n.
template <class Real>
Complex<Real> binet(const Complex<Real>& p, const Complex<Real>& q, long n, long precision = 53) {
  if (n < -1) throw InvalidInput("binet: n must be at least -1");
  if (n == -1) return Complex<Real>::zero(precision);
  const Real half = RealTraits<Real>::make(0.5, precision);
  const Complex<Real> four(RealTraits<Real>::make(4.0, precision), RealTraits<Real>::make(0.0, precision));
  const Complex<Real> s = sqrt(q * q - four * p);
  Complex<Real> l1 = (q + s) * half;
  Complex<Real> l2 = (q - s) * half;
  // Take the larger root from the formula and the smaller from l1 l2 = p.
  if (l2.norm() > l1.norm()) std::swap(l1, l2);
  if (l1.norm() > RealTraits<Real>::make(0.0, precision)) l2 = p / l1;
  const unsigned long e = static_cast<unsigned long>(n) + 1;
  const Real gap = s.norm();
  const Real scale = q.norm() + RealTraits<Real>::make(1e-300, precision);
  if (gap <= scale * RealTraits<Real>::make(1e-12, precision)) {
    Complex<Real> sum = Complex<Real>::zero(precision);
    Complex<Real> left = Complex<Real>::one(precision);
    for (long k = 0; k <= n; ++k) {
      sum += left * pow(l2, static_cast<unsigned long>(n - k));
      left *= l1;
    }
    return sum;
  }
  return (pow(l1, e) - pow(l2, e)) / (l1 - l2);
}

inline double binet(double p, double q, long n) {
  return binet<double>(Complex<double>(p, 0.0), Complex<double>(q, 0.0), n).re;
}

// ---------------------------------------------------------------------------
// Cobweb lattices: N spokes through M concentric cycles and a hub. Spoke
// edges weigh x, ring edges weigh y.

struct CobwebSpec {
  long spokes = 3;  // N
  long rings = 1;   // M
  Rational x = 1;
  Rational y = 1;

  void check() const {
    if (spokes < 2) throw InvalidInput("cobweb: spokes must be at least 2");
    if (rings < 1) throw InvalidInput("cobweb: rings must be at least 1");
    if (sgn(x) <= 0 || sgn(y) <= 0) throw InvalidInput("cobweb: weights must be positive");
  }
  bool integer_weights() const { return is_integer(x) && is_integer(y); }
};

// The cell is the radial path (innermost ring vertex first) with spoke
// weights; R_1 joins each ring vertex to its neighbour in the next sector; the
// hub is the single fixed vertex, attached to the innermost vertex. With two
// spokes each ring is a doubled edge, which the simple expansion carries as
// one edge of weight 2y.
inline PeriodicPresentation cobweb_presentation(const CobwebSpec& s) {
  s.check();
  const std::size_t m = static_cast<std::size_t>(s.rings);
  PeriodicPresentation p;
  p.order = s.spokes;
  p.cell_size = m;
  p.fixed_size = 1;
  for (std::size_t v = 1; v < m; ++v) p.cell_edges.push_back({v, v + 1, s.x});
  RationalMatrix ring = zero_rational(m, m);
  const Rational ring_weight = s.spokes == 2 ? Rational(2 * s.y) : s.y;
  for (std::size_t v = 0; v < m; ++v) ring(v, v) = ring_weight;
  p.couplings[1] = ring;
  p.fixed_to_cell = zero_rational(1, m);
  p.fixed_to_cell(0, 0) = s.x;
  return p;
}

namespace detail {

template <class Real>
Real real_of(const Rational& q, long precision) {
  return RealTraits<Real>::from_rational(q, precision);
}

template <class Real>
Real sin_pi_fraction(long num, long den, long precision) {
  using std::sin;
  return sin(RealTraits<Real>::pi(precision) * RealTraits<Real>::make(static_cast<double>(num), precision) /
             RealTraits<Real>::make(static_cast<double>(den), precision));
}

// x^M prod_{j=1}^{N-1} [(4a^2y + x)(l1^M - l2^M) - x^2 (l1^{M-1} - l2^{M-1})] / (l1 - l2)
// with a = sin(pi j / N) and l1,2 = 2a(ay +- sqrt(a^2y^2 + xy)) + x.
template <class Real>
Real cobweb_closed_value(const CobwebSpec& s, long precision) {
  using std::pow;
  using std::sqrt;
  const Real x = real_of<Real>(s.x, precision);
  const Real y = real_of<Real>(s.y, precision);
  const Real two = RealTraits<Real>::make(2.0, precision);
  const Real four = RealTraits<Real>::make(4.0, precision);
  Real value = pow(x, s.rings);
  for (long j = 1; j < s.spokes; ++j) {
    const Real a = sin_pi_fraction<Real>(j, s.spokes, precision);
    const Real root = sqrt(a * a * y * y + x * y);
    const Real l1 = two * a * (a * y + root) + x;
    const Real l2 = x * x / l1;  // l1 l2 = x^2
    const Real gap = four * a * root;
    const Real top = (four * a * a * y + x) * (pow(l1, s.rings) - pow(l2, s.rings)) -
                     x * x * (pow(l1, s.rings - 1) - pow(l2, s.rings - 1));
    value *= top / gap;
  }
  return value;
}

// prod_{n=0}^{N-1} prod_{m=0}^{M-1} 4 [y sin^2(pi n / N) + x sin^2(pi (m + 1/2) / (2M + 1))]
template <class Real>
Real cobweb_product_value(const CobwebSpec& s, long precision) {
  const Real x = real_of<Real>(s.x, precision);
  const Real y = real_of<Real>(s.y, precision);
  const Real four = RealTraits<Real>::make(4.0, precision);
  std::vector<Real> radial;
  for (long m = 0; m < s.rings; ++m) {
    const Real r = sin_pi_fraction<Real>(2 * m + 1, 2 * (2 * s.rings + 1), precision);
    radial.push_back(x * r * r);
  }
  Real value = RealTraits<Real>::make(1.0, precision);
  for (long n = 0; n < s.spokes; ++n) {
    const Real a = sin_pi_fraction<Real>(n, s.spokes, precision);
    const Real angular = y * a * a;
    for (const Real& r : radial) value *= four * (angular + r);
  }
  return value;
}

inline double cobweb_log2_estimate(const CobwebSpec& s) {
  const double x = s.x.get_d();
  const double y = s.y.get_d();
  double est = static_cast<double>(s.rings) * std::log2(x);
  for (long j = 1; j < s.spokes; ++j) {
    const double a = std::sin(std::numbers::pi * static_cast<double>(j) / static_cast<double>(s.spokes));
    const double root = std::sqrt(a * a * y * y + x * y);
    const double l1 = 2 * a * (a * y + root) + x;
    const double l2 = x * x / l1;
    const double ratio = l2 / l1;
    // top/gap = l1^{M-1} [ (4a^2y+x) l1 (1 - r^M) - x^2 (1 - r^{M-1}) ] / gap
    const double inner = (4 * a * a * y + x) * l1 * (1 - std::pow(ratio, s.rings)) -
                         x * x * (1 - std::pow(ratio, s.rings - 1));
    est += static_cast<double>(s.rings - 1) * std::log2(l1) + std::log2(inner) - std::log2(4 * a * root);
  }
  return est;
}

template <class Fn>
CountResult closed_form_result(double log2_estimate, bool integer_valued, std::size_t terms, const EvalOptions& opts,
                               Fn&& evaluate) {
  return timed([&] {
    CountResult r;
    r.method = Method::kClosed;
    const long bits = choose_precision(opts, log2_estimate, integer_valued, terms);
    if (bits == 0) {
      auto [value, imag] = evaluate(std::type_identity<double>{}, 53L);
      r.imag_residual = imag;
      finish_float_result(r, value, integer_valued, opts);
    } else {
      auto [value, imag] = evaluate(std::type_identity<BigFloat>{}, bits);
      r.imag_residual = imag;
      finish_float_result(r, value, integer_valued, opts);
    }
    return r;
  });
}

}  // namespace detail

// Spanning-tree generating function of the cobweb via the quotient closed form.
inline CountResult cobweb_gf_closed(const CobwebSpec& s, const EvalOptions& opts = {}) {
  s.check();
  return detail::closed_form_result(
      detail::cobweb_log2_estimate(s), s.integer_weights(), static_cast<std::size_t>(s.spokes * (s.rings + 2)), opts,
      [&](auto tag, long bits) {
        using Real = typename decltype(tag)::type;
        return std::pair<Real, double>(detail::cobweb_closed_value<Real>(s, bits), 0.0);
      });
}

// The same generating function as a double product over the lattice modes.
inline CountResult cobweb_gf_product(const CobwebSpec& s, const EvalOptions& opts = {}) {
  s.check();
  return detail::closed_form_result(
      detail::cobweb_log2_estimate(s), s.integer_weights(), static_cast<std::size_t>(s.spokes * s.rings), opts,
      [&](auto tag, long bits) {
        using Real = typename decltype(tag)::type;
        return std::pair<Real, double>(detail::cobweb_product_value<Real>(s, bits), 0.0);
      });
}

// ---------------------------------------------------------------------------
// Circulant graphs C_n(s_1, ..., s_k) and joins K2 v C_n(s_1, ..., s_k).

struct CirculantSpec {
  long n = 3;
  std::vector<long> steps{1};
  bool join_k2 = false;

  void check() const {
    if (n < 2) throw InvalidInput("circulant: n must be at least 2");
    if (steps.empty()) throw InvalidInput("circulant: at least one step is required");
    long g = n;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      if (steps[i] < 1 || 2 * steps[i] > n) {
        throw InvalidInput("circulant: step " + std::to_string(steps[i]) + " outside 1..n/2");
      }
      if (i > 0 && steps[i] <= steps[i - 1]) throw InvalidInput("circulant: steps must be strictly increasing");
      g = std::gcd(g, steps[i]);
    }
    if (g != 1) {
      throw InvalidInput("circulant: gcd of steps and n is " + std::to_string(g) + ", graph is disconnected");
    }
  }

  bool has_antipodal_step() const { return 2 * steps.back() == n; }
};

inline PeriodicPresentation circulant_presentation(const CirculantSpec& s) {
  s.check();
  PeriodicPresentation p;
  p.order = s.n;
  p.cell_size = 1;
  for (long step : s.steps) p.couplings[step] = RationalMatrix{{Rational(1)}};
  if (s.join_k2) {
    p.fixed_size = 2;
    p.fixed_edges.push_back({1, 2, Rational(1)});
    p.fixed_to_cell = RationalMatrix{{Rational(1)}, {Rational(1)}};
  }
  return p;
}

namespace detail {

// Degree term of the circulant quotient at index j, with w = exp(2*pi*i/n):
//   2k - sum_i (w^{s_i j} + w^{-s_i j}), or for s_k = n/2
//   2k - 1 - w^{s_k j} - sum_{i<k} (w^{s_i j} + w^{-s_i j}).
template <class Real>
Complex<Real> circulant_term(const CirculantSpec& s, long j, long precision) {
  const long k = static_cast<long>(s.steps.size());
  const bool antipodal = s.has_antipodal_step();
  Complex<Real> term(RealTraits<Real>::make(static_cast<double>(antipodal ? 2 * k - 1 : 2 * k), precision),
                     RealTraits<Real>::make(0.0, precision));
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    const Complex<Real> w = root_of_unity<Real>(s.steps[i] * j, s.n, precision);
    term -= w;
    if (!(antipodal && i + 1 == s.steps.size())) term -= w.conj();
  }
  if (s.join_k2) term += Complex<Real>(RealTraits<Real>::make(2.0, precision), RealTraits<Real>::make(0.0, precision));
  return term;
}

inline double circulant_log2_estimate(const CirculantSpec& s) {
  double est = s.join_k2 ? std::log2(static_cast<double>(s.n + 2)) : -std::log2(static_cast<double>(s.n));
  for (long j = 1; j < s.n; ++j) est += std::log2(circulant_term<double>(s, j, 53).modulus());
  return est;
}

template <class Real>
std::pair<Real, double> circulant_value(const CirculantSpec& s, long precision) {
  Complex<Real> product = Complex<Real>::one(precision);
  double imag = 0;
  for (long j = 1; j < s.n; ++j) {
    const Complex<Real> term = circulant_term<Real>(s, j, precision);
    using std::abs;
    const double im = static_cast<double>(RealTraits<Real>::to_long_double(abs(term.im)));
    const double re = static_cast<double>(RealTraits<Real>::to_long_double(abs(term.re)));
    imag = std::max(imag, im / (1.0 + re));
    product *= term;
  }
  const Real n = RealTraits<Real>::make(static_cast<double>(s.n), precision);
  const Real value = s.join_k2 ? Real(product.re * (n + RealTraits<Real>::make(2.0, precision))) : Real(product.re / n);
  return {value, imag};
}

}  // namespace detail

// (1/n) prod_{j=1}^{n-1} (degree term).
inline CountResult circulant_tau(const CirculantSpec& s, const EvalOptions& opts = {}) {
  s.check();
  if (s.join_k2) throw InvalidInput("circulant_tau: use join_k2_circulant_tau for joins");
  return detail::closed_form_result(detail::circulant_log2_estimate(s), true, static_cast<std::size_t>(s.n), opts,
                                    [&](auto tag, long bits) { return detail::circulant_value<typename decltype(tag)::type>(s, bits); });
}

// (n + 2) prod_{j=1}^{n-1} (degree term + 2).
inline CountResult join_k2_circulant_tau(const CirculantSpec& s, const EvalOptions& opts = {}) {
  s.check();
  if (!s.join_k2) throw InvalidInput("join_k2_circulant_tau: join_k2 must be set");
  return detail::closed_form_result(detail::circulant_log2_estimate(s), true, static_cast<std::size_t>(s.n), opts,
                                    [&](auto tag, long bits) { return detail::circulant_value<typename decltype(tag)::type>(s, bits); });
}

}  // namespace ptree

#endif  // PTREE_FAMILIES_HPP_
