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

#ifndef PTREE_FACTOR_HPP_
#define PTREE_FACTOR_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ptree/bigfloat.hpp"
#include "ptree/complex.hpp"
#include "ptree/counting.hpp"
#include "ptree/errors.hpp"
#include "ptree/exactla.hpp"
#include "ptree/graph.hpp"
#include "ptree/matrix.hpp"
#include "ptree/periodic.hpp"
#include "ptree/rational.hpp"

namespace ptree {

// Controls for every floating evaluation (factorized counts, closed forms).
struct EvalOptions {
  double imag_tol = 1e-6;
  double round_tol = 1e-6;
  bool parallel = false;
  // Working precision in bits. 0 selects automatically: hardware doubles
  // unless an integer count is too large for a double to pin down, in which
  // case MPFR is used with enough bits to round exactly.
  long precision_bits = 0;
};

namespace detail {

inline constexpr long kGuardBits = 64;

// Bits needed so a value of magnitude 2^log2_magnitude still rounds to the
// right integer after `terms` multiplications.
inline long exact_rounding_bits(double log2_magnitude, std::size_t terms) {
  const double spread = std::log2(static_cast<double>(terms) + 2.0);
  return static_cast<long>(std::ceil(std::max(log2_magnitude, 0.0) + 4.0 * spread)) + kGuardBits;
}

// 0 means hardware double.
inline long choose_precision(const EvalOptions& opts, double log2_estimate, bool integer_valued,
                             std::size_t terms) {
  if (opts.precision_bits > 53) return opts.precision_bits;
  if (opts.precision_bits != 0) return 0;
  if (integer_valued && log2_estimate > 50.0) return exact_rounding_bits(log2_estimate, terms);
  if (std::fabs(log2_estimate) > 1000.0) return 128;
  return 0;
}

// Fills rounding information for a floating value; throws when a residual
// exceeds its tolerance.
template <class Real>
void finish_float_result(CountResult& r, const Real& value, bool integer_valued, const EvalOptions& opts) {
  r.approx = RealTraits<Real>::to_long_double(value);
  if (integer_valued) {
    BigInt nearest = RealTraits<Real>::round_to_integer(value);
    const long prec = RealTraits<Real>::precision_of(value);
    Real diff = value - RealTraits<Real>::from_rational(Rational(nearest), prec);
    using std::abs;
    r.round_residual = static_cast<double>(RealTraits<Real>::to_long_double(abs(diff)));
    // Once the working precision cannot resolve unit steps, half the spacing
    // of representable values bounds how far off the integer may be.
    const double spacing_log2 = std::floor(RealTraits<Real>::log2_abs(value)) + 1.0 - static_cast<double>(prec);
    if (spacing_log2 >= 0.0) r.round_residual = std::max(r.round_residual, std::exp2(spacing_log2 - 1.0));
    r.rounded = std::move(nearest);
    const double scale = 1.0 + std::fabs(static_cast<double>(r.approx));
    if (r.round_residual > opts.round_tol * scale) {
      throw ResidualExceeded("rounding residual " + std::to_string(r.round_residual) + " exceeds tolerance");
    }
  }
  if (r.imag_residual > opts.imag_tol) {
    throw ResidualExceeded("imaginary residual " + std::to_string(r.imag_residual) + " exceeds tolerance");
  }
}

// Runs body(i) for i in [0, count), optionally across threads. Each index
// writes only its own slot, so the caller's fold order stays fixed.
template <class Body>
void for_each_index(std::size_t count, bool parallel, Body body) {
  const std::size_t workers = parallel ? std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency())) : 1;
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline void require_valid(const PeriodicPresentation& p) {
  auto diags = validate(p);
  if (!diags.empty()) throw InvalidInput("invalid presentation: " + diags.front().message);
}

}  // namespace detail

// Per-evaluation constants: L_{H0} and the couplings converted to the working
// real type, plus the powers w^k of the primitive N-th root, k = 0..N-1.
template <class Real>
class QuotientContext {
 public:
  QuotientContext(const PeriodicPresentation& p, long precision) : p_(p), precision_(precision) {
    const RationalMatrix lh0 = cell_laplacian(p);
    cell_ = to_real(lh0);
    for (const auto& [t, r] : p.couplings) {
      if (std::all_of(r.data().begin(), r.data().end(), [](const Rational& q) { return sgn(q) == 0; })) continue;
      couplings_.push_back({t, p.has_antipodal_coupling() && t == p.half(), to_real(r)});
    }
    roots_.reserve(static_cast<std::size_t>(p.order));
    for (long k = 0; k < p.order; ++k) roots_.push_back(root_of_unity<Real>(k, p.order, precision));
  }

  const PeriodicPresentation& presentation() const { return p_; }
  long precision() const { return precision_; }

  // w^k for the primitive N-th root w, k taken modulo N.
  const Complex<Real>& root_power(long k) const {
    const long n = p_.order;
    return roots_[static_cast<std::size_t>(((k % n) + n) % n)];
  }

  // Q_t = L_{H0} - sum_i (w^{it} R_i + w^{-it} R_i^T) + (-1)^t R_{N/2}.
  // For even N the i = N/2 summand and the (-1)^t term combine into a single
  // -(-1)^t R_{N/2}. Only the upper triangle is computed; the lower triangle
  // is its conjugate, so Q_t is Hermitian by construction.
  ComplexMatrixOf<Real> quotient_block(long t) const {
    const std::size_t m = p_.cell_size;
    const Real zero = make(0.0);
    ComplexMatrixOf<Real> q(m, m, Complex<Real>::zero(precision_));
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = x; y < m; ++y) {
        Real re = cell_(x, y);
        Real im = zero;
        for (const auto& c : couplings_) {
          const Real& a = c.matrix(x, y);
          const Real& b = c.matrix(y, x);
          if (a == zero && b == zero) continue;
          if (c.antipodal) {
            re -= (t % 2 == 0) ? a : Real(-a);
            continue;
          }
          const Complex<Real>& w = root_power(c.index * t);
          re -= w.re * a + w.re * b;
          im -= w.im * a - w.im * b;
        }
        if (x == y) {
          q(x, x) = Complex<Real>(std::move(re), zero);
        } else {
          q(x, y) = Complex<Real>(re, im);
          q(y, x) = Complex<Real>(std::move(re), -im);
        }
      }
    }
    return q;
  }

 private:
  struct Coupling {
    long index;
    bool antipodal;
    Matrix<Real> matrix;
  };

  Real make(double v) const { return RealTraits<Real>::make(v, precision_); }

  Matrix<Real> to_real(const RationalMatrix& r) const {
    Matrix<Real> out(r.rows(), r.cols(), make(0.0));
    for (std::size_t i = 0; i < r.rows(); ++i)
      for (std::size_t j = 0; j < r.cols(); ++j) out(i, j) = RealTraits<Real>::from_rational(r(i, j), precision_);
    return out;
  }

  const PeriodicPresentation& p_;
  long precision_;
  Matrix<Real> cell_;
  std::vector<Coupling> couplings_;
  std::vector<Complex<Real>> roots_;
};

// Q_t together with its determinant.
template <class Real = double>
struct QuotientSpectrumBlock {
  long t = 0;
  ComplexMatrixOf<Real> q;
  Complex<Real> det;
};

template <class Real = double>
QuotientSpectrumBlock<Real> build_Qt(const PeriodicPresentation& p, long t, long precision = 53) {
  if (t < 1 || t > p.order - 1) throw InvalidInput("build_Qt: t must lie in 1..N-1");
  QuotientContext<Real> ctx(p, precision);
  auto q = ctx.quotient_block(t);
  auto det = det_complex<Real>(q, precision);
  return {t, std::move(q), std::move(det)};
}

// The auxiliary digraph D_t on the cell plus a root u = m + 1, built arc by
// arc from the edges of G incident to copy 0. Its rooted arborescence count
// equals det(Q_t).
template <class Real = double>
WeightedDigraph<Real> build_Dt_digraph(const PeriodicPresentation& p, long t, long precision = 53) {
  if (t < 1 || t > p.order - 1) throw InvalidInput("build_Dt_digraph: t must lie in 1..N-1");
  const std::size_t m = p.cell_size;
  const std::size_t u = m + 1;
  auto make = [&](double v) { return RealTraits<Real>::make(v, precision); };
  auto real_of = [&](const Rational& q) { return Complex<Real>(RealTraits<Real>::from_rational(q, precision), make(0.0)); };
  const Complex<Real> one = Complex<Real>::one(precision);
  const Complex<Real> two(make(2.0), make(0.0));

  WeightedDigraph<Real> d(m + 1, precision);
  for (const Edge& e : p.cell_edges) {
    d.add_arc(e.u, e.v, real_of(e.w));
    d.add_arc(e.v, e.u, real_of(e.w));
  }
  for (const auto& [i, r] : p.couplings) {
    const bool antipodal = p.has_antipodal_coupling() && i == p.half();
    const Complex<Real> w = root_of_unity<Real>(i * t, p.order, precision);
    const Complex<Real> w_bar = w.conj();
    const Complex<Real> half_turn = root_of_unity<Real>(p.order * t / 2, p.order, precision);
    for (std::size_t x = 1; x <= m; ++x)
      for (std::size_t y = 1; y <= m; ++y) {
        const Rational& q = r(x - 1, y - 1);
        if (sgn(q) == 0) continue;
        const Complex<Real> weight = real_of(q);
        if (x != y) {
          if (!antipodal) {
            d.add_arc(x, u, (one - w) * weight);
            d.add_arc(y, u, (one - w_bar) * weight);
            d.add_arc(x, y, w * weight);
            d.add_arc(y, x, w_bar * weight);
          } else {
            d.add_arc(x, u, (one - half_turn) * weight);
            d.add_arc(x, y, half_turn * weight);
          }
        } else if (!antipodal) {
          d.add_arc(x, u, (two - w - w_bar) * weight);
        } else {
          d.add_arc(x, u, (one - half_turn) * weight);
        }
      }
  }
  for (std::size_t z = 0; z < p.fixed_size; ++z)
    for (std::size_t x = 0; x < m; ++x) {
      const Rational& b = p.fixed_to_cell(z, x);
      if (sgn(b) != 0) d.add_arc(x + 1, u, real_of(b));
    }
  return d;
}

// P = L_{H0} - sum_{i=1}^{N/2} (R_i + R_i^T) + R_{N/2} - N B^T L_S^{-1} B, the
// Laplacian of the modified cell, and its spanning-tree sum (first cofactor).
struct ModifiedCellLaplacian {
  RationalMatrix p;
  Rational tau;
};

namespace detail {

// N * B^T L_S^{-1} B, or an empty matrix when there are no fixed vertices.
inline RationalMatrix fixed_correction(const PeriodicPresentation& p) {
  if (p.fixed_size == 0) return {};
  const FixedBlock fb = fixed_block(p);
  RationalMatrix x;
  try {
    x = solve_rational(fb.laplacian, p.fixed_to_cell);
  } catch (const SingularMatrix&) {
    throw SingularMatrix("L_S is singular");
  }
  RationalMatrix c = p.fixed_to_cell.transpose() * x;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) *= p.order;
  return c;
}

inline Rational first_cofactor(const RationalMatrix& l) {
  return l.rows() <= 1 ? Rational(1) : det_rational(minor(l, {1}, {1}));
}

}  // namespace detail

inline ModifiedCellLaplacian build_P(const PeriodicPresentation& p) {
  RationalMatrix pm = cell_laplacian(p);
  const std::size_t m = p.cell_size;
  for (const auto& [i, r] : p.couplings) {
    const bool antipodal = p.has_antipodal_coupling() && i == p.half();
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y) {
        pm(x, y) -= r(x, y) + r(y, x);
        if (antipodal) pm(x, y) += r(x, y);
      }
  }
  if (p.fixed_size > 0) {
    const RationalMatrix c = detail::fixed_correction(p);
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y) pm(x, y) -= c(x, y);
  }
  Rational tau = detail::first_cofactor(pm);
  return {std::move(pm), std::move(tau)};
}

// H0' as a graph: H0 plus, for every coupling edge v_x^(0) v_y^(i) with x != y,
// an edge v_x v_y of the same weight (half the weight when i = N/2).
inline WeightedGraph build_H0_prime_graph(const PeriodicPresentation& p) {
  std::vector<Edge> multi = p.cell_edges;
  for (const auto& [i, r] : p.couplings) {
    const bool antipodal = p.has_antipodal_coupling() && i == p.half();
    for (std::size_t x = 1; x <= p.cell_size; ++x)
      for (std::size_t y = 1; y <= p.cell_size; ++y) {
        const Rational& w = r(x - 1, y - 1);
        if (x == y || sgn(w) == 0) continue;
        multi.push_back({x, y, antipodal ? Rational(w / 2) : w});
      }
  }
  return WeightedGraph::merged(p.cell_size, multi);
}

// H0* as a graph: H0' plus an edge v_x v_y of weight N (B^T L_S^{-1} B)_{xy}
// for every pair of cell vertices.
inline WeightedGraph build_H0_star_graph(const PeriodicPresentation& p) {
  WeightedGraph prime = build_H0_prime_graph(p);
  if (p.fixed_size == 0) return prime;
  std::vector<Edge> multi = prime.edges();
  const RationalMatrix c = detail::fixed_correction(p);
  for (std::size_t x = 1; x <= p.cell_size; ++x)
    for (std::size_t y = x + 1; y <= p.cell_size; ++y)
      if (sgn(c(x - 1, y - 1)) != 0) multi.push_back({x, y, c(x - 1, y - 1)});
  return WeightedGraph::merged(p.cell_size, multi);
}

namespace detail {

// prefactor * prod_{t=1}^{N-1} det(Q_t), using det(Q_{N-t}) = conj(det(Q_t)):
// terms with 2t < N contribute |det Q_t|^2, the antipodal t = N/2 contributes
// Re det Q_t. Products are folded in ascending t.
template <class Real>
CountResult evaluate_quotient_product(const PeriodicPresentation& p, const Rational& prefactor, long precision,
                                      bool integer_valued, const EvalOptions& opts) {
  QuotientContext<Real> ctx(p, precision);
  const long half = p.half();
  std::vector<Complex<Real>> dets(static_cast<std::size_t>(half));
  for_each_index(dets.size(), opts.parallel, [&](std::size_t idx) {
    const long t = static_cast<long>(idx) + 1;
    dets[idx] = det_complex<Real>(ctx.quotient_block(t), precision);
  });
  CountResult r;
  r.method = Method::kFactor;
  Real value = RealTraits<Real>::from_rational(prefactor, precision);
  double imag = 0;
  using std::abs;
  for (std::size_t idx = 0; idx < dets.size(); ++idx) {
    const long t = static_cast<long>(idx) + 1;
    const Complex<Real>& d = dets[idx];
    const double re = static_cast<double>(RealTraits<Real>::to_long_double(abs(d.re)));
    const double im = static_cast<double>(RealTraits<Real>::to_long_double(abs(d.im)));
    imag = std::max(imag, im / (1.0 + re));
    if (2 * t == p.order) {
      value *= d.re;
    } else {
      value *= d.norm();
    }
  }
  r.imag_residual = imag;
  finish_float_result(r, value, integer_valued, opts);
  return r;
}

// log2 of the result, from a double-precision pass.
inline double estimate_log2(const PeriodicPresentation& p, const Rational& prefactor) {
  QuotientContext<double> ctx(p, 53);
  double est = std::log2(std::fabs(prefactor.get_d()));
  if (!std::isfinite(est)) {
    // prefactor outside double range
    est = static_cast<double>(mpz_sizeinbase(prefactor.get_num_mpz_t(), 2)) -
          static_cast<double>(mpz_sizeinbase(prefactor.get_den_mpz_t(), 2));
  }
  for (long t = 1; 2 * t <= p.order; ++t) {
    const Complex<double> d = det_complex<double>(ctx.quotient_block(t), 53);
    est += (2 * t == p.order ? 1.0 : 2.0) * std::log2(d.modulus());
  }
  return est;
}

inline CountResult evaluate_factorization(const PeriodicPresentation& p, const Rational& prefactor,
                                          const EvalOptions& opts) {
  const bool integer_valued = p.has_integer_weights();
  const double estimate = opts.precision_bits == 0 ? estimate_log2(p, prefactor) : 0.0;
  const long bits = choose_precision(opts, estimate, integer_valued, static_cast<std::size_t>(p.order));
  if (bits == 0) return evaluate_quotient_product<double>(p, prefactor, 53, integer_valued, opts);
  return evaluate_quotient_product<BigFloat>(p, prefactor, bits, integer_valued, opts);
}

}  // namespace detail

// tau(G) = det(L_S)/N * tau(H0*) * prod_{t=1}^{N-1} tau(D_t, u), with det(L_S)
// replaced by 1 and H0* by H0' when there are no fixed vertices.
inline CountResult count_factorized(const PeriodicPresentation& p, const EvalOptions& opts = {}) {
  return timed([&] {
    detail::require_valid(p);
    const ModifiedCellLaplacian cell = build_P(p);
    Rational prefactor = cell.tau / p.order;
    if (p.fixed_size > 0) prefactor *= fixed_block(p).det;
    return detail::evaluate_factorization(p, prefactor, opts);
  });
}

// Variant for an edgeless S whose vertices each touch exactly one cell
// vertex: L_S is diagonal, the B^T L_S^{-1} B correction has no off-diagonal
// part, and H0' (built as a graph) replaces H0*.
inline CountResult count_note_case(const PeriodicPresentation& p, const EvalOptions& opts = {}) {
  return timed([&] {
    if (p.fixed_size == 0) throw InvalidInput("count_note_case: presentation has no fixed vertices");
    if (!p.fixed_edges.empty()) throw InvalidInput("count_note_case: fixed subgraph must be edgeless");
    for (std::size_t z = 0; z < p.fixed_size; ++z) {
      std::size_t nonzero = 0;
      for (std::size_t x = 0; x < p.cell_size; ++x) nonzero += sgn(p.fixed_to_cell(z, x)) != 0 ? 1 : 0;
      if (nonzero != 1) {
        throw InvalidInput("count_note_case: fixed vertex " + std::to_string(z + 1) +
                           " must have exactly one neighbour in the cell");
      }
    }
    detail::require_valid(p);
    Rational det_ls = 1;
    for (std::size_t z = 0; z < p.fixed_size; ++z) {
      Rational row = 0;
      for (std::size_t x = 0; x < p.cell_size; ++x) row += p.fixed_to_cell(z, x);
      det_ls *= row * p.order;
    }
    const Rational prefactor = det_ls * tau_oracle(build_H0_prime_graph(p)) / p.order;
    return detail::evaluate_factorization(p, prefactor, opts);
  });
}

}  // namespace ptree

#endif  // PTREE_FACTOR_HPP_
