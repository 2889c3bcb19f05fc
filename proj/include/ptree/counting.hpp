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

#ifndef PTREE_COUNTING_HPP_
#define PTREE_COUNTING_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptree/bigfloat.hpp"
#include "ptree/errors.hpp"
#include "ptree/exactla.hpp"
#include "ptree/graph.hpp"
#include "ptree/matrix.hpp"
#include "ptree/rational.hpp"

namespace ptree {

enum class Method { kOracle, kEigen, kFactor, kSchur, kClosed };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::kOracle: return "oracle";
    case Method::kEigen: return "eigen";
    case Method::kFactor: return "factor";
    case Method::kSchur: return "schur";
    case Method::kClosed: return "closed";
  }
  return "unknown";
}

// A spanning-tree count produced by one method. Exact methods fill `exact`;
// floating methods fill only `approx`. `rounded` is present when every input
// weight is an integer, so the count itself must be an integer.
struct CountResult {
  Method method = Method::kOracle;
  std::optional<Rational> exact;
  long double approx = 0;
  std::optional<BigInt> rounded;
  double imag_residual = 0;
  double round_residual = 0;
  double millis = 0;

  static CountResult from_exact(Method method, const Rational& value, bool integer_inputs = true) {
    CountResult r;
    r.method = method;
    r.exact = value;
    r.approx = BigFloat(value, 64).to_long_double();
    if (integer_inputs && is_integer(value)) r.rounded = value.get_num();
    return r;
  }
};

// Runs `fn` and stores its wall time in the returned CountResult.
template <class Fn>
CountResult timed(Fn&& fn) {
  auto start = std::chrono::steady_clock::now();
  CountResult r = fn();
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// Matrix-Tree theorem on the (1,1) cofactor. Zero for disconnected graphs.
inline Rational tau_oracle(const WeightedGraph& g) {
  if (g.vertex_count() == 0) throw InvalidInput("tau_oracle: graph has no vertices");
  if (g.vertex_count() == 1) return 1;
  return det_rational(minor(laplacian(g), {1}, {1}));
}

// Cofactor (-1)^(i+j) det(L^i_j) for an arbitrary position (1-based).
inline Rational tau_cofactor(const WeightedGraph& g, std::size_t i, std::size_t j) {
  if (g.vertex_count() == 1) return 1;
  Rational d = det_rational(minor(laplacian(g), {i}, {j}));
  return (i + j) % 2 == 0 ? d : Rational(-d);
}

inline constexpr std::size_t kEnumerateMaxVertices = 12;

namespace detail {

class TreeEnumerator {
 public:
  explicit TreeEnumerator(const WeightedGraph& g)
      : n_(g.vertex_count()), edges_(g.edges()), parent_(n_), size_(n_, 1) {
    for (std::size_t v = 0; v < n_; ++v) parent_[v] = v;
  }

  Rational run() {
    total_ = 0;
    recurse(0, 0, Rational(1));
    return total_;
  }

 private:
  std::size_t find(std::size_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  void recurse(std::size_t index, std::size_t chosen, const Rational& product) {
    if (chosen + 1 == n_) {
      total_ += product;
      return;
    }
    if (edges_.size() - index < n_ - 1 - chosen) return;
    const Edge& e = edges_[index];
    std::size_t a = find(e.u - 1);
    std::size_t b = find(e.v - 1);
    if (a != b) {
      if (size_[a] > size_[b]) std::swap(a, b);
      parent_[a] = b;
      size_[b] += size_[a];
      recurse(index + 1, chosen + 1, product * e.w);
      size_[b] -= size_[a];
      parent_[a] = a;
    }
    recurse(index + 1, chosen, product);
  }

  std::size_t n_;
  const std::vector<Edge>& edges_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  Rational total_;
};

}  // namespace detail

// Sum over all spanning trees of the product of edge weights, by explicit
// backtracking. Independent of any determinant code; limited to 12 vertices.
inline Rational tau_enumerate(const WeightedGraph& g) {
  if (g.vertex_count() == 0) throw InvalidInput("tau_enumerate: graph has no vertices");
  if (g.vertex_count() > kEnumerateMaxVertices) {
    throw InvalidInput("tau_enumerate: " + std::to_string(g.vertex_count()) + " vertices exceeds the limit of " +
                       std::to_string(kEnumerateMaxVertices));
  }
  if (g.vertex_count() == 1) return 1;
  return detail::TreeEnumerator(g).run();
}

// Product of the nonzero Laplacian eigenvalues divided by n. The smallest
// eigenvalue is the simple zero mode of a connected graph and is dropped.
inline long double tau_eigen(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw InvalidInput("tau_eigen: graph has no vertices");
  if (n == 1) return 1;
  if (!is_connected(g)) return 0;
  RationalMatrix l = laplacian(g);
  Eigen::MatrixXd a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = l(i, j).get_d();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("tau_eigen: eigenvalue iteration failed");
  std::vector<double> mu(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(mu.begin(), mu.end());
  long double product = 1;
  for (std::size_t i = 1; i < n; ++i) product *= static_cast<long double>(mu[i]);
  return product / static_cast<long double>(n);
}

// Weighted count of spanning arborescences rooted at `root` (all arcs point
// toward the root): det of the out-degree Laplacian without the root row/col.
template <class Real>
Complex<Real> arborescence_count(const WeightedDigraph<Real>& d, std::size_t root) {
  if (root < 1 || root > d.vertex_count()) throw InvalidInput("arborescence_count: root out of range");
  return det_complex<Real>(minor(d.laplacian(), {root}, {root}), d.precision());
}

// tau(G) = det(L1) * tau(G*), where L(G*) is the Schur complement of the
// principal block L1 on `v1` (1-based). The complement's cofactor is taken
// directly on the matrix.
inline CountResult tau_schur(const WeightedGraph& g, const std::vector<std::size_t>& v1) {
  const std::size_t n = g.vertex_count();
  if (v1.empty() || v1.size() >= n) throw InvalidInput("tau_schur: V1 must be a proper nonempty vertex subset");
  std::vector<bool> in_v1(n, false);
  for (std::size_t v : v1) {
    if (v < 1 || v > n) throw InvalidInput("tau_schur: vertex " + std::to_string(v) + " out of range");
    if (in_v1[v - 1]) throw InvalidInput("tau_schur: duplicate vertex " + std::to_string(v));
    in_v1[v - 1] = true;
  }
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
  for (std::size_t v = 0; v < n; ++v) (in_v1[v] ? first : second).push_back(v);

  const RationalMatrix l = laplacian(g);
  const RationalMatrix l1 = select(l, first, first);
  const RationalMatrix q = select(l, first, second);
  const RationalMatrix l2 = select(l, second, second);
  RationalMatrix x;
  try {
    x = solve_rational(l1, q);
  } catch (const SingularMatrix&) {
    throw SingularMatrix("tau_schur: principal submatrix on V1 is singular");
  }
  const RationalMatrix schur = l2 - q.transpose() * x;
  const Rational det1 = det_rational(l1);
  const Rational cof = second.size() == 1 ? Rational(1) : det_rational(minor(schur, {1}, {1}));
  return CountResult::from_exact(Method::kSchur, det1 * cof, g.has_integer_weights());
}

// Second-order minor identity for matrices with zero row and column sums:
//   det(L^{i,j}_{k,l}) = 1/2 (-1)^{i+j+k+l} [ det L^{i,l}_{i,l} + det L^{j,k}_{j,k}
//                                          - det L^{i,k}_{i,k} - det L^{j,l}_{j,l} ]
// Returns the right-hand side. A repeated-index minor such as L^{a,a}_{a,a}
// counts as 0.
inline Rational minor_identity_2x2(const RationalMatrix& l, std::size_t i, std::size_t j, std::size_t k,
                                   std::size_t q) {
  const std::size_t n = l.rows();
  if (!l.is_square()) throw InvalidInput("minor_identity_2x2: matrix is not square");
  if (n < 2) throw InvalidInput("minor_identity_2x2: matrix must be at least 2x2");
  for (std::size_t idx : {i, j, k, q}) {
    if (idx < 1 || idx > n) throw InvalidInput("minor_identity_2x2: index out of range");
  }
  if (!(i < j) || !(k < q)) throw InvalidInput("minor_identity_2x2: requires i < j and k < l");
  for (std::size_t r = 0; r < n; ++r) {
    Rational row = 0;
    Rational col = 0;
    for (std::size_t c = 0; c < n; ++c) {
      row += l(r, c);
      col += l(c, r);
    }
    if (sgn(row) != 0 || sgn(col) != 0) throw InvalidInput("minor_identity_2x2: row and column sums must vanish");
  }
  auto principal = [&](std::size_t a, std::size_t b) -> Rational {
    if (a == b) return 0;
    return det_rational(minor(l, {a, b}, {a, b}));
  };
  Rational bracket = principal(i, q) + principal(j, k) - principal(i, k) - principal(j, q);
  Rational result = bracket / 2;
  return (i + j + k + q) % 2 == 0 ? result : Rational(-result);
}

}  // namespace ptree

#endif  // PTREE_COUNTING_HPP_
