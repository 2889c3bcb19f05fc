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

#ifndef PTREE_PERIODIC_HPP_
#define PTREE_PERIODIC_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ptree/errors.hpp"
#include "ptree/exactla.hpp"
#include "ptree/graph.hpp"
#include "ptree/matrix.hpp"
#include "ptree/rational.hpp"

namespace ptree {

// Quotient description of a graph with an order-N rotation whose vertices are
// either fixed (the k vertices of S) or lie on orbits of length N (N copies of
// the m-vertex cell H0).
//
//   couplings[t]  m x m, entry (x, y) = weight of v_x^(0) v_y^(t), t = 1..N/2.
//                 Absent keys are zero. For even N, couplings[N/2] must be
//                 symmetric.
//   fixed_to_cell k x m, entry (z, x) = weight of s_z v_x^(0).
struct PeriodicPresentation {
  long order = 2;      // N
  std::size_t cell_size = 1;  // m
  std::size_t fixed_size = 0; // k
  std::vector<Edge> cell_edges;   // H0, vertices 1..m
  std::vector<Edge> fixed_edges;  // S, vertices 1..k
  std::map<long, RationalMatrix> couplings;
  RationalMatrix fixed_to_cell;

  long half() const { return order / 2; }
  bool has_antipodal_coupling() const { return order % 2 == 0; }

  // R_t, or the zero matrix when absent (including t = N/2 for odd N).
  RationalMatrix coupling(long t) const {
    auto it = couplings.find(t);
    if (it == couplings.end()) return zero_rational(cell_size, cell_size);
    return it->second;
  }

  std::size_t total_vertices() const { return static_cast<std::size_t>(order) * cell_size + fixed_size; }

  // 1-based label of v_x^(copy) in the expanded graph.
  std::size_t cell_vertex(long copy, std::size_t x) const {
    return static_cast<std::size_t>(((copy % order) + order) % order) * cell_size + x;
  }
  std::size_t fixed_vertex(std::size_t z) const { return static_cast<std::size_t>(order) * cell_size + z; }

  bool has_integer_weights() const {
    auto integral = [](const Edge& e) { return is_integer(e.w); };
    if (!std::all_of(cell_edges.begin(), cell_edges.end(), integral)) return false;
    if (!std::all_of(fixed_edges.begin(), fixed_edges.end(), integral)) return false;
    for (const auto& [t, r] : couplings)
      for (const Rational& q : r.data())
        if (!is_integer(q)) return false;
    for (const Rational& q : fixed_to_cell.data())
      if (!is_integer(q)) return false;
    return true;
  }
};

struct Diagnostic {
  std::string code;
  std::string message;
};

namespace detail {

inline void check_edge_list(const std::vector<Edge>& edges, std::size_t n, const std::string& name,
                            std::vector<Diagnostic>& out) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Edge& e : edges) {
    const std::string label = name + " edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
    if (e.u < 1 || e.u > n || e.v < 1 || e.v > n) {
      out.push_back({"edge_out_of_range", label + " has a vertex outside 1.." + std::to_string(n)});
      continue;
    }
    if (e.u == e.v) out.push_back({"loop", label + " is a loop"});
    if (sgn(e.w) <= 0) out.push_back({"nonpositive_weight", label + " has non-positive weight"});
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
      out.push_back({"duplicate_edge", label + " is duplicated"});
    }
  }
}

inline bool has_negative(const RationalMatrix& m) {
  return std::any_of(m.data().begin(), m.data().end(), [](const Rational& q) { return sgn(q) < 0; });
}

inline bool is_symmetric(const RationalMatrix& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

}  // namespace detail

// The graph the presentation describes. Vertex v_x^(i) becomes i*m + x and
// s_z becomes N*m + z. Antipodal couplings (t = N/2) are generated only from
// copies 0..N/2-1 so that each antipodal edge appears once.
inline WeightedGraph expand(const PeriodicPresentation& p) {
  const long n_copies = p.order;
  const std::size_t m = p.cell_size;
  std::vector<Edge> edges;
  for (long i = 0; i < n_copies; ++i)
    for (const Edge& e : p.cell_edges) edges.push_back({p.cell_vertex(i, e.u), p.cell_vertex(i, e.v), e.w});
  for (const auto& [t, r] : p.couplings) {
    const bool antipodal = p.has_antipodal_coupling() && t == p.half();
    const long copies = antipodal ? n_copies / 2 : n_copies;
    for (long i = 0; i < copies; ++i)
      for (std::size_t x = 1; x <= m; ++x)
        for (std::size_t y = 1; y <= m; ++y) {
          const Rational& w = r(x - 1, y - 1);
          if (sgn(w) != 0) edges.push_back({p.cell_vertex(i, x), p.cell_vertex(i + t, y), w});
        }
  }
  for (const Edge& e : p.fixed_edges) edges.push_back({p.fixed_vertex(e.u), p.fixed_vertex(e.v), e.w});
  for (std::size_t z = 1; z <= p.fixed_size; ++z)
    for (long i = 0; i < n_copies; ++i)
      for (std::size_t x = 1; x <= m; ++x) {
        const Rational& w = p.fixed_to_cell(z - 1, x - 1);
        if (sgn(w) != 0) edges.push_back({p.fixed_vertex(z), p.cell_vertex(i, x), w});
      }
  return WeightedGraph(p.total_vertices(), std::move(edges));
}

// Structural diagnostics; an empty list means the presentation is usable.
// Connectivity of the expanded graph is checked only once the structure is
// sound.
inline std::vector<Diagnostic> validate(const PeriodicPresentation& p) {
  std::vector<Diagnostic> out;
  if (p.order < 2) out.push_back({"order_too_small", "N must be at least 2"});
  if (p.cell_size < 1) out.push_back({"empty_cell", "cell size m must be at least 1"});
  if (!out.empty()) return out;

  detail::check_edge_list(p.cell_edges, p.cell_size, "H0", out);
  detail::check_edge_list(p.fixed_edges, p.fixed_size, "S", out);
  for (const auto& [t, r] : p.couplings) {
    const std::string name = "R_" + std::to_string(t);
    if (t < 1 || t > p.half()) {
      out.push_back({"coupling_index", name + " index outside 1.." + std::to_string(p.half())});
      continue;
    }
    if (r.rows() != p.cell_size || r.cols() != p.cell_size) {
      out.push_back({"coupling_shape", name + " must be " + std::to_string(p.cell_size) + "x" +
                                           std::to_string(p.cell_size)});
      continue;
    }
    if (detail::has_negative(r)) out.push_back({"negative_weight", name + " has a negative entry"});
    if (p.has_antipodal_coupling() && t == p.half() && !detail::is_symmetric(r)) {
      out.push_back({"antipodal_asymmetric", "R_{N/2} not symmetric"});
    }
  }
  const RationalMatrix& b = p.fixed_to_cell;
  if (p.fixed_size == 0) {
    if (b.rows() != 0) out.push_back({"fixed_shape", "B must be empty when k = 0"});
  } else if (b.rows() != p.fixed_size || b.cols() != p.cell_size) {
    out.push_back({"fixed_shape", "B must be " + std::to_string(p.fixed_size) + "x" + std::to_string(p.cell_size)});
  } else if (detail::has_negative(b)) {
    out.push_back({"negative_weight", "B has a negative entry"});
  }
  if (!out.empty()) return out;

  try {
    if (!is_connected(expand(p))) out.push_back({"disconnected", "expanded graph disconnected"});
  } catch (const InvalidInput& e) {
    out.push_back({"expansion_failed", e.what()});
  }
  return out;
}

// L_S and its determinant. The diagonal carries the full degree of each fixed
// vertex, including its N copies of the B coupling.
struct FixedBlock {
  RationalMatrix laplacian;
  Rational det;
};

inline FixedBlock fixed_block(const PeriodicPresentation& p) {
  const std::size_t k = p.fixed_size;
  if (k == 0) throw InvalidInput("fixed_block: presentation has no fixed vertices");
  RationalMatrix ls = zero_rational(k, k);
  for (const Edge& e : p.fixed_edges) {
    ls(e.u - 1, e.u - 1) += e.w;
    ls(e.v - 1, e.v - 1) += e.w;
    ls(e.u - 1, e.v - 1) -= e.w;
    ls(e.v - 1, e.u - 1) -= e.w;
  }
  for (std::size_t z = 0; z < k; ++z) {
    Rational row = 0;
    for (std::size_t x = 0; x < p.cell_size; ++x) row += p.fixed_to_cell(z, x);
    ls(z, z) += row * p.order;
  }
  Rational det = det_rational(ls);
  return {std::move(ls), std::move(det)};
}

// L_{H0}: the cell-0 principal block of L(G). Diagonal entries are full
// degrees in G; off-diagonal entries come from H0 alone.
inline RationalMatrix cell_laplacian(const PeriodicPresentation& p) {
  const std::size_t m = p.cell_size;
  RationalMatrix l = zero_rational(m, m);
  for (const Edge& e : p.cell_edges) {
    l(e.u - 1, e.u - 1) += e.w;
    l(e.v - 1, e.v - 1) += e.w;
    l(e.u - 1, e.v - 1) -= e.w;
    l(e.v - 1, e.u - 1) -= e.w;
  }
  for (const auto& [t, r] : p.couplings) {
    const bool antipodal = p.has_antipodal_coupling() && t == p.half();
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y) {
        l(x, x) += r(x, y);
        if (!antipodal) l(x, x) += r(y, x);
      }
  }
  for (std::size_t z = 0; z < p.fixed_size; ++z)
    for (std::size_t x = 0; x < m; ++x) l(x, x) += p.fixed_to_cell(z, x);
  return l;
}

// Checks on `g` that the rotation v_x^(i) -> v_x^(i+1), s_z -> s_z preserves
// every edge and its weight.
inline bool rotation_check(const PeriodicPresentation& p, const WeightedGraph& g) {
  if (g.vertex_count() != p.total_vertices()) return false;
  const std::size_t cells = static_cast<std::size_t>(p.order) * p.cell_size;
  auto sigma = [&](std::size_t v) {
    if (v > cells) return v;
    const long copy = static_cast<long>((v - 1) / p.cell_size);
    const std::size_t x = (v - 1) % p.cell_size + 1;
    return p.cell_vertex(copy + 1, x);
  };
  std::map<std::pair<std::size_t, std::size_t>, Rational> weight;
  for (const Edge& e : g.edges()) weight[{std::min(e.u, e.v), std::max(e.u, e.v)}] = e.w;
  for (const Edge& e : g.edges()) {
    const std::size_t a = sigma(e.u);
    const std::size_t b = sigma(e.v);
    auto it = weight.find({std::min(a, b), std::max(a, b)});
    if (it == weight.end() || it->second != e.w) return false;
  }
  return true;
}

inline bool rotation_check(const PeriodicPresentation& p) { return rotation_check(p, expand(p)); }

}  // namespace ptree

#endif  // PTREE_PERIODIC_HPP_
