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

#ifndef PTREE_GRAPH_HPP_
#define PTREE_GRAPH_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ptree/complex.hpp"
#include "ptree/errors.hpp"
#include "ptree/matrix.hpp"
#include "ptree/rational.hpp"

namespace ptree {

// Undirected weighted edge between 1-based vertices.
struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  Rational w;

  friend bool operator==(const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v && a.w == b.w; }
};

// Simple loopless undirected graph with positive rational edge weights.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  WeightedGraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const Edge& e : edges_) {
      if (e.u < 1 || e.u > n_ || e.v < 1 || e.v > n_) {
        throw InvalidInput("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") has a vertex outside 1.." +
                           std::to_string(n_));
      }
      if (e.u == e.v) throw InvalidInput("loop at vertex " + std::to_string(e.u));
      if (sgn(e.w) <= 0) {
        throw InvalidInput("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") has non-positive weight");
      }
      if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
        throw InvalidInput("duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
      }
    }
  }

  // Builds a simple graph from a multigraph edge list: loops are dropped and
  // parallel edges merged by summing weights. Pairs ordered by (min, max).
  static WeightedGraph merged(std::size_t n, const std::vector<Edge>& multi_edges) {
    std::map<std::pair<std::size_t, std::size_t>, Rational> acc;
    for (const Edge& e : multi_edges) {
      if (e.u == e.v) continue;
      acc[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.w;
    }
    std::vector<Edge> edges;
    edges.reserve(acc.size());
    for (auto& [key, w] : acc) {
      if (sgn(w) != 0) edges.push_back({key.first, key.second, w});
    }
    return WeightedGraph(n, std::move(edges));
  }

  std::size_t vertex_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_integer_weights() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return is_integer(e.w); });
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

// L(G) = D(G) - A(G).
inline RationalMatrix laplacian(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  RationalMatrix l = zero_rational(n, n);
  for (const Edge& e : g.edges()) {
    const std::size_t a = e.u - 1;
    const std::size_t b = e.v - 1;
    l(a, a) += e.w;
    l(b, b) += e.w;
    l(a, b) -= e.w;
    l(b, a) -= e.w;
  }
  return l;
}

inline bool is_connected(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n <= 1) return true;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n;
  for (const Edge& e : g.edges()) {
    std::size_t a = find(e.u - 1);
    std::size_t b = find(e.v - 1);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

// Identifies vertices a and b. The merged vertex keeps min(a, b); vertices
// above max(a, b) shift down by one. Loops vanish, parallel edges merge.
inline WeightedGraph contract(const WeightedGraph& g, std::size_t a, std::size_t b) {
  const std::size_t n = g.vertex_count();
  if (a == b) throw InvalidInput("contract: vertices must differ");
  if (a < 1 || a > n || b < 1 || b > n) throw InvalidInput("contract: vertex out of range");
  const std::size_t lo = std::min(a, b);
  const std::size_t hi = std::max(a, b);
  auto relabel = [&](std::size_t v) { return v == hi ? lo : (v > hi ? v - 1 : v); };
  std::vector<Edge> multi;
  multi.reserve(g.edges().size());
  for (const Edge& e : g.edges()) multi.push_back({relabel(e.u), relabel(e.v), e.w});
  return WeightedGraph::merged(n - 1, multi);
}

// Identifies every vertex of `group` (1-based) into its smallest member, then
// compacts the labels preserving order.
inline WeightedGraph contract_set(const WeightedGraph& g, const std::vector<std::size_t>& group) {
  if (group.empty()) return g;
  const std::size_t n = g.vertex_count();
  std::vector<bool> in_group(n + 1, false);
  for (std::size_t v : group) {
    if (v < 1 || v > n) throw InvalidInput("contract_set: vertex out of range");
    in_group[v] = true;
  }
  const std::size_t keep = *std::min_element(group.begin(), group.end());
  std::vector<std::size_t> label(n + 1, 0);
  std::size_t next = 0;
  for (std::size_t v = 1; v <= n; ++v) {
    if (in_group[v] && v != keep) continue;
    label[v] = ++next;
  }
  for (std::size_t v = 1; v <= n; ++v)
    if (in_group[v]) label[v] = label[keep];
  std::vector<Edge> multi;
  for (const Edge& e : g.edges()) multi.push_back({label[e.u], label[e.v], e.w});
  return WeightedGraph::merged(next, multi);
}

// Directed graph with complex arc weights. Parallel arcs are merged by
// summing weights, so exactly one arc is stored per ordered pair.
template <class Real>
class WeightedDigraph {
 public:
  explicit WeightedDigraph(std::size_t n, long precision = 53) : n_(n), precision_(precision) {}

  void add_arc(std::size_t u, std::size_t v, const Complex<Real>& w) {
    if (u < 1 || u > n_ || v < 1 || v > n_) throw InvalidInput("arc endpoint out of range");
    if (u == v) throw InvalidInput("loop arcs are not allowed");
    auto [it, inserted] = arcs_.try_emplace({u, v}, w);
    if (!inserted) it->second += w;
  }

  std::size_t vertex_count() const { return n_; }
  long precision() const { return precision_; }
  const std::map<std::pair<std::size_t, std::size_t>, Complex<Real>>& arcs() const { return arcs_; }

  // Out-degree Laplacian: diag(weighted out-degrees) - A(D).
  ComplexMatrixOf<Real> laplacian() const {
    ComplexMatrixOf<Real> l(n_, n_, Complex<Real>::zero(precision_));
    for (const auto& [key, w] : arcs_) {
      const std::size_t a = key.first - 1;
      const std::size_t b = key.second - 1;
      l(a, a) += w;
      l(a, b) -= w;
    }
    return l;
  }

 private:
  std::size_t n_;
  long precision_;
  std::map<std::pair<std::size_t, std::size_t>, Complex<Real>> arcs_;
};

}  // namespace ptree

#endif  // PTREE_GRAPH_HPP_
