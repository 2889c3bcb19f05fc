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

// Independent oracles and hand-rolled generators shared by the test suites.

#ifndef PTREE_TESTS_SUPPORT_HPP_
#define PTREE_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <random>
#include <vector>

#include "ptree/ptree.hpp"

namespace ptree::testing {

using Rng = std::mt19937_64;

// Leibniz expansion; only for small matrices.
inline Rational leibniz_det(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) ++inversions;
    Rational term = 1;
    for (std::size_t r = 0; r < n && sgn(term) != 0; ++r) term *= m(r, perm[r]);
    if (inversions % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Sum of weight products over all (n-1)-edge subsets that form a tree.
inline Rational subset_tree_sum(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n <= 1) return 1;
  const auto& edges = g.edges();
  if (edges.size() < n - 1) return 0;
  std::vector<bool> pick(edges.size(), false);
  std::fill(pick.end() - static_cast<long>(n - 1), pick.end(), true);
  Rational total = 0;
  do {
    std::vector<std::size_t> parent(n + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    bool acyclic = true;
    Rational w = 1;
    for (std::size_t i = 0; i < edges.size() && acyclic; ++i) {
      if (!pick[i]) continue;
      const std::size_t a = find(edges[i].u);
      const std::size_t b = find(edges[i].v);
      if (a == b) acyclic = false;
      parent[a] = b;
      w *= edges[i].w;
    }
    if (acyclic) total += w;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return total;
}

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Rational random_weight(Rng& rng, long max_weight, bool fractional) {
  if (!fractional) return Rational(uniform(rng, 1, max_weight));
  Rational q(uniform(rng, 1, max_weight * 3), uniform(rng, 1, 3));
  q.canonicalize();
  return q;
}

// A random spanning tree (each vertex hooks onto an earlier one) plus extra
// edges with probability `density`.
inline WeightedGraph random_connected_graph(Rng& rng, std::size_t n, double density, long max_weight,
                                            bool fractional = false) {
  std::vector<std::vector<bool>> used(n + 1, std::vector<bool>(n + 1, false));
  std::vector<Edge> edges;
  for (std::size_t v = 2; v <= n; ++v) {
    const auto u = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(v) - 1));
    used[u][v] = true;
    edges.push_back({u, v, random_weight(rng, max_weight, fractional)});
  }
  std::bernoulli_distribution extra(density);
  for (std::size_t u = 1; u <= n; ++u)
    for (std::size_t v = u + 1; v <= n; ++v)
      if (!used[u][v] && extra(rng)) edges.push_back({u, v, random_weight(rng, max_weight, fractional)});
  std::shuffle(edges.begin(), edges.end(), rng);
  return WeightedGraph(n, std::move(edges));
}

inline WeightedGraph random_graph(Rng& rng, std::size_t n, double density, long max_weight) {
  std::vector<Edge> edges;
  std::bernoulli_distribution use(density);
  for (std::size_t u = 1; u <= n; ++u)
    for (std::size_t v = u + 1; v <= n; ++v)
      if (use(rng)) edges.push_back({u, v, Rational(uniform(rng, 1, max_weight))});
  return WeightedGraph(n, std::move(edges));
}

inline RationalMatrix random_int_matrix(Rng& rng, std::size_t n, long lo, long hi, double zero_chance = 0.0) {
  RationalMatrix m(n, n);
  std::bernoulli_distribution zero(zero_chance);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = zero(rng) ? 0 : uniform(rng, lo, hi);
  return m;
}

// Proper nonempty subset of 1..n.
inline std::vector<std::size_t> random_subset(Rng& rng, std::size_t n) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 1);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(n) - 1)));
  std::sort(all.begin(), all.end());
  return all;
}

inline PeriodicPresentation random_presentation_k(Rng& rng, std::size_t min_fixed, std::size_t max_fixed,
                                                  long max_order = 8, std::size_t max_cell = 4) {
  RandomPresentationOptions o;
  o.min_fixed = min_fixed;
  o.max_fixed = max_fixed;
  o.max_order = max_order;
  o.max_cell = max_cell;
  return random_presentation(rng, o);
}

inline double relative_gap(long double a, long double b) {
  const long double scale = std::max({std::fabs(a), std::fabs(b), 1.0L});
  return static_cast<double>(std::fabs(a - b) / scale);
}

}  // namespace ptree::testing

#endif  // PTREE_TESTS_SUPPORT_HPP_
