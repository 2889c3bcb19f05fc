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

#ifndef PTREE_RANDOM_HPP_
#define PTREE_RANDOM_HPP_

#include <cstddef>
#include <random>

#include "ptree/errors.hpp"
#include "ptree/matrix.hpp"
#include "ptree/periodic.hpp"
#include "ptree/rational.hpp"

namespace ptree {

// Ranges for random_presentation. All bounds are inclusive.
struct RandomPresentationOptions {
  long min_order = 2;
  long max_order = 8;
  std::size_t min_cell = 1;
  std::size_t max_cell = 4;
  std::size_t min_fixed = 1;
  std::size_t max_fixed = 3;
  long max_weight = 3;
  double density = 0.4;  // chance that any given edge slot is used
  int max_attempts = 1000;
};

// Draws presentations with integer weights until one passes validate().
template <class Rng>
PeriodicPresentation random_presentation(Rng& rng, const RandomPresentationOptions& o = {}) {
  auto uniform = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  std::bernoulli_distribution use(o.density);
  auto weight = [&] { return Rational(uniform(1, o.max_weight)); };

  for (int attempt = 0; attempt < o.max_attempts; ++attempt) {
    PeriodicPresentation p;
    p.order = uniform(o.min_order, o.max_order);
    p.cell_size = static_cast<std::size_t>(uniform(static_cast<long>(o.min_cell), static_cast<long>(o.max_cell)));
    p.fixed_size = static_cast<std::size_t>(uniform(static_cast<long>(o.min_fixed), static_cast<long>(o.max_fixed)));
    const std::size_t m = p.cell_size;
    const std::size_t k = p.fixed_size;

    for (std::size_t u = 1; u <= m; ++u)
      for (std::size_t v = u + 1; v <= m; ++v)
        if (use(rng)) p.cell_edges.push_back({u, v, weight()});
    for (std::size_t u = 1; u <= k; ++u)
      for (std::size_t v = u + 1; v <= k; ++v)
        if (use(rng)) p.fixed_edges.push_back({u, v, weight()});

    for (long t = 1; t <= p.half(); ++t) {
      const bool antipodal = p.has_antipodal_coupling() && t == p.half();
      RationalMatrix r = zero_rational(m, m);
      bool any = false;
      for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = antipodal ? x : 0; y < m; ++y) {
          if (!use(rng)) continue;
          r(x, y) = weight();
          if (antipodal) r(y, x) = r(x, y);
          any = true;
        }
      if (any) p.couplings[t] = r;
    }

    p.fixed_to_cell = zero_rational(k, m);
    for (std::size_t z = 0; z < k; ++z)
      for (std::size_t x = 0; x < m; ++x)
        if (use(rng)) p.fixed_to_cell(z, x) = weight();

    if (validate(p).empty()) return p;
  }
  throw InvalidInput("random_presentation: no connected presentation found");
}

}  // namespace ptree

#endif  // PTREE_RANDOM_HPP_
