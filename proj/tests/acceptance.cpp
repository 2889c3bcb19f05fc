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

// Acceptance gate: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

namespace ptree {
namespace {

using testing::Rng;

struct Verdict {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) note << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

double modulus(const ComplexScalar& z) { return std::sqrt(z.norm()); }

std::vector<PeriodicPresentation> suite(std::uint64_t seed, std::size_t count, std::size_t min_fixed, std::size_t max_fixed) {
  Rng rng(seed);
  RandomPresentationOptions o;
  o.min_order = 2;
  o.max_order = 8;
  o.min_cell = 1;
  o.max_cell = 4;
  o.min_fixed = min_fixed;
  o.max_fixed = max_fixed;
  o.max_weight = 3;
  std::vector<PeriodicPresentation> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_presentation(rng, o));
  return out;
}

void main_theorem(const std::vector<PeriodicPresentation>& presentations, Verdict& v) {
  double worst_imag = 0;
  for (std::size_t i = 0; i < presentations.size(); ++i) {
    const PeriodicPresentation& p = presentations[i];
    const CountResult r = count_factorized(p);
    const Rational oracle = tau_oracle(expand(p));
    v.require(r.rounded && Rational(*r.rounded) == oracle, "instance " + std::to_string(i) + " count mismatch");
    v.require(r.imag_residual <= 1e-6, "instance " + std::to_string(i) + " imaginary residual");
    worst_imag = std::max(worst_imag, r.imag_residual);
  }
  v.note << presentations.size() << " instances, max imag residual " << worst_imag;
}

void criterion1(Verdict& v) { main_theorem(suite(1001, 200, 1, 3), v); }

void criterion2(Verdict& v) { main_theorem(suite(2002, 100, 0, 0), v); }

void criterion3(Verdict& v) {
  std::size_t blocks = 0;
  for (const PeriodicPresentation& p : suite(1001, 200, 1, 3)) {
    const ModifiedCellLaplacian cell = build_P(p);
    for (std::size_t c = 0; c < p.cell_size; ++c) {
      Rational col = 0;
      for (std::size_t r = 0; r < p.cell_size; ++r) col += cell.p(r, c);
      v.require(sgn(col) == 0, "P column sum");
    }
    std::vector<ComplexScalar> dets(static_cast<std::size_t>(p.order));
    for (long t = 1; t < p.order; ++t) {
      const auto block = build_Qt(p, t);
      for (std::size_t r = 0; r < p.cell_size; ++r)
        for (std::size_t c = 0; c < p.cell_size; ++c) v.require(block.q(r, c) == block.q(c, r).conj(), "Q_t Hermitian");
      const double scale = 1 + modulus(block.det);
      const ComplexScalar arb = arborescence_count(build_Dt_digraph(p, t), p.cell_size + 1);
      v.require(modulus(arb - block.det) <= 1e-8 * scale, "arborescence count vs det Q_t");
      v.require(block.det.re >= -1e-9 * scale, "Re det Q_t nonnegative");
      dets[static_cast<std::size_t>(t)] = block.det;
      ++blocks;
    }
    for (long t = 1; t < p.order; ++t) {
      const ComplexScalar& a = dets[static_cast<std::size_t>(p.order - t)];
      const ComplexScalar& b = dets[static_cast<std::size_t>(t)];
      v.require(modulus(a - b.conj()) <= 1e-9 * (1 + modulus(b)), "conjugate pairing");
    }
  }
  v.note << blocks << " quotient blocks";
}

void criterion4(Verdict& v) {
  const std::pair<Rational, Rational> weights[] = {{1, 1}, {2, 3}, {Rational(1, 2), 5}};
  double worst = 0;
  for (long n = 2; n <= 10; ++n)
    for (long m = 1; m <= 10; ++m)
      for (const auto& [x, y] : weights) {
        const CobwebSpec s{n, m, x, y};
        const double gap = testing::relative_gap(cobweb_gf_product(s).approx, cobweb_gf_closed(s).approx);
        worst = std::max(worst, gap);
        v.require(gap <= 1e-9, "product vs closed at N=" + std::to_string(n) + " M=" + std::to_string(m));
      }
  // Exact comparison: scale weights by the common denominator d, so that
  // tau(d w) = d^(|V|-1) tau(w) is an integer identity.
  std::size_t exact = 0;
  for (long n = 2; n <= 6; ++n)
    for (long m = 1; m <= 4; ++m)
      for (const auto& [x, y] : weights) {
        const CobwebSpec s{n, m, x, y};
        const BigInt d = lcm(x.get_den(), y.get_den());
        const CobwebSpec scaled{n, m, x * d, y * d};
        Rational oracle = tau_oracle(expand(cobweb_presentation(s)));
        for (long i = 0; i < n * m; ++i) oracle *= d;
        const bool ok = is_integer(oracle) && *cobweb_gf_closed(scaled).rounded == oracle.get_num() &&
                        *cobweb_gf_product(scaled).rounded == oracle.get_num();
        v.require(ok, "oracle agreement at N=" + std::to_string(n) + " M=" + std::to_string(m));
        ++exact;
      }
  v.require(*cobweb_gf_closed({3, 1, 1, 1}).rounded == 16, "anchor N=3 M=1");
  for (long n = 2; n <= 10; ++n)
    for (long m = 1; m <= 4; ++m) {
      const Rational x(3, 2);
      const PeriodicPresentation p = cobweb_presentation({n, m, x, 2});
      v.require(fixed_block(p).det == x * n, "hub determinant N x");
      Rational power = 1;
      for (long i = 1; i < m; ++i) power *= x;
      v.require(build_P(p).tau == power, "modified cell tree sum x^(M-1)");
    }
  v.note << "max relative gap " << worst << ", " << exact << " exact oracle matches";
}

std::vector<std::vector<long>> step_sets(long n, std::size_t max_k) {
  std::vector<std::vector<long>> out;
  const long half = n / 2;
  for (unsigned mask = 1; mask < (1u << half); ++mask) {
    std::vector<long> steps;
    for (long s = 1; s <= half; ++s)
      if (mask & (1u << (s - 1))) steps.push_back(s);
    long g = n;
    for (long s : steps) g = std::gcd(g, s);
    if (steps.size() <= max_k && g == 1) out.push_back(steps);
  }
  return out;
}

void criterion5(Verdict& v) {
  std::size_t regular = 0;
  std::size_t antipodal = 0;
  for (long n = 2; n <= 12; ++n)
    for (const auto& steps : step_sets(n, 3)) {
      const CirculantSpec s{n, steps, false};
      (s.has_antipodal_step() ? antipodal : regular)++;
      v.require(*circulant_tau(s).rounded == tau_oracle(expand(circulant_presentation(s))).get_num(),
                "C_" + std::to_string(n));
    }
  v.require(regular > 0 && antipodal > 0, "both degree branches covered");
  v.require(*circulant_tau({6, {1}, false}).rounded == 6, "anchor C6(1)");
  v.require(*circulant_tau({4, {1, 2}, false}).rounded == 16, "anchor C4(1,2)");
  v.require(*circulant_tau({5, {1, 2}, false}).rounded == 125, "anchor C5(1,2)");
  v.note << regular << " regular and " << antipodal << " antipodal step sets";
}

void criterion6(Verdict& v) {
  std::size_t count = 0;
  for (long n = 2; n <= 10; ++n)
    for (const auto& steps : step_sets(n, 3)) {
      const CirculantSpec s{n, steps, true};
      const PeriodicPresentation p = circulant_presentation(s);
      v.require(*join_k2_circulant_tau(s).rounded == tau_oracle(expand(p)).get_num(), "join n=" + std::to_string(n));
      v.require(fixed_block(p).det == n * n + 2 * n, "fixed block determinant n^2 + 2n");
      ++count;
    }
  v.require(*join_k2_circulant_tau({3, {1}, true}).rounded == 125, "anchor K2 v C3(1)");
  v.note << count << " joins";
}

void criterion7(Verdict& v) {
  Rng rng(7007);
  std::size_t quadruples = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(testing::uniform(rng, 2, 8));
    const RationalMatrix l = laplacian(testing::random_connected_graph(rng, n, 0.4, 5, true));
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j)
        for (std::size_t k = 1; k <= n; ++k)
          for (std::size_t q = k + 1; q <= n; ++q) {
            v.require(minor_identity_2x2(l, i, j, k, q) == det_rational(minor(l, {i, j}, {k, q})), "minor identity");
            ++quadruples;
          }
  }
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(testing::uniform(rng, 2, 10));
    const WeightedGraph g = testing::random_connected_graph(rng, n, 0.4, 5, trial % 2 == 0);
    v.require(*tau_schur(g, testing::random_subset(rng, n)).exact == tau_oracle(g), "Schur path");
  }
  double worst_eigen = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<std::size_t>(testing::uniform(rng, 2, 30));
    const WeightedGraph g = testing::random_connected_graph(rng, n, 0.3, 5);
    const double gap = testing::relative_gap(tau_eigen(g), BigFloat(tau_oracle(g), 64).to_long_double());
    worst_eigen = std::max(worst_eigen, gap);
    v.require(gap <= 1e-8, "eigenvalue product");
  }
  std::uniform_real_distribution<double> coeff(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Complex<double> p(coeff(rng), trial % 2 ? coeff(rng) : 0.0);
    const Complex<double> q(coeff(rng), trial % 2 ? coeff(rng) : 0.0);
    Complex<double> a0 = Complex<double>::one(53);
    Complex<double> a1 = q;
    bool ok = modulus(binet(p, q, 0) - a0) <= 1e-12 && modulus(binet(p, q, 1) - a1) <= 1e-12;
    for (long n = 2; n <= 30; ++n) {
      const Complex<double> next = q * a1 - p * a0;
      ok = ok && modulus(binet(p, q, n) - next) <= 1e-9 * (1 + modulus(next));
      a0 = a1;
      a1 = next;
    }
    v.require(ok, "Binet recurrence");
  }
  v.note << quadruples << " minor quadruples, 100 Schur graphs, eigen max gap " << worst_eigen << ", 50 Binet pairs";
}

void criterion8(Verdict& v) {
  const PeriodicPresentation p = cobweb_presentation({200, 3, 1, 1});
  const WeightedGraph g = expand(p);
  v.require(g.vertex_count() == 601, "601 vertices");
  double factor_ms = 1e300;
  CountResult factor;
  for (int rep = 0; rep < 3; ++rep) {
    factor = count_factorized(p);
    factor_ms = std::min(factor_ms, factor.millis);
  }
  const auto start = std::chrono::steady_clock::now();
  const Rational oracle = tau_oracle(g);
  const double oracle_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  v.require(factor.rounded && Rational(*factor.rounded) == oracle, "factorized count equals oracle");
  v.require(oracle_ms >= 5 * factor_ms, "speedup at least 5x");
  v.note << "factor " << factor_ms << " ms, oracle " << oracle_ms << " ms, ratio " << oracle_ms / factor_ms;
}

}  // namespace
}  // namespace ptree

int main() {
  using ptree::Verdict;
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
      {"1 main factorization equals oracle (k = 1..3)", ptree::criterion1},
      {"2 factorization without fixed vertices equals oracle", ptree::criterion2},
      {"3 quotient block identities", ptree::criterion3},
      {"4 cobweb product, closed form and oracle", ptree::criterion4},
      {"5 circulant closed form", ptree::criterion5},
      {"6 K2 join closed form", ptree::criterion6},
      {"7 minor identity, Schur, eigenvalue and Binet checks", ptree::criterion7},
      {"8 cobweb N=200 M=3 speed and agreement", ptree::criterion8},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      run(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.note << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (v.pass ? "PASS" : "FAIL") << "  criterion " << name << "  [" << v.note.str() << "; " << secs
              << " s]\n";
    failed += v.pass ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
  return failed == 0 ? 0 : 1;
}
