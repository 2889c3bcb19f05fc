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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"

namespace ptree {
namespace {

using testing::Rng;

long double oracle_value(const PeriodicPresentation& p) { return BigFloat(tau_oracle(expand(p)), 64).to_long_double(); }

TEST(Binet, FibonacciShift) {
  const double expected[] = {1, 1, 2, 3, 5, 8};
  for (long n = 0; n < 6; ++n) EXPECT_NEAR(binet(-1.0, 1.0, n), expected[n], 1e-12);
}

TEST(Binet, RepeatedRootLimit) {
  for (long n = 0; n < 10; ++n) EXPECT_NEAR(binet(1.0, 2.0, n), static_cast<double>(n + 1), 1e-12);
  EXPECT_NEAR(binet(9.0, 6.0, 4), 5.0 * 81.0, 1e-9);  // (n+1) 3^n
}

TEST(Binet, CobwebFirstTerm) {
  const double a = std::sqrt(3.0) / 2;
  EXPECT_NEAR(binet(1.0, 4 * a * a + 2, 1), 5.0, 1e-12);
  EXPECT_NEAR(binet(1.0, 4 * a * a + 2, -1), 0.0, 0.0);
  EXPECT_THROW(binet(1.0, 2.0, -2), InvalidInput);
}

TEST(Binet, SatisfiesRecurrence) {
  Rng rng(73);
  std::uniform_real_distribution<double> coeff(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Complex<double> p(coeff(rng), trial % 2 ? coeff(rng) : 0.0);
    const Complex<double> q(coeff(rng), trial % 3 ? coeff(rng) : 0.0);
    Complex<double> prev2 = Complex<double>::one(53);
    Complex<double> prev1 = q;
    EXPECT_LE(std::sqrt((binet(p, q, 0) - prev2).norm()), 1e-12);
    EXPECT_LE(std::sqrt((binet(p, q, 1) - prev1).norm()), 1e-12);
    for (long n = 2; n <= 30; ++n) {
      const Complex<double> next = q * prev1 - p * prev2;
      const Complex<double> got = binet(p, q, n);
      EXPECT_LE(std::sqrt((got - next).norm()), 1e-9 * (1 + std::sqrt(next.norm()))) << "trial " << trial << " n " << n;
      prev2 = prev1;
      prev1 = next;
    }
  }
}

TEST(Binet, CobwebRecurrenceTermByTerm) {
  for (double x : {1.0, 2.0, 0.5}) {
    const double y = 3.0;
    for (long j = 1; j < 7; ++j) {
      const double a = std::sin(std::numbers::pi * static_cast<double>(j) / 7.0);
      const double q = 4 * a * a * y + 2 * x;
      const double p = x * x;
      double f_prev2 = 1;
      double f_prev1 = q;
      for (long m = 2; m <= 20; ++m) {
        const double f = q * f_prev1 - p * f_prev2;
        EXPECT_LE(std::fabs(binet(p, q, m) - f), 1e-9 * std::fabs(f));
        f_prev2 = f_prev1;
        f_prev1 = f;
      }
    }
  }
}

TEST(BinetBigFloat, MatchesDouble) {
  const Complex<BigFloat> p(BigFloat(2.0, 128), BigFloat(0.0, 128));
  const Complex<BigFloat> q(BigFloat(3.0, 128), BigFloat(0.0, 128));
  EXPECT_EQ(binet(p, q, 40, 128).re.round_to_integer(), BigInt("2199023255551"));  // 2^41 - 1
}

TEST(CobwebClosed, Examples) {
  EXPECT_EQ(*cobweb_gf_closed({3, 1, 1, 1}).rounded, 16);
  EXPECT_EQ(*cobweb_gf_closed({4, 1, 1, 1}).rounded, 45);
  const CobwebSpec two{2, 1, 2, 3};
  EXPECT_EQ(*cobweb_gf_closed(two).rounded, tau_oracle(expand(cobweb_presentation(two))).get_num());
  EXPECT_EQ(*cobweb_gf_closed(two).rounded, 28);
  EXPECT_EQ(cobweb_gf_closed(two).method, Method::kClosed);
}

TEST(CobwebProduct, Examples) {
  EXPECT_EQ(*cobweb_gf_product({3, 1, 1, 1}).rounded, 16);
  for (const CobwebSpec& s : {CobwebSpec{5, 2, 1, 1}, CobwebSpec{2, 3, 1, 2}}) {
    EXPECT_LE(testing::relative_gap(cobweb_gf_product(s).approx, cobweb_gf_closed(s).approx), 1e-9);
    EXPECT_EQ(*cobweb_gf_product(s).rounded, tau_oracle(expand(cobweb_presentation(s))).get_num());
  }
}

TEST(Cobweb, ProductEqualsClosedForm) {
  const std::pair<Rational, Rational> weights[] = {{1, 1}, {2, 3}, {Rational(1, 2), 5}};
  for (long n = 2; n <= 10; ++n)
    for (long m = 1; m <= 10; ++m)
      for (const auto& [x, y] : weights) {
        const CobwebSpec s{n, m, x, y};
        EXPECT_LE(testing::relative_gap(cobweb_gf_product(s).approx, cobweb_gf_closed(s).approx), 1e-9)
            << "N=" << n << " M=" << m << " x=" << x << " y=" << y;
      }
}

TEST(Cobweb, ClosedFactorizedAndOracleAgree) {
  const std::pair<Rational, Rational> weights[] = {{1, 1}, {2, 3}, {Rational(1, 2), 5}};
  for (long n = 2; n <= 6; ++n)
    for (long m = 1; m <= 4; ++m)
      for (const auto& [x, y] : weights) {
        const CobwebSpec s{n, m, x, y};
        const PeriodicPresentation p = cobweb_presentation(s);
        const CountResult closed = cobweb_gf_closed(s);
        const CountResult factor = count_factorized(p);
        if (s.integer_weights()) {
          const BigInt oracle = tau_oracle(expand(p)).get_num();
          EXPECT_EQ(*closed.rounded, oracle);
          EXPECT_EQ(*factor.rounded, oracle);
        } else {
          EXPECT_FALSE(closed.rounded.has_value());
          EXPECT_LE(testing::relative_gap(closed.approx, oracle_value(p)), 1e-9);
          EXPECT_LE(testing::relative_gap(factor.approx, oracle_value(p)), 1e-9);
        }
      }
}

TEST(CobwebPresentation, Shape) {
  const PeriodicPresentation p = cobweb_presentation({4, 2, 1, 1});
  EXPECT_EQ(p.cell_size, 2u);
  EXPECT_EQ(p.fixed_size, 1u);
  EXPECT_EQ(expand(p).vertex_count(), 9u);
  EXPECT_EQ(expand(p).edges().size(), 16u);
  EXPECT_EQ(p.fixed_to_cell, (RationalMatrix{{1, 0}}));
  EXPECT_EQ(p.coupling(1), (RationalMatrix{{1, 0}, {0, 1}}));
  EXPECT_EQ(fixed_block(p).det, Rational(4));
}

TEST(CobwebPresentation, TwoSpokesDoubleTheRing) {
  const PeriodicPresentation p = cobweb_presentation({2, 1, 2, 3});
  EXPECT_EQ(p.coupling(1), (RationalMatrix{{6}}));
  EXPECT_TRUE(validate(p).empty());
}

TEST(CobwebSpec, Validation) {
  EXPECT_THROW(cobweb_gf_closed({1, 1, 1, 1}), InvalidInput);
  EXPECT_THROW(cobweb_gf_closed({3, 0, 1, 1}), InvalidInput);
  EXPECT_THROW(cobweb_presentation({3, 1, 0, 1}), InvalidInput);
  EXPECT_THROW(cobweb_gf_product({3, 1, 1, -1}), InvalidInput);
}

TEST(Cobweb, LargeInstanceRoundsExactly) {
  const CobwebSpec s{200, 3, 1, 1};
  const CountResult closed = cobweb_gf_closed(s);
  EXPECT_EQ(*closed.rounded, *count_factorized(cobweb_presentation(s)).rounded);
  EXPECT_GT(closed.approx, 1e280L);
}

TEST(Circulant, Examples) {
  EXPECT_EQ(*circulant_tau({6, {1}, false}).rounded, 6);
  EXPECT_EQ(*circulant_tau({4, {1, 2}, false}).rounded, 16);
  EXPECT_EQ(*circulant_tau({5, {1, 2}, false}).rounded, 125);
}

TEST(Circulant, AntipodalPresentation) {
  const PeriodicPresentation p = circulant_presentation({6, {1, 3}, false});
  EXPECT_EQ(*count_factorized(p).rounded, tau_oracle(expand(p)).get_num());
  EXPECT_EQ(*circulant_tau({6, {1, 3}, false}).rounded, tau_oracle(expand(p)).get_num());
}

TEST(Circulant, SpecValidation) {
  EXPECT_THROW(circulant_tau({4, {2}, false}), InvalidInput);
  EXPECT_THROW(circulant_tau({6, {2, 1}, false}), InvalidInput);
  EXPECT_THROW(circulant_tau({6, {1, 4}, false}), InvalidInput);
  EXPECT_THROW(circulant_tau({6, {}, false}), InvalidInput);
  EXPECT_THROW(circulant_tau({6, {1}, true}), InvalidInput);
  EXPECT_THROW(join_k2_circulant_tau({6, {1}, false}), InvalidInput);
}

std::vector<std::vector<long>> step_sets(long n, std::size_t max_k) {
  std::vector<std::vector<long>> out;
  const long half = n / 2;
  for (unsigned mask = 1; mask < (1u << half); ++mask) {
    std::vector<long> steps;
    for (long s = 1; s <= half; ++s)
      if (mask & (1u << (s - 1))) steps.push_back(s);
    if (steps.size() > max_k) continue;
    long g = n;
    for (long s : steps) g = std::gcd(g, s);
    if (g == 1) out.push_back(steps);
  }
  return out;
}

TEST(Circulant, ClosedFormMatchesOracle) {
  bool saw_antipodal = false;
  bool saw_regular = false;
  for (long n = 2; n <= 12; ++n)
    for (const auto& steps : step_sets(n, 3)) {
      const CirculantSpec s{n, steps, false};
      (s.has_antipodal_step() ? saw_antipodal : saw_regular) = true;
      EXPECT_EQ(*circulant_tau(s).rounded, tau_oracle(expand(circulant_presentation(s))).get_num()) << "n=" << n;
    }
  EXPECT_TRUE(saw_antipodal);
  EXPECT_TRUE(saw_regular);
}

TEST(Join, Examples) {
  EXPECT_EQ(*join_k2_circulant_tau({3, {1}, true}).rounded, 125);
  EXPECT_EQ(*join_k2_circulant_tau({4, {1, 2}, true}).rounded, 1296);
  const CirculantSpec c4{4, {1}, true};
  EXPECT_EQ(*join_k2_circulant_tau(c4).rounded, tau_oracle(expand(circulant_presentation(c4))).get_num());
}

TEST(Join, ClosedFormMatchesOracle) {
  for (long n = 2; n <= 10; ++n)
    for (const auto& steps : step_sets(n, 3)) {
      const CirculantSpec s{n, steps, true};
      const PeriodicPresentation p = circulant_presentation(s);
      EXPECT_EQ(fixed_block(p).det, Rational(n * n + 2 * n));
      EXPECT_EQ(*join_k2_circulant_tau(s).rounded, tau_oracle(expand(p)).get_num()) << "n=" << n;
    }
}

TEST(RandomPresentation, RespectsRanges) {
  Rng rng(79);
  RandomPresentationOptions o;
  o.min_order = 3;
  o.max_order = 5;
  o.max_cell = 2;
  o.min_fixed = 0;
  o.max_fixed = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const PeriodicPresentation p = random_presentation(rng, o);
    EXPECT_GE(p.order, 3);
    EXPECT_LE(p.order, 5);
    EXPECT_LE(p.cell_size, 2u);
    EXPECT_EQ(p.fixed_size, 0u);
    EXPECT_TRUE(validate(p).empty());
  }
}

}  // namespace
}  // namespace ptree
