// Copyright 2026 The qclab Authors
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
#include <numeric>
#include <vector>

#include "qclab/info.hpp"
#include "qclab/rng.hpp"
#include "qclab/verify.hpp"

namespace qclab {
namespace {

std::vector<double> random_simplex(std::size_t m, Rng& rng, double zero_rate = 0.0) {
  std::vector<double> p(m);
  double s = 0;
  for (auto& x : p) {
    x = rng.bernoulli(zero_rate) ? 0.0 : -std::log(1.0 - rng.uniform());
    s += x;
  }
  if (s == 0) {
    p[0] = 1;
    s = 1;
  }
  for (auto& x : p) x /= s;
  double t = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& x : p)
    if (x > 0) {
      x += 1 - t;
      break;
    }
  return p;
}

// H(X) + H(Y) - H(X,Y) computed from raw cells, independent of the library.
double mi_by_entropies(std::size_t rows, std::size_t cols, const std::vector<double>& cells) {
  auto h = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v)
      if (x > 0) s -= x * std::log2(x);
    return s;
  };
  std::vector<double> px(rows, 0), py(cols, 0);
  for (std::size_t x = 0; x < rows; ++x)
    for (std::size_t y = 0; y < cols; ++y) {
      px[x] += cells[x * cols + y];
      py[y] += cells[x * cols + y];
    }
  return h(px) + h(py) - h(cells);
}

TEST(Distribution, RejectsInvalid) {
  EXPECT_THROW(FiniteDistribution({0.5, 0.6}), ParameterError);
  EXPECT_THROW(FiniteDistribution({-0.1, 1.1}), ParameterError);
  EXPECT_THROW(FiniteDistribution(std::vector<double>{}), ParameterError);
  EXPECT_NO_THROW(FiniteDistribution({0.25, 0.75}));
  EXPECT_THROW(JointDistribution(2, 2, {0.5, 0.5, 0.1}), ParameterError);
  EXPECT_THROW(JointDistribution(2, 2, {0.5, 0.5, 0.1, 0.0}), ParameterError);
  EXPECT_THROW(JointDistribution(257, 256, std::vector<double>(257 * 256, 1.0 / (257 * 256))), ParameterError);
}

TEST(Entropy, Examples) {
  EXPECT_DOUBLE_EQ(entropy(FiniteDistribution::bernoulli(0.5)), 1.0);
  EXPECT_DOUBLE_EQ(entropy(FiniteDistribution({0, 1, 0})), 0.0);
  EXPECT_DOUBLE_EQ(entropy(FiniteDistribution::uniform(4)), 2.0);
}

TEST(Entropy, BoundedByLogSupport) {
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const std::size_t m = 1 + rng.below(30);
    const double h = entropy(FiniteDistribution(random_simplex(m, rng, 0.3)));
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, std::log2(static_cast<double>(m)) + 1e-12);
  }
}

TEST(Entropy, ConcaveUnderMixing) {
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const std::size_t m = 2 + rng.below(10);
    const auto a = random_simplex(m, rng, 0.2), b = random_simplex(m, rng, 0.2);
    const double lam = rng.uniform();
    std::vector<double> mix(m);
    for (std::size_t k = 0; k < m; ++k) mix[k] = lam * a[k] + (1 - lam) * b[k];
    double t = std::accumulate(mix.begin(), mix.end(), 0.0);
    mix[0] += 1 - t;
    if (mix[0] < 0) mix[0] = 0;
    EXPECT_GE(entropy(FiniteDistribution(mix)) + 1e-12,
              lam * entropy(FiniteDistribution(a)) + (1 - lam) * entropy(FiniteDistribution(b)));
  }
}

TEST(KlBernoulli, Examples) {
  EXPECT_DOUBLE_EQ(kl_bernoulli(0.3, 0.3), 0.0);
  EXPECT_NEAR(kl_bernoulli(0.6, 0.4), 0.2 * std::log2(1.5), 1e-15);
  EXPECT_NEAR(kl_bernoulli(0.6, 0.4), 0.1169925001442312, 1e-15);
  EXPECT_DOUBLE_EQ(kl_bernoulli(1.0, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(kl_bernoulli(0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(kl_bernoulli(1.0, 1.0), 0.0);
}

TEST(KlBernoulli, InfiniteDivergenceThrows) {
  EXPECT_THROW(kl_bernoulli(0.5, 0.0), std::domain_error);
  EXPECT_THROW(kl_bernoulli(0.5, 1.0), std::domain_error);
  EXPECT_THROW(kl_bernoulli(1.5, 0.5), ParameterError);
}

TEST(KlBernoulli, NonNegativeWithEqualityOnlyOnDiagonal) {
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    const double p = rng.uniform(), q = 0.001 + 0.998 * rng.uniform();
    const double d = kl_bernoulli(p, q);
    EXPECT_GE(d, 0.0);
    if (std::abs(p - q) > 1e-3) {
      EXPECT_GT(d, 0.0);
    }
  }
}

TEST(KlRhoBound, WorkedEntryAndGrid) {
  // rho = 0.1 itself is outside the open range, so evaluate the entry directly.
  EXPECT_NEAR(kl_bernoulli(0.6, 0.4) / 0.25, 0.46797, 1e-5);
  const double eta0[] = {0.0};
  for (double rho : {1e-3, 0.01, 0.05, 0.099}) {
    const double r[] = {rho};
    EXPECT_LT(kl_rho_bound_check(r, eta0), 1.0);
  }
  // Small-rho limit stays bounded.
  const double tiny[] = {1e-3};
  const double etas[] = {-1e-3, 0.0, 1e-3};
  EXPECT_LT(kl_rho_bound_check(tiny, etas), 1.0);
  EXPECT_LT(kl_grid_max_ratio(), 1.0);
  EXPECT_GT(kl_grid_max_ratio(), 0.4);
}

TEST(KlRhoBound, RejectsRhoOutsideRange) {
  const double bad[] = {0.1};
  const double eta[] = {0.0};
  EXPECT_THROW(kl_rho_bound_check(bad, eta), ParameterError);
}

TEST(MutualInformation, Examples) {
  EXPECT_NEAR(mutual_information(JointDistribution(2, 2, {0.25, 0.25, 0.25, 0.25})), 0.0, 1e-15);
  EXPECT_NEAR(mutual_information(JointDistribution(2, 2, {0.5, 0, 0, 0.5})), 1.0, 1e-15);
  const double e = 0.11;
  const JointDistribution bsc(2, 2, {(1 - e) / 2, e / 2, e / 2, (1 - e) / 2});
  EXPECT_NEAR(mutual_information(bsc), 0.500084041835472, 1e-12);
  EXPECT_NEAR(mutual_information(bsc), 0.5, 1e-3);
}

TEST(MutualInformation, MatchesEntropyFormAndBounds) {
  Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    const std::size_t r = 1 + rng.below(6), c = 1 + rng.below(6);
    const auto cells = random_simplex(r * c, rng, 0.3);
    const JointDistribution j(r, c, cells);
    const double mi = mutual_information(j);
    EXPECT_NEAR(mi, mi_by_entropies(r, c, cells), 1e-9);
    const double hx = entropy(FiniteDistribution(j.marginal_x()));
    const double hy = entropy(FiniteDistribution(j.marginal_y()));
    EXPECT_LE(mi, std::min(hx, hy) + 1e-9);
    EXPECT_NEAR(conditional_entropy(j), hx - mi, 1e-9);
  }
}

TEST(MutualInformation, ZeroExactlyForProducts) {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_simplex(4, rng), b = random_simplex(5, rng);
    std::vector<double> cells;
    for (double x : a)
      for (double y : b) cells.push_back(x * y);
    double t = std::accumulate(cells.begin(), cells.end(), 0.0);
    cells[0] += 1 - t;
    EXPECT_NEAR(mutual_information(JointDistribution(4, 5, cells)), 0.0, 1e-9);
  }
}

TEST(MutualInformation, ChainRuleOnThreeVariables) {
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const std::size_t nx = 2 + rng.below(3), ny = 2 + rng.below(3), nz = 2 + rng.below(3);
    const auto p = random_simplex(nx * ny * nz, rng, 0.2);
    auto at = [&](std::size_t x, std::size_t y, std::size_t z) { return p[(x * ny + y) * nz + z]; };
    // I(X,Y;Z): rows are (x,y).
    const double lhs = mutual_information(JointDistribution(nx * ny, nz, p));
    // I(X;Z).
    std::vector<double> xz(nx * nz, 0.0);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y)
        for (std::size_t z = 0; z < nz; ++z) xz[x * nz + z] += at(x, y, z);
    double t = std::accumulate(xz.begin(), xz.end(), 0.0);
    xz[0] += 1 - t;
    double rhs = mutual_information(JointDistribution(nx, nz, xz));
    // I(Y;Z|X) = sum_x p(x) I(Y;Z | X=x).
    for (std::size_t x = 0; x < nx; ++x) {
      double px = 0;
      for (std::size_t y = 0; y < ny; ++y)
        for (std::size_t z = 0; z < nz; ++z) px += at(x, y, z);
      if (px <= 0) continue;
      std::vector<double> yz(ny * nz);
      for (std::size_t y = 0; y < ny; ++y)
        for (std::size_t z = 0; z < nz; ++z) yz[y * nz + z] = at(x, y, z) / px;
      t = std::accumulate(yz.begin(), yz.end(), 0.0);
      for (auto& v : yz)
        if (v > 0) {
          v += 1 - t;
          break;
        }
      rhs += px * mutual_information(JointDistribution(ny, nz, yz));
    }
    EXPECT_NEAR(lhs, rhs, 1e-9);
  }
}

TEST(Fano, PerfectEstimatorHasZeroSlack) {
  std::vector<double> cells(16, 0.0);
  for (std::size_t i = 0; i < 4; ++i) cells[i * 4 + i] = 0.25;
  const std::vector<std::size_t> est = {0, 1, 2, 3};
  const auto r = generalized_fano_check(JointDistribution(4, 4, cells), ApproxRelation::identity(4), est);
  EXPECT_DOUBLE_EQ(r.p_error, 0.0);
  EXPECT_NEAR(r.h_x_given_y, 0.0, 1e-12);
  EXPECT_NEAR(r.slack_full(), 0.0, 1e-12);
}

TEST(Fano, IndependentSixteenByOne) {
  const JointDistribution j(16, 16, std::vector<double>(256, 1.0 / 256));
  std::vector<std::size_t> est(16);
  for (std::size_t y = 0; y < 16; ++y) est[y] = (5 * y + 3) % 16;
  const auto r = generalized_fano_check(j, ApproxRelation::identity(16), est);
  EXPECT_NEAR(r.h_x_given_y, 4.0, 1e-12);
  EXPECT_NEAR(r.p_error, 15.0 / 16.0, 1e-12);
  EXPECT_GE(r.lhs_full, 4.0 - 1e-9);
  EXPECT_GE(r.slack_support(), -1e-9);
}

TEST(Fano, RandomJointsNeverViolate) {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto r = random_fano_trial(derive_seed(7, "fano", i));
    ASSERT_GE(r.slack_full(), -1e-9) << "trial " << i;
    ASSERT_GE(r.slack_support(), -1e-9) << "trial " << i;
    EXPECT_LE(r.slack_support(), r.slack_full() + 1e-12);
  }
}

TEST(Fano, RelationValidation) {
  EXPECT_THROW(ApproxRelation(2, {1, 1, 0, 1}), ParameterError);
  EXPECT_THROW(ApproxRelation(2, {0, 0, 0, 1}), ParameterError);
  const JointDistribution j(2, 2, {0.25, 0.25, 0.25, 0.25});
  const std::vector<std::size_t> bad = {0, 2};
  EXPECT_THROW(generalized_fano_check(j, ApproxRelation::identity(2), bad), ParameterError);
}

TEST(AdaptiveChernoff, Examples) {
  EXPECT_NEAR(adaptive_chernoff_bound(0.5, 1.0, 100), 2 * std::exp(-50.0 / 3), 1e-20);
  EXPECT_NEAR(adaptive_chernoff_bound(0.5, 1.0, 100), 1.1555497e-7, 1e-13);
  EXPECT_DOUBLE_EQ(adaptive_chernoff_bound(0.5, 1e-9, 100), 1.0);
  EXPECT_THROW(adaptive_chernoff_bound(0.0, 1.0, 10), ParameterError);
  EXPECT_THROW(adaptive_chernoff_bound(0.5, 0.0, 10), ParameterError);
}

TEST(AdaptiveChernoff, ExponentAtOneThirtyNinth) {
  // The exponent per sample is delta^2/(2+delta)/39 = 0.0440084 >= 0.044;
  // the bound carries an extra factor 2 in front.
  for (Count s : {100ULL, 1000ULL, 10000ULL}) {
    const double b = adaptive_chernoff_bound(1.0 / 39, 2.9, s);
    const double exponent = -std::log(b / 2) / static_cast<double>(s);
    EXPECT_NEAR(exponent, 2.9 * 2.9 / 4.9 / 39, 1e-9);
    EXPECT_GE(exponent, 0.044);
  }
}

TEST(AdaptiveChernoff, AdversariesRespectBound) {
  for (const auto& row : chernoff_adaptive_rows(0.01, 0.3, 10000, 4000, 11)) {
    EXPECT_TRUE(row.pass) << to_string(row.adversary) << " " << row.empirical << " vs " << row.bound;
  }
}

TEST(AdaptiveChernoff, IndependentSimulatorMatchesBinomialMean) {
  Rng rng(12);
  double sum = 0;
  const int runs = 2000;
  for (int i = 0; i < runs; ++i) sum += static_cast<double>(simulate_adversary(Adversary::Independent, 0.01, 0.3, 10000, rng));
  EXPECT_NEAR(sum / runs, 100.0, 4 * std::sqrt(99.0 / runs));
}

TEST(Shearer, NonNegativeOnRandomJoints) {
  Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    const unsigned m = 2 + static_cast<unsigned>(rng.below(5));
    const auto joint = random_simplex(std::size_t{1} << m, rng, 0.3);
    // All (m-1)-subsets cover every coordinate m-1 times.
    std::vector<std::uint32_t> family;
    for (unsigned i2 = 0; i2 < m; ++i2) family.push_back(((1U << m) - 1) & ~(1U << i2));
    EXPECT_GE(shearer_slack(joint, m, family, m - 1), -1e-9);
    // Singletons: subadditivity.
    std::vector<std::uint32_t> singles;
    for (unsigned i2 = 0; i2 < m; ++i2) singles.push_back(1U << i2);
    EXPECT_GE(shearer_slack(joint, m, singles, 1), -1e-9);
  }
  const std::vector<double> j(4, 0.25);
  const std::uint32_t fam[] = {1};
  EXPECT_THROW(shearer_slack(j, 2, fam, 1), ParameterError);
}

}  // namespace
}  // namespace qclab
