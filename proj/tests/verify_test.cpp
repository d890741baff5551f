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
#include <set>

#include "qclab/verify.hpp"

namespace qclab {
namespace {

TEST(Checks, EveryNamedCheckPassesAtLowEffort) {
  for (const auto& name : check_names()) {
    const Count effort = name == "chernoff-adaptive" ? 4000 : 30;
    const auto r = run_check(name, 7, effort);
    EXPECT_EQ(r.name, name);
    EXPECT_TRUE(r.pass) << name << ": " << r.detail;
  }
  EXPECT_THROW(run_check("nonsense", 1), ParameterError);
}

TEST(Checks, DeterministicInSeed) {
  const auto a = check_fano(50, 3), b = check_fano(50, 3);
  EXPECT_EQ(a.detail, b.detail);
  EXPECT_EQ(check_cost_identity(20, 4).detail, check_cost_identity(20, 4).detail);
}

TEST(FourierInstances, RespectTheirRanges) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = random_fourier_instance(seed);
    EXPECT_GE(inst.rho, 0.0);
    EXPECT_LE(inst.rho, 0.5);
    const auto n = inst.m.n();
    EXPECT_GE(n, 2U);
    EXPECT_LE(n, 10U);
    EXPECT_GE(inst.m.rows().size(), 1U);
    EXPECT_LE(inst.m.rows().size(), std::min<Count>(8, choose2(n)));
    std::set<Edge> distinct(inst.m.rows().begin(), inst.m.rows().end());
    EXPECT_EQ(distinct.size(), inst.m.rows().size());
    double mass = 0;
    for (double x : inst.a.values()) mass += x;
    EXPECT_GE(mass, 1.0);
  }
}

TEST(KlGrid, RatioStaysBelowOne) {
  const double r = kl_grid_max_ratio();
  EXPECT_LT(r, 1.0);
  EXPECT_GT(r, 0.3);
  EXPECT_TRUE(check_kl_bound().pass);
}

TEST(Adversaries, IndependentMeanIsPN) {
  const double p = 0.01;
  const Count n = 10000, runs = 4000;
  Rng rng(5);
  double sum = 0;
  for (Count r = 0; r < runs; ++r) sum += static_cast<double>(simulate_adversary(Adversary::Independent, p, 0.3, n, rng));
  const double mean = sum / runs;
  const double sd = std::sqrt(n * p * (1 - p) / runs);
  EXPECT_NEAR(mean, n * p, 4 * sd);
}

TEST(Adversaries, SaturatingAdversaryStopsAtTheTarget) {
  Rng rng(6);
  const Count target = static_cast<Count>(std::ceil(1.3 * 0.01 * 10000));
  for (int r = 0; r < 500; ++r) EXPECT_LE(simulate_adversary(Adversary::SaturateThenStop, 0.01, 0.3, 10000, rng), target);
}

TEST(Adversaries, NoAdversaryBeatsTheBound) {
  for (const auto& row : chernoff_adaptive_rows(0.01, 0.3, 10000, 4000, 2)) {
    EXPECT_TRUE(row.pass) << to_string(row.adversary) << " " << row.empirical << " vs " << row.bound;
    EXPECT_LE(row.empirical, 1.0);
  }
}

TEST(CostIdentity, FeasibleEpsAndAlternativesAreWellFormed) {
  Rng rng(8);
  for (std::size_t n : {200U, 300U, 400U}) {
    for (int i = 0; i < 20; ++i) {
      const double eps = random_feasible_eps(n, rng);
      EXPECT_NO_THROW(resolve_clustered_params(n, eps));
    }
  }
  EXPECT_THROW(random_feasible_eps(101, rng), ParameterError);
  const auto base = Clustering::from_dense_labels(std::vector<std::uint32_t>{0, 0, 1, 1, 2, 2});
  for (int i = 0; i < 100; ++i) EXPECT_EQ(random_alternative_clustering(base, rng).size(), 6U);
}

}  // namespace
}  // namespace qclab
