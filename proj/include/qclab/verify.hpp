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

// Named numeric checks behind `qclab verify`. Each returns a pass flag and
// a one-line detail string.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "qclab/exact.hpp"
#include "qclab/generators.hpp"
#include "qclab/graph.hpp"
#include "qclab/info.hpp"
#include "qclab/rng.hpp"

namespace qclab {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct FourierInstance {
  BooleanFunctionTable a;
  IncidenceMatrix m;
  double rho;
};

/// Random (A, M, rho): n in [2,10], r in [1, min(8, C(n,2))] distinct rows,
/// A a random non-empty subset, rho in [0, 1/2].
inline FourierInstance random_fourier_instance(std::uint64_t seed) {
  Rng rng(seed);
  const auto n = static_cast<unsigned>(2 + rng.below(9));
  const Count pairs = choose2(n);
  const auto r = static_cast<std::size_t>(1 + rng.below(std::min<Count>(8, pairs)));
  std::vector<Count> idx(pairs);
  std::iota(idx.begin(), idx.end(), Count{0});
  rng.shuffle(std::span<Count>(idx));
  std::vector<Edge> rows;
  for (std::size_t i = 0; i < r; ++i) rows.push_back(index_to_pair(n, idx[i]));
  std::vector<double> f(std::size_t{1} << n, 0.0);
  const double density = 0.05 + 0.9 * rng.uniform();
  for (auto& x : f) x = rng.bernoulli(density) ? 1.0 : 0.0;
  f[rng.below(f.size())] = 1.0;
  return {BooleanFunctionTable(n, std::move(f)), IncidenceMatrix(n, std::move(rows)), 0.5 * rng.uniform()};
}

inline CheckResult check_fourier_identity(Count instances = 100, std::uint64_t seed = 1) {
  double worst = 0, parseval = 0;
  for (Count i = 0; i < instances; ++i) {
    const auto inst = random_fourier_instance(derive_seed(seed, "fourier", i));
    worst = std::max(worst, pm_fourier_identity_check(inst.a, inst.m, inst.rho));
    const auto fh = fourier_transform(inst.a);
    double lhs = 0, rhs = 0;
    for (double c : fh) lhs += c * c;
    for (double x : inst.a.values()) rhs += x * x;
    rhs = std::ldexp(rhs, -static_cast<int>(inst.a.n()));
    parseval = std::max(parseval, std::abs(lhs - rhs));
  }
  std::ostringstream d;
  d << "max deviation " << worst << ", max Parseval residual " << parseval << " over " << instances << " instances";
  return {"fourier-identity", worst <= 1e-12 && parseval <= 1e-9, d.str()};
}

inline CheckResult check_pm_tvd(Count instances = 100, std::uint64_t seed = 1) {
  double worst = std::numeric_limits<double>::infinity();
  double mass_err = 0;
  for (Count i = 0; i < instances; ++i) {
    const auto inst = random_fourier_instance(derive_seed(seed, "fourier", i));
    worst = std::min(worst, tvd_cauchy_schwarz_slack(inst.a, inst.m, inst.rho));
    const auto p = exact_pm(inst.a, inst.m, inst.rho);
    double s = 0;
    for (double x : p.pm) s += x;
    mass_err = std::max(mass_err, std::abs(s - 1));
  }
  std::ostringstream d;
  d << "min Cauchy-Schwarz slack " << worst << ", max mass error " << mass_err;
  return {"pm-tvd", worst >= -1e-9 && mass_err <= 1e-12, d.str()};
}

inline CheckResult check_counting_bound(Count trials = 2000, std::uint64_t seed = 1) {
  std::ostringstream d;
  bool pass = true;
  for (double alpha : {2.5e-5, 5e-5, 7.5e-5}) {
    const auto rows = counting_bound_check(16, 0.01, alpha, trials, 6, derive_seed(seed, "counting"));
    for (const auto& row : rows) {
      const bool odd_ok = row.l % 2 == 0 || row.max_value == 0.0;
      pass = pass && row.pass && odd_ok;
    }
    d << "alpha=" << alpha << ":";
    for (const auto& row : rows) d << " l" << row.l << "=" << row.mean << "/" << row.bound;
    d << "; ";
  }
  return {"counting-bound", pass, d.str()};
}

/// Random joint over |X|,|Y| in [2,8] with some zero cells, a random
/// reflexive symmetric relation and a random estimator.
inline FanoReport random_fano_trial(std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t nx = 2 + rng.below(7), ny = 2 + rng.below(7);
  std::vector<double> cells(nx * ny);
  double total = 0;
  const double zero_rate = 0.5 * rng.uniform();
  for (auto& c : cells) {
    c = rng.bernoulli(zero_rate) ? 0.0 : rng.uniform();
    total += c;
  }
  if (total == 0) {
    cells[0] = 1;
    total = 1;
  }
  for (auto& c : cells) c /= total;
  // Renormalize exactly enough for the 1e-12 sum check.
  double s = 0;
  for (double c : cells) s += c;
  cells[0] += 1 - s;
  if (cells[0] < 0) cells[0] = 0;
  std::vector<std::uint8_t> rel(nx * nx, 0);
  const double link = rng.uniform() * 0.6;
  for (std::size_t a = 0; a < nx; ++a) {
    rel[a * nx + a] = 1;
    for (std::size_t b = a + 1; b < nx; ++b)
      if (rng.bernoulli(link)) rel[a * nx + b] = rel[b * nx + a] = 1;
  }
  std::vector<std::size_t> est(ny);
  for (auto& e : est) e = rng.below(nx);
  return generalized_fano_check(JointDistribution(nx, ny, std::move(cells)), ApproxRelation(nx, std::move(rel)), est);
}

inline CheckResult check_fano(Count trials = 1000, std::uint64_t seed = 1) {
  double worst_full = std::numeric_limits<double>::infinity(), worst_support = worst_full;
  for (Count i = 0; i < trials; ++i) {
    const auto r = random_fano_trial(derive_seed(seed, "fano", i));
    worst_full = std::min(worst_full, r.slack_full());
    worst_support = std::min(worst_support, r.slack_support());
  }
  std::ostringstream d;
  d << "min slack " << worst_full << " (support-restricted " << worst_support << ") over " << trials << " joints";
  return {"fano", worst_full >= -1e-9 && worst_support >= -1e-9, d.str()};
}

/// rho in {0.001, ..., 0.099}, eta in [-rho, rho] at 0.001 spacing.
inline double kl_grid_max_ratio() {
  std::vector<double> rhos, etas;
  for (int i = 1; i <= 99; ++i) rhos.push_back(i * 1e-3);
  for (int j = -99; j <= 99; ++j) etas.push_back(j * 1e-3);
  return kl_rho_bound_check(rhos, etas);
}

inline CheckResult check_kl_bound() {
  const double r = kl_grid_max_ratio();
  std::ostringstream d;
  d << "max KL / (25 rho^2) = " << r;
  return {"kl-bound", r < 1, d.str()};
}

/// Bit processes with Pr[X_i = 1 | past] <= p.
enum class Adversary { Independent, SaturateThenStop, AheadOrQuit };

inline const char* to_string(Adversary a) {
  switch (a) {
    case Adversary::Independent: return "independent";
    case Adversary::SaturateThenStop: return "saturate-then-stop";
    case Adversary::AheadOrQuit: return "ahead-or-quit";
  }
  return "?";
}

/// Final count of ones for one run. Stretches of constant probability are
/// crossed by geometric jumps.
inline Count simulate_adversary(Adversary adv, double p, double delta, Count n, Rng& rng) {
  const Count target = static_cast<Count>(std::ceil((1 + delta) * p * static_cast<double>(n)));
  const Count blocks = 10;
  Count i = 0, ones = 0;
  while (i < n) {
    double q = p;
    Count end = n;
    switch (adv) {
      case Adversary::Independent: break;
      case Adversary::SaturateThenStop:
        if (ones >= target) q = 0;
        break;
      case Adversary::AheadOrQuit: {
        // Decided at block starts: keep going while on schedule, else stop.
        const Count block = i * blocks / n;
        end = std::min(n, (block + 1) * n / blocks);
        if (end <= i) end = i + 1;
        const double expected = p * static_cast<double>(block * n / blocks);
        if (static_cast<double>(ones) < expected) q = 0;
        break;
      }
    }
    if (q <= 0) {
      i = end;
      continue;
    }
    // Failures before the next success.
    const double u = 1.0 - rng.uniform();
    const double gap = std::floor(std::log(u) / std::log1p(-q));
    if (gap >= static_cast<double>(end - i)) {
      i = end;
      continue;
    }
    i += static_cast<Count>(gap) + 1;
    ++ones;
  }
  return ones;
}

struct ChernoffRow {
  Adversary adversary;
  double empirical = 0;
  double sigma = 0;
  double bound = 0;
  bool pass = false;
};

inline std::vector<ChernoffRow> chernoff_adaptive_rows(double p, double delta, Count n, Count runs, std::uint64_t seed) {
  std::vector<ChernoffRow> out;
  const double threshold = (1 + delta) * p * static_cast<double>(n);
  for (Adversary a : {Adversary::Independent, Adversary::SaturateThenStop, Adversary::AheadOrQuit}) {
    Rng rng(derive_seed(seed, to_string(a)));
    Count hits = 0;
    for (Count r = 0; r < runs; ++r) hits += static_cast<double>(simulate_adversary(a, p, delta, n, rng)) >= threshold;
    ChernoffRow row{a};
    row.empirical = static_cast<double>(hits) / static_cast<double>(runs);
    row.bound = adaptive_chernoff_bound(p, delta, n);
    row.sigma = std::sqrt(std::max(row.bound * (1 - row.bound), 1e-300) / static_cast<double>(runs));
    row.pass = row.empirical <= row.bound + 3 * row.sigma;
    out.push_back(row);
  }
  return out;
}

inline CheckResult check_chernoff_adaptive(Count runs = 20000, std::uint64_t seed = 1) {
  const auto rows = chernoff_adaptive_rows(0.01, 0.3, 10000, runs, seed);
  bool pass = true;
  std::ostringstream d;
  for (const auto& r : rows) {
    pass = pass && r.pass;
    d << to_string(r.adversary) << " " << r.empirical << " <= " << r.bound << "; ";
  }
  return {"chernoff-adaptive", pass, d.str()};
}

/// A random clustering drawn from one of several families around `base`.
inline Clustering random_alternative_clustering(const Clustering& base, Rng& rng) {
  std::vector<std::uint32_t> l(base.labels().begin(), base.labels().end());
  switch (rng.below(4)) {
    case 0: {  // uniform labels
      const auto k = 1 + rng.below(10);
      for (auto& x : l) x = static_cast<std::uint32_t>(rng.below(k));
      break;
    }
    case 1: {  // move a random fraction of vertices
      const double f = rng.uniform();
      const auto k = static_cast<std::uint32_t>(base.num_clusters() + 2);
      for (auto& x : l)
        if (rng.bernoulli(f)) x = static_cast<std::uint32_t>(rng.below(k));
      break;
    }
    case 2: {  // merge two clusters
      const auto a = static_cast<std::uint32_t>(rng.below(base.num_clusters()));
      const auto b = static_cast<std::uint32_t>(rng.below(base.num_clusters()));
      for (auto& x : l)
        if (x == b) x = a;
      break;
    }
    default: {  // split every cluster in two at random
      for (auto& x : l) x = 2 * x + (rng.coin() ? 1 : 0);
      break;
    }
  }
  return Clustering::from_dense_labels(l);
}

/// Divisor k of n giving a feasible clustered instance with at least one
/// cross edge per vertex and cluster pair, eps = 0.01 / k.
inline double random_feasible_eps(std::size_t n, Rng& rng) {
  std::vector<std::size_t> ks;
  for (std::size_t k = 2; k <= 8; ++k)
    if (n % k == 0 && std::llround(0.01 * static_cast<double>(n) / static_cast<double>(k)) >= 1) ks.push_back(k);
  if (ks.empty()) throw ParameterError("no feasible clustered instance for this n");
  return 0.01 / static_cast<double>(ks[rng.below(ks.size())]);
}

inline CheckResult check_cost_identity(Count instances = 200, std::uint64_t seed = 1) {
  Count violations = 0;
  for (Count i = 0; i < instances; ++i) {
    Rng rng(derive_seed(seed, "cost-identity", i));
    const std::size_t n = std::array<std::size_t, 3>{200, 300, 400}[rng.below(3)];
    const auto inst = gen_clustered_regular(n, random_feasible_eps(n, rng), rng());
    const Clustering alt = random_alternative_clustering(inst.clustering, rng);
    const auto d = symmetric_difference(inst.clustering, alt, inst.graph);
    const auto lhs = static_cast<std::int64_t>(clustering_cost(inst.graph, alt)) -
                     static_cast<std::int64_t>(clustering_cost(inst.graph, inst.clustering));
    const auto rhs = static_cast<std::int64_t>(d.delta_total) - 2 * static_cast<std::int64_t>(d.delta_b);
    violations += lhs != rhs;
  }
  std::ostringstream d;
  d << violations << " violations over " << instances << " instances";
  return {"cost-identity", violations == 0, d.str()};
}

inline const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"fourier-identity", "pm-tvd", "counting-bound", "fano",
                                                 "kl-bound", "chernoff-adaptive", "cost-identity"};
  return names;
}

/// Runs a check by name; `effort` scales trial counts (0 = defaults).
inline CheckResult run_check(const std::string& name, std::uint64_t seed, Count effort = 0) {
  if (name == "fourier-identity") return check_fourier_identity(effort ? effort : 100, seed);
  if (name == "pm-tvd") return check_pm_tvd(effort ? effort : 100, seed);
  if (name == "counting-bound") return check_counting_bound(effort ? effort : 2000, seed);
  if (name == "fano") return check_fano(effort ? effort : 1000, seed);
  if (name == "kl-bound") return check_kl_bound();
  if (name == "chernoff-adaptive") return check_chernoff_adaptive(effort ? effort : 20000, seed);
  if (name == "cost-identity") return check_cost_identity(effort ? effort : 200, seed);
  throw ParameterError("unknown check '" + name + "'");
}

}  // namespace qclab
