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

// Query-efficient algorithms: sampled cost estimation, pivot-based
// clustering, the threshold distinguisher, the same-vector detector and the
// prefix protocol for noisy hidden partition.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "qclab/exact.hpp"
#include "qclab/graph.hpp"
#include "qclab/oracles.hpp"
#include "qclab/rng.hpp"

namespace qclab {

/// Sample sizes and budgets of the upper-bound algorithms, in units of 1/eps^2.
struct UpperBoundConstants {
  double c0 = 1;  ///< estimate budget >= c0 * s^2
  double c1 = 4;  ///< estimate sample size s = c1 / eps^2
  double c2 = 4;  ///< cluster_partition budget c2 * n / eps^2
  double c3 = 4;  ///< pivot count c3 / eps^2
  double c4 = 4;  ///< pivots queried per vertex c4 / eps^2
};

namespace detail {

inline std::size_t scaled_count(double c, double eps, std::size_t cap) {
  const double x = std::ceil(c / (eps * eps));
  return x >= static_cast<double>(cap) ? cap : static_cast<std::size_t>(x);
}

// Random greedy pivoting: an unclustered vertex takes all its unclustered neighbors.
inline std::vector<std::uint32_t> pivot_labels(const Graph& g, Rng& rng) {
  const std::size_t n = g.size();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0U);
  rng.shuffle(std::span<Vertex>(order));
  constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(n, kNone);
  std::uint32_t next = 0;
  for (Vertex p : order) {
    if (label[p] != kNone) continue;
    label[p] = next;
    for (Vertex v = 0; v < n; ++v)
      if (label[v] == kNone && g.adjacent(p, v)) label[v] = next;
    ++next;
  }
  return label;
}

// Single-vertex moves (including to a fresh singleton) until no move lowers
// the cost. Labels live in [0, n).
inline void improve_by_moves(const Graph& g, std::vector<std::uint32_t>& label) {
  const std::size_t n = g.size();
  std::vector<std::int64_t> size(n, 0), adj(n, 0);
  for (auto l : label) ++size[l];
  std::vector<std::uint32_t> touched;
  bool moved = true;
  while (moved) {
    moved = false;
    for (Vertex v = 0; v < n; ++v) {
      touched.clear();
      std::int64_t deg = 0;
      for (Vertex u = 0; u < n; ++u) {
        if (u == v || !g.adjacent(u, v)) continue;
        ++deg;
        if (adj[label[u]]++ == 0) touched.push_back(label[u]);
      }
      const std::uint32_t cur = label[v];
      // Disagreements charged to v if it sits in cluster c (v excluded from c).
      auto cost_in = [&](std::uint32_t c) {
        const std::int64_t others = size[c] - (c == cur ? 1 : 0);
        return (others - adj[c]) + (deg - adj[c]);
      };
      const std::int64_t now = cost_in(cur);
      std::int64_t best = now;
      std::uint32_t target = cur;
      for (auto c : touched) {
        const std::int64_t x = cost_in(c);
        if (x < best || (x == best && c < target && target != cur)) {
          best = x;
          target = c;
        }
      }
      if (size[cur] > 1 && deg < best) {
        best = deg;
        target = static_cast<std::uint32_t>(std::find(size.begin(), size.end(), 0) - size.begin());
      }
      for (auto c : touched) adj[c] = 0;
      if (target != cur && best < now) {
        --size[cur];
        ++size[target];
        label[v] = target;
        moved = true;
      }
    }
  }
}

}  // namespace detail

/// Pivot initialization plus local search; best of `restarts` runs.
/// Always an upper bound on the optimum.
inline Clustering local_search_cc(const Graph& g, std::uint64_t seed, unsigned restarts = 8) {
  if (g.size() == 0) return Clustering::singletons(0);
  restarts = std::max(1U, restarts);
  Clustering best;
  Count best_cost = std::numeric_limits<Count>::max();
  for (unsigned r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, "restart", r));
    auto label = detail::pivot_labels(g, rng);
    detail::improve_by_moves(g, label);
    Clustering c = Clustering::from_dense_labels(label);
    const Count cost = clustering_cost(g, c);
    if (cost < best_cost) {
      best_cost = cost;
      best = std::move(c);
    }
  }
  return best;
}

inline constexpr std::size_t kExactSampleLimit = 12;

/// Exact optimum for tiny graphs, local search otherwise.
inline Clustering sample_optimum(const Graph& g, std::uint64_t seed, unsigned restarts = 8) {
  if (g.size() <= kExactSampleLimit) return brute_force_cc(g).clustering;
  return local_search_cc(g, seed, restarts);
}

struct CostEstimate {
  double estimate = 0;
  std::size_t sample_size = 0;
  Count observed_pairs = 0;
  Count queries = 0;
};

namespace detail {

inline std::vector<Vertex> sample_vertices(std::size_t n, std::size_t s, Rng& rng) {
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), 0U);
  for (std::size_t i = 0; i < s; ++i) std::swap(all[i], all[i + rng.below(n - i)]);
  all.resize(s);
  std::sort(all.begin(), all.end());
  return all;
}

// Disagreements of c on the observed pairs of an s-vertex sample.
inline Count observed_disagreements(const Graph& h, const std::vector<std::uint8_t>& seen, const Clustering& c) {
  const std::size_t s = h.size();
  Count bad = 0;
  for (Vertex a = 0; a < s; ++a)
    for (Vertex b = a + 1; b < s; ++b)
      if (seen[pair_index(s, a, b)] && (h.adjacent(a, b) != c.together(a, b))) ++bad;
  return bad;
}

}  // namespace detail

/// Samples s = min(n, c1/eps^2) vertices, queries every pair among them and
/// rescales the sample optimum's cost by C(n,2)/C(s,2).
inline CostEstimate estimate_cc_cost(GraphOracle& oracle, double eps, std::uint64_t seed, Count budget,
                                     const UpperBoundConstants& k = {}) {
  if (!(eps > 0)) throw ParameterError("eps must be positive");
  const std::size_t n = oracle.size();
  CostEstimate out;
  if (n < 2) return out;
  const std::size_t s = std::max<std::size_t>(2, detail::scaled_count(k.c1, eps, n));
  if (static_cast<double>(budget) < k.c0 * static_cast<double>(s) * static_cast<double>(s))
    throw BudgetExceeded("budget below c0 * s^2 pair queries", 0);
  Rng rng(derive_seed(seed, "sample"));
  const auto verts = detail::sample_vertices(n, s, rng);
  const Count before = oracle.ledger().total();
  GraphBuilder b(s);
  for (Vertex i = 0; i < s; ++i)
    for (Vertex j = i + 1; j < s; ++j)
      if (oracle.pair(verts[i], verts[j])) b.add_edge(i, j);
  const Graph h = std::move(b).build();
  const Clustering c = sample_optimum(h, derive_seed(seed, "optimum"));
  out.sample_size = s;
  out.observed_pairs = choose2(s);
  out.queries = oracle.ledger().total() - before;
  out.estimate = static_cast<double>(clustering_cost(h, c)) * static_cast<double>(choose2(n)) /
                 static_cast<double>(choose2(s));
  return out;
}

/// Stream variant: reads `budget` samples, keeps those with both endpoints
/// in the vertex sample, and rescales the cost on observed pairs by
/// C(n,2) / (number of distinct observed pairs).
inline CostEstimate estimate_cc_cost(RandomQueryStream& stream, double eps, std::uint64_t seed, Count budget,
                                     const UpperBoundConstants& k = {}) {
  if (!(eps > 0)) throw ParameterError("eps must be positive");
  const std::size_t n = stream.config().n;
  const std::size_t s = std::max<std::size_t>(2, detail::scaled_count(k.c1, eps, n));
  if (static_cast<double>(budget) < k.c0 * static_cast<double>(s) * static_cast<double>(s))
    throw BudgetExceeded("budget below c0 * s^2 stream samples", 0);
  if (budget > stream.remaining()) throw BudgetExceeded("budget exceeds the stream length", stream.served());
  Rng rng(derive_seed(seed, "sample"));
  const auto verts = detail::sample_vertices(n, s, rng);
  std::vector<std::uint32_t> local(n, std::numeric_limits<std::uint32_t>::max());
  for (std::uint32_t i = 0; i < s; ++i) local[verts[i]] = i;

  std::vector<std::uint8_t> seen(choose2(s), 0);
  GraphBuilder b(s);
  Count observed = 0;
  for (Count q = 0; q < budget; ++q) {
    const auto x = stream.next();
    const auto a = local[x.u], c = local[x.v];
    if (a == std::numeric_limits<std::uint32_t>::max() || c == std::numeric_limits<std::uint32_t>::max()) continue;
    auto& flag = seen[pair_index(s, std::min(a, c), std::max(a, c))];
    if (flag) continue;
    flag = 1;
    ++observed;
    if (x.e) b.add_edge(a, c);
  }
  const Graph h = std::move(b).build();
  CostEstimate out;
  out.sample_size = s;
  out.observed_pairs = observed;
  out.queries = budget;
  if (observed == 0) return out;
  const Clustering cl = sample_optimum(h, derive_seed(seed, "optimum"), 3);
  out.estimate = static_cast<double>(detail::observed_disagreements(h, seen, cl)) *
                 static_cast<double>(choose2(n)) / static_cast<double>(observed);
  return out;
}

struct DistinguisherVerdict {
  bool yes = false;
  double statistic = 0;
  Count queries_used = 0;
  Count bits_used = 0;
};

/// YES iff the estimated clustering cost is below n^2/4 - 2.5 eps n^2.
inline DistinguisherVerdict threshold_distinguisher(RandomQueryStream& stream, double eps, Count budget,
                                                    std::uint64_t seed, const UpperBoundConstants& k = {}) {
  if (!(eps > 0 && eps < 0.05)) throw ParameterError("threshold distinguisher needs eps in (0, 0.05)");
  const auto n = static_cast<double>(stream.config().n);
  const Count before = stream.ledger().total();
  const auto est = estimate_cc_cost(stream, eps, seed, budget, k);
  DistinguisherVerdict v;
  v.statistic = est.estimate;
  v.yes = est.estimate < n * n / 4 - 2.5 * eps * n * n;
  v.queries_used = stream.ledger().total() - before;
  // One stored bit per observed pair of the vertex sample.
  v.bits_used = choose2(est.sample_size);
  return v;
}

/// Clusters c3/eps^2 random pivots by the sample optimum, then sends each
/// other vertex to the pivot cluster with the highest adjacency rate over
/// c4/eps^2 random pivots, or to a new singleton if that rate is below 1/2.
inline Clustering cluster_partition(GraphOracle& oracle, double eps, std::uint64_t seed, Count budget,
                                    const UpperBoundConstants& k = {}) {
  if (!(eps > 0)) throw ParameterError("eps must be positive");
  const std::size_t n = oracle.size();
  if (n == 0) return Clustering::singletons(0);
  const std::size_t p = std::max<std::size_t>(1, detail::scaled_count(k.c3, eps, n));
  const std::size_t m = std::min(p, std::max<std::size_t>(1, detail::scaled_count(k.c4, eps, p)));
  const Count start = oracle.ledger().total();
  auto ask = [&](Vertex a, Vertex b) {
    if (oracle.ledger().total() - start >= budget)
      throw BudgetExceeded("cluster_partition exhausted its pair-query budget", oracle.ledger().total() - start);
    return oracle.pair(a, b);
  };

  Rng rng(derive_seed(seed, "pivots"));
  const auto pivots = detail::sample_vertices(n, p, rng);
  GraphBuilder b(p);
  for (Vertex i = 0; i < p; ++i)
    for (Vertex j = i + 1; j < p; ++j)
      if (ask(pivots[i], pivots[j])) b.add_edge(i, j);
  const Graph h = std::move(b).build();
  const Clustering pc = sample_optimum(h, derive_seed(seed, "optimum"));

  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(n, kUnset);
  for (std::size_t i = 0; i < p; ++i) label[pivots[i]] = pc.label(static_cast<Vertex>(i));
  auto next = static_cast<std::uint32_t>(pc.num_clusters());

  const std::size_t kc = pc.num_clusters();
  std::vector<Count> asked(kc), hits(kc);
  std::vector<std::uint32_t> idx(p);
  Rng pick(derive_seed(seed, "assign"));
  for (Vertex v = 0; v < n; ++v) {
    if (label[v] != kUnset) continue;
    std::fill(asked.begin(), asked.end(), 0);
    std::fill(hits.begin(), hits.end(), 0);
    std::iota(idx.begin(), idx.end(), 0U);
    for (std::size_t i = 0; i < m; ++i) {
      std::swap(idx[i], idx[i + pick.below(p - i)]);
      const auto c = pc.label(idx[i]);
      ++asked[c];
      hits[c] += ask(v, pivots[idx[i]]);
    }
    double best = -1;
    std::uint32_t target = 0;
    for (std::uint32_t c = 0; c < kc; ++c) {
      if (asked[c] == 0) continue;
      const double rate = static_cast<double>(hits[c]) / static_cast<double>(asked[c]);
      if (rate > best) {
        best = rate;
        target = c;
      }
    }
    label[v] = best < 0.5 ? next++ : target;
  }
  return Clustering::from_dense_labels(label);
}

inline Count default_partition_budget(std::size_t n, double eps, const UpperBoundConstants& k = {}) {
  return static_cast<Count>(std::ceil(k.c2 * static_cast<double>(n) / (eps * eps)));
}

/// Memorizes the first s distinct (index, bit) records seen during the first
/// `store_steps` samples, then compares every later recurrence. A mismatch
/// means NO; at least m0 matches without a mismatch means YES; otherwise a
/// fair coin decides.
class SameVectorDetector {
 public:
  struct State {
    std::unordered_map<Count, bool> stored;
    Count matches = 0;
    bool mismatch = false;
  };

  SameVectorDetector(Count N, Count s, Count store_steps, Count m0, std::uint64_t seed)
      : N_(N), s_(s), store_steps_(store_steps), m0_(m0), seed_(seed) {
    if (N_ < 1) throw ParameterError("same-vector detector needs N >= 1");
  }

  /// m0 = ceil(log2(1/delta)).
  static Count default_m0(double delta = 0.05) { return static_cast<Count>(std::ceil(std::log2(1.0 / delta))); }

  Count record_bits() const noexcept { return static_cast<Count>(std::bit_width(N_ - 1)) + 1; }

  State init() const { return {}; }

  void step(State& st, const IndexSample& x, Count i) const {
    if (st.mismatch) return;
    if (i < store_steps_) {
      if (st.stored.size() < s_) st.stored.try_emplace(x.index, x.bit);
      return;
    }
    const auto it = st.stored.find(x.index);
    if (it == st.stored.end()) return;
    if (it->second == x.bit) ++st.matches;
    else st.mismatch = true;
  }

  /// true = YES (consistent).
  bool finish(const State& st) const {
    if (st.mismatch) return false;
    if (st.matches >= m0_) return true;
    return Rng(derive_seed(seed_, "coin")).coin();
  }

  Count state_bits(const State& st) const {
    return st.stored.size() * record_bits() + static_cast<Count>(std::bit_width(st.matches)) + (st.mismatch ? 1 : 0);
  }

 private:
  Count N_, s_, store_steps_, m0_;
  std::uint64_t seed_;
};

struct PdBhpInstance {
  std::size_t n = 0;
  CutPartition x;
  std::vector<Edge> edges;     ///< distinct pairs, in first-draw order
  std::vector<std::uint8_t> w;
  bool yes = false;
  double rho = 0;
  Count r_prime = 0;
};

/// Bob's graph is r' = alpha n / eps^2 uniform pairs (eps = rho / 10),
/// deduplicated. YES: w_i = x_u xor x_v xor D_i with Pr[D_i = 1] = 1/2 + rho.
/// NO: w uniform.
inline PdBhpInstance gen_pdbhp(std::size_t n, double rho, double alpha, bool yes, std::uint64_t seed) {
  if (n < 2) throw ParameterError("pd-bhp needs n >= 2");
  if (!(rho > 0 && rho <= 0.5)) throw ParameterError("pd-bhp needs rho in (0, 1/2]");
  if (!(alpha > 0)) throw ParameterError("pd-bhp needs alpha > 0");
  PdBhpInstance inst;
  inst.n = n;
  inst.yes = yes;
  inst.rho = rho;
  const double eps = rho / 10;
  inst.r_prime = static_cast<Count>(std::llround(alpha * static_cast<double>(n) / (eps * eps)));
  inst.x = random_partition(n, derive_seed(seed, "x"));
  const Count pairs = choose2(n);
  std::vector<std::uint64_t> seen((pairs + 63) / 64, 0);
  Rng er(derive_seed(seed, "edges"));
  for (Count i = 0; i < inst.r_prime; ++i) {
    const Count idx = er.below(pairs);
    auto& word = seen[idx >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (idx & 63);
    if (word & bit) continue;
    word |= bit;
    inst.edges.push_back(index_to_pair(n, idx));
  }
  Rng nr(derive_seed(seed, "noise"));
  inst.w.resize(inst.edges.size());
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    const auto& e = inst.edges[i];
    if (yes) inst.w[i] = static_cast<std::uint8_t>((inst.x[e.u] ^ inst.x[e.v]) ^ (nr.bernoulli(0.5 + rho) ? 1 : 0));
    else inst.w[i] = nr.coin() ? 1 : 0;
  }
  return inst;
}

struct PdBhpVerdict {
  bool yes = false;
  Count observed = 0;
  double agreement = 0;
};

/// Alice sends x_0..x_{c-1}; Bob averages 1{w_i = x_u xor x_v} over edges
/// inside the prefix and says YES iff the mean is below 1/2 - rho/2.
inline PdBhpVerdict pdbhp_prefix_protocol(const PdBhpInstance& inst, std::size_t c, std::uint64_t seed) {
  if (c > inst.n) throw ParameterError("message length exceeds n");
  PdBhpVerdict v;
  Count agree = 0;
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    const auto& e = inst.edges[i];
    if (e.v >= c) continue;  // u < v
    ++v.observed;
    agree += inst.w[i] == (inst.x[e.u] ^ inst.x[e.v]);
  }
  if (v.observed == 0) {
    v.yes = Rng(derive_seed(seed, "coin")).coin();
    return v;
  }
  v.agreement = static_cast<double>(agree) / static_cast<double>(v.observed);
  v.yes = v.agreement < 0.5 - inst.rho / 2;
  return v;
}

}  // namespace qclab
