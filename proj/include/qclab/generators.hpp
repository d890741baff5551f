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

// Seeded instance samplers. Every sampler is a pure function of its
// parameters and a master seed; independent components draw from named
// sub-streams (see derive_seed) so that they never perturb each other.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "qclab/graph.hpp"
#include "qclab/rng.hpp"

namespace qclab {

inline Graph gen_gnp(std::size_t n, double p, std::uint64_t seed) {
  if (n < 1) throw ParameterError("gen_gnp: n must be >= 1");
  if (!(p >= 0 && p <= 1)) throw ParameterError("gen_gnp: p must be in [0,1]");
  Rng rng(derive_seed(seed, "edges"));
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) b.add_edge(u, v);
  return std::move(b).build();
}

struct PlantedInstance {
  CutPartition partition;
  Graph graph;
  double rho = 0;
};

inline CutPartition random_partition(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = rng.coin() ? 1 : 0;
  return CutPartition(std::move(bits));
}

/// Same-side pairs are edges with probability 1/2 + rho, cross pairs with 1/2 - rho.
inline PlantedInstance gen_planted(std::size_t n, double rho, std::uint64_t seed) {
  if (n < 1) throw ParameterError("gen_planted: n must be >= 1");
  if (!(rho >= 0 && rho < 0.5)) throw ParameterError("gen_planted: rho must be in [0, 1/2)");
  PlantedInstance inst;
  inst.rho = rho;
  inst.partition = random_partition(n, derive_seed(seed, "partition"));
  Rng rng(derive_seed(seed, "edges"));
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const double p = inst.partition[u] == inst.partition[v] ? 0.5 + rho : 0.5 - rho;
      if (rng.bernoulli(p)) b.add_edge(u, v);
    }
  }
  inst.graph = std::move(b).build();
  return inst;
}

struct MultisetSample {
  Graph graph;
  std::vector<Edge> trace;  ///< the r' raw draws, in order, with repetitions
  Count distinct = 0;
};

/// r' uniform draws from all unordered pairs, with repetition.
inline MultisetSample gen_union_multiset(std::size_t n, Count r_prime, std::uint64_t seed) {
  if (n < 2) throw ParameterError("gen_union_multiset: n must be >= 2");
  const Count pairs = choose2(n);
  Rng rng(derive_seed(seed, "edges"));
  MultisetSample out;
  out.trace.reserve(r_prime);
  GraphBuilder b(n);
  for (Count i = 0; i < r_prime; ++i) {
    const Edge e = index_to_pair(n, rng.below(pairs));
    out.trace.push_back(e);
    b.add_edge(e.u, e.v);
  }
  out.graph = std::move(b).build();
  out.distinct = out.graph.num_edges();
  return out;
}

/// Edge (left, right) of a bipartite graph with parts [0,m) and [0,m).
struct BipartiteEdge {
  Vertex left = 0;
  Vertex right = 0;
  friend auto operator<=>(const BipartiteEdge&, const BipartiteEdge&) = default;
};

namespace detail {

// Union of d random perfect matchings, then random 2-switches until simple.
// Assumes 2d <= m so that switches succeed with constant probability.
inline std::vector<BipartiteEdge> sparse_regular_bipartite(std::size_t m, std::size_t d, Rng& rng) {
  std::vector<BipartiteEdge> edges;
  edges.reserve(m * d);
  std::vector<std::uint16_t> mult(m * m, 0);
  std::vector<Vertex> perm(m);
  for (std::size_t round = 0; round < d; ++round) {
    std::iota(perm.begin(), perm.end(), 0U);
    rng.shuffle(std::span<Vertex>(perm));
    for (Vertex i = 0; i < m; ++i) {
      edges.push_back({i, perm[i]});
      ++mult[i * m + perm[i]];
    }
  }
  auto at = [&](Vertex a, Vertex b) -> std::uint16_t& { return mult[std::size_t{a} * m + b]; };

  const std::size_t max_attempts = 1000 * edges.size() + 1000;
  std::size_t attempts = 0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    while (at(edges[e].left, edges[e].right) > 1) {
      if (++attempts > max_attempts) throw std::runtime_error("regular bipartite repair did not converge");
      const std::size_t f = rng.below(edges.size());
      const auto [a, b] = edges[e];
      const auto [c, dd] = edges[f];
      if (a == c || b == dd || at(a, dd) != 0 || at(c, b) != 0) continue;
      --at(a, b);
      --at(c, dd);
      ++at(a, dd);
      ++at(c, b);
      edges[e] = {a, dd};
      edges[f] = {c, b};
    }
  }
  return edges;
}

}  // namespace detail

/// d-regular simple bipartite graph on parts of size m, sorted by (left, right).
/// Approximately uniform; see README for the sampler.
inline std::vector<BipartiteEdge> gen_regular_bipartite(std::size_t m, std::size_t d, std::uint64_t seed) {
  if (d > m) throw ParameterError("gen_regular_bipartite: degree " + std::to_string(d) + " exceeds part size " +
                                  std::to_string(m));
  Rng rng(derive_seed(seed, "bipartite"));
  std::vector<BipartiteEdge> out;
  if (2 * d <= m) {
    out = detail::sparse_regular_bipartite(m, d, rng);
  } else {
    // Dense side: complement of an (m - d)-regular graph.
    const auto holes = detail::sparse_regular_bipartite(m, m - d, rng);
    std::vector<std::uint8_t> missing(m * m, 0);
    for (const auto& e : holes) missing[std::size_t{e.left} * m + e.right] = 1;
    out.reserve(m * d);
    for (Vertex i = 0; i < m; ++i)
      for (Vertex j = 0; j < m; ++j)
        if (!missing[std::size_t{i} * m + j]) out.push_back({i, j});
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct ClusteredParams {
  std::size_t k = 0;
  std::size_t cluster_size = 0;
  std::size_t cross_degree = 0;
};

/// Rounds k = 0.01/eps, size = 100 eps n, cross = eps n and refuses any
/// combination whose product does not reproduce n exactly.
inline ClusteredParams resolve_clustered_params(std::size_t n, double eps) {
  if (!(eps > 0)) throw ParameterError("eps must be positive");
  ClusteredParams p;
  p.k = static_cast<std::size_t>(std::llround(0.01 / eps));
  p.cluster_size = static_cast<std::size_t>(std::llround(100.0 * eps * static_cast<double>(n)));
  p.cross_degree = static_cast<std::size_t>(std::llround(eps * static_cast<double>(n)));
  if (p.k >= 2 && p.cluster_size * p.k == n && p.cross_degree <= p.cluster_size) return p;

  // Feasible points are eps = 0.01/k for divisors k >= 2 of n.
  std::vector<std::size_t> ks;
  for (std::size_t k = 2; k <= n; ++k)
    if (n % k == 0) ks.push_back(k);
  std::sort(ks.begin(), ks.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(0.01 / static_cast<double>(a) - eps) < std::abs(0.01 / static_cast<double>(b) - eps);
  });
  std::ostringstream msg;
  msg << "infeasible (n=" << n << ", eps=" << eps << "): k=" << p.k << ", cluster_size=" << p.cluster_size
      << ", cross_degree=" << p.cross_degree << "; nearest feasible eps:";
  for (std::size_t i = 0; i < std::min<std::size_t>(3, ks.size()); ++i) msg << ' ' << 0.01 / static_cast<double>(ks[i]) << " (k=" << ks[i] << ')';
  if (ks.empty()) msg << " none";
  throw ParameterError(msg.str());
}

struct ClusteredRegularInstance {
  Clustering clustering;
  std::vector<std::vector<Vertex>> members;  ///< members[alpha], in sampling order
  Graph graph;
  double eps = 0;
  std::size_t k = 0;
  std::size_t cluster_size = 0;
  std::size_t cross_degree = 0;
};

/// k equal cliques with an independent cross_degree-regular bipartite graph
/// between every pair of clusters. The graph carries a random neighbor order.
inline ClusteredRegularInstance gen_clustered_regular(std::size_t n, double eps, std::uint64_t seed) {
  const ClusteredParams p = resolve_clustered_params(n, eps);
  ClusteredRegularInstance inst;
  inst.eps = eps;
  inst.k = p.k;
  inst.cluster_size = p.cluster_size;
  inst.cross_degree = p.cross_degree;

  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0U);
  Rng rng(derive_seed(seed, "partition"));
  rng.shuffle(std::span<Vertex>(perm));
  std::vector<std::uint32_t> label(n);
  inst.members.assign(p.k, {});
  for (std::size_t i = 0; i < n; ++i) {
    const auto alpha = static_cast<std::uint32_t>(i / p.cluster_size);
    label[perm[i]] = alpha;
    inst.members[alpha].push_back(perm[i]);
  }
  inst.clustering = Clustering::from_dense_labels(label);

  GraphBuilder b(n);
  for (const auto& c : inst.members)
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j) b.add_edge(c[i], c[j]);
  for (std::size_t a = 0; a < p.k; ++a) {
    for (std::size_t c = a + 1; c < p.k; ++c) {
      const auto cross = gen_regular_bipartite(p.cluster_size, p.cross_degree, derive_seed(seed, "cross", a * p.k + c));
      for (const auto& e : cross) b.add_edge(inst.members[a][e.left], inst.members[c][e.right]);
    }
  }
  inst.graph = std::move(b).build_with_order(derive_seed(seed, "order"));
  return inst;
}

}  // namespace qclab
