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

#include <algorithm>
#include <numeric>
#include <vector>

#include "oracle_util.hpp"
#include "qclab/exact.hpp"
#include "qclab/graph.hpp"

namespace qclab {
namespace {

Clustering labels(std::vector<int> l) { return Clustering::from_labels(std::span<const int>(l)); }
CutPartition bits(std::vector<std::uint8_t> b) { return CutPartition(std::move(b)); }

Graph cycle(std::size_t n) {
  GraphBuilder b(n);
  for (Vertex i = 0; i < n; ++i) b.add_edge(i, static_cast<Vertex>((i + 1) % n));
  return std::move(b).build();
}

TEST(PairIndex, RoundTripsEveryPair) {
  for (Count n : {2, 3, 7, 50}) {
    Count expect = 0;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) {
        EXPECT_EQ(pair_index(n, u, v), expect);
        EXPECT_EQ(pair_index(n, v, u), expect);
        EXPECT_EQ(index_to_pair(n, expect), (Edge{u, v}));
        ++expect;
      }
    EXPECT_EQ(expect, choose2(n));
  }
}

TEST(Graph, BuilderRejectsLoopsAndIgnoresDuplicates) {
  GraphBuilder b(4);
  EXPECT_TRUE(b.add_edge(0, 1));
  EXPECT_FALSE(b.add_edge(1, 0));
  EXPECT_THROW(b.add_edge(2, 2), ParameterError);
  EXPECT_THROW(b.add_edge(0, 4), ParameterError);
  const Graph g = std::move(b).build();
  EXPECT_EQ(g.num_edges(), 1U);
  EXPECT_TRUE(g.adjacent(1, 0));
  EXPECT_FALSE(g.adjacent(2, 3));
}

TEST(Graph, PresentationOrderIsAPermutationOfNeighbors) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Graph base = testing::random_graph(30, 0.3, seed);
    GraphBuilder b(30);
    for (const auto& e : base.edges()) b.add_edge(e.u, e.v);
    const Graph g = std::move(b).build_with_order(seed);
    ASSERT_TRUE(g.has_presentation_order());
    for (Vertex v = 0; v < 30; ++v) {
      auto nb = std::vector<Vertex>(g.neighbors(v).begin(), g.neighbors(v).end());
      EXPECT_EQ(nb.size(), g.degree(v));
      std::sort(nb.begin(), nb.end());
      EXPECT_EQ(nb, g.sorted_neighbors(v));
    }
  }
}

TEST(Graph, PresentationOrderIsDeterministicPerSeed) {
  auto make = [](std::uint64_t seed) {
    GraphBuilder b(6);
    for (Vertex u = 1; u < 6; ++u) b.add_edge(0, u);
    return std::move(b).build_with_order(seed);
  };
  const Graph a = make(9), b = make(9);
  EXPECT_TRUE(std::equal(a.neighbors(0).begin(), a.neighbors(0).end(), b.neighbors(0).begin()));
}

TEST(Graph, NeighborsWithoutOrderThrow) {
  const Graph g = complete_graph(3);
  EXPECT_FALSE(g.has_presentation_order());
  EXPECT_THROW(g.neighbors(0), std::logic_error);
}

TEST(Clustering, CanonicalLabelsByFirstAppearance) {
  const Clustering c = labels({7, 7, 3, 9, 3});
  EXPECT_EQ(std::vector<std::uint32_t>(c.labels().begin(), c.labels().end()),
            (std::vector<std::uint32_t>{0, 0, 1, 2, 1}));
  EXPECT_EQ(c.num_clusters(), 3U);
  EXPECT_EQ(c, labels({1, 1, 0, 5, 0}));
}

TEST(ClusteringCost, SmallCases) {
  EXPECT_EQ(clustering_cost(make_graph(3, {}), Clustering::single_cluster(3)), 3U);
  EXPECT_EQ(clustering_cost(complete_graph(3), Clustering::single_cluster(3)), 0U);
  const std::vector<Edge> path = {{0, 1}, {1, 2}};
  EXPECT_EQ(clustering_cost(make_graph(3, path), labels({0, 0, 1})), 1U);
}

TEST(ClusteringCost, FiveCycleOptimumIsThree) {
  const Graph c5 = cycle(5);
  EXPECT_EQ(testing::naive_cc_optimum(c5), 3U);
  EXPECT_EQ(brute_force_cc(c5).value, 3U);
}

TEST(ClusteringCost, ShapeMismatchThrows) {
  EXPECT_THROW(clustering_cost(complete_graph(3), Clustering::singletons(4)), ShapeMismatch);
}

TEST(ClusteringCost, CostPlusAgreementsIsPairCount) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 2 + seed % 20;
    const Graph g = testing::random_graph(n, 0.4, seed);
    const Clustering c = labels(testing::random_labels(n, 1 + seed % 5, seed + 100));
    EXPECT_EQ(clustering_cost(g, c) + clustering_agreements(g, c), choose2(n));
  }
}

TEST(ClusteringCost, AgreesWithNaiveLoopOnAllSmallGraphs) {
  // Every graph on up to 5 vertices, several clusterings each; n = 6 sampled.
  for (std::size_t n = 1; n <= 6; ++n) {
    const Count pairs = choose2(n);
    const std::uint64_t graphs = n <= 5 ? (std::uint64_t{1} << pairs) : 2000;
    Rng rng(n);
    for (std::uint64_t gi = 0; gi < graphs; ++gi) {
      const std::uint64_t mask = n <= 5 ? gi : rng.below(std::uint64_t{1} << pairs);
      GraphBuilder b(n);
      for (Count i = 0; i < pairs; ++i)
        if ((mask >> i) & 1) {
          const Edge e = index_to_pair(n, i);
          b.add_edge(e.u, e.v);
        }
      const Graph g = std::move(b).build();
      for (std::uint64_t s = 0; s < 3; ++s) {
        const auto l = testing::random_labels(n, 1 + s, gi * 7 + s);
        ASSERT_EQ(clustering_cost(g, labels(l)), testing::naive_cost(g, l));
      }
    }
  }
}

TEST(ClusteringCost, RelabelingInvariance) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = testing::random_graph(15, 0.5, seed);
    auto l = testing::random_labels(15, 4, seed);
    const Count base = clustering_cost(g, labels(l));
    for (auto& x : l) x = 100 - 3 * x;
    EXPECT_EQ(clustering_cost(g, labels(l)), base);
  }
}

TEST(CutSize, SmallCases) {
  EXPECT_EQ(cut_size(complete_graph(2), bits({0, 1})), 1U);
  EXPECT_EQ(cut_size(testing::random_graph(8, 0.5, 3), CutPartition::zeros(8)), 0U);
  EXPECT_EQ(cut_size(cycle(4), bits({0, 1, 0, 1})), 4U);
  EXPECT_THROW(cut_size(cycle(4), bits({0, 1, 0})), ShapeMismatch);
}

TEST(CutSize, ComplementAndVertexRelabelingInvariance) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 12;
    const Graph g = testing::random_graph(n, 0.4, seed);
    Rng rng(seed);
    std::vector<std::uint8_t> b(n);
    for (auto& x : b) x = rng.coin();
    const CutPartition p(b);
    EXPECT_EQ(cut_size(g, p), cut_size(g, p.complement()));
    // Apply a vertex permutation to both graph and partition.
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0U);
    rng.shuffle(std::span<Vertex>(perm));
    GraphBuilder gb(n);
    for (const auto& e : g.edges()) gb.add_edge(perm[e.u], perm[e.v]);
    std::vector<std::uint8_t> pb(n);
    for (std::size_t i = 0; i < n; ++i) pb[perm[i]] = b[i];
    EXPECT_EQ(cut_size(std::move(gb).build(), CutPartition(pb)), cut_size(g, p));
  }
}

TEST(BisectionSize, SmallCases) {
  EXPECT_EQ(bisection_size(complete_graph(4), bits({0, 1, 1, 0})), 4U);
  EXPECT_EQ(bisection_size(make_graph(6, {}), bits({1, 0, 1, 0, 1, 0})), 0U);
  EXPECT_EQ(bisection_size(cycle(6), bits({0, 0, 0, 1, 1, 1})), 2U);
}

TEST(BisectionSize, RejectsOddOrUnbalanced) {
  EXPECT_THROW(bisection_size(cycle(5), bits({0, 0, 1, 1, 1})), ParameterError);
  EXPECT_THROW(bisection_size(cycle(4), bits({0, 1, 1, 1})), ParameterError);
}

TEST(SymmetricDifference, IdenticalClusteringsGiveZero) {
  const Graph g = testing::random_graph(10, 0.5, 1);
  const Clustering c = labels(testing::random_labels(10, 3, 1));
  EXPECT_EQ(symmetric_difference(c, c, g), DeltaDecomposition{});
  EXPECT_EQ(symmetric_difference(Clustering::singletons(10), labels({9, 8, 7, 6, 5, 4, 3, 2, 1, 0}), g),
            DeltaDecomposition{});
}

TEST(SymmetricDifference, WorkedExample) {
  // Vertices 1..4 of the example mapped to 0..3.
  const Graph g = make_graph(4, std::vector<Edge>{{0, 1}, {2, 3}, {0, 2}});
  const Clustering c = labels({0, 0, 1, 1});
  const Clustering c2 = Clustering::single_cluster(4);
  const auto d = symmetric_difference(c, c2, g);
  EXPECT_EQ(d.delta_total, 4U);
  EXPECT_EQ(d.delta_a, 0U);
  EXPECT_EQ(d.delta_b, 1U);
  EXPECT_EQ(d.delta_c, 3U);
  EXPECT_EQ(clustering_cost(g, c), 1U);
  EXPECT_EQ(clustering_cost(g, c2), 3U);
}

TEST(SymmetricDifference, DecompositionInvariants) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 2 + seed % 25;
    const Graph g = testing::random_graph(n, 0.5, seed);
    const auto l1 = testing::random_labels(n, 1 + seed % 4, seed * 3);
    const auto l2 = testing::random_labels(n, 1 + seed % 6, seed * 3 + 1);
    const auto d = symmetric_difference(labels(l1), labels(l2), g);
    EXPECT_EQ(d.delta_total, d.delta_a + d.delta_b + d.delta_c);
    EXPECT_LE(d.delta_total, choose2(n));
    Count total = 0;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) total += (l1[u] == l1[v]) != (l2[u] == l2[v]);
    EXPECT_EQ(d.delta_total, total);
  }
}

TEST(SymmetricDifference, CostIdentityWhenClustersAreCliques) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 3 + seed % 20;
    const auto l = testing::random_labels(n, 1 + seed % 4, seed);
    // Complete every cluster, add random cross edges.
    Rng rng(seed);
    GraphBuilder b(n);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (l[u] == l[v] || rng.bernoulli(0.3)) b.add_edge(u, v);
    const Graph g = std::move(b).build();
    const auto l2 = testing::random_labels(n, 1 + seed % 5, seed + 999);
    const auto d = symmetric_difference(labels(l), labels(l2), g);
    const auto lhs = static_cast<std::int64_t>(testing::naive_cost(g, l2)) -
                     static_cast<std::int64_t>(testing::naive_cost(g, l));
    EXPECT_EQ(lhs, static_cast<std::int64_t>(d.delta_total) - 2 * static_cast<std::int64_t>(d.delta_b));
  }
}

TEST(PartitionDistance, Cases) {
  const CutPartition p = bits({0, 1, 1, 0, 1});
  EXPECT_EQ(partition_distance(p, p), 0U);
  EXPECT_EQ(partition_distance(p, p.complement()), 0U);
  EXPECT_EQ(partition_distance(bits({0, 0, 0, 0}), bits({0, 0, 1, 1})), 2U);
  EXPECT_EQ(partition_distance(bits({0, 0, 0, 0}), bits({0, 1, 1, 1})), 1U);
  EXPECT_THROW(partition_distance(bits({0}), bits({0, 1})), ShapeMismatch);
}

TEST(TwoLargestClusters, TiesGoToSmallestMinimumVertex) {
  // Clusters {0,3}, {1,4}, {2}: sizes tie between the first two.
  const auto out = two_largest_clusters(labels({5, 6, 7, 5, 6}));
  EXPECT_EQ(out.assigned, (std::vector<std::uint8_t>{1, 1, 0, 1, 1}));
  EXPECT_EQ(out.side[0], out.side[3]);
  EXPECT_NE(out.side[0], out.side[1]);
  // Equal sizes everywhere: {4}, {2}, {0}... smallest min vertices are 0 and 1.
  const auto flat = two_largest_clusters(Clustering::singletons(4));
  EXPECT_EQ(flat.assigned, (std::vector<std::uint8_t>{1, 1, 0, 0}));
}

TEST(ApproximatesPartition, NeedsMoreThanNinetyPercent) {
  const std::size_t n = 20;
  std::vector<std::uint8_t> truth(n);
  for (std::size_t i = 0; i < n; ++i) truth[i] = i % 2;
  std::vector<int> l(n);
  for (std::size_t i = 0; i < n; ++i) l[i] = static_cast<int>(truth[i]);
  EXPECT_TRUE(approximates_partition(CutPartition(truth), two_largest_clusters(labels(l))));
  // Flipped labels are the same cut.
  for (auto& x : l) x = 1 - x;
  EXPECT_TRUE(approximates_partition(CutPartition(truth), two_largest_clusters(labels(l))));
  // Two vertices moved to a third cluster: 18/20 = 0.9 is not > 0.9.
  l[0] = 5;
  l[1] = 5;
  EXPECT_FALSE(approximates_partition(CutPartition(truth), two_largest_clusters(labels(l))));
  // One stray vertex: 19/20 agree.
  l[1] = l[3];
  EXPECT_TRUE(approximates_partition(CutPartition(truth), two_largest_clusters(labels(l))));
}

}  // namespace
}  // namespace qclab
