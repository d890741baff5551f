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

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qclab/common.hpp"
#include "qclab/rng.hpp"

namespace qclab {

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Index of the unordered pair {u, v} in the row-major upper triangle, in [0, C(n,2)).
inline Count pair_index(Count n, Vertex u, Vertex v) noexcept {
  if (u > v) std::swap(u, v);
  const Count uu = u;
  return uu * (2 * n - uu - 1) / 2 + (v - uu - 1);
}

/// Inverse of pair_index.
inline Edge index_to_pair(Count n, Count index) {
  // Row u starts at S(u) = u(2n-u-1)/2. Solve S(u) <= index by the quadratic
  // formula, then fix any floating-point off-by-one.
  const double nn = static_cast<double>(n);
  const double disc = (2 * nn - 1) * (2 * nn - 1) - 8.0 * static_cast<double>(index);
  auto u = static_cast<Count>(std::floor(((2 * nn - 1) - std::sqrt(std::max(disc, 0.0))) / 2));
  auto row_start = [n](Count r) { return r * (2 * n - r - 1) / 2; };
  while (u > 0 && row_start(u) > index) --u;
  while (u + 1 < n && row_start(u + 1) <= index) ++u;
  const Count v = index - row_start(u) + u + 1;
  return Edge{static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

class GraphBuilder;

/// Undirected simple graph with a bit-packed upper-triangular adjacency
/// relation. Immutable once built; safe to share read-only across threads.
///
/// The optional presentation order fixes, for every vertex, a permutation of
/// its neighbors; it backs "i-th neighbor" queries.
class Graph {
 public:
  Graph() = default;

  std::size_t size() const noexcept { return n_; }
  Count num_edges() const noexcept { return m_; }

  bool adjacent(Vertex u, Vertex v) const noexcept {
    if (u == v) return false;
    const Count i = pair_index(n_, u, v);
    return (bits_[i >> 6] >> (i & 63)) & 1U;
  }

  std::uint32_t degree(Vertex v) const { return degree_.at(v); }

  bool has_presentation_order() const noexcept { return !order_.empty() || n_ == 0; }

  /// Neighbors of v in presentation order. Requires has_presentation_order().
  std::span<const Vertex> neighbors(Vertex v) const {
    if (order_.empty()) throw ParameterError("graph was built without a neighbor presentation order");
    return order_.at(v);
  }

  /// All edges (u < v), lexicographically sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t word = bits_[w];
      while (word != 0) {
        const int b = std::countr_zero(word);
        out.push_back(index_to_pair(n_, (static_cast<Count>(w) << 6) + b));
        word &= word - 1;
      }
    }
    return out;
  }

  /// Neighbors in increasing vertex order (independent of the presentation order).
  std::vector<Vertex> sorted_neighbors(Vertex v) const {
    std::vector<Vertex> out;
    out.reserve(degree_.at(v));
    for (Vertex u = 0; u < n_; ++u) {
      if (adjacent(u, v)) out.push_back(u);
    }
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  friend class GraphBuilder;
  std::size_t n_ = 0;
  Count m_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> degree_;
  std::vector<std::vector<Vertex>> order_;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n)
      : n_(n), bits_((choose2(n) + 63) / 64, 0), degree_(n, 0) {}

  std::size_t size() const noexcept { return n_; }

  /// Adds {u,v}; returns false if it was already present.
  bool add_edge(Vertex u, Vertex v) {
    if (u == v) throw ParameterError("self-loop " + std::to_string(u));
    if (u >= n_ || v >= n_) throw ParameterError("vertex out of range");
    const Count i = pair_index(n_, u, v);
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (bits_[i >> 6] & mask) return false;
    bits_[i >> 6] |= mask;
    ++degree_[u];
    ++degree_[v];
    ++m_;
    return true;
  }

  bool has_edge(Vertex u, Vertex v) const {
    if (u == v) return false;
    const Count i = pair_index(n_, u, v);
    return (bits_[i >> 6] >> (i & 63)) & 1U;
  }

  Graph build() && {
    Graph g;
    g.n_ = n_;
    g.m_ = m_;
    g.bits_ = std::move(bits_);
    g.degree_ = std::move(degree_);
    return g;
  }

  /// Builds and attaches a uniformly random, per-vertex independent neighbor order.
  Graph build_with_order(std::uint64_t order_seed) && {
    Graph g = std::move(*this).build();
    g.order_.resize(g.n_);
    for (Vertex v = 0; v < g.n_; ++v) g.order_[v].reserve(g.degree_[v]);
    for (Vertex u = 0; u < g.n_; ++u) {
      for (Vertex v = u + 1; v < g.n_; ++v) {
        if (g.adjacent(u, v)) {
          g.order_[u].push_back(v);
          g.order_[v].push_back(u);
        }
      }
    }
    for (Vertex v = 0; v < g.n_; ++v) {
      Rng rng(derive_seed(order_seed, "order", v));
      rng.shuffle(std::span<Vertex>(g.order_[v]));
    }
    return g;
  }

 private:
  std::size_t n_;
  Count m_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> degree_;
};

inline Graph make_graph(std::size_t n, std::span<const Edge> edges) {
  GraphBuilder b(n);
  for (const Edge& e : edges) b.add_edge(e.u, e.v);
  return std::move(b).build();
}

inline Graph complete_graph(std::size_t n) {
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) b.add_edge(u, v);
  return std::move(b).build();
}

/// Partition of the vertex set into non-empty labeled clusters. Labels are
/// canonical: dense integers assigned in order of first appearance.
class Clustering {
 public:
  Clustering() = default;

  /// Accepts arbitrary integer labels and canonicalizes them.
  template <class Label>
  static Clustering from_labels(std::span<const Label> raw) {
    Clustering c;
    c.labels_.resize(raw.size());
    std::map<Label, std::uint32_t> seen;
    for (std::size_t v = 0; v < raw.size(); ++v) {
      auto [it, inserted] = seen.try_emplace(raw[v], static_cast<std::uint32_t>(seen.size()));
      if (inserted) c.sizes_.push_back(0);
      c.labels_[v] = it->second;
      ++c.sizes_[it->second];
    }
    return c;
  }

  /// Like from_labels, for labels already known to lie in [0, n). O(n).
  static Clustering from_dense_labels(std::span<const std::uint32_t> raw) {
    Clustering c;
    c.labels_.resize(raw.size());
    std::vector<std::uint32_t> remap(raw.size() + 1, UINT32_MAX);
    for (std::size_t v = 0; v < raw.size(); ++v) {
      const std::uint32_t r = raw[v];
      if (r >= remap.size()) remap.resize(r + 1, UINT32_MAX);
      if (remap[r] == UINT32_MAX) {
        remap[r] = static_cast<std::uint32_t>(c.sizes_.size());
        c.sizes_.push_back(0);
      }
      c.labels_[v] = remap[r];
      ++c.sizes_[remap[r]];
    }
    return c;
  }

  static Clustering singletons(std::size_t n) {
    std::vector<std::uint32_t> l(n);
    std::iota(l.begin(), l.end(), 0U);
    return from_dense_labels(l);
  }

  static Clustering single_cluster(std::size_t n) {
    std::vector<std::uint32_t> l(n, 0);
    return from_dense_labels(l);
  }

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t num_clusters() const noexcept { return sizes_.size(); }
  std::uint32_t label(Vertex v) const { return labels_.at(v); }
  std::span<const std::uint32_t> labels() const noexcept { return labels_; }
  std::span<const std::uint32_t> cluster_sizes() const noexcept { return sizes_; }
  bool together(Vertex u, Vertex v) const { return labels_.at(u) == labels_.at(v); }

  std::vector<std::vector<Vertex>> clusters() const {
    std::vector<std::vector<Vertex>> out(sizes_.size());
    for (std::size_t c = 0; c < sizes_.size(); ++c) out[c].reserve(sizes_[c]);
    for (Vertex v = 0; v < labels_.size(); ++v) out[labels_[v]].push_back(v);
    return out;
  }

  friend bool operator==(const Clustering& a, const Clustering& b) { return a.labels_ == b.labels_; }

 private:
  std::vector<std::uint32_t> labels_;
  std::vector<std::uint32_t> sizes_;
};

/// Two-sided cut given as a 0/1 vector.
class CutPartition {
 public:
  CutPartition() = default;
  explicit CutPartition(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_)
      if (b > 1) throw ParameterError("cut partition entries must be 0 or 1");
  }
  static CutPartition zeros(std::size_t n) { return CutPartition(std::vector<std::uint8_t>(n, 0)); }

  std::size_t size() const noexcept { return bits_.size(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  Count weight() const { return static_cast<Count>(std::count(bits_.begin(), bits_.end(), 1)); }

  CutPartition complement() const {
    std::vector<std::uint8_t> c(bits_.size());
    for (std::size_t i = 0; i < bits_.size(); ++i) c[i] = 1 - bits_[i];
    return CutPartition(std::move(c));
  }

  Clustering as_clustering() const { return Clustering::from_labels(std::span<const std::uint8_t>(bits_)); }

  friend bool operator==(const CutPartition&, const CutPartition&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Output alphabet {-1,0,1}^n: a cut plus an "assigned" mask (unassigned = -1).
struct PartialCut {
  CutPartition side;
  std::vector<std::uint8_t> assigned;
};

/// Per-case counts of the symmetric difference between two clusterings.
struct DeltaDecomposition {
  Count delta_total = 0;
  Count delta_a = 0;  ///< together in first, apart in second
  Count delta_b = 0;  ///< apart in first, together in second, edge
  Count delta_c = 0;  ///< apart in first, together in second, non-edge
  friend bool operator==(const DeltaDecomposition&, const DeltaDecomposition&) = default;
};

namespace detail {
inline void require_same_n(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    throw ShapeMismatch(std::string(what) + ": size mismatch (" + std::to_string(a) + " vs " +
                        std::to_string(b) + ")");
}
}  // namespace detail

/// Number of edges inside clusters.
inline Count intra_cluster_edges(const Graph& g, const Clustering& c) {
  detail::require_same_n(g.size(), c.size(), "intra_cluster_edges");
  Count intra = 0;
  const auto groups = c.clusters();
  for (const auto& members : groups) {
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) intra += g.adjacent(members[i], members[j]);
  }
  return intra;
}

/// Disagreements: non-edges inside clusters plus edges across clusters.
inline Count clustering_cost(const Graph& g, const Clustering& c) {
  detail::require_same_n(g.size(), c.size(), "clustering_cost");
  Count together_pairs = 0;
  for (auto s : c.cluster_sizes()) together_pairs += choose2(s);
  const Count intra = intra_cluster_edges(g, c);
  return (together_pairs - intra) + (g.num_edges() - intra);
}

inline Count clustering_agreements(const Graph& g, const Clustering& c) {
  return choose2(g.size()) - clustering_cost(g, c);
}

inline Count cut_size(const Graph& g, const CutPartition& p) {
  detail::require_same_n(g.size(), p.size(), "cut_size");
  Count cut = 0;
  for (Vertex u = 0; u < g.size(); ++u)
    for (Vertex v = u + 1; v < g.size(); ++v)
      if (p[u] != p[v] && g.adjacent(u, v)) ++cut;
  return cut;
}

inline Count bisection_size(const Graph& g, const CutPartition& p) {
  detail::require_same_n(g.size(), p.size(), "bisection_size");
  if (g.size() % 2 != 0) throw ParameterError("bisection requires an even vertex count");
  if (p.weight() * 2 != p.size()) throw ParameterError("bisection must be balanced");
  return cut_size(g, p);
}

inline DeltaDecomposition symmetric_difference(const Clustering& c, const Clustering& c2, const Graph& g) {
  detail::require_same_n(c.size(), c2.size(), "symmetric_difference");
  detail::require_same_n(c.size(), g.size(), "symmetric_difference");
  DeltaDecomposition d;
  const auto l1 = c.labels();
  const auto l2 = c2.labels();
  for (Vertex u = 0; u < c.size(); ++u) {
    for (Vertex v = u + 1; v < c.size(); ++v) {
      const bool t1 = l1[u] == l1[v];
      const bool t2 = l2[u] == l2[v];
      if (t1 && !t2) {
        ++d.delta_a;
      } else if (!t1 && t2) {
        if (g.adjacent(u, v)) ++d.delta_b;
        else ++d.delta_c;
      }
    }
  }
  d.delta_total = d.delta_a + d.delta_b + d.delta_c;
  return d;
}

inline Count hamming_distance(const CutPartition& p, const CutPartition& q) {
  detail::require_same_n(p.size(), q.size(), "hamming_distance");
  Count d = 0;
  for (std::size_t i = 0; i < p.size(); ++i) d += p[i] != q[i];
  return d;
}

/// Hamming distance up to complementing one side.
inline Count partition_distance(const CutPartition& p, const CutPartition& q) {
  const Count d = hamming_distance(p, q);
  return std::min<Count>(d, p.size() - d);
}

/// The two largest clusters as sides 0 and 1; everything else unassigned.
/// Equal-size clusters are ordered by their smallest vertex id.
inline PartialCut two_largest_clusters(const Clustering& c) {
  const auto groups = c.clusters();
  std::vector<std::size_t> order(groups.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (groups[a].size() != groups[b].size()) return groups[a].size() > groups[b].size();
    return groups[a].front() < groups[b].front();
  });
  std::vector<std::uint8_t> side(c.size(), 0), assigned(c.size(), 0);
  for (std::size_t rank = 0; rank < std::min<std::size_t>(2, order.size()); ++rank) {
    for (Vertex v : groups[order[rank]]) {
      side[v] = static_cast<std::uint8_t>(rank);
      assigned[v] = 1;
    }
  }
  return PartialCut{CutPartition(std::move(side)), std::move(assigned)};
}

/// Whether a {-1,0,1} output agrees with P on more than 90% of coordinates,
/// up to swapping sides.
inline bool approximates_partition(const CutPartition& p, const PartialCut& out) {
  detail::require_same_n(p.size(), out.side.size(), "approximates_partition");
  Count same = 0, flipped = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!out.assigned[i]) continue;
    if (out.side[i] == p[i]) ++same;
    else ++flipped;
  }
  const double bar = 0.9 * static_cast<double>(p.size());
  return static_cast<double>(same) > bar || static_cast<double>(flipped) > bar;
}

}  // namespace qclab
