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

// Query access layers. All access to a hidden instance goes through one of
// these objects, which count every query.

#pragma once

#include <algorithm>
#include <bit>
#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qclab/generators.hpp"
#include "qclab/graph.hpp"
#include "qclab/rng.hpp"

namespace qclab {

enum class QueryKind : std::uint8_t { Pair, Degree, Neighbor, Sample };

inline const char* to_string(QueryKind k) {
  switch (k) {
    case QueryKind::Pair: return "PAIR";
    case QueryKind::Degree: return "DEG";
    case QueryKind::Neighbor: return "NBR";
    case QueryKind::Sample: return "SAMPLE";
  }
  return "?";
}

/// One history entry. `answer` is the edge bit, degree, or neighbor id
/// (-1 for an absent neighbor).
struct QueryRecord {
  QueryKind kind;
  Vertex a = 0;
  Count b = 0;
  std::int64_t answer = 0;
  std::string side;
};

class QueryLedger {
 public:
  explicit QueryLedger(bool keep_history = false) : keep_history_(keep_history) {}

  Count pair_count() const noexcept { return pair_; }
  Count degree_count() const noexcept { return degree_; }
  Count neighbor_count() const noexcept { return neighbor_; }
  Count sample_count() const noexcept { return sample_; }
  Count total() const noexcept { return pair_ + degree_ + neighbor_ + sample_; }
  bool keeps_history() const noexcept { return keep_history_; }
  const std::vector<QueryRecord>& history() const noexcept { return history_; }

  void record(QueryKind kind, Vertex a, Count b, std::int64_t answer, std::string side = {}) {
    switch (kind) {
      case QueryKind::Pair: ++pair_; break;
      case QueryKind::Degree: ++degree_; break;
      case QueryKind::Neighbor: ++neighbor_; break;
      case QueryKind::Sample: ++sample_; break;
    }
    if (keep_history_) history_.push_back({kind, a, b, answer, std::move(side)});
  }

  /// Attach side information to the most recent record.
  void annotate_last(const std::string& side) {
    if (keep_history_ && !history_.empty()) history_.back().side = side;
  }

  /// Tab-separated: step, kind, arguments, answer, side-info.
  void write_history(std::ostream& os) const {
    for (std::size_t i = 0; i < history_.size(); ++i) {
      const auto& r = history_[i];
      os << (i + 1) << '\t' << to_string(r.kind) << '\t' << r.a;
      if (r.kind != QueryKind::Degree) os << ' ' << r.b;
      os << '\t';
      if (r.kind == QueryKind::Neighbor && r.answer < 0) os << "NONE";
      else os << r.answer;
      os << '\t' << r.side << '\n';
    }
  }

 private:
  bool keep_history_;
  Count pair_ = 0, degree_ = 0, neighbor_ = 0, sample_ = 0;
  std::vector<QueryRecord> history_;
};

/// Pair / degree / neighbor access to a fixed graph.
class GraphOracle {
 public:
  explicit GraphOracle(const Graph& g, bool keep_history = false) : g_(&g), ledger_(keep_history) {}

  std::size_t size() const noexcept { return g_->size(); }

  bool pair(Vertex u, Vertex v) {
    check(u);
    check(v);
    if (u == v) throw ParameterError("pair query needs distinct vertices");
    const bool e = g_->adjacent(u, v);
    ledger_.record(QueryKind::Pair, u, v, e);
    return e;
  }

  std::uint32_t degree(Vertex v) {
    check(v);
    const auto d = g_->degree(v);
    ledger_.record(QueryKind::Degree, v, 0, d);
    return d;
  }

  /// The i-th neighbor (1-based) in the fixed presentation order, if i <= deg(v).
  std::optional<Vertex> neighbor(Vertex v, Count i) {
    check(v);
    if (i < 1) throw ParameterError("neighbor index is 1-based");
    const auto list = g_->neighbors(v);
    std::optional<Vertex> out;
    if (i <= list.size()) out = list[i - 1];
    ledger_.record(QueryKind::Neighbor, v, i, out ? static_cast<std::int64_t>(*out) : -1);
    return out;
  }

  QueryLedger& ledger() noexcept { return ledger_; }
  const QueryLedger& ledger() const noexcept { return ledger_; }

 private:
  void check(Vertex v) const {
    if (v >= g_->size()) throw ParameterError("vertex " + std::to_string(v) + " out of range");
  }
  const Graph* g_;
  QueryLedger ledger_;
};

/// Thresholds of the relaxed general-graph model, as fractions.
struct RevealRules {
  double vertex_fraction_of_k = 0.001;   ///< release u once more than this * k queries involved u
  double cluster_fraction_of_n = 0.005;  ///< release C once more than this * n queries involved C
  double good_fraction_of_n = 0.001;     ///< history is good while revealed <= this * n
};

/// Everything a relaxed query discloses beyond the base answer.
struct RelaxedAnswer {
  std::int64_t answer = 0;
  std::vector<std::pair<Vertex, std::uint32_t>> labels;  ///< (vertex, cluster) releases
  std::vector<std::uint32_t> clusters;                    ///< whole-cluster releases
};

/// General-graph oracle over a clustered instance that also discloses
/// cluster labels. Per query the rules fire in this order: same-cluster
/// edge label (both endpoints), per-vertex threshold for the first then the
/// second endpoint, per-cluster threshold. All releases are bundled.
class RelaxedOracle {
 public:
  explicit RelaxedOracle(const ClusteredRegularInstance& inst, bool keep_history = false, RevealRules rules = {})
      : inst_(&inst),
        base_(inst.graph, keep_history),
        rules_(rules),
        revealed_(inst.graph.size(), 0),
        vertex_involvement_(inst.graph.size(), 0),
        cluster_involvement_(inst.k, 0),
        cluster_released_(inst.k, 0) {
    const auto n = static_cast<double>(inst.graph.size());
    vertex_threshold_ = rules_.vertex_fraction_of_k * static_cast<double>(inst.k);
    cluster_threshold_ = rules_.cluster_fraction_of_n * n;
    good_limit_ = rules_.good_fraction_of_n * n;
    block_.assign(inst.graph.size(), 0);
    for (std::uint32_t a = 0; a < inst.members.size(); ++a)
      for (Vertex x : inst.members[a]) block_[x] = a;
  }

  std::size_t size() const noexcept { return base_.size(); }

  RelaxedAnswer pair(Vertex u, Vertex v) {
    const bool e = base_.pair(u, v);
    RelaxedAnswer a;
    a.answer = e;
    after_query(u, v, e, a);
    return a;
  }

  RelaxedAnswer neighbor(Vertex v, Count i) {
    const auto w = base_.neighbor(v, i);
    RelaxedAnswer a;
    a.answer = w ? static_cast<std::int64_t>(*w) : -1;
    if (w) after_query(v, *w, true, a);
    else after_single(v, a);
    return a;
  }

  std::uint32_t degree(Vertex v) { return base_.degree(v); }

  Count revealed_count() const noexcept { return revealed_count_; }
  Count direct_revealed_count() const noexcept { return direct_revealed_; }
  bool is_revealed(Vertex v) const { return revealed_.at(v) != 0; }
  bool good() const noexcept { return static_cast<double>(revealed_count_) <= good_limit_; }
  Count vertex_involvement(Vertex v) const { return vertex_involvement_.at(v); }
  Count cluster_involvement(std::uint32_t alpha) const { return cluster_involvement_.at(alpha); }

  QueryLedger& ledger() noexcept { return base_.ledger(); }
  const QueryLedger& ledger() const noexcept { return base_.ledger(); }

 private:
  // Cluster index as sampled, i.e. the position in inst.members.
  std::uint32_t label(Vertex v) const { return block_[v]; }

  bool reveal(Vertex v) {
    if (revealed_[v]) return false;
    revealed_[v] = 1;
    ++revealed_count_;
    return true;
  }

  void release_vertex(Vertex v, RelaxedAnswer& a) {
    if (reveal(v)) a.labels.emplace_back(v, label(v));
  }

  void after_query(Vertex u, Vertex v, bool edge, RelaxedAnswer& a) {
    ++vertex_involvement_[u];
    ++vertex_involvement_[v];
    const auto cu = label(u), cv = label(v);
    ++cluster_involvement_[cu];
    if (cv != cu) ++cluster_involvement_[cv];

    if (edge && cu == cv) {
      for (Vertex x : {u, v}) {
        if (reveal(x)) {
          ++direct_revealed_;
          a.labels.emplace_back(x, cu);
        }
      }
    }
    for (Vertex x : {u, v})
      if (static_cast<double>(vertex_involvement_[x]) > vertex_threshold_) release_vertex(x, a);
    for (auto c : {cu, cv}) release_cluster_if_due(c, a);
    annotate(a);
  }

  void after_single(Vertex v, RelaxedAnswer& a) {
    ++vertex_involvement_[v];
    const auto c = label(v);
    ++cluster_involvement_[c];
    if (static_cast<double>(vertex_involvement_[v]) > vertex_threshold_) release_vertex(v, a);
    release_cluster_if_due(c, a);
    annotate(a);
  }

  void release_cluster_if_due(std::uint32_t c, RelaxedAnswer& a) {
    if (cluster_released_[c] || static_cast<double>(cluster_involvement_[c]) <= cluster_threshold_) return;
    cluster_released_[c] = 1;
    a.clusters.push_back(c);
    for (Vertex x : inst_->members[c]) reveal(x);
  }

  void annotate(const RelaxedAnswer& a) {
    if (!base_.ledger().keeps_history() || (a.labels.empty() && a.clusters.empty())) return;
    std::string s;
    for (const auto& [v, c] : a.labels) s += "L" + std::to_string(v) + ":" + std::to_string(c) + " ";
    for (auto c : a.clusters) s += "C" + std::to_string(c) + " ";
    s.pop_back();
    base_.ledger().annotate_last(s);
  }

  const ClusteredRegularInstance* inst_;
  GraphOracle base_;
  RevealRules rules_;
  double vertex_threshold_ = 0, cluster_threshold_ = 0, good_limit_ = 0;
  std::vector<std::uint8_t> revealed_;
  std::vector<Count> vertex_involvement_;
  std::vector<Count> cluster_involvement_;
  std::vector<std::uint8_t> cluster_released_;
  std::vector<std::uint32_t> block_;
  Count revealed_count_ = 0;
  Count direct_revealed_ = 0;
};

struct StreamSample {
  Vertex u = 0;
  Vertex v = 0;
  bool e = false;
};

enum class StreamMode : std::uint8_t { Yes, No, Hybrid };

/// Random-query stream over a hidden planted partition. Phases 1..l are
/// answered by independent planted graphs sharing one partition, later
/// phases by independent uniform graphs. Edge bits are a pure function of
/// (phase seed, pair), so repeated pairs within a phase are consistent and
/// nothing is stored.
class RandomQueryStream {
 public:
  using Sample = StreamSample;

  struct Config {
    std::size_t n = 0;
    double eps = 0;
    Count t = 0;
    StreamMode mode = StreamMode::Yes;
    std::size_t l = 0;  ///< planted phases (hybrid mode)
    std::size_t k = 1;  ///< number of phases (hybrid mode)
    std::uint64_t seed = 0;
  };

  explicit RandomQueryStream(const Config& cfg, bool keep_history = false) : cfg_(cfg), ledger_(keep_history) {
    if (cfg_.n < 2) throw ParameterError("stream needs n >= 2");
    rho_ = 10 * cfg_.eps;
    if (!(rho_ >= 0 && rho_ < 0.5)) throw ParameterError("stream needs 0 <= 10*eps < 1/2");
    switch (cfg_.mode) {
      case StreamMode::Yes: cfg_.k = 1; cfg_.l = 1; break;
      case StreamMode::No: cfg_.k = 1; cfg_.l = 0; break;
      case StreamMode::Hybrid:
        if (cfg_.k < 1 || cfg_.l > cfg_.k) throw ParameterError("hybrid stream needs 0 <= l <= k, k >= 1");
        if (cfg_.t % cfg_.k != 0) throw ParameterError("hybrid stream needs k to divide t");
        break;
    }
    phase_len_ = cfg_.t / cfg_.k;
    pairs_ = choose2(cfg_.n);
    partition_ = random_partition(cfg_.n, derive_seed(cfg_.seed, "partition"));
    pair_rng_.emplace(derive_seed(cfg_.seed, "pairs"));
  }

  Sample next() {
    if (served_ >= cfg_.t) throw StreamExhausted("stream of length " + std::to_string(cfg_.t) + " exhausted");
    const std::size_t phase = phase_len_ == 0 ? 0 : static_cast<std::size_t>(served_ / phase_len_);
    const Count idx = pair_rng_->below(pairs_);
    const Edge p = index_to_pair(cfg_.n, idx);
    ++served_;
    const Sample s{p.u, p.v, edge_bit(phase, p.u, p.v)};
    ledger_.record(QueryKind::Sample, s.u, s.v, s.e);
    return s;
  }

  /// The hidden bit of pair {u,v} in `phase` (harness use).
  bool edge_bit(std::size_t phase, Vertex u, Vertex v) const {
    const double x = hash_uniform(derive_seed(cfg_.seed, "edges", phase), pair_index(cfg_.n, u, v));
    const bool planted = phase < cfg_.l;
    const double p = planted ? (partition_[u] == partition_[v] ? 0.5 + rho_ : 0.5 - rho_) : 0.5;
    return x < p;
  }

  Count remaining() const noexcept { return cfg_.t - served_; }
  Count served() const noexcept { return served_; }
  const Config& config() const noexcept { return cfg_; }
  double rho() const noexcept { return rho_; }
  const CutPartition& hidden_partition() const noexcept { return partition_; }
  QueryLedger& ledger() noexcept { return ledger_; }
  const QueryLedger& ledger() const noexcept { return ledger_; }

 private:
  Config cfg_;
  double rho_ = 0;
  Count phase_len_ = 0;
  Count pairs_ = 0;
  Count served_ = 0;
  CutPartition partition_;
  std::optional<Rng> pair_rng_;
  QueryLedger ledger_;
};

struct IndexSample {
  Count index = 0;
  bool bit = false;
};

/// Same-vector problem: k phases of q queries, each a uniform index in [0,N)
/// with a bit. YES: bits read from one fixed Bern(p)^N vector. NO: from a
/// fresh vector per phase.
class SameVectorStream {
 public:
  using Sample = IndexSample;

  SameVectorStream(Count N, double p, Count k, Count q, bool yes, std::uint64_t seed)
      : N_(N), p_(p), k_(k), q_(q), yes_(yes), seed_(seed), rng_(derive_seed(seed, "indices")) {
    if (N_ < 1 || k_ < 1 || q_ < 1) throw ParameterError("same-vector stream needs N, k, q >= 1");
    if (!(p_ >= 0 && p_ <= 1)) throw ParameterError("same-vector stream needs p in [0,1]");
  }

  Sample next() {
    if (served_ >= k_ * q_) throw StreamExhausted("same-vector stream exhausted");
    const Count phase = served_ / q_;
    ++served_;
    const Count i = rng_.below(N_);
    return {i, bit(phase, i)};
  }

  bool bit(Count phase, Count index) const {
    const std::uint64_t s = yes_ ? derive_seed(seed_, "x") : derive_seed(seed_, "y", phase);
    return hash_uniform(s, index) < p_;
  }

  Count length() const noexcept { return k_ * q_; }
  Count served() const noexcept { return served_; }
  Count universe() const noexcept { return N_; }
  Count phases() const noexcept { return k_; }
  Count per_phase() const noexcept { return q_; }

 private:
  Count N_;
  double p_;
  Count k_, q_;
  bool yes_;
  std::uint64_t seed_;
  Rng rng_;
  Count served_ = 0;
};

template <class S>
concept SampleStream = requires(S s) {
  typename S::Sample;
  { s.next() } -> std::same_as<typename S::Sample>;
};

/// A streaming algorithm whose whole memory is its State. The step index is
/// a public clock and is not charged to the state.
template <class A, class Sample>
concept BoundedAlgorithm = requires(A a, typename A::State s, const Sample& x, Count i) {
  { a.init() } -> std::same_as<typename A::State>;
  { a.step(s, x, i) };
  { a.finish(s) };
  { a.state_bits(s) } -> std::convertible_to<Count>;
};

template <class Output>
struct BoundedRun {
  Output output;
  Count peak_bits = 0;
  Count steps = 0;
};

/// Feeds `steps` samples to `alg`, checking the serialized state after
/// every step against `budget_bits`.
template <SampleStream S, class A>
  requires BoundedAlgorithm<A, typename S::Sample>
auto run_bounded(A& alg, S& stream, Count budget_bits, Count steps) {
  using Output = decltype(alg.finish(std::declval<typename A::State&>()));
  auto state = alg.init();
  Count peak = alg.state_bits(state);
  if (peak > budget_bits) throw BudgetExceeded("initial state exceeds budget", 0);
  for (Count i = 0; i < steps; ++i) {
    const auto x = stream.next();
    alg.step(state, x, i);
    const Count bits = alg.state_bits(state);
    peak = std::max(peak, bits);
    if (bits > budget_bits)
      throw BudgetExceeded("state of " + std::to_string(bits) + " bits exceeds budget " +
                               std::to_string(budget_bits) + " at step " + std::to_string(i + 1),
                           i + 1);
  }
  return BoundedRun<Output>{alg.finish(state), peak, steps};
}

}  // namespace qclab
