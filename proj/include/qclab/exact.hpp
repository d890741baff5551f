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

// Exhaustive ground truth for small instances: optimal clusterings and cuts,
// the Walsh-Hadamard transform on {0,1}^n, and the exact law of noisy
// parities Mx + noise.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "qclab/generators.hpp"
#include "qclab/graph.hpp"
#include "qclab/rng.hpp"

namespace qclab {

inline constexpr std::size_t kMaxBruteForceCC = 13;
inline constexpr std::size_t kMaxBruteForceCut = 24;

enum class Problem : std::uint8_t { CorrelationClustering, MaxCut, MinBisection };

struct BruteForceResult {
  Count value = 0;
  Clustering clustering;   ///< CC witness
  CutPartition partition;  ///< cut witness (vertex 0 on side 0)
};

namespace detail {

inline std::vector<std::uint32_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint32_t> rows(g.size(), 0);
  for (Vertex u = 0; u < g.size(); ++u)
    for (Vertex v = 0; v < g.size(); ++v)
      if (g.adjacent(u, v)) rows[u] |= 1U << v;
  return rows;
}

struct RgsSearch {
  std::size_t n;
  std::vector<std::uint32_t> rows;
  std::vector<std::uint32_t> members;  // bitmask per cluster
  std::vector<std::uint32_t> label;
  std::vector<std::uint32_t> best_label;
  Count best = std::numeric_limits<Count>::max();

  void run(std::size_t v, std::uint32_t used, Count partial) {
    if (partial >= best) return;
    if (v == n) {
      best = partial;
      best_label = label;
      return;
    }
    const std::uint32_t earlier = (1U << v) - 1;
    const auto deg_earlier = static_cast<Count>(std::popcount(rows[v] & earlier));
    for (std::uint32_t c = 0; c <= used && c < n; ++c) {
      const std::uint32_t in_c = members[c];
      const auto adj = static_cast<Count>(std::popcount(rows[v] & in_c));
      const auto sz = static_cast<Count>(std::popcount(in_c));
      const Count add = (sz - adj) + (deg_earlier - adj);
      label[v] = c;
      members[c] |= 1U << v;
      run(v + 1, c == used ? used + 1 : used, partial + add);
      members[c] &= ~(1U << v);
    }
  }
};

inline std::uint32_t reverse_low_bits(std::uint32_t x, std::size_t n) {
  std::uint32_t r = 0;
  for (std::size_t i = 0; i < n; ++i) r |= ((x >> i) & 1U) << (n - 1 - i);
  return r;
}

inline BruteForceResult brute_force_cut(const Graph& g, bool maximize, bool balanced) {
  const std::size_t n = g.size();
  if (n > kMaxBruteForceCut) throw ParameterError("cut brute force supports n <= 24");
  if (balanced && n % 2 != 0) throw ParameterError("bisection requires an even vertex count");
  BruteForceResult out;
  if (n == 0) {
    out.partition = CutPartition::zeros(0);
    return out;
  }
  const auto rows = adjacency_masks(g);
  // Vertex 0 stays on side 0; Gray code over vertices 1..n-1.
  std::uint32_t mask = 0;
  Count cut = 0;
  bool have = false;
  Count best = 0;
  std::uint32_t best_key = 0, best_mask = 0;
  const std::uint64_t total = std::uint64_t{1} << (n - 1);
  for (std::uint64_t step = 0; step < total; ++step) {
    if (step > 0) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(step)) + 1;
      const auto same = std::popcount(rows[bit] & (((mask >> bit) & 1U) ? mask : ~mask));
      const auto deg = std::popcount(rows[bit]);
      // Flipping `bit`: same-side neighbors become cut, cut neighbors uncut.
      cut = cut + static_cast<Count>(same) - static_cast<Count>(deg - same);
      mask ^= 1U << bit;
    }
    if (balanced && static_cast<std::size_t>(std::popcount(mask)) * 2 != n) continue;
    const std::uint32_t key = reverse_low_bits(mask, n);
    const bool better = !have || (maximize ? cut > best : cut < best) || (cut == best && key < best_key);
    if (better) {
      have = true;
      best = cut;
      best_key = key;
      best_mask = mask;
    }
  }
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = (best_mask >> i) & 1U;
  out.value = best;
  out.partition = CutPartition(std::move(bits));
  return out;
}

}  // namespace detail

/// Optimal correlation clustering by restricted-growth-string enumeration
/// with branch and bound. The witness is the lexicographically least
/// optimal canonical labeling.
inline BruteForceResult brute_force_cc(const Graph& g) {
  const std::size_t n = g.size();
  if (n > kMaxBruteForceCC) throw ParameterError("correlation clustering brute force supports n <= 13");
  detail::RgsSearch s{n, detail::adjacency_masks(g), std::vector<std::uint32_t>(n + 1, 0),
                      std::vector<std::uint32_t>(n, 0), {}, std::numeric_limits<Count>::max()};
  s.run(0, 0, 0);
  BruteForceResult out;
  out.value = n == 0 ? 0 : s.best;
  out.clustering = Clustering::from_dense_labels(n == 0 ? std::vector<std::uint32_t>{} : s.best_label);
  return out;
}

inline BruteForceResult brute_force_optimum(Problem problem, const Graph& g) {
  switch (problem) {
    case Problem::CorrelationClustering: return brute_force_cc(g);
    case Problem::MaxCut: return detail::brute_force_cut(g, true, false);
    case Problem::MinBisection: return detail::brute_force_cut(g, false, true);
  }
  throw ParameterError("unknown problem");
}

/// Real function on {0,1}^n; index bit i is coordinate i.
class BooleanFunctionTable {
 public:
  BooleanFunctionTable(unsigned n, std::vector<double> values) : n_(n), v_(std::move(values)) {
    if (n_ > 20) throw ParameterError("boolean function tables support n <= 20");
    if (v_.size() != (std::size_t{1} << n_)) throw ShapeMismatch("table length must be 2^n");
  }
  static BooleanFunctionTable indicator(unsigned n, std::span<const std::uint32_t> members) {
    std::vector<double> v(std::size_t{1} << n, 0.0);
    for (auto x : members) {
      if (x >= v.size()) throw ParameterError("set member outside {0,1}^n");
      v[x] = 1.0;
    }
    return BooleanFunctionTable(n, std::move(v));
  }
  unsigned n() const noexcept { return n_; }
  std::span<const double> values() const noexcept { return v_; }
  double operator[](std::size_t x) const { return v_[x]; }
  double support_size() const {
    double s = 0;
    for (double x : v_) s += x != 0;
    return s;
  }

 private:
  unsigned n_;
  std::vector<double> v_;
};

namespace detail {
inline void walsh_hadamard_inplace(std::vector<double>& a) {
  for (std::size_t h = 1; h < a.size(); h <<= 1) {
    for (std::size_t i = 0; i < a.size(); i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double x = a[j], y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
    }
  }
}
}  // namespace detail

/// fhat(v) = 2^-n sum_x f(x) (-1)^{x.v}.
inline std::vector<double> fourier_transform(const BooleanFunctionTable& f) {
  std::vector<double> a(f.values().begin(), f.values().end());
  detail::walsh_hadamard_inplace(a);
  const double scale = std::ldexp(1.0, -static_cast<int>(f.n()));
  for (double& x : a) x *= scale;
  return a;
}

/// f(x) = sum_v fhat(v) (-1)^{x.v}.
inline BooleanFunctionTable inverse_fourier_transform(unsigned n, std::vector<double> coeffs) {
  if (coeffs.size() != (std::size_t{1} << n)) throw ShapeMismatch("coefficient table length must be 2^n");
  detail::walsh_hadamard_inplace(coeffs);
  return BooleanFunctionTable(n, std::move(coeffs));
}

/// Edge-vertex incidence matrix with distinct rows.
class IncidenceMatrix {
 public:
  IncidenceMatrix(std::size_t n, std::vector<Edge> rows) : n_(n), rows_(std::move(rows)) {
    if (n_ > 64) throw ParameterError("incidence matrices support n <= 64");
    std::set<Edge> seen;
    for (auto& e : rows_) {
      if (e.u == e.v || e.u >= n_ || e.v >= n_) throw ParameterError("invalid incidence row");
      if (e.u > e.v) std::swap(e.u, e.v);
      if (!seen.insert(e).second) throw ParameterError("incidence matrix rows must be distinct");
    }
  }
  static IncidenceMatrix from_graph(const Graph& g) { return IncidenceMatrix(g.size(), g.edges()); }

  std::size_t n() const noexcept { return n_; }
  std::size_t r() const noexcept { return rows_.size(); }
  std::span<const Edge> rows() const noexcept { return rows_; }

  /// Mx over GF(2), bit i of the result is row i.
  std::uint64_t apply(std::uint64_t x) const {
    std::uint64_t z = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      z |= (((x >> rows_[i].u) ^ (x >> rows_[i].v)) & 1ULL) << i;
    return z;
  }
  /// M^T s over GF(2): the odd-degree vertex set of the selected rows.
  std::uint64_t transpose_apply(std::uint64_t s) const {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if ((s >> i) & 1ULL) v ^= row_mask(i);
    return v;
  }
  std::uint64_t row_mask(std::size_t i) const { return (1ULL << rows_[i].u) | (1ULL << rows_[i].v); }

 private:
  std::size_t n_;
  std::vector<Edge> rows_;
};

struct PmResult {
  std::vector<double> pm;  ///< law of Mx + noise over {0,1}^r, x uniform on A
  double tvd = 0;          ///< total variation distance to uniform
};

/// Exact law of Mx + D for x uniform on the support of A, where the noise D
/// has independent coordinates equal to 1 with probability 1/2 + rho.
inline PmResult exact_pm(const BooleanFunctionTable& a, const IncidenceMatrix& m, double rho) {
  if (m.r() > 16) throw ParameterError("exact_pm supports r <= 16");
  if (m.n() != a.n()) throw ShapeMismatch("incidence matrix and table disagree on n");
  if (!(rho >= -0.5 && rho <= 0.5)) throw ParameterError("rho must be in [-1/2, 1/2]");
  const std::size_t r = m.r();
  std::vector<double> h(std::size_t{1} << r, 0.0);
  double size = 0;
  for (std::size_t x = 0; x < a.values().size(); ++x) {
    if (a[x] == 0) continue;
    h[m.apply(x)] += 1.0;
    size += 1.0;
  }
  if (size == 0) throw ParameterError("exact_pm needs a non-empty set A");
  const double flip = 0.5 + rho, keep = 0.5 - rho;
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t b = std::size_t{1} << i;
    for (std::size_t z = 0; z < h.size(); ++z) {
      if (z & b) continue;
      const double lo = h[z], hi = h[z | b];
      h[z] = keep * lo + flip * hi;
      h[z | b] = keep * hi + flip * lo;
    }
  }
  PmResult out;
  const double u = std::ldexp(1.0, -static_cast<int>(r));
  for (double& x : h) {
    x /= size;
    out.tvd += std::abs(x - u);
  }
  out.tvd *= 0.5;
  out.pm = std::move(h);
  return out;
}

/// phat(s) = 2^-r sum_z p(z) (-1)^{z.s}.
inline std::vector<double> pm_fourier(const PmResult& p) {
  const auto r = static_cast<unsigned>(std::countr_zero(p.pm.size()));
  return fourier_transform(BooleanFunctionTable(r, p.pm));
}

/// Closed form 2^n fhat(M^T s) / (|A| 2^r) (-2 rho)^{|s|} for one s.
inline double pm_fourier_closed_form(std::span<const double> fhat, double a_size, const IncidenceMatrix& m,
                                     double rho, std::uint64_t s) {
  const double scale = std::ldexp(1.0, static_cast<int>(m.n()) - static_cast<int>(m.r())) / a_size;
  return scale * fhat[m.transpose_apply(s)] * std::pow(-2.0 * rho, std::popcount(s));
}

/// Largest |phat(s) - closed form| over all s.
inline double pm_fourier_identity_check(const BooleanFunctionTable& a, const IncidenceMatrix& m, double rho) {
  const auto direct = pm_fourier(exact_pm(a, m, rho));
  const auto fhat = fourier_transform(a);
  const double size = a.support_size();
  double worst = 0;
  for (std::uint64_t s = 0; s < direct.size(); ++s)
    worst = std::max(worst, std::abs(direct[s] - pm_fourier_closed_form(fhat, size, m, rho, s)));
  return worst;
}

/// 2^{2r} sum_{s != 0} phat(s)^2 - tvd^2; non-negative.
inline double tvd_cauchy_schwarz_slack(const BooleanFunctionTable& a, const IncidenceMatrix& m, double rho) {
  const auto p = exact_pm(a, m, rho);
  const auto ph = pm_fourier(p);
  double mass = 0;
  for (std::size_t s = 1; s < ph.size(); ++s) mass += ph[s] * ph[s];
  return std::ldexp(mass, 2 * static_cast<int>(m.r())) - p.tvd * p.tvd;
}

/// sum over nonzero s in {0,1}^r with M^T s = v of (2 rho)^{2|s|}.
inline double cycle_weight_sum(const IncidenceMatrix& m, std::uint64_t v, double rho) {
  if (m.r() > 20) throw ParameterError("cycle_weight_sum supports r <= 20");
  const double w = 4.0 * rho * rho;
  const std::uint64_t total = std::uint64_t{1} << m.r();
  std::uint64_t s = 0, image = 0;
  double sum = 0;
  for (std::uint64_t step = 1; step < total; ++step) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(step));
    s ^= std::uint64_t{1} << bit;
    image ^= m.row_mask(bit);
    if (image == v) sum += std::pow(w, std::popcount(s));
  }
  return sum;
}

struct CountingRow {
  unsigned l = 0;
  double mean = 0;
  double stderr_ = 0;
  double max_value = 0;
  double bound = 0;
  bool pass = false;
};

/// Closed-form bound on the expected cycle weight sum for |v| = l.
inline double counting_bound(std::size_t n, double alpha, unsigned l) {
  if (l == 0) return 1e10 * alpha * alpha * alpha;
  return std::pow(1e4 * alpha / static_cast<double>(n), 0.5 * l);
}

/// Monte Carlo over M drawn as r' = alpha n / eps^2 uniform pairs (with
/// repetition, deduplicated) and v uniform of weight l, with rho = 10 eps.
inline std::vector<CountingRow> counting_bound_check(std::size_t n, double eps, double alpha, Count trials,
                                                     unsigned l_max, std::uint64_t seed) {
  if (n < 2 || n > 64) throw ParameterError("counting check supports 2 <= n <= 64");
  if (!(eps > 0 && 10 * eps <= 0.5)) throw ParameterError("counting check needs 0 < 10 eps <= 1/2");
  if (!(alpha >= eps * eps / static_cast<double>(n) && alpha <= 1e-4))
    throw ParameterError("counting check needs eps^2/n <= alpha <= 1e-4");
  const auto r_prime = static_cast<Count>(std::llround(alpha * static_cast<double>(n) / (eps * eps)));
  if (r_prime > 20) throw ParameterError("counting check needs r' <= 20");
  if (l_max > n) throw ParameterError("l_max exceeds n");
  if (trials < 2) throw ParameterError("counting check needs at least 2 trials");
  const double rho = 10 * eps;

  std::vector<double> sum(l_max + 1, 0.0), sum_sq(l_max + 1, 0.0), mx(l_max + 1, 0.0);
  std::vector<Vertex> verts(n);
  for (Count t = 0; t < trials; ++t) {
    const auto sample = gen_union_multiset(n, r_prime, derive_seed(seed, "matrix", t));
    const IncidenceMatrix m = IncidenceMatrix::from_graph(sample.graph);
    Rng rng(derive_seed(seed, "vector", t));
    for (unsigned l = 0; l <= l_max; ++l) {
      std::iota(verts.begin(), verts.end(), 0U);
      std::uint64_t v = 0;
      for (unsigned i = 0; i < l; ++i) {
        const std::size_t j = i + rng.below(n - i);
        std::swap(verts[i], verts[j]);
        v |= std::uint64_t{1} << verts[i];
      }
      const double x = cycle_weight_sum(m, v, rho);
      sum[l] += x;
      sum_sq[l] += x * x;
      mx[l] = std::max(mx[l], x);
    }
  }
  std::vector<CountingRow> rows;
  const auto T = static_cast<double>(trials);
  for (unsigned l = 0; l <= l_max; ++l) {
    CountingRow row;
    row.l = l;
    row.mean = sum[l] / T;
    const double var = std::max(0.0, (sum_sq[l] - T * row.mean * row.mean) / (T - 1));
    row.stderr_ = std::sqrt(var / T);
    row.max_value = mx[l];
    row.bound = counting_bound(n, alpha, l);
    row.pass = row.mean <= row.bound + 3 * row.stderr_;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qclab
