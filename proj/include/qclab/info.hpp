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

// Exact information quantities (base 2) over small finite alphabets, and
// numeric checkers for the inequalities built on them.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qclab/common.hpp"

namespace qclab {

inline constexpr double kProbTolerance = 1e-12;

class FiniteDistribution {
 public:
  explicit FiniteDistribution(std::vector<double> probs) : p_(std::move(probs)) {
    if (p_.empty()) throw ParameterError("distribution needs a non-empty support");
    double sum = 0;
    for (double x : p_) {
      if (!(x >= 0)) throw ParameterError("negative or NaN probability");
      sum += x;
    }
    if (std::abs(sum - 1.0) > kProbTolerance) throw ParameterError("probabilities must sum to 1");
  }

  static FiniteDistribution uniform(std::size_t m) {
    return FiniteDistribution(std::vector<double>(m, 1.0 / static_cast<double>(m)));
  }
  static FiniteDistribution bernoulli(double p) { return FiniteDistribution({1 - p, p}); }

  std::size_t size() const noexcept { return p_.size(); }
  std::span<const double> probs() const noexcept { return p_; }
  double operator[](std::size_t i) const { return p_[i]; }

 private:
  std::vector<double> p_;
};

/// Probability matrix over X x Y, row-major (x major).
class JointDistribution {
 public:
  JointDistribution(std::size_t rows, std::size_t cols, std::vector<double> cells)
      : rows_(rows), cols_(cols), cells_(std::move(cells)) {
    if (rows_ == 0 || cols_ == 0 || cells_.size() != rows_ * cols_)
      throw ParameterError("joint distribution shape mismatch");
    if (cells_.size() > (std::size_t{1} << 16)) throw ParameterError("joint distribution exceeds 2^16 cells");
    double sum = 0;
    for (double x : cells_) {
      if (!(x >= 0)) throw ParameterError("negative or NaN probability");
      sum += x;
    }
    if (std::abs(sum - 1.0) > kProbTolerance) throw ParameterError("joint probabilities must sum to 1");
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double at(std::size_t x, std::size_t y) const { return cells_[x * cols_ + y]; }
  std::span<const double> cells() const noexcept { return cells_; }

  std::vector<double> marginal_x() const {
    std::vector<double> m(rows_, 0.0);
    for (std::size_t x = 0; x < rows_; ++x)
      for (std::size_t y = 0; y < cols_; ++y) m[x] += at(x, y);
    return m;
  }
  std::vector<double> marginal_y() const {
    std::vector<double> m(cols_, 0.0);
    for (std::size_t x = 0; x < rows_; ++x)
      for (std::size_t y = 0; y < cols_; ++y) m[y] += at(x, y);
    return m;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<double> cells_;
};

namespace detail {
inline double plogp_sum(std::span<const double> p) {
  double h = 0;
  for (double x : p)
    if (x > 0) h -= x * std::log2(x);
  return h;
}
}  // namespace detail

inline double entropy(const FiniteDistribution& d) { return std::max(0.0, detail::plogp_sum(d.probs())); }

inline double binary_entropy(double p) {
  if (p <= 0 || p >= 1) return 0.0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

inline double joint_entropy(const JointDistribution& j) { return detail::plogp_sum(j.cells()); }

/// H(X | Y).
inline double conditional_entropy(const JointDistribution& j) {
  const auto py = j.marginal_y();
  return std::max(0.0, joint_entropy(j) - detail::plogp_sum(py));
}

inline double mutual_information(const JointDistribution& j) {
  // Sum of p(x,y) log p(x,y)/(p(x)p(y)); non-negative up to rounding.
  const auto px = j.marginal_x();
  const auto py = j.marginal_y();
  double mi = 0;
  for (std::size_t x = 0; x < j.rows(); ++x) {
    for (std::size_t y = 0; y < j.cols(); ++y) {
      const double p = j.at(x, y);
      if (p > 0) mi += p * std::log2(p / (px[x] * py[y]));
    }
  }
  return std::max(0.0, mi);
}

/// D(Bern(p) || Bern(q)) in bits.
inline double kl_bernoulli(double p, double q) {
  if (!(p >= 0 && p <= 1) || !(q >= 0 && q <= 1)) throw ParameterError("kl_bernoulli: probabilities must be in [0,1]");
  auto term = [](double a, double b) -> double {
    if (a == 0) return 0.0;
    if (b == 0) throw std::domain_error("kl_bernoulli: divergence is infinite");
    return a * std::log2(a / b);
  };
  return std::max(0.0, term(p, q) + term(1 - p, 1 - q));
}

/// Largest KL(Bern(1/2 +- rho) || Bern(1/2 + eta)) / (25 rho^2) over the grid,
/// with eta restricted to [-rho, rho].
inline double kl_rho_bound_check(std::span<const double> rho_grid, std::span<const double> eta_grid) {
  double worst = 0;
  for (double rho : rho_grid) {
    if (!(rho > 0 && rho < 0.1)) throw ParameterError("kl_rho_bound_check requires 0 < rho < 0.1");
    const double bound = 25 * rho * rho;
    for (double eta : eta_grid) {
      if (std::abs(eta) > rho + 1e-15) continue;
      for (double sign : {+1.0, -1.0}) {
        worst = std::max(worst, kl_bernoulli(0.5 + sign * rho, 0.5 + eta) / bound);
      }
    }
  }
  return worst;
}

/// Symmetric, reflexive relation on an alphabet: approx[x][x'] says x' is an
/// acceptable approximation of x.
class ApproxRelation {
 public:
  ApproxRelation(std::size_t size, std::vector<std::uint8_t> matrix) : n_(size), m_(std::move(matrix)) {
    if (m_.size() != n_ * n_) throw ParameterError("approx relation shape mismatch");
    for (std::size_t a = 0; a < n_; ++a) {
      if (!m_[a * n_ + a]) throw ParameterError("approx relation must be reflexive");
      for (std::size_t b = 0; b < n_; ++b)
        if ((m_[a * n_ + b] != 0) != (m_[b * n_ + a] != 0)) throw ParameterError("approx relation must be symmetric");
    }
  }
  static ApproxRelation identity(std::size_t size) {
    std::vector<std::uint8_t> m(size * size, 0);
    for (std::size_t i = 0; i < size; ++i) m[i * size + i] = 1;
    return ApproxRelation(size, std::move(m));
  }
  std::size_t size() const noexcept { return n_; }
  bool contains(std::size_t x, std::size_t approx) const { return m_[x * n_ + approx] != 0; }

 private:
  std::size_t n_;
  std::vector<std::uint8_t> m_;
};

struct FanoReport {
  double p_error = 0;
  double h_x_given_y = 0;
  double lhs_full = 0;      ///< p_e log|X| + (1-p_e) max log|A_x| + H(p_e)
  double lhs_support = 0;   ///< same with |X| -> |supp X| and A_x -> A_x n supp X
  double slack_full() const { return lhs_full - h_x_given_y; }
  double slack_support() const { return lhs_support - h_x_given_y; }
};

/// Evaluates both forms of the approximation-set Fano inequality for the
/// chain X -> Y -> est(Y).
inline FanoReport generalized_fano_check(const JointDistribution& j, const ApproxRelation& approx,
                                         std::span<const std::size_t> estimator) {
  if (approx.size() != j.rows()) throw ShapeMismatch("approx relation must be over the X alphabet");
  if (estimator.size() != j.cols()) throw ShapeMismatch("estimator must be defined on every y");
  for (auto e : estimator)
    if (e >= j.rows()) throw ParameterError("estimator maps outside the X alphabet");

  FanoReport r;
  for (std::size_t x = 0; x < j.rows(); ++x)
    for (std::size_t y = 0; y < j.cols(); ++y)
      if (!approx.contains(x, estimator[y])) r.p_error += j.at(x, y);
  r.p_error = std::clamp(r.p_error, 0.0, 1.0);
  r.h_x_given_y = conditional_entropy(j);

  const auto px = j.marginal_x();
  std::size_t support = 0;
  for (double p : px) support += p > 0;

  std::size_t max_a = 0, max_a_support = 0;
  for (std::size_t x = 0; x < j.rows(); ++x) {
    std::size_t a = 0, as = 0;
    for (std::size_t x2 = 0; x2 < j.rows(); ++x2) {
      if (approx.contains(x, x2)) {
        ++a;
        if (px[x2] > 0) ++as;
      }
    }
    max_a = std::max(max_a, a);
    max_a_support = std::max(max_a_support, as);
  }
  auto lg = [](std::size_t k) { return k == 0 ? 0.0 : std::log2(static_cast<double>(k)); };
  const double hp = binary_entropy(r.p_error);
  r.lhs_full = r.p_error * lg(j.rows()) + (1 - r.p_error) * lg(max_a) + hp;
  r.lhs_support = r.p_error * lg(support) + (1 - r.p_error) * lg(max_a_support) + hp;
  return r;
}

/// 2 exp(-delta^2/(2+delta) * p n), clamped to [0,1].
inline double adaptive_chernoff_bound(double p, double delta, Count n) {
  if (!(p > 0 && p < 1)) throw ParameterError("adaptive_chernoff_bound requires p in (0,1)");
  if (!(delta > 0)) throw ParameterError("adaptive_chernoff_bound requires delta > 0");
  const double v = 2.0 * std::exp(-(delta * delta) / (2.0 + delta) * p * static_cast<double>(n));
  return std::clamp(v, 0.0, 1.0);
}

/// Shearer's inequality on m binary variables: given the joint law as a table
/// of 2^m probabilities (bit i of the index is X_i) and a family of subsets
/// (bitmasks) covering every coordinate at least `cover` times, returns
/// sum_S H(X_S) - cover * H(X_1..X_m), which is non-negative.
inline double shearer_slack(std::span<const double> joint, unsigned m, std::span<const std::uint32_t> family,
                            unsigned cover) {
  if (m > 16 || joint.size() != (std::size_t{1} << m)) throw ParameterError("shearer_slack: table must have 2^m cells, m <= 16");
  for (unsigned i = 0; i < m; ++i) {
    unsigned c = 0;
    for (auto s : family) c += (s >> i) & 1U;
    if (c < cover) throw ParameterError("family does not cover every coordinate enough times");
  }
  auto marginal_entropy = [&](std::uint32_t mask) {
    std::vector<double> marg(std::size_t{1} << m, 0.0);
    for (std::size_t z = 0; z < joint.size(); ++z) marg[z & mask] += joint[z];
    return detail::plogp_sum(marg);
  };
  double sum = 0;
  for (auto s : family) sum += marginal_entropy(s);
  return sum - cover * detail::plogp_sum(joint);
}

}  // namespace qclab
