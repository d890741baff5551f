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
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "qclab/common.hpp"

namespace qclab {

struct Interval {
  double lo = 0;
  double hi = 0;
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for a binomial proportion.
inline Interval wilson_interval(Count successes, Count trials, double z = kZ95) {
  if (successes > trials) throw ParameterError("successes exceed trials");
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1 + z2 / n;
  const double center = (p + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

struct AdvantageSummary {
  Count yes_trials = 0, yes_correct = 0;
  Count no_trials = 0, no_correct = 0;

  double accuracy_yes() const { return yes_trials ? static_cast<double>(yes_correct) / static_cast<double>(yes_trials) : 0; }
  double accuracy_no() const { return no_trials ? static_cast<double>(no_correct) / static_cast<double>(no_trials) : 0; }
  /// Pr[correct | YES] + Pr[correct | NO] - 1.
  double advantage() const { return accuracy_yes() + accuracy_no() - 1; }
  Interval ci_yes() const { return wilson_interval(yes_correct, yes_trials); }
  Interval ci_no() const { return wilson_interval(no_correct, no_trials); }
  /// Sum of the two per-case intervals, shifted by -1.
  Interval ci_advantage() const {
    const auto a = ci_yes(), b = ci_no();
    return {a.lo + b.lo - 1, a.hi + b.hi - 1};
  }
};

struct MeanStderr {
  double mean = 0;
  double stderr_ = 0;
};

inline MeanStderr mean_stderr(std::span<const double> xs) {
  MeanStderr r;
  if (xs.empty()) return r;
  double s = 0;
  for (double x : xs) s += x;
  r.mean = s / static_cast<double>(xs.size());
  if (xs.size() < 2) return r;
  double ss = 0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  r.stderr_ = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  return r;
}

/// Worker count: QCLAB_THREADS if set, else the hardware concurrency.
inline unsigned worker_count() {
  unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QCLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

/// Runs fn(i) for i in [0, count). Results must be written by index, which
/// keeps aggregation independent of scheduling. The first exception thrown
/// by any worker is rethrown.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, unsigned workers = worker_count()) {
  workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1U, workers), std::max<std::size_t>(1, count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace qclab
