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

// Config-driven trial runner.
//
// Config files are INI. Comments start with ';' and must sit on their own
// line. name is one of threshold, estimate, pdbhp, same-vector, coin.
//
//   [experiment]
//   name   = threshold
//   trials = 200
//   seed   = 1
//   out    = results.csv
//
//   [params]
//   n   = 512
//   eps = 0.04
//
//   ; optional, exactly one parameter
//   [sweep]
//   param  = c
//   values = 0, 64, 128
//
// Every trial derives its seed from (master seed, trial index) and runs the
// YES and the NO case once each, so output does not depend on scheduling.

#pragma once

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qclab/algorithms.hpp"
#include "qclab/generators.hpp"
#include "qclab/oracles.hpp"
#include "qclab/stats.hpp"

namespace qclab {

/// Invalid configuration; what() lists every offending field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ParamSpec {
  std::string name;
  double default_value;
  double min;
  double max;
  bool integer;
  std::string help;
};

inline const std::vector<ParamSpec>& experiment_params(const std::string& name) {
  static const std::map<std::string, std::vector<ParamSpec>> table = {
      {"threshold",
       {{"n", 512, 2, 1e5, true, "vertex count"},
        {"eps", 0.04, 1e-6, 0.05 - 1e-12, false, "accuracy; planted correlation is 10*eps"},
        {"budget", 0, 0, 1e12, true, "stream samples; 0 means 4n/eps^2"},
        {"c0", 1, 0, 1e6, false, "estimate budget constant"},
        {"c1", 4, 1e-6, 1e6, false, "estimate sample-size constant"}}},
      {"estimate",
       {{"n", 200, 2, 2e4, true, "vertex count"},
        {"eps", 0.04, 1e-6, 0.05 - 1e-12, false, "accuracy; planted correlation is 10*eps"},
        {"budget", 0, 0, 1e12, true, "pair queries; 0 means c0 * s^2"},
        {"c0", 1, 0, 1e6, false, "estimate budget constant"},
        {"c1", 4, 1e-6, 1e6, false, "estimate sample-size constant"}}},
      {"pdbhp",
       {{"n", 4096, 2, 1e6, true, "vertex count"},
        {"rho", 0.4, 1e-6, 0.5, false, "noise bias"},
        {"alpha", 0.25, 1e-9, 1e6, false, "edge density: r' = alpha n / eps^2, eps = rho/10"},
        {"c", -1, -1, 1e6, true, "message bits; -1 means ceil(sqrt(n/alpha))"}}},
      {"same-vector",
       {{"N", 10000, 1, 1e12, true, "index universe"},
        {"p", 0.5, 0, 1, false, "bit bias"},
        {"k", 8, 2, 1e6, true, "phases"},
        {"q", 0, 0, 1e9, true, "queries per phase; 0 means ceil(sqrt(N))"},
        {"s", 16, 0, 1e9, true, "stored records"},
        {"m0", 5, 0, 1e6, true, "matches needed for YES"}}},
      {"coin", {}},
  };
  const auto it = table.find(name);
  if (it == table.end()) throw ConfigError("experiment.name: unknown experiment '" + name + "'");
  return it->second;
}

struct ExperimentConfig {
  std::string name = "threshold";
  Count trials = 100;
  std::uint64_t seed = 1;
  std::string out;
  std::map<std::string, double> params;
  std::optional<std::string> sweep_param;
  std::vector<double> sweep_values;

  double get(const std::string& key) const { return params.at(key); }
};

inline ExperimentConfig default_config(const std::string& name) {
  ExperimentConfig cfg;
  cfg.name = name;
  for (const auto& p : experiment_params(name)) cfg.params[p.name] = p.default_value;
  return cfg;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::optional<double> parse_number(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  std::size_t pos = 0;
  try {
    const double v = std::stod(t, &pos);
    if (pos != t.size()) return std::nullopt;
    return v;
  } catch (...) {
    return std::nullopt;
  }
}

// Shortest text that parses back to the same double.
inline std::string format_number(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

inline void check_param(const ParamSpec& spec, double v, std::vector<std::string>& errors, const std::string& where) {
  if (!(v >= spec.min && v <= spec.max))
    errors.push_back(where + ": " + std::to_string(v) + " outside [" + std::to_string(spec.min) + ", " +
                     std::to_string(spec.max) + "]");
  else if (spec.integer && v != std::floor(v))
    errors.push_back(where + ": must be an integer");
}

}  // namespace detail

/// Parses and validates a config; collects all field errors before throwing.
inline ExperimentConfig parse_config(std::istream& is) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  std::vector<std::string> errors;
  for (const auto& [section, _] : tree)
    if (section != "experiment" && section != "params" && section != "sweep")
      errors.push_back(section + ": unknown section");

  const std::string name = detail::trim(tree.get<std::string>("experiment.name", "threshold"));
  ExperimentConfig cfg;
  try {
    cfg = default_config(name);
  } catch (const ConfigError& e) {
    throw ConfigError(e.what());
  }
  if (auto ex = tree.get_child_optional("experiment")) {
    for (const auto& [key, node] : *ex) {
      const std::string v = node.get_value<std::string>();
      if (key == "name") continue;
      if (key == "out") {
        cfg.out = detail::trim(v);
      } else if (key == "trials") {
        const auto x = detail::parse_number(v);
        if (!x || *x < 1 || *x != std::floor(*x)) errors.push_back("experiment.trials: must be an integer >= 1");
        else cfg.trials = static_cast<Count>(*x);
      } else if (key == "seed") {
        try {
          const std::string t = detail::trim(v);
          std::size_t pos = 0;
          // stoull accepts a sign and wraps negatives.
          if (t.empty() || !std::isdigit(static_cast<unsigned char>(t[0]))) throw std::invalid_argument("seed");
          cfg.seed = std::stoull(t, &pos);
          if (pos != t.size()) throw std::invalid_argument("seed");
        } catch (...) {
          errors.push_back("experiment.seed: must be an unsigned 64-bit integer");
        }
      } else {
        errors.push_back("experiment." + key + ": unknown field");
      }
    }
  }
  const auto& specs = experiment_params(name);
  auto find_spec = [&](const std::string& key) -> const ParamSpec* {
    for (const auto& s : specs)
      if (s.name == key) return &s;
    return nullptr;
  };
  if (auto ps = tree.get_child_optional("params")) {
    for (const auto& [key, node] : *ps) {
      const ParamSpec* spec = find_spec(key);
      if (!spec) {
        errors.push_back("params." + key + ": not a parameter of '" + name + "'");
        continue;
      }
      const auto x = detail::parse_number(node.get_value<std::string>());
      if (!x) {
        errors.push_back("params." + key + ": not a number");
        continue;
      }
      detail::check_param(*spec, *x, errors, "params." + key);
      cfg.params[key] = *x;
    }
  }
  if (auto sw = tree.get_child_optional("sweep")) {
    for (const auto& [key, node] : *sw)
      if (key != "param" && key != "values") errors.push_back("sweep." + key + ": unknown field");
    const std::string param = detail::trim(sw->get<std::string>("param", ""));
    if (param.find_first_of(", ") != std::string::npos) {
      errors.push_back("sweep.param: exactly one parameter may be swept");
    } else if (param.empty()) {
      errors.push_back("sweep.param: missing");
    } else if (!find_spec(param)) {
      errors.push_back("sweep.param: '" + param + "' is not a parameter of '" + name + "'");
    } else {
      cfg.sweep_param = param;
      std::stringstream ss(sw->get<std::string>("values", ""));
      std::string item;
      while (std::getline(ss, item, ',')) {
        const auto x = detail::parse_number(item);
        if (!x) {
          errors.push_back("sweep.values: '" + detail::trim(item) + "' is not a number");
          continue;
        }
        detail::check_param(*find_spec(param), *x, errors, "sweep.values");
        cfg.sweep_values.push_back(*x);
      }
      if (cfg.sweep_values.empty()) errors.push_back("sweep.values: empty grid");
    }
  }
  if (!errors.empty()) {
    std::string msg = "invalid config:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  return cfg;
}

/// Applies "key=value" to cfg.params with the same validation as the file.
inline void set_param(ExperimentConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("--param: expected key=value, got '" + assignment + "'");
  const std::string key = detail::trim(assignment.substr(0, eq));
  for (const auto& spec : experiment_params(cfg.name)) {
    if (spec.name != key) continue;
    const auto x = detail::parse_number(assignment.substr(eq + 1));
    if (!x) throw ConfigError("params." + key + ": not a number");
    std::vector<std::string> errors;
    detail::check_param(spec, *x, errors, "params." + key);
    if (!errors.empty()) throw ConfigError(errors.front());
    cfg.params[key] = *x;
    return;
  }
  throw ConfigError("params." + key + ": not a parameter of '" + cfg.name + "'");
}

/// The config in file syntax, including every default.
inline void write_config(std::ostream& os, const ExperimentConfig& cfg) {
  os << "[experiment]\nname = " << cfg.name << "\ntrials = " << cfg.trials << "\nseed = " << cfg.seed << "\n";
  if (!cfg.out.empty()) os << "out = " << cfg.out << "\n";
  os << "\n[params]\n";
  for (const auto& spec : experiment_params(cfg.name)) {
    os << "; " << spec.help << "\n" << spec.name << " = " << detail::format_number(cfg.params.at(spec.name)) << "\n";
  }
  if (cfg.sweep_param) {
    os << "\n[sweep]\nparam = " << *cfg.sweep_param << "\nvalues = ";
    for (std::size_t i = 0; i < cfg.sweep_values.size(); ++i)
      os << (i ? ", " : "") << detail::format_number(cfg.sweep_values[i]);
    os << "\n";
  }
}

struct TrialRecord {
  std::uint64_t seed = 0;
  bool yes_case = false;
  bool verdict_yes = false;
  double statistic = 0;
  Count queries = 0;
  Count peak_bits = 0;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  AdvantageSummary summary;
};

namespace detail {

inline std::string case_name(bool yes) { return yes ? "YES" : "NO"; }

// One (trial, case) run. `dump` receives the query history when non-null.
inline TrialRecord run_case(const ExperimentConfig& cfg, std::uint64_t seed, bool yes, std::ostream* dump) {
  TrialRecord r;
  r.seed = seed;
  r.yes_case = yes;
  const std::uint64_t cs = derive_seed(seed, yes ? "yes" : "no");
  if (cfg.name == "threshold") {
    const auto n = static_cast<std::size_t>(cfg.get("n"));
    const double eps = cfg.get("eps");
    Count budget = static_cast<Count>(cfg.get("budget"));
    if (budget == 0) budget = static_cast<Count>(std::ceil(4.0 * static_cast<double>(n) / (eps * eps)));
    RandomQueryStream::Config sc{n, eps, budget, yes ? StreamMode::Yes : StreamMode::No, 0, 1, derive_seed(cs, "stream")};
    RandomQueryStream stream(sc, dump != nullptr);
    UpperBoundConstants k;
    k.c0 = cfg.get("c0");
    k.c1 = cfg.get("c1");
    const auto v = threshold_distinguisher(stream, eps, budget, derive_seed(cs, "algorithm"), k);
    r.verdict_yes = v.yes;
    r.statistic = v.statistic;
    r.queries = v.queries_used;
    r.peak_bits = v.bits_used;
    if (dump) stream.ledger().write_history(*dump);
  } else if (cfg.name == "estimate") {
    const auto n = static_cast<std::size_t>(cfg.get("n"));
    const double eps = cfg.get("eps");
    const auto inst = gen_planted(n, yes ? 10 * eps : 0.0, derive_seed(cs, "graph"));
    GraphOracle oracle(inst.graph, dump != nullptr);
    UpperBoundConstants k;
    k.c0 = cfg.get("c0");
    k.c1 = cfg.get("c1");
    Count budget = static_cast<Count>(cfg.get("budget"));
    if (budget == 0) {
      const auto s = static_cast<double>(std::max<std::size_t>(2, detail::scaled_count(k.c1, eps, n)));
      budget = static_cast<Count>(std::ceil(k.c0 * s * s));
    }
    const auto est = estimate_cc_cost(oracle, eps, derive_seed(cs, "algorithm"), budget, k);
    const double nn = static_cast<double>(n);
    r.verdict_yes = est.estimate < nn * nn / 4 - 2.5 * eps * nn * nn;
    r.statistic = est.estimate;
    r.queries = oracle.ledger().total();
    r.peak_bits = est.observed_pairs;
    if (dump) oracle.ledger().write_history(*dump);
  } else if (cfg.name == "pdbhp") {
    const auto n = static_cast<std::size_t>(cfg.get("n"));
    const double alpha = cfg.get("alpha");
    double c = cfg.get("c");
    if (c < 0) c = std::ceil(std::sqrt(static_cast<double>(n) / alpha));
    const auto inst = gen_pdbhp(n, cfg.get("rho"), alpha, yes, derive_seed(cs, "instance"));
    const auto v = pdbhp_prefix_protocol(inst, std::min<std::size_t>(n, static_cast<std::size_t>(c)),
                                         derive_seed(cs, "protocol"));
    r.verdict_yes = v.yes;
    r.statistic = v.agreement;
    r.queries = v.observed;
    r.peak_bits = static_cast<Count>(c);
  } else if (cfg.name == "same-vector") {
    const auto N = static_cast<Count>(cfg.get("N"));
    const auto k = static_cast<Count>(cfg.get("k"));
    Count q = static_cast<Count>(cfg.get("q"));
    if (q == 0) q = static_cast<Count>(std::ceil(std::sqrt(static_cast<double>(N))));
    SameVectorStream stream(N, cfg.get("p"), k, q, yes, derive_seed(cs, "stream"));
    const auto s = static_cast<Count>(cfg.get("s"));
    SameVectorDetector det(N, s, (k / 2) * q, static_cast<Count>(cfg.get("m0")), derive_seed(cs, "algorithm"));
    const Count budget = s * det.record_bits() + 64;
    const auto run = run_bounded(det, stream, budget, k * q);
    r.verdict_yes = run.output;
    r.queries = run.steps;
    r.peak_bits = run.peak_bits;
  } else if (cfg.name == "coin") {
    r.verdict_yes = Rng(derive_seed(cs, "coin")).coin();
  } else {
    throw ConfigError("experiment.name: unknown experiment '" + cfg.name + "'");
  }
  return r;
}

}  // namespace detail

inline ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream* dump = nullptr) {
  ExperimentResult out;
  out.records.resize(2 * cfg.trials);
  parallel_for(cfg.trials, [&](std::size_t t) {
    const std::uint64_t seed = derive_seed(cfg.seed, "trial", t);
    out.records[2 * t] = detail::run_case(cfg, seed, true, t == 0 ? dump : nullptr);
    out.records[2 * t + 1] = detail::run_case(cfg, seed, false, nullptr);
  });
  for (const auto& r : out.records) {
    if (r.yes_case) {
      ++out.summary.yes_trials;
      out.summary.yes_correct += r.verdict_yes;
    } else {
      ++out.summary.no_trials;
      out.summary.no_correct += !r.verdict_yes;
    }
  }
  return out;
}

inline void write_csv_header(std::ostream& os, const std::optional<std::string>& swept) {
  if (swept) os << *swept << ',';
  os << "seed,case,verdict,statistic,queries,peak_bits\n";
}

inline void write_csv_rows(std::ostream& os, const ExperimentResult& res, std::optional<double> swept_value = {}) {
  for (const auto& r : res.records) {
    if (swept_value) os << detail::format_number(*swept_value) << ',';
    os << r.seed << ',' << detail::case_name(r.yes_case) << ',' << detail::case_name(r.verdict_yes) << ','
       << detail::format_number(r.statistic) << ',' << r.queries << ',' << r.peak_bits << '\n';
  }
}

inline void write_summary(std::ostream& os, const AdvantageSummary& s) {
  const auto cy = s.ci_yes(), cn = s.ci_no(), ca = s.ci_advantage();
  os << std::fixed << std::setprecision(4) << "accuracy YES " << s.accuracy_yes() << " [" << cy.lo << ", " << cy.hi
     << "]  NO " << s.accuracy_no() << " [" << cn.lo << ", " << cn.hi << "]  advantage " << s.advantage() << " ["
     << ca.lo << ", " << ca.hi << "]\n"
     << std::defaultfloat;
}

struct SweepPoint {
  double value = 0;
  ExperimentResult result;
};

/// One run_experiment block per grid value of the single swept parameter.
inline std::vector<SweepPoint> sweep(const ExperimentConfig& cfg) {
  if (!cfg.sweep_param) throw ConfigError("sweep.param: missing");
  if (cfg.sweep_values.empty()) throw ConfigError("sweep.values: empty grid");
  std::vector<SweepPoint> out;
  for (double v : cfg.sweep_values) {
    ExperimentConfig point = cfg;
    point.params[*cfg.sweep_param] = v;
    point.sweep_param.reset();
    out.push_back({v, run_experiment(point)});
  }
  return out;
}

enum class RevealStrategy { RandomPair, RandomNeighbor, GreedySameCluster };

inline RevealStrategy parse_reveal_strategy(const std::string& s) {
  if (s == "random-pair") return RevealStrategy::RandomPair;
  if (s == "random-neighbor") return RevealStrategy::RandomNeighbor;
  if (s == "greedy-same-cluster") return RevealStrategy::GreedySameCluster;
  throw ConfigError("strategy: expected random-pair, random-neighbor or greedy-same-cluster");
}

struct RevealTrajectory {
  std::vector<Count> revealed;         ///< after each query
  std::vector<Count> direct_revealed;  ///< after each query
  std::vector<std::uint8_t> good;      ///< history good after each query
  Count good_queries = 0;              ///< queries issued from a good history
  Count good_direct_events = 0;        ///< of those, queries whose answer directly revealed a vertex

  double reveal_rate() const {
    return good_queries ? static_cast<double>(good_direct_events) / static_cast<double>(good_queries) : 0.0;
  }
};

/// Drives the relaxed oracle with t queries of the given strategy.
/// greedy-same-cluster pairs a revealed vertex of the least-populated known
/// cluster with a random unrevealed vertex.
inline RevealTrajectory reveal_rate_experiment(std::size_t n, double eps, RevealStrategy strategy, Count t,
                                               std::uint64_t seed) {
  const auto inst = gen_clustered_regular(n, eps, derive_seed(seed, "instance"));
  RelaxedOracle oracle(inst);
  Rng rng(derive_seed(seed, "strategy"));
  RevealTrajectory tr;
  std::map<std::uint32_t, std::vector<Vertex>> known;  // label -> revealed vertices
  std::vector<std::uint8_t> in_known(n, 0);
  auto absorb = [&](const RelaxedAnswer& a) {
    for (const auto& [v, c] : a.labels)
      if (!in_known[v]) {
        in_known[v] = 1;
        known[c].push_back(v);
      }
    for (auto c : a.clusters)
      for (Vertex v : inst.members[c])
        if (!in_known[v]) {
          in_known[v] = 1;
          known[c].push_back(v);
        }
  };
  auto random_pair = [&]() {
    const Edge e = index_to_pair(n, rng.below(choose2(n)));
    return e;
  };
  auto random_unrevealed = [&]() -> std::optional<Vertex> {
    if (oracle.revealed_count() >= n) return std::nullopt;
    for (;;) {
      const auto v = static_cast<Vertex>(rng.below(n));
      if (!oracle.is_revealed(v)) return v;
    }
  };
  const auto degree = inst.graph.size() ? inst.graph.degree(0) : 0U;
  for (Count q = 0; q < t; ++q) {
    const bool was_good = oracle.good();
    const Count direct_before = oracle.direct_revealed_count();
    RelaxedAnswer a;
    switch (strategy) {
      case RevealStrategy::RandomPair: {
        const Edge e = random_pair();
        a = oracle.pair(e.u, e.v);
        break;
      }
      case RevealStrategy::RandomNeighbor: {
        const auto v = static_cast<Vertex>(rng.below(n));
        a = oracle.neighbor(v, 1 + rng.below(std::max(1U, degree)));
        break;
      }
      case RevealStrategy::GreedySameCluster: {
        const auto target = random_unrevealed();
        std::optional<Vertex> anchor;
        std::size_t fewest = SIZE_MAX;
        for (const auto& [c, vs] : known) {
          if (vs.size() < fewest && vs.size() < inst.cluster_size) {
            fewest = vs.size();
            anchor = vs[rng.below(vs.size())];
          }
        }
        if (anchor && target && *anchor != *target) {
          a = oracle.pair(*anchor, *target);
        } else {
          const Edge e = random_pair();
          a = oracle.pair(e.u, e.v);
        }
        break;
      }
    }
    absorb(a);
    if (was_good) {
      ++tr.good_queries;
      tr.good_direct_events += oracle.direct_revealed_count() > direct_before;
    }
    tr.revealed.push_back(oracle.revealed_count());
    tr.direct_revealed.push_back(oracle.direct_revealed_count());
    tr.good.push_back(oracle.good());
  }
  return tr;
}

}  // namespace qclab
