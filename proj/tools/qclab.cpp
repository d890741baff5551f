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

// qclab command line: gen | estimate | distinguish | verify | sweep | reveal.
//
// Exit codes: 0 success, 1 a check failed, 2 bad configuration or arguments.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qclab/qclab.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadConfig = 2;

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<qclab::Count> trials;
  bool print_config = false;
  std::vector<std::string> params;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "INI config file ([experiment], [params], [sweep])");
  cmd->add_option("--seed", o.seed, "master seed (overrides the config)");
  cmd->add_option("--out", o.out, "output path (default stdout)");
  cmd->add_option("--trials", o.trials, "trial count (overrides the config)")->check(CLI::PositiveNumber);
  cmd->add_flag("--print-config", o.print_config, "print the effective config and exit");
  cmd->add_option("--param", o.params, "parameter override key=value (repeatable)");
}

qclab::ExperimentConfig load_config(const CommonOptions& o, const std::string& fallback_name) {
  qclab::ExperimentConfig cfg;
  if (o.config.empty()) {
    cfg = qclab::default_config(fallback_name);
  } else {
    std::ifstream in(o.config);
    if (!in) throw qclab::ConfigError("--config: cannot open '" + o.config + "'");
    cfg = qclab::parse_config(in);
  }
  if (o.seed) cfg.seed = *o.seed;
  if (o.trials) cfg.trials = *o.trials;
  if (!o.out.empty()) cfg.out = o.out;
  for (const auto& p : o.params) qclab::set_param(cfg, p);
  return cfg;
}

// Returns stdout when path is empty.
std::ostream& open_output(const std::string& path, std::unique_ptr<std::ofstream>& holder) {
  if (path.empty()) return std::cout;
  holder = std::make_unique<std::ofstream>(path);
  if (!*holder) throw qclab::ConfigError("out: cannot write '" + path + "'");
  return *holder;
}

int run_trials(const CommonOptions& o, const std::string& fallback, const std::vector<std::string>& allowed,
               const std::string& dump_path) {
  const auto cfg = load_config(o, fallback);
  if (std::find(allowed.begin(), allowed.end(), cfg.name) == allowed.end()) {
    std::string msg = "experiment.name: '" + cfg.name + "' is not available here; expected one of";
    for (const auto& a : allowed) msg += " " + a;
    throw qclab::ConfigError(msg);
  }
  if (o.print_config) {
    qclab::write_config(std::cout, cfg);
    return kExitOk;
  }
  std::unique_ptr<std::ofstream> dump_file;
  std::ostream* dump = nullptr;
  if (!dump_path.empty()) {
    dump_file = std::make_unique<std::ofstream>(dump_path);
    if (!*dump_file) throw qclab::ConfigError("--dump: cannot write '" + dump_path + "'");
    dump = dump_file.get();
  }
  const auto res = qclab::run_experiment(cfg, dump);
  std::unique_ptr<std::ofstream> holder;
  std::ostream& os = open_output(cfg.out, holder);
  qclab::write_csv_header(os, std::nullopt);
  qclab::write_csv_rows(os, res);
  qclab::write_summary(std::cerr, res.summary);
  return kExitOk;
}

struct GenOptions {
  std::string dist = "planted";
  std::size_t n = 64;
  double p = 0.5;
  double rho = 0.2;
  double eps = 0.005;
  std::uint64_t seed = 1;
  std::string out;
};

int run_gen(const GenOptions& g) {
  if (g.out.empty()) throw qclab::ConfigError("gen: --out is required");
  std::ostringstream meta;
  meta << "distribution=" << g.dist << "\nn=" << g.n << "\nseed=" << g.seed << "\n";
  std::string hidden_path;
  qclab::Graph graph;
  if (g.dist == "gnp") {
    graph = qclab::gen_gnp(g.n, g.p, g.seed);
    meta << "p=" << g.p << "\n";
  } else if (g.dist == "planted") {
    const auto inst = qclab::gen_planted(g.n, g.rho, g.seed);
    graph = inst.graph;
    meta << "rho=" << g.rho << "\n";
    hidden_path = g.out + ".hidden";
    std::ofstream h(hidden_path);
    qclab::write_partition(h, inst.partition);
  } else if (g.dist == "clustered") {
    const auto inst = qclab::gen_clustered_regular(g.n, g.eps, g.seed);
    graph = inst.graph;
    meta << "eps=" << g.eps << "\nk=" << inst.k << "\ncluster_size=" << inst.cluster_size
         << "\ncross_degree=" << inst.cross_degree << "\n";
    hidden_path = g.out + ".hidden";
    std::ofstream h(hidden_path);
    qclab::write_clustering(h, inst.clustering);
  } else {
    throw qclab::ConfigError("gen: --dist must be gnp, planted or clustered");
  }
  std::ofstream os(g.out);
  if (!os) throw qclab::ConfigError("out: cannot write '" + g.out + "'");
  qclab::write_graph(os, graph);
  meta << "hidden=" << hidden_path << "\n";
  std::ofstream(g.out + ".meta") << meta.str();
  return kExitOk;
}

int run_sweep(const CommonOptions& o) {
  const auto cfg = load_config(o, "pdbhp");
  if (o.print_config) {
    qclab::write_config(std::cout, cfg);
    return kExitOk;
  }
  if (!cfg.sweep_param) throw qclab::ConfigError("sweep.param: the config needs a [sweep] section");
  const auto points = qclab::sweep(cfg);
  std::unique_ptr<std::ofstream> holder;
  std::ostream& os = open_output(cfg.out, holder);
  qclab::write_csv_header(os, cfg.sweep_param);
  for (const auto& pt : points) {
    qclab::write_csv_rows(os, pt.result, pt.value);
    std::cerr << *cfg.sweep_param << "=" << pt.value << "  ";
    qclab::write_summary(std::cerr, pt.result.summary);
  }
  return kExitOk;
}

struct VerifyOptions {
  std::vector<std::string> checks;
  std::uint64_t seed = 1;
  qclab::Count effort = 0;
  std::string out;
};

int run_verify(const VerifyOptions& v) {
  auto names = v.checks.empty() ? qclab::check_names() : v.checks;
  for (const auto& n : names)
    if (std::find(qclab::check_names().begin(), qclab::check_names().end(), n) == qclab::check_names().end())
      throw qclab::ConfigError("--check: unknown check '" + n + "'");
  std::unique_ptr<std::ofstream> holder;
  std::ostream& os = open_output(v.out, holder);
  bool all = true;
  for (const auto& n : names) {
    const auto r = qclab::run_check(n, v.seed, v.effort);
    os << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    all = all && r.pass;
  }
  return all ? kExitOk : kExitCheckFailed;
}

struct RevealOptions {
  std::size_t n = 6000;
  double eps = 0.005;
  std::string strategy = "greedy-same-cluster";
  qclab::Count t = 0;
  std::uint64_t seed = 1;
  qclab::Count trials = 1;
  std::string out;
};

int run_reveal(const RevealOptions& r) {
  const auto strategy = qclab::parse_reveal_strategy(r.strategy);
  try {
    (void)qclab::resolve_clustered_params(r.n, r.eps);
  } catch (const qclab::ParameterError& e) {
    throw qclab::ConfigError(e.what());
  }
  std::vector<qclab::RevealTrajectory> runs(r.trials);
  qclab::parallel_for(r.trials, [&](std::size_t i) {
    runs[i] = qclab::reveal_rate_experiment(r.n, r.eps, strategy, r.t, qclab::derive_seed(r.seed, "trial", i));
  });
  std::unique_ptr<std::ofstream> holder;
  std::ostream& os = open_output(r.out, holder);
  os << "trial,query,revealed,direct_revealed,good\n";
  qclab::Count good_q = 0, good_events = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& tr = runs[i];
    for (std::size_t q = 0; q < tr.revealed.size(); ++q)
      os << i << ',' << q + 1 << ',' << tr.revealed[q] << ',' << tr.direct_revealed[q] << ','
         << static_cast<int>(tr.good[q]) << '\n';
    good_q += tr.good_queries;
    good_events += tr.good_direct_events;
  }
  std::cerr << "per-query direct reveal rate over good prefixes: "
            << (good_q ? static_cast<double>(good_events) / static_cast<double>(good_q) : 0.0) << " (" << good_events
            << "/" << good_q << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qclab: query and streaming lower-bound laboratory for correlation clustering"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "sample a graph; writes OUT, OUT.meta and OUT.hidden");
  gen_cmd->add_option("--dist", gen.dist, "gnp | planted | clustered");
  gen_cmd->add_option("--n", gen.n, "vertex count");
  gen_cmd->add_option("--p", gen.p, "edge probability (gnp)");
  gen_cmd->add_option("--rho", gen.rho, "planted correlation (planted)");
  gen_cmd->add_option("--eps", gen.eps, "accuracy parameter (clustered)");
  gen_cmd->add_option("--seed", gen.seed, "master seed");
  gen_cmd->add_option("--out", gen.out, "graph file path")->required();

  CommonOptions est;
  std::string est_dump;
  auto* est_cmd = app.add_subcommand("estimate", "cost estimation trials; CSV seed,case,verdict,statistic,queries,peak_bits");
  add_common(est_cmd, est);
  est_cmd->add_option("--dump", est_dump, "write the first YES trial's query history (TSV)");

  CommonOptions dist;
  std::string dump;
  auto* dist_cmd = app.add_subcommand("distinguish", "YES/NO distinguisher trials; same CSV columns as estimate");
  add_common(dist_cmd, dist);
  dist_cmd->add_option("--dump", dump, "write the first YES trial's query history (TSV)");

  VerifyOptions ver;
  auto* ver_cmd = app.add_subcommand("verify", "named numeric checks; one line per check");
  ver_cmd->add_option("--check", ver.checks, "check name (repeatable; default all)");
  ver_cmd->add_option("--seed", ver.seed, "master seed");
  ver_cmd->add_option("--trials", ver.effort, "per-check instance count (0 = check default)");
  ver_cmd->add_option("--out", ver.out, "report path (default stdout)");

  CommonOptions sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "one experiment per grid value; CSV with the swept column first");
  add_common(sweep_cmd, sw);

  RevealOptions rev;
  auto* rev_cmd = app.add_subcommand("reveal", "relaxed-oracle reveal trajectories; CSV trial,query,revealed,direct_revealed,good");
  rev_cmd->add_option("--n", rev.n, "vertex count");
  rev_cmd->add_option("--eps", rev.eps, "accuracy parameter (0.01/eps clusters)");
  rev_cmd->add_option("--strategy", rev.strategy, "random-pair | random-neighbor | greedy-same-cluster");
  rev_cmd->add_option("--t", rev.t, "queries per trial");
  rev_cmd->add_option("--seed", rev.seed, "master seed");
  rev_cmd->add_option("--trials", rev.trials, "trial count")->check(CLI::PositiveNumber);
  rev_cmd->add_option("--out", rev.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*est_cmd) return run_trials(est, "estimate", {"estimate"}, est_dump);
    if (*dist_cmd) return run_trials(dist, "threshold", {"threshold", "pdbhp", "same-vector", "coin"}, dump);
    if (*ver_cmd) return run_verify(ver);
    if (*sweep_cmd) return run_sweep(sw);
    if (*rev_cmd) return run_reveal(rev);
  } catch (const qclab::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const qclab::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}
