//
// Copyright 2026 The Adax Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adax/csv.hpp"
#include "adax/errors.hpp"
#include "adax/figures.hpp"
#include "adax/harness.hpp"

namespace {

using namespace adax;

std::uint64_t resolve_seed(std::uint64_t cli_seed, bool seed_given) {
  if (seed_given) return cli_seed;
  if (const char* env = std::getenv("ADAX_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

// "a:b:steps" -> log-spaced integer sweep from a to b inclusive.
std::vector<std::size_t> parse_sweep(const std::string& text) {
  const auto first = text.find(':');
  const auto second = text.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw ConfigError("sweep must look like a:b:steps");
  }
  const double a = std::stod(text.substr(0, first));
  const double b = std::stod(text.substr(first + 1, second - first - 1));
  const int steps = std::stoi(text.substr(second + 1));
  if (a < 1 || b < a || steps < 1) throw ConfigError("bad sweep range");
  std::vector<std::size_t> out;
  for (int i = 0; i < steps; ++i) {
    const double f = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
    const auto v = static_cast<std::size_t>(
        std::llround(std::exp(std::log(a) + f * (std::log(b) - std::log(a)))));
    if (out.empty() || v != out.back()) out.push_back(v);
  }
  return out;
}

struct BoundCli {
  std::string name;
  std::size_t n = 0;
  std::size_t k = 0;
  double beta = 0.05;
  double rho = 0.0;
  double eps_prime = 0.0;
  double sigma = 0.0;
  double threshold = 0.0;
  std::size_t holdout = 0;
  std::size_t budget = 0;
  std::string mech = "gaussian";
  std::string sweep;
  std::string out;
};

int run_bound(const BoundCli& b) {
  BoundParams base;
  base.n = b.n;
  base.k = b.k;
  base.beta = b.beta;
  if (b.rho > 0.0) base.rho = b.rho;
  if (b.eps_prime > 0.0) base.eps_prime = b.eps_prime;
  if (b.sigma > 0.0) base.sigma = b.sigma;
  if (b.threshold > 0.0) base.threshold = b.threshold;
  if (b.holdout > 0) base.holdout = b.holdout;
  if (b.budget > 0) base.budget_b = b.budget;
  const BoundMech mech = b.mech == "laplace" ? BoundMech::kLaplace : BoundMech::kGaussian;

  std::vector<std::pair<std::size_t, std::size_t>> points;  // (n, k)
  if (!b.sweep.empty()) {
    const auto eq = b.sweep.find('=');
    if (eq == std::string::npos) throw ConfigError("sweep must look like n=a:b:steps");
    const std::string var = b.sweep.substr(0, eq);
    for (const std::size_t v : parse_sweep(b.sweep.substr(eq + 1))) {
      if (var == "n") {
        points.emplace_back(v, b.k);
      } else if (var == "k") {
        points.emplace_back(b.n, v);
      } else {
        throw ConfigError("sweep variable must be n or k");
      }
    }
  } else {
    points.emplace_back(b.n, b.k);
  }

  std::vector<BoundCsvRow> rows;
  for (const auto& [n, k] : points) {
    BoundParams p = base;
    p.n = n;
    p.k = k;
    const WidthResult res = evaluate_bound(b.name, p, mech);
    rows.push_back({b.name, n, k, p.beta, res.tau, format_optimizer(res.optimizer)});
  }
  if (b.out.empty()) {
    std::cout << kBoundCsvHeader << '\n';
    for (const auto& r : rows) {
      std::cout << r.bound_name << ',' << r.n << ',' << r.k << ','
                << format_double(r.beta) << ',' << format_double(r.tau) << ','
                << r.optimizer << '\n';
    }
  } else {
    emit_bound_csv(rows, b.out);
  }
  return 0;
}

struct SimulateCli {
  std::string mechanism = "gaussian";
  std::string guess = "gaussian";
  std::string strategy = "quadratic";
  std::string tol = "mgf";
  std::size_t n = 0;
  std::size_t k = 0;
  double beta = 0.05;
  double tau = 0.1;
  std::size_t runs = 1;
  std::uint64_t seed = 0;
  bool seed_given = false;
  double rho = 0.0;
  double eps_prime = 0.0;
  double sigma = 0.005;
  double threshold = 0.12;
  std::size_t budget = 100;
  std::size_t split_ng = 0;
  std::string schedule;
  double feature_bias = 0.5;
  double target_bias = 0.5;
  std::string out;
};

ExperimentConfig build_config(const SimulateCli& s) {
  ExperimentConfig cfg;
  if (s.mechanism == "gaussian") {
    cfg.mech.kind = MechanismKind::kGaussian;
  } else if (s.mechanism == "laplace") {
    cfg.mech.kind = MechanismKind::kLaplace;
  } else if (s.mechanism == "empirical") {
    cfg.mech.kind = MechanismKind::kEmpirical;
  } else if (s.mechanism == "thresholdout") {
    cfg.mech.kind = MechanismKind::kThresholdout;
  } else if (s.mechanism == "gnc") {
    cfg.mech.kind = MechanismKind::kGnC;
  } else {
    throw ConfigError("unknown mechanism: " + s.mechanism);
  }
  if (s.guess == "gaussian") {
    cfg.mech.guess = GuessKind::kGaussian;
  } else if (s.guess == "thresholdout") {
    cfg.mech.guess = GuessKind::kThresholdout;
  } else if (s.guess == "empirical") {
    cfg.mech.guess = GuessKind::kEmpirical;
  } else {
    throw ConfigError("unknown guess mechanism: " + s.guess);
  }
  cfg.mech.rho = s.rho;
  cfg.mech.eps_prime = s.eps_prime;
  cfg.mech.sigma = s.sigma;
  cfg.mech.threshold = s.threshold;
  cfg.mech.budget = s.budget;
  cfg.mech.split_ng = s.split_ng;
  cfg.mech.tol = s.tol == "chernoff" ? HoldoutTolKind::kChernoff : HoldoutTolKind::kMgf;
  cfg.mech.schedule.tau0 = s.tau;
  if (!s.schedule.empty()) {
    const auto comma = s.schedule.find(',');
    if (comma == std::string::npos) throw ConfigError("schedule must look like c,cap");
    cfg.mech.schedule.growth = std::stod(s.schedule.substr(0, comma));
    cfg.mech.schedule.cap = std::stod(s.schedule.substr(comma + 1));
    if (!(cfg.mech.schedule.growth > 1.0)) {
      throw ConfigError("schedule growth must be > 1");
    }
  }
  cfg.adversary.rule =
      s.strategy == "single" ? AdaptiveRule::kSingleFinal : AdaptiveRule::kQuadratic;
  cfg.dist.feature_bias = s.feature_bias;
  cfg.dist.target_bias = s.target_bias;
  cfg.n = s.n;
  cfg.k = s.k;
  cfg.beta = s.beta;
  cfg.tau_target = s.tau;
  cfg.runs = s.runs;
  cfg.base_seed = resolve_seed(s.seed, s.seed_given);
  return cfg;
}

int run_simulate(const SimulateCli& s) {
  const ExperimentConfig cfg = build_config(s);
  const std::vector<Transcript> transcripts = run_experiment(cfg);
  const std::vector<SimCsvRow> rows = simulation_rows(transcripts);
  emit_simulation_csv(rows, s.out);

  std::vector<double> counts;
  std::size_t misses = 0;
  for (const auto& t : transcripts) {
    const RunResult r = summarize_run(t, cfg.tau_target);
    counts.push_back(static_cast<double>(r.queries_answered));
    bool miss = false;
    for (const auto& e : t.entries) {
      if (!e.answer.is_bottom() && !e.answer.covers(e.truth)) miss = true;
    }
    misses += miss;
  }
  const Aggregate a = aggregate(counts);
  std::cout << "runs=" << cfg.runs << " k_mean=" << a.mean << " k_std=" << a.stddev
            << " miss_fraction="
            << static_cast<double>(misses) / static_cast<double>(cfg.runs)
            << " out=" << s.out << '\n';
  return 0;
}

struct RmseCli {
  std::string mechanism = "gaussian";
  std::size_t n = 0;
  std::string k_sweep;
  std::size_t runs = 20;
  std::uint64_t seed = 0;
  bool seed_given = false;
  double beta = 0.05;
  double sigma = 0.005;
  double threshold = 0.12;
  std::size_t budget = 100;
  std::string out;
};

int run_rmse(const RmseCli& r) {
  ExperimentConfig cfg;
  cfg.mech.kind = r.mechanism == "thresholdout" ? MechanismKind::kThresholdout
                                                : MechanismKind::kGaussian;
  cfg.mech.sigma = r.sigma;
  cfg.mech.threshold = r.threshold;
  cfg.mech.budget = r.budget;
  cfg.adversary.rule = AdaptiveRule::kSingleFinal;
  cfg.n = r.n;
  cfg.k = 1;
  cfg.beta = r.beta;
  cfg.runs = r.runs;
  cfg.base_seed = resolve_seed(r.seed, r.seed_given);
  const std::vector<RmseRow> rows = rmse_experiment(cfg, parse_sweep(r.k_sweep));
  emit_rmse_csv(rows, r.out);
  for (const auto& row : rows) {
    std::cout << "k=" << row.k << " upper=" << row.upper_bound_rmse
              << " realized=" << row.realized_rmse_mean << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive statistical queries with certified confidence intervals"};
  app.require_subcommand(1);

  BoundCli bound;
  CLI::App* bound_cmd = app.add_subcommand("bound", "Evaluate a worst-case width bound");
  bound_cmd->add_option("--name", bound.name, "Bound name")
      ->required()
      ->check(CLI::IsMember(
          {"rzcw", "dfhprr", "bnsssu", "xr17", "thresholdout", "split", "discretize"}));
  bound_cmd->add_option("--n", bound.n, "Sample count")->required();
  bound_cmd->add_option("--k", bound.k, "Query count")->required();
  bound_cmd->add_option("--beta", bound.beta, "Failure probability")->required();
  bound_cmd->add_option("--rho", bound.rho, "zCDP parameter (optimized when absent)");
  bound_cmd->add_option("--eps-prime", bound.eps_prime, "Per-query epsilon");
  bound_cmd->add_option("--sigma", bound.sigma, "Thresholdout noise scale");
  bound_cmd->add_option("--threshold", bound.threshold, "Thresholdout threshold T");
  bound_cmd->add_option("--holdout", bound.holdout, "Thresholdout holdout size");
  bound_cmd->add_option("--budget", bound.budget, "Thresholdout budget B");
  bound_cmd->add_option("--mech", bound.mech, "laplace|gaussian for dfhprr/bnsssu")
      ->check(CLI::IsMember({"laplace", "gaussian"}));
  bound_cmd->add_option("--sweep", bound.sweep, "n=a:b:steps or k=a:b:steps");
  bound_cmd->add_option("--out", bound.out, "Output CSV (stdout when absent)");

  SimulateCli sim;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Run analyst-vs-mechanism rounds");
  sim_cmd->add_option("--mechanism", sim.mechanism, "Mechanism")
      ->required()
      ->check(CLI::IsMember({"gaussian", "laplace", "empirical", "thresholdout", "gnc"}));
  sim_cmd->add_option("--guess", sim.guess, "GnC guess mechanism")
      ->check(CLI::IsMember({"gaussian", "thresholdout", "empirical"}));
  sim_cmd->add_option("--strategy", sim.strategy, "Analyst strategy")
      ->check(CLI::IsMember({"single", "quadratic"}));
  sim_cmd->add_option("--n", sim.n, "Sample count")->required();
  sim_cmd->add_option("--k", sim.k, "Query horizon")->required();
  sim_cmd->add_option("--beta", sim.beta, "Failure probability")->required();
  sim_cmd->add_option("--tau", sim.tau, "Target width")->required();
  sim_cmd->add_option("--runs", sim.runs, "Independent runs")->required();
  auto* seed_opt = sim_cmd->add_option("--seed", sim.seed, "Base seed (ADAX_SEED fallback)");
  sim_cmd->add_option("--out", sim.out, "Output CSV path")->required();
  sim_cmd->add_option("--tol", sim.tol, "GnC holdout tolerance")
      ->check(CLI::IsMember({"chernoff", "mgf"}));
  sim_cmd->add_option("--split", sim.split_ng, "GnC guess-set size (default n/2)");
  sim_cmd->add_option("--schedule", sim.schedule, "GnC width growth: c,cap");
  sim_cmd->add_option("--rho", sim.rho, "Gaussian rho");
  sim_cmd->add_option("--eps-prime", sim.eps_prime, "Laplace per-query epsilon");
  sim_cmd->add_option("--sigma", sim.sigma, "Thresholdout noise scale");
  sim_cmd->add_option("--threshold", sim.threshold, "Thresholdout threshold");
  sim_cmd->add_option("--budget", sim.budget, "Thresholdout budget");
  sim_cmd->add_option("--feature-bias", sim.feature_bias, "P(x_j = +1) for features");
  sim_cmd->add_option("--target-bias", sim.target_bias, "P(x_d = +1) for the target");

  RmseCli rmse;
  CLI::App* rmse_cmd = app.add_subcommand("rmse", "Worst-case vs realized RMSE sweep");
  rmse_cmd->add_option("--mechanism", rmse.mechanism, "Mechanism")
      ->required()
      ->check(CLI::IsMember({"gaussian", "thresholdout"}));
  rmse_cmd->add_option("--n", rmse.n, "Sample count")->required();
  rmse_cmd->add_option("--k-sweep", rmse.k_sweep, "a:b:steps")->required();
  rmse_cmd->add_option("--runs", rmse.runs, "Runs per k")->required();
  auto* rmse_seed = rmse_cmd->add_option("--seed", rmse.seed, "Base seed");
  rmse_cmd->add_option("--out", rmse.out, "Output CSV path")->required();
  rmse_cmd->add_option("--beta", rmse.beta, "Failure probability");
  rmse_cmd->add_option("--sigma", rmse.sigma, "Thresholdout noise scale");
  rmse_cmd->add_option("--threshold", rmse.threshold, "Thresholdout threshold");
  rmse_cmd->add_option("--budget", rmse.budget, "Thresholdout budget");

  std::string fig_id, fig_scale = "desk", fig_out;
  std::uint64_t fig_seed = 0;
  CLI::App* fig_cmd = app.add_subcommand("figure", "Regenerate a comparison figure");
  fig_cmd->add_option("--id", fig_id, "Figure id")
      ->required()
      ->check(CLI::IsMember(adax::figure_ids()));
  fig_cmd->add_option("--scale", fig_scale, "desk|paper")
      ->check(CLI::IsMember({"desk", "paper"}));
  fig_cmd->add_option("--out", fig_out, "Output directory")->required();
  auto* fig_seed_opt = fig_cmd->add_option("--seed", fig_seed, "Base seed");

  try {
    app.parse(argc, argv);
    if (bound_cmd->parsed()) return run_bound(bound);
    if (sim_cmd->parsed()) {
      sim.seed_given = seed_opt->count() > 0;
      return run_simulate(sim);
    }
    if (rmse_cmd->parsed()) {
      rmse.seed_given = rmse_seed->count() > 0;
      return run_rmse(rmse);
    }
    if (fig_cmd->parsed()) {
      const std::uint64_t seed = resolve_seed(fig_seed, fig_seed_opt->count() > 0);
      emit_figure(fig_id, fig_scale == "paper" ? FigureScale::kPaper : FigureScale::kDesk,
                  fig_out, seed);
      std::cout << "wrote " << fig_out << "/" << fig_id << ".csv\n";
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
