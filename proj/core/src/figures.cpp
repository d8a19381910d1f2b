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

#include "adax/figures.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "adax/csv.hpp"
#include "adax/errors.hpp"
#include "adax/harness.hpp"

namespace adax {

namespace {

using nlohmann::json;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << text;
  if (!out.good()) throw IoError("write failed: " + path);
}

void write_meta(const std::string& dir, const std::string& id, FigureScale scale,
                std::uint64_t seed, json params) {
  json meta;
  meta["figure"] = id;
  meta["scale"] = scale == FigureScale::kDesk ? "desk" : "paper";
  meta["seed"] = seed;
  meta["params"] = std::move(params);
  write_text(dir + "/" + id + "_meta.json", meta.dump(2) + "\n");
}

ExperimentConfig gnc_gauss_config(std::size_t n, std::size_t horizon, double beta,
                                  double tau, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.mech.kind = MechanismKind::kGnC;
  cfg.mech.guess = GuessKind::kGaussian;
  cfg.mech.tol = HoldoutTolKind::kMgf;
  cfg.mech.schedule.tau0 = tau;
  cfg.n = n;
  cfg.k = horizon;
  cfg.beta = beta;
  cfg.tau_target = tau;
  cfg.base_seed = seed;
  return cfg;
}

// ---- intro-left: worst-case bound comparison --------------------------------

void figure_intro_left(FigureScale scale, const std::string& dir, std::uint64_t seed) {
  const double tau = 0.1, beta = 0.05;
  std::vector<std::size_t> ns = scale == FigureScale::kDesk
                                    ? std::vector<std::size_t>{1000, 10000, 100000}
                                    : std::vector<std::size_t>{1000, 3162, 10000, 31623,
                                                               100000, 316228, 1000000};
  const std::vector<std::string> bounds = {"rzcw",   "bnsssu",    "dfhprr",
                                           "xr17",   "split",     "discretize"};
  std::string csv = "bound_name,n,max_k\n";
  for (const std::size_t n : ns) {
    for (const auto& name : bounds) {
      BoundParams p;
      p.n = n;
      p.k = 1;
      p.beta = beta;
      const std::size_t mk = max_k_for_tau(name, p, BoundMech::kGaussian, tau);
      csv += name + "," + std::to_string(n) + "," + std::to_string(mk) + "\n";
    }
  }
  write_text(dir + "/intro-left.csv", csv);
  write_meta(dir, "intro-left", scale, seed, {{"tau", tau}, {"beta", beta}});
}

// ---- queries-answered sweeps ------------------------------------------------

struct Series {
  std::string name;
  ExperimentConfig cfg;
};

void emit_k_sweep(const std::string& dir, const std::string& id,
                  const std::vector<Series>& series, const std::vector<std::size_t>& ns,
                  json params, FigureScale scale, std::uint64_t seed) {
  std::string csv = "series,n,k_mean,k_std\n";
  for (const std::size_t n : ns) {
    for (const Series& s : series) {
      ExperimentConfig cfg = s.cfg;
      cfg.n = n;
      const Aggregate a = queries_answered(cfg);
      csv += s.name + "," + std::to_string(n) + "," + format_double(a.mean) + "," +
             format_double(a.stddev) + "\n";
    }
  }
  write_text(dir + "/" + id + ".csv", csv);
  write_meta(dir, id, scale, seed, std::move(params));
}

void figure_intro_right(FigureScale scale, const std::string& dir, std::uint64_t seed) {
  const bool desk = scale == FigureScale::kDesk;
  const double tau = 0.1, beta = 0.05;
  const std::vector<std::size_t> ns =
      desk ? std::vector<std::size_t>{1000, 2000, 5000}
           : std::vector<std::size_t>{1000, 2000, 5000, 10000, 20000, 50000, 100000};
  ExperimentConfig gnc = gnc_gauss_config(2, desk ? 2000 : 40000, beta, tau, seed);
  gnc.runs = desk ? 5 : 20;

  ExperimentConfig gauss_bnd;
  gauss_bnd.mech.kind = MechanismKind::kGaussian;
  gauss_bnd.n = 2;
  gauss_bnd.k = 1;
  gauss_bnd.beta = beta;
  gauss_bnd.tau_target = tau;
  gauss_bnd.base_seed = seed;

  const std::vector<Series> series{{"gnc_gauss", gnc}, {"gauss_bound", gauss_bnd}};
  std::string csv = "series,n,k_mean,k_std\n";
  for (const std::size_t n : ns) {
    for (const Series& s : series) {
      ExperimentConfig cfg = s.cfg;
      cfg.n = n;
      const Aggregate a = queries_answered(cfg);
      csv += s.name + "," + std::to_string(n) + "," + format_double(a.mean) + "," +
             format_double(a.stddev) + "\n";
    }
    // Baseline: the better of sample splitting and discretization.
    BoundParams p;
    p.n = n;
    p.k = 1;
    p.beta = beta;
    const std::size_t baseline =
        std::max(max_k_for_tau("split", p, BoundMech::kGaussian, tau),
                 max_k_for_tau("discretize", p, BoundMech::kGaussian, tau));
    csv += "baseline," + std::to_string(n) + "," +
           format_double(static_cast<double>(baseline)) + ",0\n";
  }
  write_text(dir + "/intro-right.csv", csv);
  write_meta(dir, "intro-right", scale, seed,
             {{"tau", tau},
              {"beta", beta},
              {"horizon", gnc.k},
              {"runs", gnc.runs},
              {"guess", "gaussian"},
              {"tolerance", "mgf"}});
}

// ---- two-round: RMSE bounds vs realized -------------------------------------

void figure_two_round(FigureScale scale, const std::string& dir, std::uint64_t seed) {
  const bool desk = scale == FigureScale::kDesk;
  const std::vector<std::size_t> ks =
      desk ? std::vector<std::size_t>{100, 1000, 10000}
           : std::vector<std::size_t>{100, 500, 1000, 5000, 10000, 50000};
  ExperimentConfig cfg;
  cfg.n = 5000;
  cfg.k = 1;
  cfg.beta = 0.05;
  cfg.tau_target = 0.1;
  cfg.runs = desk ? 10 : 100;
  cfg.base_seed = seed;
  cfg.adversary.rule = AdaptiveRule::kSingleFinal;

  std::string csv = "mechanism,k,upper_bound_rmse,realized_rmse_mean,realized_rmse_std,"
                    "rho\n";
  cfg.mech.kind = MechanismKind::kGaussian;
  for (const RmseRow& r : rmse_experiment(cfg, ks)) {
    csv += "gaussian," + std::to_string(r.k) + "," + format_double(r.upper_bound_rmse) +
           "," + format_double(r.realized_rmse_mean) + "," +
           format_double(r.realized_rmse_std) + "," + format_double(r.rho) + "\n";
  }
  cfg.mech.kind = MechanismKind::kThresholdout;
  cfg.mech.sigma = 0.005;
  cfg.mech.threshold = 0.12;
  cfg.mech.budget = 100;
  for (const RmseRow& r : rmse_experiment(cfg, ks)) {
    csv += "thresholdout," + std::to_string(r.k) + "," +
           format_double(r.upper_bound_rmse) + "," +
           format_double(r.realized_rmse_mean) + "," +
           format_double(r.realized_rmse_std) + ",0\n";
  }
  write_text(dir + "/two-round.csv", csv);
  write_meta(dir, "two-round", scale, seed,
             {{"n", cfg.n},
              {"runs", cfg.runs},
              {"thresholdout",
               {{"sigma", 0.005}, {"threshold", 0.12}, {"budget", 100}}}});
}

// ---- gnc-lowvar: MGF vs Chernoff tolerances ---------------------------------

void figure_gnc_lowvar(FigureScale scale, const std::string& dir, std::uint64_t seed) {
  const bool desk = scale == FigureScale::kDesk;
  const std::vector<std::size_t> ns =
      desk ? std::vector<std::size_t>{1000, 2000, 4000}
           : std::vector<std::size_t>{1000, 2000, 4000, 8000, 16000, 32000};
  ExperimentConfig base = gnc_gauss_config(2, desk ? 2000 : 40000, 0.05, 0.05, seed);
  base.runs = 5;
  base.dist.feature_bias = 0.9;
  base.dist.target_bias = 1.0;
  ExperimentConfig chern = base;
  chern.mech.tol = HoldoutTolKind::kChernoff;
  emit_k_sweep(dir, "gnc-lowvar", {{"gnc_mgf", base}, {"gnc_chernoff", chern}}, ns,
               {{"tau", 0.05},
                {"beta", 0.05},
                {"feature_bias", 0.9},
                {"target_bias", 1.0},
                {"horizon", base.k},
                {"runs", base.runs}},
               scale, seed);
}

// ---- gnc-beta: performance at high confidence -------------------------------

void figure_gnc_beta(FigureScale scale, const std::string& dir, std::uint64_t seed) {
  const bool desk = scale == FigureScale::kDesk;
  const std::vector<std::size_t> ns =
      desk ? std::vector<std::size_t>{2000, 5000}
           : std::vector<std::size_t>{2000, 5000, 10000, 30000};
  ExperimentConfig lo = gnc_gauss_config(2, desk ? 3000 : 40000, 0.05, 0.1, seed);
  lo.runs = 5;
  ExperimentConfig hi = lo;
  hi.beta = 0.005;
  ExperimentConfig bnd_lo;
  bnd_lo.mech.kind = MechanismKind::kGaussian;
  bnd_lo.n = 2;
  bnd_lo.k = 1;
  bnd_lo.beta = 0.05;
  bnd_lo.tau_target = 0.1;
  ExperimentConfig bnd_hi = bnd_lo;
  bnd_hi.beta = 0.005;
  emit_k_sweep(dir, "gnc-beta",
               {{"gnc_beta_0.05", lo},
                {"gnc_beta_0.005", hi},
                {"bound_beta_0.05", bnd_lo},
                {"bound_beta_0.005", bnd_hi}},
               ns, {{"tau", 0.1}, {"horizon", lo.k}, {"runs", lo.runs}}, scale, seed);
}

// ---- gnc-guess: Gaussian vs Thresholdout guesses ----------------------------

void figure_gnc_guess(FigureScale scale, const std::string& dir, std::uint64_t seed) {
  const bool desk = scale == FigureScale::kDesk;
  const std::vector<std::size_t> ns =
      desk ? std::vector<std::size_t>{2000, 5000, 8000}
           : std::vector<std::size_t>{2000, 5000, 8000, 16000, 32000};
  const std::size_t horizon = desk ? 3000 : 40000;
  ExperimentConfig gauss = gnc_gauss_config(2, horizon, 0.05, 0.1, seed);
  gauss.runs = desk ? 3 : 20;
  ExperimentConfig thresh = gauss;
  thresh.mech.guess = GuessKind::kThresholdout;
  thresh.mech.sigma = 0.01;
  thresh.mech.threshold = 0.04;
  thresh.mech.budget = 1000;

  ExperimentConfig gauss_emp;
  gauss_emp.mech.kind = MechanismKind::kGaussian;
  gauss_emp.mech.rho = 0.002;
  gauss_emp.k = horizon;
  gauss_emp.beta = 0.05;
  gauss_emp.tau_target = 0.1;
  gauss_emp.runs = gauss.runs;
  gauss_emp.base_seed = seed;
  // Empirical curves ignore validity, so the mechanism keeps answering.
  ExperimentConfig thresh_emp = gauss_emp;
  thresh_emp.mech = MechanismSpec{};
  thresh_emp.mech.kind = MechanismKind::kThresholdout;
  thresh_emp.mech.sigma = 0.01;
  thresh_emp.mech.threshold = 0.04;
  thresh_emp.mech.budget = 1000;
  thresh_emp.mech.budget_policy = BudgetPolicy::kContinueFlagged;

  emit_k_sweep(dir, "gnc-guess",
               {{"gnc_gauss", gauss},
                {"gnc_thresh", thresh},
                {"gauss_emp", gauss_emp},
                {"thresh_emp", thresh_emp}},
               ns,
               {{"tau", 0.1},
                {"beta", 0.05},
                {"horizon", horizon},
                {"thresholdout",
                 {{"sigma", 0.01}, {"threshold", 0.04}, {"budget", 1000}}}},
               scale, seed);
}

// ---- gnc-responsive: growing widths track the error -------------------------

void figure_gnc_responsive(FigureScale scale, const std::string& dir,
                           std::uint64_t seed) {
  const bool desk = scale == FigureScale::kDesk;
  ExperimentConfig cfg = gnc_gauss_config(desk ? 8000 : 30000, desk ? 4000 : 40000,
                                          0.05, 0.06, seed);
  cfg.mech.schedule = WidthSchedule{0.06, 1.4, 0.17};
  cfg.runs = 1;
  const std::vector<Transcript> runs = run_experiment(cfg);
  emit_simulation_csv(simulation_rows(runs), dir + "/gnc-responsive.csv");
  write_meta(dir, "gnc-responsive", scale, seed,
             {{"n", cfg.n},
              {"beta", cfg.beta},
              {"tau0", 0.06},
              {"growth", 1.4},
              {"cap", 0.17},
              {"horizon", cfg.k}});
}

}  // namespace

std::vector<std::string> figure_ids() {
  return {"intro-left", "intro-right", "two-round",     "gnc-lowvar",
          "gnc-beta",   "gnc-guess",   "gnc-responsive"};
}

void emit_figure(const std::string& id, FigureScale scale, const std::string& out_dir,
                 std::uint64_t seed) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir);
  if (id == "intro-left") return figure_intro_left(scale, out_dir, seed);
  if (id == "intro-right") return figure_intro_right(scale, out_dir, seed);
  if (id == "two-round") return figure_two_round(scale, out_dir, seed);
  if (id == "gnc-lowvar") return figure_gnc_lowvar(scale, out_dir, seed);
  if (id == "gnc-beta") return figure_gnc_beta(scale, out_dir, seed);
  if (id == "gnc-guess") return figure_gnc_guess(scale, out_dir, seed);
  if (id == "gnc-responsive") return figure_gnc_responsive(scale, out_dir, seed);
  throw ConfigError("unknown figure id: " + id);
}

}  // namespace adax
