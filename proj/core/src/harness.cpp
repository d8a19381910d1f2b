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

#include "adax/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "adax/errors.hpp"

namespace adax {

void ExperimentConfig::validate() const {
  if (n < 2) throw ConfigError("need n >= 2");
  if (k < 1) throw ConfigError("need k >= 1");
  if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("beta must be in (0,1)");
  if (!(tau_target > 0.0 && tau_target < 1.0)) {
    throw ConfigError("tau_target must be in (0,1)");
  }
  if (runs < 1) throw ConfigError("need runs >= 1");
  if (truth_mc_samples < 2) throw ConfigError("need truth_mc_samples >= 2");
  if (!(dist.feature_bias >= 0.0 && dist.feature_bias <= 1.0) ||
      !(dist.target_bias >= 0.0 && dist.target_bias <= 1.0)) {
    throw ConfigError("biases must lie in [0,1]");
  }
  if (mech.kind == MechanismKind::kGaussian && mech.rho < 0.0) {
    throw ConfigError("gaussian mechanism needs rho > 0");
  }
  if (mech.kind == MechanismKind::kLaplace && !(mech.eps_prime > 0.0)) {
    throw ConfigError("laplace mechanism needs eps' > 0");
  }
  if (mech.kind == MechanismKind::kThresholdout) {
    if (mech.train_size >= n) throw ConfigError("thresholdout train size must be < n");
    if (mech.sigma < 0.0) throw ConfigError("thresholdout sigma must be >= 0");
  }
  if (mech.kind == MechanismKind::kGnC) {
    if (mech.split_ng >= n) throw ConfigError("GnC guess split must leave a holdout");
    const WidthSchedule& s = mech.schedule;
    if (!(s.tau0 > 0.0 && s.tau0 < 1.0)) throw ConfigError("schedule tau0 in (0,1)");
    if (s.responsive() && !(s.cap > 0.0 && s.cap < 1.0)) {
      throw ConfigError("schedule cap must be in (0,1)");
    }
  }
  if (adversary.clamp_eps < 0.0 || adversary.clamp_eps >= 0.5) {
    throw ConfigError("clamp_eps must be in [0, 0.5)");
  }
}

ProductDistribution ExperimentConfig::distribution() const {
  std::vector<double> biases(k + 1, dist.feature_bias);
  biases.back() = dist.target_bias;
  return ProductDistribution(std::move(biases));
}

TruthEstimate query_truth(const QuerySpec& q, const ProductDistribution& dist,
                          std::size_t mc_samples, std::uint64_t seed) {
  const auto* s = std::get_if<SignAgreementQuery>(&q);
  if (s == nullptr) return true_value_exact(q, dist);
  const double pd = dist.biases.back();
  if (s->include_target && pd == 0.5) return {0.5, 0.0};  // target independent
  if (s->weights.size() <= 20) return true_value_exact(q, dist);
  // Certified sign: when a Hoeffding tail puts P(sign flips) below 1e-13 the
  // truth is a closed form up to that error.
  double mean = 0.0;
  double sq = 0.0;
  for (const auto& [idx, w] : s->weights) {
    mean += w * (2.0 * dist.biases[idx - 1] - 1.0);
    sq += w * w;
  }
  if (sq > 0.0 && mean != 0.0) {
    const double log_flip = -mean * mean / (2.0 * sq);
    if (log_flip < std::log(1e-13)) {
      const double sign_prob = mean > 0.0 ? 1.0 : 0.0;
      const double value =
          s->include_target
              ? (1.0 + (2.0 * sign_prob - 1.0) * (2.0 * pd - 1.0)) / 2.0
              : sign_prob;
      return {value, 1e-13};
    }
  }
  return true_value_sampled(q, dist, mc_samples, seed);
}

namespace {

// Mechanism defaults not pinned by the config: GnC's Gaussian guesses use a
// noise scale that stays well under the split sampling noise.
double default_guess_rho(std::size_t n_g) { return 50.0 / static_cast<double>(n_g); }

struct StepOutcome {
  IntervalAnswer answer;
  double beta_i = 0.0;
};

class MechanismRunner {
 public:
  MechanismRunner(const ExperimentConfig& cfg, const SampleMatrix& x,
                  std::size_t run_index)
      : cfg_(cfg),
        noise_rng_(derive_stream(cfg.base_seed, run_index, "noise")),
        current_tau_(cfg.mech.schedule.tau0) {
    Rng split_rng = derive_stream(cfg.base_seed, run_index, "split");
    switch (cfg.mech.kind) {
      case MechanismKind::kGaussian:
        noise_cfg_ = NoiseMechConfig{NoiseKind::kGaussian, cfg.mech.rho, 0.0, x.rows()};
        data_ = &x;
        break;
      case MechanismKind::kLaplace:
        noise_cfg_ =
            NoiseMechConfig{NoiseKind::kLaplace, 0.0, cfg.mech.eps_prime, x.rows()};
        data_ = &x;
        break;
      case MechanismKind::kEmpirical:
        noise_cfg_ = NoiseMechConfig{NoiseKind::kEmpirical, 0.0, 0.0, x.rows()};
        data_ = &x;
        break;
      case MechanismKind::kThresholdout: {
        thresholdout_.emplace(x, thresholdout_params(cfg.mech, x.rows()), split_rng);
        break;
      }
      case MechanismKind::kGnC: {
        const std::size_t n_g =
            cfg.mech.split_ng > 0 ? cfg.mech.split_ng : x.rows() / 2;
        gnc_.emplace(x, n_g, cfg.beta, cfg.mech.tol, split_rng);
        setup_guess(split_rng);
        break;
      }
    }
  }

  bool halted() const {
    if (cfg_.mech.kind == MechanismKind::kThresholdout) return thresholdout_->halted();
    if (cfg_.mech.kind == MechanismKind::kGnC) return gnc_->halted();
    return false;
  }

  StepOutcome answer(const QuerySpec& q) {
    switch (cfg_.mech.kind) {
      case MechanismKind::kGaussian:
      case MechanismKind::kLaplace:
      case MechanismKind::kEmpirical: {
        const double a = noise_answer(noise_cfg_, q, *data_, noise_rng_);
        return {IntervalAnswer{a, cfg_.tau_target, false}, 0.0};
      }
      case MechanismKind::kThresholdout: {
        const std::size_t uses_before = thresholdout_->holdout_uses();
        const std::optional<double> a = thresholdout_->answer(q, noise_rng_);
        if (!a.has_value()) return {IntervalAnswer{std::nullopt, 0.0, true}, 0.0};
        const bool from_holdout = thresholdout_->holdout_uses() > uses_before;
        return {IntervalAnswer{*a, cfg_.tau_target, from_holdout}, 0.0};
      }
      case MechanismKind::kGnC:
        return gnc_answer(q);
    }
    return {IntervalAnswer{std::nullopt, 0.0, true}, 0.0};
  }

 private:
  static Thresholdout::Params thresholdout_params(const MechanismSpec& m,
                                                  std::size_t n) {
    Thresholdout::Params p;
    p.train_size = m.train_size > 0 ? m.train_size : n / 2;
    p.threshold = m.threshold;
    p.sigma = m.sigma;
    p.budget = m.budget;
    p.policy = m.budget_policy;
    return p;
  }

  void setup_guess(Rng& split_rng) {
    const SampleMatrix& gs = gnc_->guess_set();
    switch (cfg_.mech.guess) {
      case GuessKind::kGaussian: {
        const double rho =
            cfg_.mech.rho > 0.0 ? cfg_.mech.rho : default_guess_rho(gs.rows());
        noise_cfg_ = NoiseMechConfig{NoiseKind::kGaussian, rho, 0.0, gs.rows()};
        break;
      }
      case GuessKind::kEmpirical:
        noise_cfg_ = NoiseMechConfig{NoiseKind::kEmpirical, 0.0, 0.0, gs.rows()};
        break;
      case GuessKind::kThresholdout: {
        // Guesses must keep flowing, so the inner Thresholdout never halts.
        Thresholdout::Params p = thresholdout_params(cfg_.mech, gs.rows());
        p.policy = BudgetPolicy::kContinueFlagged;
        guess_thresholdout_.emplace(gs, p, split_rng);
        break;
      }
    }
  }

  StepOutcome gnc_answer(const QuerySpec& q) {
    double raw = 0.0;
    if (guess_thresholdout_.has_value()) {
      raw = *guess_thresholdout_->answer(q, noise_rng_);
    } else {
      raw = noise_answer(noise_cfg_, q, gnc_->guess_set(), noise_rng_);
    }
    // Guesses are point estimates of a [0,1] quantity.
    GuessResponse guess{std::clamp(raw, 0.0, 1.0), current_tau_};
    const IntervalAnswer ans = gnc_->step(q, guess);
    if (ans.failed) current_tau_ = cfg_.mech.schedule.after_failure(current_tau_);
    return {ans, gnc_->last_beta_i()};
  }

  const ExperimentConfig& cfg_;
  Rng noise_rng_;
  NoiseMechConfig noise_cfg_;
  const SampleMatrix* data_ = nullptr;
  std::optional<Thresholdout> thresholdout_;
  std::optional<Thresholdout> guess_thresholdout_;
  std::optional<GnCState> gnc_;
  double current_tau_;
};

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::thread::hardware_concurrency();
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        body(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

Transcript run_interaction(const ExperimentConfig& cfg, std::size_t run_index) {
  cfg.validate();
  const ProductDistribution dist = cfg.distribution();
  Rng data_rng = derive_stream(cfg.base_seed, run_index, "data");
  const SampleMatrix x = sample_dataset(dist, cfg.n, data_rng);
  MechanismRunner mech(cfg, x, run_index);

  StrategyState::Options opts;
  opts.k = cfg.k;
  opts.rule = cfg.adversary.rule;
  opts.clamp_eps = cfg.adversary.clamp_eps > 0.0
                       ? cfg.adversary.clamp_eps
                       : 1.0 / (2.0 * static_cast<double>(cfg.n));
  opts.agreement_mode = cfg.adversary.agreement_mode;
  StrategyState analyst(opts);

  const std::uint64_t truth_base =
      derive_stream_seed(cfg.base_seed, run_index, "truth");
  Transcript out;
  std::size_t index = 1;
  while (auto q = analyst.next_query()) {
    const StepOutcome step = mech.answer(*q);
    TranscriptEntry entry;
    entry.answer = step.answer;
    entry.beta_i = step.beta_i;
    const TruthEstimate truth = query_truth(
        *q, dist, cfg.truth_mc_samples, derive_stream_seed(truth_base, index, "q"));
    entry.truth = truth.value;
    entry.truth_std_err = truth.std_err;
    if (step.answer.point.has_value()) {
      entry.abs_error = std::fabs(*step.answer.point - truth.value);
    }
    entry.query = std::move(*q);
    out.entries.push_back(std::move(entry));
    analyst.record_answer(step.answer.point);
    if (step.answer.is_bottom()) {
      out.terminated = true;
      break;
    }
    ++index;
  }
  return out;
}

std::vector<Transcript> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<Transcript> out(cfg.runs);
  parallel_for(cfg.runs, cfg.threads,
               [&](std::size_t r) { out[r] = run_interaction(cfg, r); });
  return out;
}

RunResult summarize_run(const Transcript& t, double tau_target) {
  RunResult res;
  res.halted = t.terminated;
  std::size_t index = 0;
  bool violated = false;
  for (const auto& e : t.entries) {
    if (e.answer.is_bottom()) break;
    ++index;
    if (e.answer.failed) ++res.failures;
    res.max_abs_error = std::max(res.max_abs_error, e.abs_error);
    if (!violated &&
        (e.answer.width > tau_target || e.abs_error > tau_target)) {
      res.queries_answered = index - 1;
      violated = true;
    }
    if (const auto* s = std::get_if<SignAgreementQuery>(&e.query)) {
      (void)s;
      res.final_adaptive_error = *e.answer.point - e.truth;
      res.has_final_adaptive = true;
    }
  }
  if (!violated) res.queries_answered = index;
  return res;
}

Aggregate aggregate(const std::vector<double>& values) {
  Aggregate a;
  if (values.empty()) return a;
  double sum = 0.0;
  for (const double v : values) sum += v;
  a.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (const double v : values) ss += (v - a.mean) * (v - a.mean);
    a.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return a;
}

WidthResult evaluate_bound(const std::string& bound_name, const BoundParams& base,
                           BoundMech mech) {
  if (bound_name == "rzcw") return gaussian_width_rzcw(base);
  if (bound_name == "dfhprr") return dfhprr_width(mech, base);
  if (bound_name == "bnsssu") return bnsssu_width(mech, base);
  if (bound_name == "xr17") return xr17_width(base);
  if (bound_name == "thresholdout") return thresholdout_width(base);
  if (bound_name == "split") {
    WidthResult r;
    r.tau = sample_split_width(base);
    return r;
  }
  if (bound_name == "discretize") return discretization_width(base);
  throw ConfigError("unknown bound name: " + bound_name);
}

std::size_t max_k_for_tau(const std::string& bound_name, const BoundParams& base,
                          BoundMech mech, double tau, std::size_t k_cap) {
  auto width_at = [&](std::size_t k) {
    BoundParams p = base;
    p.k = k;
    return evaluate_bound(bound_name, p, mech).tau;
  };
  if (width_at(1) > tau) return 0;
  std::size_t lo = 1, hi = 2;
  while (hi <= k_cap && width_at(hi) <= tau) {
    lo = hi;
    hi *= 2;
  }
  if (hi > k_cap) {
    if (width_at(k_cap) <= tau) return k_cap;
    hi = k_cap + 1;  // monotone in k, so width(k_cap + 1) > tau as well
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (width_at(mid) <= tau) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

Aggregate queries_answered(const ExperimentConfig& cfg) {
  cfg.validate();
  BoundParams p;
  p.n = cfg.n;
  p.k = 1;
  p.beta = cfg.beta;
  switch (cfg.mech.kind) {
    case MechanismKind::kGaussian:
      if (cfg.mech.rho > 0.0) p.rho = cfg.mech.rho;
      return {static_cast<double>(max_k_for_tau("rzcw", p, BoundMech::kGaussian,
                                                cfg.tau_target)),
              0.0};
    case MechanismKind::kLaplace:
      if (cfg.mech.eps_prime > 0.0) p.eps_prime = cfg.mech.eps_prime;
      return {static_cast<double>(max_k_for_tau("dfhprr", p, BoundMech::kLaplace,
                                                cfg.tau_target)),
              0.0};
    case MechanismKind::kThresholdout: {
      p.sigma = cfg.mech.sigma;
      p.threshold = cfg.mech.threshold;
      const std::size_t train = cfg.mech.train_size > 0 ? cfg.mech.train_size : cfg.n / 2;
      p.holdout = cfg.n - train;
      p.budget_b = cfg.mech.budget;
      return {static_cast<double>(max_k_for_tau("thresholdout", p,
                                                BoundMech::kGaussian, cfg.tau_target)),
              0.0};
    }
    case MechanismKind::kEmpirical:
    case MechanismKind::kGnC:
      break;
  }
  const std::vector<Transcript> runs = run_experiment(cfg);
  std::vector<double> counts;
  counts.reserve(runs.size());
  for (const auto& t : runs) {
    counts.push_back(
        static_cast<double>(summarize_run(t, cfg.tau_target).queries_answered));
  }
  return aggregate(counts);
}

std::vector<RmseRow> rmse_experiment(const ExperimentConfig& cfg,
                                     const std::vector<std::size_t>& k_sweep) {
  cfg.validate();
  if (cfg.mech.kind != MechanismKind::kGaussian &&
      cfg.mech.kind != MechanismKind::kThresholdout) {
    throw ConfigError("rmse experiment supports gaussian and thresholdout");
  }
  std::vector<RmseRow> rows;
  for (const std::size_t k : k_sweep) {
    ExperimentConfig run_cfg = cfg;
    run_cfg.k = k;
    run_cfg.adversary.rule = AdaptiveRule::kSingleFinal;
    RmseRow row;
    row.k = k;
    BoundParams p;
    p.n = cfg.n;
    p.k = k;
    p.beta = cfg.beta;
    if (cfg.mech.kind == MechanismKind::kGaussian) {
      const RmseOpt opt = gaussian_rmse_bound_opt(p);
      row.upper_bound_rmse = opt.rmse;
      row.rho = opt.rho;
      run_cfg.mech.rho = opt.rho;
    } else {
      p.sigma = cfg.mech.sigma;
      p.threshold = cfg.mech.threshold;
      const std::size_t train = cfg.mech.train_size > 0 ? cfg.mech.train_size : cfg.n / 2;
      p.holdout = cfg.n - train;
      p.budget_b = cfg.mech.budget;
      row.upper_bound_rmse = thresholdout_rmse_bound(p);
    }
    const std::vector<Transcript> runs = run_experiment(run_cfg);
    // Realized statistic: the per-run maximum absolute error over all
    // answered queries (the operational monitor), root-mean-squared across
    // runs. The proven bound is on exactly this max-error moment.
    std::vector<double> max_errors;
    double sq_sum = 0.0;
    for (const auto& t : runs) {
      const RunResult r = summarize_run(t, cfg.tau_target);
      sq_sum += r.max_abs_error * r.max_abs_error;
      max_errors.push_back(r.max_abs_error);
    }
    row.realized_rmse_mean = std::sqrt(sq_sum / static_cast<double>(runs.size()));
    row.realized_rmse_std = aggregate(max_errors).stddev;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace adax
