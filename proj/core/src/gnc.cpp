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

#include "adax/gnc.hpp"

#include <cmath>
#include <limits>

#include "adax/errors.hpp"
#include "adax/numeric.hpp"

namespace adax {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLMax = 50.0;          // inner bisection bracket for l
constexpr double kLTol = 1e-12;
constexpr double kTauTol = 1e-6;        // outer tau' bisection, absolute
constexpr double kTauFloor = 1e-9;      // smallest search point

void check_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("beta must be in (0,1)");
}

}  // namespace

double mgf_tail_log_bound(double mu, double tau_prime, std::size_t n_h) {
  const double s = mu + tau_prime;
  if (s >= 1.0) return -std::numeric_limits<double>::infinity();
  auto stationarity = [mu, s](double l) {
    const double e = std::exp(l);
    return mu * e / (1.0 + mu * (e - 1.0)) - s;
  };
  double l = kLMax;
  if (stationarity(kLMax) > 0.0) {
    l = bisect_root(stationarity, kLTol, kLMax, kLTol);
  }
  const double e = std::exp(l);
  return static_cast<double>(n_h) * (std::log1p(mu * (e - 1.0)) - l * s);
}

double holdout_tol_chernoff(double beta_i, std::size_t n_h) {
  check_beta(beta_i);
  if (n_h < 1) throw ParameterError("n_h must be >= 1");
  return std::sqrt(std::log(2.0 / beta_i) / (2.0 * static_cast<double>(n_h)));
}

std::optional<double> holdout_tol_mgf(double beta_i, double a_g, double tau, double a_h,
                                      std::size_t n_h) {
  check_beta(beta_i);
  if (!(tau > 0.0 && tau < 1.0)) throw ParameterError("tau must be in (0,1)");
  if (n_h < 1) throw ParameterError("n_h must be >= 1");
  const double mu = a_g > a_h ? a_g - tau : 1.0 - a_g - tau;
  const double lo = std::min(kTauFloor, tau / 2.0);
  if (mu <= 0.0 || mu >= 1.0) return lo;  // degenerate mean: requirement vacuous
  const double target = std::log(beta_i / 2.0);
  const double hi = tau * (1.0 - 1e-9);
  if (mgf_tail_log_bound(mu, hi, n_h) > target) return std::nullopt;
  if (mgf_tail_log_bound(mu, lo, n_h) <= target) return lo;
  // The bound is monotone decreasing in tau'; keep the upper (valid) end.
  double a = lo, b = hi;
  while (b - a > kTauTol) {
    const double mid = 0.5 * (a + b);
    if (mgf_tail_log_bound(mu, mid, n_h) <= target) {
      b = mid;
    } else {
      a = mid;
    }
  }
  return b;
}

double gamma_discretization(double tau_i, double beta_i, std::size_t n_h) {
  if (!(tau_i > 0.0 && tau_i < 1.0)) throw ParameterError("tau_i must be in (0,1)");
  check_beta(beta_i);
  const double slack = std::sqrt(std::log(2.0 / beta_i) / (2.0 * static_cast<double>(n_h)));
  return std::max(0.0, tau_i - slack);
}

double transcript_count_log(std::size_t i, std::size_t f, std::span<const double> gammas) {
  if (f != gammas.size()) throw ParameterError("f must equal the gamma count");
  if (i < 1 || f > i - 1) throw ParameterError("need f <= i - 1");
  if (f == 0) return 0.0;
  double log_nu = std::lgamma(static_cast<double>(i)) -
                  std::lgamma(static_cast<double>(f + 1)) -
                  std::lgamma(static_cast<double>(i - f));
  for (const double g : gammas) {
    if (!(g > 0.0 && g < 1.0)) throw ParameterError("gammas must lie in (0,1)");
    log_nu -= std::log(g);
  }
  return log_nu;
}

double beta_budget(std::size_t i, std::size_t f, std::span<const double> gammas,
                   double beta) {
  check_beta(beta);
  const double log_c_prev = std::log(6.0) - 2.0 * std::log(kPi) -
                            2.0 * std::log(static_cast<double>(i));
  const double log_c_f = std::log(6.0) - 2.0 * std::log(kPi) -
                         2.0 * std::log(static_cast<double>(f + 1));
  return std::exp(std::log(beta) + log_c_prev + log_c_f -
                  transcript_count_log(i, f, gammas));
}

GnCState::GnCState(const SampleMatrix& x, std::size_t guess_size, double beta,
                   HoldoutTolKind tol, Rng& split_rng)
    : guess_set_(SampleMatrix(1, 2)), holdout_(SampleMatrix(1, 2)), beta_(beta),
      tol_(tol) {
  check_beta(beta);
  if (guess_size < 1 || guess_size >= x.rows()) {
    throw ParameterError("guess set size must be in [1, n-1]");
  }
  auto parts = random_split(x, guess_size, split_rng);
  guess_set_ = std::move(parts.first);
  holdout_ = std::move(parts.second);
}

IntervalAnswer GnCState::step(const QuerySpec& q, const GuessResponse& guess) {
  if (halted_) throw MechanismHaltedError("GnC already emitted bottom");
  if (!(guess.width > 0.0)) throw ParameterError("guess width must be > 0");
  const double beta_i = beta_budget(i_, f_, gammas_, beta_);
  last_beta_i_ = beta_i;
  const double a_h = eval_query(q, holdout_);
  std::optional<double> tau_h;
  if (tol_ == HoldoutTolKind::kChernoff) {
    tau_h = holdout_tol_chernoff(beta_i, holdout_.rows());
  } else {
    tau_h = holdout_tol_mgf(beta_i, guess.point, guess.width, a_h, holdout_.rows());
  }
  // A tolerance that cannot be met counts as a failed check.
  if (tau_h.has_value() && std::fabs(guess.point - a_h) <= guess.width - *tau_h) {
    ++i_;
    return {guess.point, guess.width, false};
  }
  ++f_;
  const double gamma_f = gamma_discretization(guess.width, beta_i, holdout_.rows());
  if (gamma_f > 0.0) {
    gammas_.push_back(gamma_f);
    ++i_;
    return {floor_to_multiple(a_h, gamma_f), guess.width, true};
  }
  halted_ = true;
  return {std::nullopt, 0.0, true};
}

}  // namespace adax
