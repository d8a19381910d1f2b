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

#include "adax/bounds.hpp"

#include <cmath>
#include <limits>

#include "adax/errors.hpp"
#include "adax/numeric.hpp"

namespace adax {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

double dbl(std::size_t v) { return static_cast<double>(v); }

void check_positive(const std::optional<double>& v, const char* name) {
  if (v && !(*v > 0.0)) throw ParameterError(std::string(name) + " must be > 0");
}

}  // namespace

void BoundParams::validate() const {
  if (n < 1 || k < 1) throw ParameterError("need n >= 1 and k >= 1");
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("beta must be in (0,1)");
  check_positive(rho, "rho");
  check_positive(eps_prime, "eps_prime");
  check_positive(delta, "delta");
  check_positive(sigma, "sigma");
  check_positive(threshold, "threshold");
  if (holdout && *holdout < 1) throw ParameterError("holdout size must be >= 1");
  if (budget_b && *budget_b < 1) throw ParameterError("budget must be >= 1");
}

LambdaMin min_lambda_objective(double b) {
  if (b < 0.0) throw ParameterError("mutual-information budget must be >= 0");
  // Substitute u = -ln(1 - lambda); the objective (b + u) / (1 - e^{-u}) is
  // unimodal on u > 0 with its stationary point at e^u = 1 + b + u.
  auto h = [b](double u) { return (b + u) / (-std::expm1(-u)); };
  const double hi = 50.0 + std::log1p(b);
  const ScalarMin m = minimize_scalar(h, 1e-12, hi, 512, 1e-12);
  return {m.value, -std::expm1(-m.x)};
}

namespace {

double rzcw_given_rho(std::size_t n, std::size_t k, double beta, double rho,
                      double* lambda_star) {
  const LambdaMin lm = min_lambda_objective(2.0 * rho * dbl(k) * dbl(n));
  if (lambda_star) *lambda_star = lm.lambda_star;
  return std::sqrt(lm.value / (2.0 * dbl(n) * beta)) +
         (1.0 / (2.0 * dbl(n))) * std::sqrt(std::log(4.0 * dbl(k) / beta) / rho);
}

// Minimizes fn(rho) over log rho and reports the argmin.
ScalarMin minimize_over_log(const std::function<double(double)>& fn, double lo,
                            double hi) {
  const ScalarMin m =
      minimize_scalar([&fn](double l) { return fn(std::exp(l)); }, std::log(lo),
                      std::log(hi), 400, 1e-10);
  return {std::exp(m.x), m.value};
}

}  // namespace

WidthResult gaussian_width_rzcw(const BoundParams& p) {
  p.validate();
  WidthResult res;
  double lambda_star = 0.0;
  if (p.rho) {
    res.tau = rzcw_given_rho(p.n, p.k, p.beta, *p.rho, &lambda_star);
    res.optimizer = {{"rho", *p.rho}, {"lambda", lambda_star}};
    return res;
  }
  const ScalarMin m = minimize_over_log(
      [&p](double rho) { return rzcw_given_rho(p.n, p.k, p.beta, rho, nullptr); },
      1e-16, 100.0);
  res.tau = rzcw_given_rho(p.n, p.k, p.beta, m.x, &lambda_star);
  res.optimizer = {{"rho", m.x}, {"lambda", lambda_star}};
  return res;
}

double gaussian_tail_width(double sigma, std::size_t k, double beta) {
  if (sigma < 0.0 || k < 1 || !(beta > 0.0 && beta < 1.0)) {
    throw ParameterError("gaussian_tail_width: bad parameters");
  }
  return sigma * std::sqrt(2.0 * std::log(2.0 * dbl(k) / beta));
}

double laplace_tail_width(double scale, std::size_t k, double beta) {
  if (scale < 0.0 || k < 1 || !(beta > 0.0 && beta < 1.0)) {
    throw ParameterError("laplace_tail_width: bad parameters");
  }
  return scale * std::log(dbl(k) / beta);
}

double advanced_composition(double eps_prime, std::size_t k, double delta) {
  if (!(eps_prime >= 0.0) || !(delta > 0.0 && delta <= 1.0)) {
    throw ParameterError("advanced_composition: bad parameters");
  }
  const double c = std::expm1(eps_prime) / (std::exp(eps_prime) + 1.0);
  return c * eps_prime * dbl(k) +
         eps_prime * std::sqrt(2.0 * dbl(k) * std::log(1.0 / delta));
}

double zcdp_to_dp(double rho, double delta) {
  if (!(rho >= 0.0) || !(delta > 0.0 && delta <= 1.0)) {
    throw ParameterError("zcdp_to_dp: bad parameters");
  }
  if (rho == 0.0) return 0.0;
  // The log goes negative once delta >= sqrt(pi rho); the conversion is then
  // already (rho, delta)-DP, so the term is clamped at zero.
  const double log_term = std::max(0.0, std::log(std::sqrt(kPi * rho) / delta));
  return rho + 2.0 * std::sqrt(rho * log_term);
}

namespace {

// Shared driver for the two transfer-theorem programs: the feasible set in
// tau is an up-set once the derivation's sign condition is enforced, so the
// smallest feasible tau comes from one bisection.
constexpr double kTauCap = 100.0;

double smallest_feasible_tau(const std::function<bool(double)>& feasible,
                             double floor_tau) {
  if (feasible(floor_tau)) return floor_tau;
  if (!feasible(kTauCap)) return kInf;
  double lo = floor_tau, hi = kTauCap;
  for (int i = 0; i < 100 && hi - lo > 1e-10; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double dfhprr_tau_laplace(const BoundParams& p, double eps) {
  const double n = dbl(p.n), k = dbl(p.k);
  const double tau_prime = std::log(2.0 * k / p.beta) / (n * eps);
  const double floor_tau = std::sqrt(48.0 / n * std::log(8.0 / p.beta)) + tau_prime;
  const double c = std::expm1(eps) / (std::exp(eps) + 1.0);
  const double a = 4.0 * eps * k * c;
  const double rhs = 256.0 * eps * eps * k * std::log(16.0 / p.beta);
  auto feasible = [&](double tau) {
    const double u = tau - tau_prime;
    if (u < a) return false;  // pre-squaring sign condition
    return (u - a) * (u - a) * u >= rhs;
  };
  return smallest_feasible_tau(feasible, floor_tau);
}

double dfhprr_tau_gaussian(const BoundParams& p, double rho) {
  const double n = dbl(p.n), k = dbl(p.k);
  const double tau_prime =
      (1.0 / (2.0 * n)) * std::sqrt(std::log(4.0 * k / p.beta) / rho);
  const double floor_tau = std::sqrt(48.0 / n * std::log(8.0 / p.beta)) + tau_prime;
  const double a = 4.0 * rho * k;
  const double b = 64.0 * rho * k * std::log(std::sqrt(kPi * rho * k));
  const double rhs = 64.0 * rho * k * std::log(16.0 / p.beta);
  auto feasible = [&](double tau) {
    const double u = tau - tau_prime;
    if (u < a) return false;
    return ((u - a) * (u - a) - b) * u >= rhs;
  };
  return smallest_feasible_tau(feasible, floor_tau);
}

}  // namespace

WidthResult dfhprr_width(BoundMech mech, const BoundParams& p) {
  p.validate();
  WidthResult res;
  if (mech == BoundMech::kLaplace) {
    if (p.eps_prime) {
      res.tau = dfhprr_tau_laplace(p, *p.eps_prime);
      res.optimizer = {{"eps_prime", *p.eps_prime}};
      return res;
    }
    const ScalarMin m = minimize_over_log(
        [&p](double e) { return dfhprr_tau_laplace(p, e); }, 1e-12, 10.0);
    res.tau = m.value;
    res.optimizer = {{"eps_prime", m.x}};
    return res;
  }
  if (p.rho) {
    res.tau = dfhprr_tau_gaussian(p, *p.rho);
    res.optimizer = {{"rho", *p.rho}};
    return res;
  }
  const ScalarMin m = minimize_over_log(
      [&p](double r) { return dfhprr_tau_gaussian(p, r); }, 1e-16, 10.0);
  res.tau = m.value;
  res.optimizer = {{"rho", m.x}};
  return res;
}

namespace {

double bnsssu_prefactor(double beta) {
  const double s = std::floor(1.0 / beta);
  return 1.0 / (1.0 - std::pow(1.0 - beta, s));
}

double bnsssu_inner_laplace(const BoundParams& p, double eps, double delta) {
  const double psi = advanced_composition(eps, p.k, delta);
  if (psi > 700.0) return kInf;
  const double s = std::floor(1.0 / p.beta);
  return std::expm1(psi) + 6.0 * delta * s +
         std::log(dbl(p.k) / (2.0 * delta)) / (eps * dbl(p.n));
}

double bnsssu_inner_gaussian(const BoundParams& p, double rho, double delta) {
  // The composed mechanism is (k rho)-zCDP; the conversion takes that
  // composed parameter (see the ledger on the printed per-query form).
  const double xi = zcdp_to_dp(dbl(p.k) * rho, delta);
  if (xi > 700.0) return kInf;
  const double s = std::floor(1.0 / p.beta);
  return std::expm1(xi) + 6.0 * delta * s +
         std::sqrt(std::log(dbl(p.k) / delta) / (dbl(p.n) * dbl(p.n) * rho));
}

}  // namespace

WidthResult bnsssu_width(BoundMech mech, const BoundParams& p) {
  p.validate();
  const double pref = bnsssu_prefactor(p.beta);
  const auto inner = [&](double x, double d) {
    return mech == BoundMech::kLaplace ? bnsssu_inner_laplace(p, x, d)
                                       : bnsssu_inner_gaussian(p, x, d);
  };
  const GridMin2d m = minimize_log_grid_2d(inner, 1e-16, 10.0, 1e-16, 0.999999);
  WidthResult res;
  res.tau = pref * m.value;
  res.optimizer = {{mech == BoundMech::kLaplace ? "eps_prime" : "rho", m.x},
                   {"delta", m.y}};
  return res;
}

namespace {

double xr17_given_rho(const BoundParams& p, double rho) {
  const double n = dbl(p.n), k = dbl(p.k);
  return std::sqrt((2.0 / n) * (2.0 * rho * k * n / p.beta + std::log(4.0 / p.beta))) +
         (1.0 / (2.0 * n)) * std::sqrt(std::log(4.0 * k / p.beta) / rho);
}

}  // namespace

WidthResult xr17_width(const BoundParams& p) {
  p.validate();
  WidthResult res;
  if (p.rho) {
    res.tau = xr17_given_rho(p, *p.rho);
    res.optimizer = {{"rho", *p.rho}};
    return res;
  }
  const ScalarMin m =
      minimize_over_log([&p](double r) { return xr17_given_rho(p, r); }, 1e-16, 100.0);
  res.tau = m.value;
  res.optimizer = {{"rho", m.x}};
  return res;
}

MaxMoments laplace_max_moments(double scale, std::size_t m) {
  if (!(scale > 0.0) || m < 1) {
    throw ParameterError("laplace_max_moments: need scale > 0 and m >= 1");
  }
  const double b = scale;
  const double md = dbl(m);
  // log F(x) of a single Laplace(b); F^m = exp(m log F).
  auto log_cdf = [b](double x) {
    return x < 0.0 ? x / b - std::log(2.0) : std::log1p(-0.5 * std::exp(-x / b));
  };
  auto cdf_pow = [&](double x) { return std::exp(md * log_cdf(x)); };
  auto survival_pow = [&](double x) { return -std::expm1(md * log_cdf(x)); };
  // Truncation at the 1 - 1e-12 quantile of the max (upper) and where F^m
  // drops below ~1e-15 (lower).
  const double x_max = b * (std::log(md) + 30.0);
  const double x_min = std::min(0.0, b * (std::log(2.0) - 36.0 / md));
  const double tol = 1e-12 * b * (1.0 + std::log(md));
  MaxMoments out;
  const double pos_mean = integrate([&](double x) { return survival_pow(x); }, 0.0,
                                    x_max, tol);
  const double neg_mean =
      x_min < 0.0 ? integrate([&](double x) { return cdf_pow(x); }, x_min, 0.0, tol)
                  : 0.0;
  out.mean = pos_mean - neg_mean;
  const double tol2 = tol * b * 10.0;
  const double pos_m2 = integrate([&](double x) { return 2.0 * x * survival_pow(x); },
                                  0.0, x_max, tol2);
  const double neg_m2 =
      x_min < 0.0
          ? integrate([&](double x) { return -2.0 * x * cdf_pow(x); }, x_min, 0.0, tol2)
          : 0.0;
  out.second_moment = pos_m2 + neg_m2;
  return out;
}

namespace {

struct ThresholdoutIngredients {
  double mse;
  double xi;
};

ThresholdoutIngredients thresholdout_mse(const BoundParams& p) {
  p.validate();
  if (!p.sigma || !p.threshold || !p.holdout || !p.budget_b) {
    throw ParameterError("thresholdout bound needs sigma, threshold, holdout, budget");
  }
  const double sigma = *p.sigma;
  const double t = *p.threshold;
  const double h = dbl(*p.holdout);
  const double budget = dbl(*p.budget_b);
  const MaxMoments w = laplace_max_moments(4.0 * sigma, p.k);
  const MaxMoments y = laplace_max_moments(2.0 * sigma, *p.budget_b);
  // W-max and Y-max are independent, so the cross term factorizes.
  const double sum_mean = w.mean + y.mean;
  const double sum_m2 = w.second_moment + 2.0 * w.mean * y.mean + y.second_moment;
  const double psi = sum_m2 + 2.0 * t * sum_mean;
  const double xi = min_lambda_objective(2.0 * budget / (sigma * sigma * h)).value;
  const double base = t * t + psi;
  return {base + xi / (4.0 * h) + std::sqrt(xi / h * base), xi};
}

}  // namespace

WidthResult thresholdout_width(const BoundParams& p) {
  const ThresholdoutIngredients ing = thresholdout_mse(p);
  WidthResult res;
  res.tau = std::sqrt(ing.mse / p.beta);
  res.optimizer = {{"xi", ing.xi}};
  return res;
}

double thresholdout_rmse_bound(const BoundParams& p) {
  return std::sqrt(thresholdout_mse(p).mse);
}

double expected_max_gaussian_sq(double sigma, std::size_t k) {
  if (!(sigma >= 0.0) || k < 1) {
    throw ParameterError("expected_max_gaussian_sq: bad parameters");
  }
  if (sigma == 0.0) return 0.0;
  const double kd = dbl(k);
  // E[max Z_i^2] = int_0^inf 2u P(max |Z_i| > u) du; the tail computed as
  // 1 - (2 Phi(u/s) - 1)^k via log1p/expm1 for stability.
  auto tail = [sigma, kd](double u) {
    const double q = 2.0 * (1.0 - normal_cdf(u / sigma));  // two-sided single tail
    if (q >= 1.0) return 1.0;
    return -std::expm1(kd * std::log1p(-q));
  };
  const double u_max = sigma * std::sqrt(2.0 * (std::log(2.0 * kd) + 34.0));
  return integrate([&](double u) { return 2.0 * u * tail(u); }, 0.0, u_max,
                   1e-12 * sigma * sigma * (1.0 + std::log(kd)));
}

namespace {

double gaussian_rmse_given_rho(const BoundParams& p, double rho) {
  const double n = dbl(p.n);
  const double first =
      min_lambda_objective(2.0 * rho * dbl(p.k) * n).value / (2.0 * n);
  const double noise_sigma = 1.0 / (n * std::sqrt(2.0 * rho));
  return std::sqrt(first + 2.0 * expected_max_gaussian_sq(noise_sigma, p.k));
}

}  // namespace

double gaussian_rmse_bound(const BoundParams& p) {
  p.validate();
  if (p.rho) return gaussian_rmse_given_rho(p, *p.rho);
  return gaussian_rmse_bound_opt(p).rmse;
}

RmseOpt gaussian_rmse_bound_opt(const BoundParams& p) {
  p.validate();
  if (p.rho) return {gaussian_rmse_given_rho(p, *p.rho), *p.rho};
  const ScalarMin m = minimize_over_log(
      [&p](double r) { return gaussian_rmse_given_rho(p, r); }, 1e-16, 100.0);
  return {m.value, m.x};
}

double sample_split_width(const BoundParams& p) {
  p.validate();
  return std::sqrt(dbl(p.k) * std::log(2.0 * dbl(p.k) / p.beta) / (2.0 * dbl(p.n)));
}

namespace {

double discretization_width_at(const BoundParams& p, double gamma) {
  // Per-query budget beta_i = beta / ((floor(1/gamma)+1)^{i-1} i (i+1)); the
  // worst index is i = k. Log space: the grid count power overflows fast.
  const double grid_points = std::floor(1.0 / gamma) + 1.0;
  const double kd = dbl(p.k);
  const double log_beta_k = std::log(p.beta) - (kd - 1.0) * std::log(grid_points) -
                            std::log(kd) - std::log(kd + 1.0);
  const double hoeffding =
      std::sqrt((std::log(2.0) - log_beta_k) / (2.0 * dbl(p.n)));
  return gamma / 2.0 + hoeffding;
}

}  // namespace

WidthResult discretization_width(const BoundParams& p, std::optional<double> gamma) {
  p.validate();
  WidthResult res;
  if (gamma) {
    if (!(*gamma > 0.0 && *gamma < 1.0)) throw ParameterError("gamma must be in (0,1)");
    res.tau = discretization_width_at(p, *gamma);
    res.optimizer = {{"gamma", *gamma}};
    return res;
  }
  double best = kInf;
  double best_gamma = 0.5;
  const int npts = 2048;
  for (int i = 0; i < npts; ++i) {
    const double g =
        std::exp(std::log(1e-6) + (std::log(0.999) - std::log(1e-6)) * i / (npts - 1));
    const double v = discretization_width_at(p, g);
    if (v < best) {
      best = v;
      best_gamma = g;
    }
  }
  res.tau = best;
  res.optimizer = {{"gamma", best_gamma}};
  return res;
}

}  // namespace adax
