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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "adax/bounds.hpp"
#include "adax/errors.hpp"
#include "adax/numeric.hpp"
#include "adax/rng.hpp"
#include "test_oracles.hpp"

using namespace adax;

namespace {

BoundParams params(std::size_t n, std::size_t k, double beta) {
  BoundParams p;
  p.n = n;
  p.k = k;
  p.beta = beta;
  return p;
}

}  // namespace

TEST_CASE("min_lambda_objective against a dense grid") {
  // B = 0: the objective tends to 1 as lambda -> 0+.
  const LambdaMin zero = min_lambda_objective(0.0);
  CHECK(zero.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(zero.lambda_star < 1e-6);

  // B = 1: frozen from the grid oracle (and the stationary condition
  // e^u = 2 + u): 3.1461932206205826 at lambda* = 0.68215556710062732.
  const LambdaMin one = min_lambda_objective(1.0);
  CHECK(one.value == doctest::Approx(3.1461932206205826).epsilon(1e-10));
  CHECK(one.lambda_star == doctest::Approx(0.68215556710062732).epsilon(1e-6));
  // Dense 10^6-point grid oracle, run here.
  double grid_best = 1e300;
  for (int i = 1; i < 1000000; ++i) {
    const double lam = static_cast<double>(i) / 1000000.0;
    grid_best = std::min(grid_best, (1.0 - std::log1p(-lam)) / lam);
  }
  CHECK(one.value <= grid_best + 1e-9);
  CHECK(grid_best - one.value <= 1e-9);

  // Nondecreasing in B.
  double prev = zero.value;
  for (double b = 0.25; b < 30.0; b *= 1.7) {
    const double v = min_lambda_objective(b).value;
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("rzcw width: algebraic second term and dense-grid oracle") {
  // rho = ln(4k/beta) makes the second term exactly 1/(2n).
  BoundParams p = params(100, 10, 0.05);
  p.rho = std::log(4.0 * 10 / 0.05);
  const WidthResult w = gaussian_width_rzcw(p);
  const double first =
      std::sqrt(min_lambda_objective(2.0 * *p.rho * 10 * 100).value / (2.0 * 100 * 0.05));
  CHECK(w.tau - first == doctest::Approx(1.0 / 200.0).epsilon(1e-10));

  // n=5000, k=1000, beta=0.05 with rho optimized: 2-D dense grid over
  // (rho, lambda), 2000x2000 log/linear points.
  const WidthResult opt = gaussian_width_rzcw(params(5000, 1000, 0.05));
  CHECK(opt.tau == doctest::Approx(0.454911670208).epsilon(1e-6));
  double grid_best = 1e300;
  for (const double rho : adax_test::log_grid(1e-9, 1e-3, 2000)) {
    const double second = (1.0 / 10000.0) * std::sqrt(std::log(4000 / 0.05) / rho);
    const double b2 = 2.0 * rho * 1000 * 5000;
    double inner_best = 1e300;
    for (int i = 1; i < 2000; ++i) {
      const double lam = static_cast<double>(i) / 2000.0;
      inner_best = std::min(inner_best, (b2 - std::log1p(-lam)) / lam);
    }
    grid_best = std::min(grid_best, std::sqrt(inner_best / (2.0 * 5000 * 0.05)) + second);
  }
  CHECK(opt.tau <= grid_best + 1e-4);
  CHECK(grid_best - opt.tau <= 1e-4);

  // Decreasing in n.
  double prev = 1e300;
  for (const std::size_t n : {1000u, 10000u, 100000u, 1000000u}) {
    const double tau = gaussian_width_rzcw(params(n, 100, 0.05)).tau;
    CHECK(tau < prev);
    prev = tau;
  }
}

TEST_CASE("local optimality of the rzcw optimizer") {
  const BoundParams p = params(20000, 500, 0.05);
  const WidthResult w = gaussian_width_rzcw(p);
  const double rho_star = w.optimizer.at("rho");
  for (const double factor : {0.99, 1.01}) {
    BoundParams q = p;
    q.rho = rho_star * factor;
    CHECK(gaussian_width_rzcw(q).tau >= w.tau - 1e-9);
  }
}

TEST_CASE("local optimality certificates for the grid optimizers") {
  // Nudging the returned optimizer by one grid step never improves the
  // objective beyond the solver tolerance.
  const BoundParams p = params(200000, 2000, 0.05);
  const WidthResult bn = bnsssu_width(BoundMech::kGaussian, p);
  const double pref = 1.0 / (1.0 - std::pow(0.95, 20.0));
  auto bn_inner = [&](double rho, double delta) {
    const double composed = 2000.0 * rho;
    const double arg = std::log(std::sqrt(M_PI * composed) / delta);
    if (arg < 0.0) return 1e300;
    const double xi = composed + 2.0 * std::sqrt(composed * arg);
    if (xi > 600.0) return 1e300;
    return pref * (std::expm1(xi) + 6.0 * delta * 20.0 +
                   std::sqrt(std::log(2000.0 / delta) / (2e5 * 2e5 * rho)));
  };
  const double rho0 = bn.optimizer.at("rho");
  const double delta0 = bn.optimizer.at("delta");
  for (const double fr : {0.98, 1.0, 1.02}) {
    for (const double fd : {0.98, 1.0, 1.02}) {
      CHECK(bn_inner(rho0 * fr, delta0 * fd) >= bn.tau - 1e-6);
    }
  }

  const WidthResult disc = discretization_width(params(5000, 100, 0.05));
  const double gamma0 = disc.optimizer.at("gamma");
  for (const double f : {0.98, 1.02}) {
    CHECK(discretization_width(params(5000, 100, 0.05), gamma0 * f).tau >=
          disc.tau - 1e-9);
  }
}

TEST_CASE("gaussian and laplace tail widths") {
  const double beta_e2 = 2.0 / (M_E * M_E);
  CHECK(gaussian_tail_width(1.0, 1, beta_e2) == doctest::Approx(2.0));
  CHECK(gaussian_tail_width(0.0, 5, 0.1) == doctest::Approx(0.0));
  CHECK(gaussian_tail_width(0.01, 10000, 0.05) ==
        doctest::Approx(0.050792164407692096).epsilon(1e-12));
  CHECK(laplace_tail_width(1.0, 1, 1.0 / M_E) == doctest::Approx(1.0));
  CHECK(laplace_tail_width(0.0, 5, 0.1) == doctest::Approx(0.0));
  CHECK(laplace_tail_width(0.002, 500, 0.05) ==
        doctest::Approx(0.018420680743952365).epsilon(1e-12));
}

TEST_CASE("advanced composition closed form") {
  CHECK(advanced_composition(0.3, 0, 0.5) == doctest::Approx(0.0));
  // delta = 1 kills the sqrt term.
  const double first_only = advanced_composition(0.2, 50, 1.0);
  CHECK(first_only ==
        doctest::Approx((std::exp(0.2) - 1.0) / (std::exp(0.2) + 1.0) * 0.2 * 50));
  CHECK(advanced_composition(0.1, 100, 1e-6) ==
        doctest::Approx(5.7561055193357317).epsilon(1e-9));
}

TEST_CASE("zcdp conversion closed form") {
  CHECK(zcdp_to_dp(1e-12, 0.3) == doctest::Approx(0.0).epsilon(1e-5));
  CHECK(zcdp_to_dp(1.0 / M_PI, 1.0) == doctest::Approx(1.0 / M_PI).epsilon(1e-12));
  CHECK(zcdp_to_dp(0.01, 1e-5) == doctest::Approx(0.63554633129452155).epsilon(1e-9));
}

TEST_CASE("dfhprr program: floor, oracle, vacuity") {
  // Feasibility floor holds whenever the program is feasible.
  for (const std::size_t n : {1000u, 100000u}) {
    const BoundParams p = params(n, 100, 0.05);
    const WidthResult w = dfhprr_width(BoundMech::kGaussian, p);
    if (!w.vacuous()) {
      CHECK(w.tau >= std::sqrt(48.0 / n * std::log(8.0 / 0.05)) - 1e-12);
    }
  }

  // n=1e5, k=100 gaussian vs a dense rho x tau feasibility-scan oracle.
  const BoundParams p = params(100000, 100, 0.05);
  const WidthResult w = dfhprr_width(BoundMech::kGaussian, p);
  double oracle = 1e300;
  for (const double rho : adax_test::log_grid(1e-12, 1.0, 1200)) {
    const double tau_prime =
        (1.0 / (2.0 * 1e5)) * std::sqrt(std::log(4.0 * 100 / 0.05) / rho);
    const double floor_tau = std::sqrt(48.0 / 1e5 * std::log(8.0 / 0.05)) + tau_prime;
    const double a = 4.0 * rho * 100;
    const double b = 64.0 * rho * 100 * std::log(std::sqrt(M_PI * rho * 100));
    const double rhs = 64.0 * rho * 100 * std::log(16.0 / 0.05);
    for (double tau = floor_tau; tau < 3.0; tau += 1e-4) {
      const double u = tau - tau_prime;
      if (u >= a && ((u - a) * (u - a) - b) * u >= rhs) {
        oracle = std::min(oracle, tau);
        break;
      }
    }
  }
  CHECK(w.tau == doctest::Approx(oracle).epsilon(2e-3));

  // Vacuity regime from the comparison figure: small n, huge k.
  const WidthResult v = dfhprr_width(BoundMech::kGaussian, params(1000, 10000, 0.05));
  CHECK((v.vacuous() || v.tau >= 1.0));

  // Laplace variant returns something finite and above the floor at the
  // friendly corner.
  const WidthResult lap = dfhprr_width(BoundMech::kLaplace, params(1000000, 100, 0.05));
  CHECK_FALSE(lap.vacuous());
  CHECK(lap.tau >= std::sqrt(48.0 / 1e6 * std::log(8.0 / 0.05)));
}

TEST_CASE("bnsssu width: prefactor, oracle, monotonicity") {
  // beta = 0.5 prefactor is 4/3; check through an inner evaluation at fixed
  // (rho, delta) by comparing two widths that differ only in beta's
  // prefactor... simplest: the prefactor function is exercised via the full
  // solver at two betas with identical inner objectives, so here just check
  // the printed value algebraically.
  CHECK(1.0 / (1.0 - std::pow(1.0 - 0.5, std::floor(1.0 / 0.5))) ==
        doctest::Approx(4.0 / 3.0));

  // Monotone nondecreasing in k.
  double prev = 0.0;
  for (const std::size_t k : {10u, 100u, 1000u, 10000u}) {
    const double tau = bnsssu_width(BoundMech::kGaussian, params(1000000, k, 0.05)).tau;
    CHECK(tau >= prev - 1e-12);
    prev = tau;
  }

  // n=1e6, k=1e4 gaussian vs a 2000x2000 dense grid.
  const WidthResult w = bnsssu_width(BoundMech::kGaussian, params(1000000, 10000, 0.05));
  double oracle = 1e300;
  const double pref = 1.0 / (1.0 - std::pow(0.95, 20.0));
  for (const double rho : adax_test::log_grid(1e-14, 1e-2, 2000)) {
    for (const double delta : adax_test::log_grid(1e-12, 0.5, 2000)) {
      const double composed = 10000.0 * rho;
      const double arg = std::log(std::sqrt(M_PI * composed) / delta);
      if (arg < 0.0) continue;
      const double xi = composed + 2.0 * std::sqrt(composed * arg);
      if (xi > 600.0) continue;
      const double v = std::expm1(xi) + 6.0 * delta * 20.0 +
                       std::sqrt(std::log(10000.0 / delta) / (1e12 * rho));
      oracle = std::min(oracle, pref * v);
    }
  }
  CHECK(w.tau <= oracle + 1e-3);
  CHECK(oracle - w.tau <= 1e-3);
}

TEST_CASE("xr17 width and its relation to rzcw") {
  // Spot check at n=k=1, rho=1 with beta = 4/e^2, which collapses both log
  // terms to 2. (The spec's 4/e violates the beta-in-(0,1) invariant, so the
  // nearest admissible collapse point is used; see the decisions ledger.)
  const double beta = 4.0 / (M_E * M_E);
  BoundParams p = params(1, 1, beta);
  p.rho = 1.0;
  const double direct =
      std::sqrt(2.0 * (2.0 / beta + 2.0)) + 0.5 * std::sqrt(2.0);
  CHECK(xr17_width(p).tau == doctest::Approx(direct).epsilon(1e-12));

  // tau ~ 1/sqrt(beta) as beta -> 0 (dominant first term).
  const double t1 = xr17_width([&] {
                      BoundParams q = params(1000, 10, 1e-4);
                      q.rho = 1.0;
                      return q;
                    }()).tau;
  const double t2 = xr17_width([&] {
                      BoundParams q = params(1000, 10, 1e-6);
                      q.rho = 1.0;
                      return q;
                    }()).tau;
  CHECK(t2 / t1 == doctest::Approx(10.0).epsilon(0.05));

  // rzcw is tighter whenever the information budget rho*k*n >= 1.
  for (const double rho : {1e-6, 1e-4, 1e-2}) {
    for (const std::size_t k : {10u, 1000u}) {
      BoundParams q = params(50000, k, 0.05);
      q.rho = rho;
      if (rho * k * 50000 < 1.0) continue;
      CHECK(gaussian_width_rzcw(q).tau <= xr17_width(q).tau + 1e-12);
    }
  }
}

TEST_CASE("laplace max moments: closed forms and monotonicity") {
  const MaxMoments one = laplace_max_moments(1.0, 1);
  CHECK(one.mean == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(one.second_moment == doctest::Approx(2.0).epsilon(1e-8));

  // m=2, b=1: E[max] = 3/4 exactly, second moment 2 (from the quadrature
  // oracle run at high precision).
  const MaxMoments two = laplace_max_moments(1.0, 2);
  CHECK(two.mean == doctest::Approx(0.75).epsilon(1e-6));
  CHECK(two.second_moment == doctest::Approx(2.0).epsilon(1e-6));

  // Mean increasing in m; Jensen: second moment >= mean^2.
  double prev = -1.0;
  for (const std::size_t m : {1u, 2u, 5u, 20u, 100u, 5000u}) {
    const MaxMoments mm = laplace_max_moments(0.05, m);
    CHECK(mm.mean > prev);
    CHECK(mm.second_moment >= mm.mean * mm.mean - 1e-12);
    prev = mm.mean;
  }
}

TEST_CASE("laplace max moments against an inverse-CDF Monte Carlo oracle") {
  // Independent route: sample the max directly through F_max^{-1}(u) with
  // F_max = F^m, i.e. x = F^{-1}(u^{1/m}).
  const double b = 0.08;
  const std::size_t m = 1000;
  const MaxMoments quad = laplace_max_moments(b, m);
  Rng rng(31337u);
  const int draws = 2000000;
  double mean = 0.0, sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double u = std::pow(rng.uniform_pos(), 1.0 / static_cast<double>(m));
    const double x = u < 0.5 ? b * std::log(2.0 * u) : -b * std::log(2.0 * (1.0 - u));
    mean += x;
    sq += x * x;
  }
  mean /= draws;
  sq /= draws;
  CHECK(quad.mean == doctest::Approx(mean).epsilon(0.005));
  CHECK(quad.second_moment == doctest::Approx(sq).epsilon(0.005));
}

TEST_CASE("thresholdout width assembly") {
  BoundParams p = params(5000, 1000, 0.05);
  p.sigma = 0.02;
  p.threshold = 0.04;
  p.holdout = 2500;
  p.budget_b = 100;
  // Frozen from the high-precision quadrature assembly: mse = 0.8378765641,
  // width = sqrt(mse / beta) = 4.093596375.
  CHECK(thresholdout_rmse_bound(p) == doctest::Approx(std::sqrt(0.8378765641)).epsilon(1e-4));
  CHECK(thresholdout_width(p).tau == doctest::Approx(4.093596375).epsilon(1e-4));
  // width = sqrt(mse/beta) algebraic relation.
  CHECK(thresholdout_width(p).tau ==
        doctest::Approx(thresholdout_rmse_bound(p) / std::sqrt(0.05)).epsilon(1e-10));

  // Independent assembly from the Monte-Carlo max-moments oracle.
  Rng rng(777u);
  auto mc_moments = [&rng](double scale, std::size_t m) {
    double mean = 0.0, sq = 0.0;
    const int draws = 2000000;
    for (int i = 0; i < draws; ++i) {
      const double u = std::pow(rng.uniform_pos(), 1.0 / static_cast<double>(m));
      const double x =
          u < 0.5 ? scale * std::log(2.0 * u) : -scale * std::log(2.0 * (1.0 - u));
      mean += x;
      sq += x * x;
    }
    return MaxMoments{mean / draws, sq / draws};
  };
  const MaxMoments w_mc = mc_moments(4.0 * 0.02, 1000);
  const MaxMoments y_mc = mc_moments(2.0 * 0.02, 100);
  const double psi = w_mc.second_moment + 2.0 * w_mc.mean * y_mc.mean +
                     y_mc.second_moment + 2.0 * 0.04 * (w_mc.mean + y_mc.mean);
  const double xi = min_lambda_objective(2.0 * 100 / (0.02 * 0.02 * 2500)).value;
  const double base = 0.04 * 0.04 + psi;
  const double mse_mc = base + xi / (4.0 * 2500) + std::sqrt(xi / 2500 * base);
  CHECK(thresholdout_width(p).tau ==
        doctest::Approx(std::sqrt(mse_mc / 0.05)).epsilon(0.005));

  // 1/sqrt(beta) scaling of the width.
  BoundParams p2 = p;
  p2.beta = 0.05 / 4.0;
  CHECK(thresholdout_width(p2).tau == doctest::Approx(2.0 * thresholdout_width(p).tau)
                                          .epsilon(1e-10));

  // sigma = 0 is rejected.
  BoundParams bad = p;
  bad.sigma = 0.0;
  CHECK_THROWS_AS(thresholdout_width(bad), ParameterError);
}

TEST_CASE("expected max gaussian squared: closed form at k=1 and MC oracle") {
  CHECK(expected_max_gaussian_sq(0.37, 1) == doctest::Approx(0.37 * 0.37).epsilon(1e-6));
  // Frozen from the high-precision quadrature: k=100, sigma=1 -> 7.70584869.
  CHECK(expected_max_gaussian_sq(1.0, 100) == doctest::Approx(7.70584869223).epsilon(1e-6));
  // Monte Carlo cross-check within 1%.
  Rng rng(246810u);
  const int reps = 400000;
  double acc = 0.0;
  for (int i = 0; i < reps; ++i) {
    double best = 0.0;
    for (int j = 0; j < 100; ++j) {
      const double z = rng.normal();
      best = std::max(best, z * z);
    }
    acc += best;
  }
  CHECK(expected_max_gaussian_sq(1.0, 100) == doctest::Approx(acc / reps).epsilon(0.01));
}

TEST_CASE("gaussian rmse bound: floor and k=1 reduction") {
  // With B >= 0 the first term is at least 1/(2n).
  for (const std::size_t k : {1u, 10u, 1000u}) {
    const double rmse = gaussian_rmse_bound(params(500, k, 0.05));
    CHECK(rmse >= std::sqrt(1.0 / (2.0 * 500)) - 1e-12);
  }
  // k=1 with fixed rho: E[max Z^2] reduces to the noise variance.
  BoundParams p = params(1000, 1, 0.05);
  p.rho = 0.01;
  const double sigma2 = 1.0 / (2.0 * 1000.0 * 1000.0 * 0.01);
  const double want = std::sqrt(
      min_lambda_objective(2.0 * 0.01 * 1 * 1000).value / (2.0 * 1000.0) + 2.0 * sigma2);
  CHECK(gaussian_rmse_bound(p) == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("sample split width") {
  CHECK(sample_split_width(params(1, 1, 2.0 / (M_E * M_E))) == doctest::Approx(1.0));
  CHECK(sample_split_width(params(5000, 100, 0.05)) ==
        doctest::Approx(0.28799391729864761).epsilon(1e-12));
  // Doubling k more than doubles the squared width.
  const double w1 = sample_split_width(params(5000, 100, 0.05));
  const double w2 = sample_split_width(params(5000, 200, 0.05));
  CHECK(w2 * w2 > 2.0 * w1 * w1);
}

TEST_CASE("discretization width: k=1 reduction and grid oracle") {
  // k=1: width = gamma/2 + sqrt(ln(4/beta)/(2n)), optimized gamma -> 0.
  const WidthResult w1 = discretization_width(params(10000, 1, 0.05));
  CHECK(w1.tau == doctest::Approx(std::sqrt(std::log(4.0 / 0.05) / 20000.0))
                      .epsilon(1e-3));
  CHECK(w1.optimizer.at("gamma") < 1e-4);

  // Nondecreasing in k at fixed gamma.
  double prev = 0.0;
  for (const std::size_t k : {1u, 5u, 25u, 125u}) {
    const double tau = discretization_width(params(5000, k, 0.05), 0.05).tau;
    CHECK(tau >= prev - 1e-12);
    prev = tau;
  }

  // 200-point gamma grid oracle at n=5000, k=100.
  const WidthResult opt = discretization_width(params(5000, 100, 0.05));
  double oracle = 1e300;
  for (const double g : adax_test::log_grid(1e-6, 0.999, 200)) {
    oracle = std::min(oracle, discretization_width(params(5000, 100, 0.05), g).tau);
  }
  CHECK(opt.tau <= oracle + 1e-12);
  CHECK(oracle - opt.tau <= 0.005);
}

TEST_CASE("all widths positive, finite, and nonincreasing in n") {
  const std::vector<std::size_t> ns{1000, 10000, 100000, 1000000};
  for (const std::string name : {"rzcw", "bnsssu", "xr17", "split", "discretize"}) {
    double prev = 1e300;
    for (const std::size_t n : ns) {
      BoundParams p = params(n, 200, 0.05);
      double tau = 0.0;
      if (name == "rzcw") {
        tau = gaussian_width_rzcw(p).tau;
      } else if (name == "bnsssu") {
        tau = bnsssu_width(BoundMech::kGaussian, p).tau;
      } else if (name == "xr17") {
        tau = xr17_width(p).tau;
      } else if (name == "split") {
        tau = sample_split_width(p);
      } else {
        tau = discretization_width(p).tau;
      }
      CHECK(tau > 0.0);
      CHECK(std::isfinite(tau));
      CHECK(tau <= prev * (1.0 + 1e-9));
      prev = tau;
    }
  }
}

TEST_CASE("bound parameter validation") {
  CHECK_THROWS_AS(gaussian_width_rzcw(params(0, 1, 0.05)), ParameterError);
  CHECK_THROWS_AS(gaussian_width_rzcw(params(10, 1, 1.5)), ParameterError);
  BoundParams p = params(10, 1, 0.5);
  p.rho = -1.0;
  CHECK_THROWS_AS(gaussian_width_rzcw(p), ParameterError);
  CHECK_THROWS_AS(min_lambda_objective(-0.5), ParameterError);
}
