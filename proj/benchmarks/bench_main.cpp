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

#include <benchmark/benchmark.h>

#include "adax/bounds.hpp"
#include "adax/gnc.hpp"
#include "adax/query.hpp"

namespace {

using namespace adax;

void BM_CorrelationEval(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const SampleMatrix x = sample_dataset(ProductDistribution::uniform(64), n, 7u);
  std::size_t j = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_query(CorrelationQuery{1 + (j++ % 63)}, x));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_CorrelationEval)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_SignAgreementEval(benchmark::State& state) {
  const std::size_t n = 5000;
  const std::size_t support = state.range(0);
  const SampleMatrix x =
      sample_dataset(ProductDistribution::uniform(support + 1), n, 11u);
  SignAgreementQuery q;
  for (std::size_t i = 1; i <= support; ++i) {
    q.weights.emplace_back(i, i % 2 ? 0.4 : -0.3);
  }
  const QuerySpec spec{q};
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_query(spec, x));
  }
  state.SetItemsProcessed(state.iterations() * n * support);
}
BENCHMARK(BM_SignAgreementEval)->Arg(64)->Arg(512)->Arg(4096);

void BM_MinLambdaObjective(benchmark::State& state) {
  double b = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_lambda_objective(b).value);
    b = b < 1e6 ? b * 1.001 : 0.1;
  }
}
BENCHMARK(BM_MinLambdaObjective);

void BM_RzcwOptimized(benchmark::State& state) {
  BoundParams p;
  p.n = state.range(0);
  p.k = 1000;
  p.beta = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gaussian_width_rzcw(p).tau);
  }
}
BENCHMARK(BM_RzcwOptimized)->Arg(5000)->Arg(1000000);

void BM_BnsssuWidth(benchmark::State& state) {
  BoundParams p;
  p.n = 1000000;
  p.k = 10000;
  p.beta = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bnsssu_width(BoundMech::kGaussian, p).tau);
  }
}
BENCHMARK(BM_BnsssuWidth);

void BM_HoldoutTolMgf(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(holdout_tol_mgf(1e-4, 0.9, 0.05, 0.85, 2000));
  }
}
BENCHMARK(BM_HoldoutTolMgf);

void BM_LaplaceMaxMoments(benchmark::State& state) {
  const std::size_t m = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(laplace_max_moments(0.04, m).mean);
  }
}
BENCHMARK(BM_LaplaceMaxMoments)->Arg(100)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
