// Copyright 2026 The monoest authors
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

#include <benchmark/benchmark.h>

#include "monoest/estimators.hpp"
#include "monoest/hash.hpp"
#include "monoest/hull.hpp"
#include "monoest/moments.hpp"
#include "monoest/order_table.hpp"

namespace {

using namespace monoest;

const ThresholdScheme kUnit = ThresholdScheme::pps({1.0, 1.0});

void BM_SeedFromKey(benchmark::State& state) {
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(seed_from_key("item-" + std::to_string(i++), "salt"));
  }
}
BENCHMARK(BM_SeedFromKey);

void BM_SampleVector(benchmark::State& state) {
  const DataVector v{0.6, 0.2};
  double u = 0.001;
  for (auto _ : state) {
    u = u >= 0.9999 ? 1e-4 : u + 1e-4;
    benchmark::DoNotOptimize(sample_vector(v, u, kUnit));
  }
}
BENCHMARK(BM_SampleVector);

void BM_LowerBoundCurve(benchmark::State& state) {
  const FunctionSpec f = FunctionSpec::range_plus(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lower_bound_curve(f, kUnit, {0.6, 0.2}));
  }
}
BENCHMARK(BM_LowerBoundCurve);

void BM_AnchoredHullArc(benchmark::State& state) {
  const FunctionSpec f = FunctionSpec::range_plus(2.0);
  const PiecewiseCurve curve = lower_bound_curve(f, kUnit, {0.6, 0.2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(lower_hull(curve, 1.0, 0.0));
  }
}
BENCHMARK(BM_AnchoredHullArc);

void BM_LstarEstimate(benchmark::State& state) {
  const FunctionSpec f = FunctionSpec::range_plus(1.0);
  const Outcome s = sample_vector({0.6, 0.2}, 0.4, kUnit);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lstar_estimate(f, s));
  }
}
BENCHMARK(BM_LstarEstimate);

void BM_UstarClosed(benchmark::State& state) {
  const FunctionSpec f = FunctionSpec::range_plus(2.0);
  const Outcome s = sample_vector({0.6, 0.2}, 0.4, kUnit);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ustar_estimate(f, s));
  }
}
BENCHMARK(BM_UstarClosed);

void BM_LstarMomentsClosed(benchmark::State& state) {
  const FunctionSpec f = FunctionSpec::range_plus(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(moments(EstimatorKind::lstar(), f, kUnit, {0.6, 0.2}));
  }
}
BENCHMARK(BM_LstarMomentsClosed);

void BM_LstarMomentsQuadrature(benchmark::State& state) {
  const FunctionSpec f = FunctionSpec::range_plus(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(moments(EstimatorKind::lstar(), f, kUnit, {0.6, 0.2}));
  }
}
BENCHMARK(BM_LstarMomentsQuadrature);

void BM_OrderTableBuild(benchmark::State& state) {
  std::vector<RationalVector> domain;
  const int n = static_cast<int>(state.range(0));
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) domain.push_back({Rational(i), Rational(j)});
  }
  std::vector<Rational> pis;
  for (int i = 1; i <= n; ++i) pis.emplace_back(i, n + 1);
  const FunctionSpec f = FunctionSpec::range_plus(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(order_optimal_build(f, domain, pis, VectorOrder::ascending_f()));
  }
}
BENCHMARK(BM_OrderTableBuild)->Arg(3)->Arg(6)->Arg(9);

}  // namespace

BENCHMARK_MAIN();
