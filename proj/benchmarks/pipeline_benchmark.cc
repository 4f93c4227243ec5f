// Copyright 2026 The dpeuler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <vector>

#include "benchmark/benchmark.h"
#include "dpeuler/histogram.h"
#include "dpeuler/inference.h"
#include "dpeuler/ingest.h"
#include "dpeuler/pipeline.h"
#include "dpeuler/privacy.h"
#include "dpeuler/rounding.h"

namespace dpeuler {
namespace {

std::vector<ConvexBody> Bodies(int64_t count) {
  SyntheticConfig config;
  return GenerateSynthetic(SyntheticKind::kUniform, count, config, 1).value();
}

GridPartition Grid(int n) {
  return GridPartition::Create({0, 0}, 20, n).value();
}

void BM_BuildHistogram(benchmark::State& state) {
  const std::vector<ConvexBody> bodies = Bodies(state.range(0));
  const GridPartition g = Grid(20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildHistogram(bodies, g));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildHistogram)->Arg(1000)->Arg(10000);

void BM_Infer(benchmark::State& state) {
  const GridPartition g = Grid(static_cast<int>(state.range(0)));
  const EulerHistogram raw = BuildHistogram(Bodies(10000), g).histogram;
  const ConstraintSet cs = BuildConstraints(g);
  const PrivacyParams p = PrivacyParams::Create(1.0, 2.0, 1.0).value();
  const EulerHistogram noisy = Perturb(raw, p, CounterUniformSource(3)).value();
  const auto objective = static_cast<InferenceObjective>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Infer(noisy, cs, objective));
  }
}
BENCHMARK(BM_Infer)
    ->ArgsProduct({{10, 20}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

void BM_RoundAndRepair(benchmark::State& state) {
  const GridPartition g = Grid(20);
  const ConstraintSet cs = BuildConstraints(g);
  const EulerHistogram raw = BuildHistogram(Bodies(10000), g).histogram;
  const PrivacyParams p = PrivacyParams::Create(1.0, 2.0, 1.0).value();
  const EulerHistogram consistent =
      Infer(Perturb(raw, p, CounterUniformSource(3)).value(), cs)
          .value()
          .histogram;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Repair(RoundCounts(consistent).value(), cs));
  }
}
BENCHMARK(BM_RoundAndRepair);

void BM_RangeQuery(benchmark::State& state) {
  const GridPartition g = Grid(20);
  const EulerHistogram raw = BuildHistogram(Bodies(10000), g).histogram;
  const RangeQueryIndex index(raw);
  int i = 0;
  for (auto _ : state) {
    const int lo = i++ % 10;
    benchmark::DoNotOptimize(index.Count({lo, lo + 9, lo, lo + 9}));
  }
}
BENCHMARK(BM_RangeQuery);

}  // namespace
}  // namespace dpeuler

BENCHMARK_MAIN();
