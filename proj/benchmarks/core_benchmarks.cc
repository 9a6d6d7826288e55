// Copyright 2026 The coevgan Authors.
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

// Micro-benchmarks of the training hot path and the metrics.

#include <random>

#include <benchmark/benchmark.h>

#include "coevgan/coevolution.h"
#include "coevgan/datasets.h"
#include "coevgan/metrics.h"
#include "coevgan/nn.h"
#include "coevgan/records.h"
#include "coevgan/wire.h"

namespace coevgan {
namespace {

const SyntheticDistribution& Ring() {
  static const SyntheticDistribution ring =
      SyntheticDistribution::GaussianRing(8, 2.0, 0.02);
  return ring;
}

void BM_GeneratorForward(benchmark::State& state) {
  const NetworkShape shape = NetworkShape::DefaultGenerator();
  std::mt19937_64 rng(1);
  const ParameterVector params = InitializeParameters(shape, rng);
  const Batch z = SampleLatents(static_cast<int>(state.range(0)),
                                shape.input_dim, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(GeneratorForward(params, shape, z));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GeneratorForward)->Arg(100)->Arg(1000);

void BM_ComputeGradients(benchmark::State& state) {
  const NetworkShapes shapes;
  const Role role = static_cast<Role>(state.range(0));
  std::mt19937_64 rng(2);
  const Individual g = MakeIndividual(Role::kGenerator, shapes.generator,
                                      OptimizerKind::kAdam, 2e-4, {}, rng);
  const Individual d = MakeIndividual(Role::kDiscriminator,
                                      shapes.discriminator,
                                      OptimizerKind::kAdam, 2e-4, {}, rng);
  const Batch real = Ring().Sample(100, rng);
  const Batch z = SampleLatents(100, shapes.generator.input_dim, rng);
  const Individual& net = role == Role::kGenerator ? g : d;
  const Individual& opponent = role == Role::kGenerator ? d : g;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeGradients(net, opponent, shapes, real, z));
  }
  state.SetLabel(RoleName(role));
}
BENCHMARK(BM_ComputeGradients)
    ->Arg(static_cast<int>(Role::kGenerator))
    ->Arg(static_cast<int>(Role::kDiscriminator));

// One coevolution step with the neighborhood size as argument.
void BM_StepGanCoev(benchmark::State& state) {
  const NetworkShapes shapes;
  const int members = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  Neighborhood nbh;
  for (int i = 0; i < members; ++i) {
    nbh.generators.push_back(MakeIndividual(
        Role::kGenerator, shapes.generator, OptimizerKind::kAdam, 2e-4,
        {0, i}, rng));
    nbh.discriminators.push_back(MakeIndividual(
        Role::kDiscriminator, shapes.discriminator, OptimizerKind::kAdam,
        2e-4, {0, i}, rng));
  }
  nbh.weights_g = MixtureWeights::Uniform(members);
  nbh.weights_d = MixtureWeights::Uniform(members);
  const std::vector<Minibatch> batches = GetMinibatches(Ring(), 100, 20, 4);
  const CoevParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        StepGanCoev(nbh, params, shapes, batches, rng));
  }
}
BENCHMARK(BM_StepGanCoev)->Arg(1)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_FrechetProxy(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const Batch a = Ring().Sample(static_cast<int>(state.range(0)), rng);
  const Batch b = Ring().Sample(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(FrechetProxy(a, b));
}
BENCHMARK(BM_FrechetProxy)->Arg(1000)->Arg(10000);

void BM_SnapshotRoundTrip(benchmark::State& state) {
  const NetworkShapes shapes;
  std::mt19937_64 rng(6);
  CellSnapshot s;
  s.generator = MakeIndividual(Role::kGenerator, shapes.generator,
                               OptimizerKind::kAdam, 2e-4, {}, rng);
  s.discriminator = MakeIndividual(Role::kDiscriminator, shapes.discriminator,
                                   OptimizerKind::kAdam, 2e-4, {}, rng);
  s.weights_g = MixtureWeights::Uniform(5);
  s.weights_d = MixtureWeights::Uniform(5);
  std::int64_t bytes = 0;
  for (auto _ : state) {
    const std::string wire = ToJson(s).dump();
    bytes += static_cast<std::int64_t>(wire.size());
    benchmark::DoNotOptimize(SnapshotFromJson(Json::parse(wire)));
  }
  state.SetBytesProcessed(bytes);
}
BENCHMARK(BM_SnapshotRoundTrip);

}  // namespace
}  // namespace coevgan

BENCHMARK_MAIN();
