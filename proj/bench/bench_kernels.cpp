// Copyright 2026 The gidl Authors
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

// OpenMP kernels against their serial references. Run with e.g.
//   OMP_NUM_THREADS=4 ./gidl_bench --benchmark_filter=CodeAll

#include <benchmark/benchmark.h>

#include <omp.h>

#include <random>

#include "gidl/data.hpp"
#include "gidl/learner.hpp"

using namespace gidl;

namespace {

ShiftDataset shift_data(Index d, Index n) {
  ShiftModel m;
  m.d = d;
  m.q = 3;
  m.s = 5;
  m.n = n;
  m.seed = 1;
  return gen_shift_dataset(m);
}

SolverConfig coder_config() {
  SolverConfig cfg;
  cfg.lambda = 0.4;
  cfg.max_iters = 5;
  return cfg;
}

void BM_CodeAllParallel(benchmark::State& state) {
  const GroupModel g = GroupModel::parse(state.range(0) == 0 ? "intshift" : "ctsshift", 31);
  const ShiftDataset ds = shift_data(31, 200);
  const GeneratorSet gens = init_generators(g, 3, 2);
  const SolverConfig cfg = coder_config();
  for (auto _ : state) {
    std::vector<SampleCodes> codes;
    benchmark::DoNotOptimize(code_all(g, gens, ds.data, cfg, codes, omp_get_max_threads()));
  }
  state.SetLabel(g.name() + ", " + std::to_string(omp_get_max_threads()) + " threads");
}
BENCHMARK(BM_CodeAllParallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CodeAllSerial(benchmark::State& state) {
  const GroupModel g = GroupModel::parse(state.range(0) == 0 ? "intshift" : "ctsshift", 31);
  const ShiftDataset ds = shift_data(31, 200);
  const GeneratorSet gens = init_generators(g, 3, 2);
  const SolverConfig cfg = coder_config();
  for (auto _ : state) {
    std::vector<SampleCodes> codes;
    benchmark::DoNotOptimize(code_all_serial(g, gens, ds.data, cfg, codes));
  }
  state.SetLabel(g.name());
}
BENCHMARK(BM_CodeAllSerial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ConvolveFft(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  const Vec a = Vec::NullaryExpr(state.range(0), [&] { return normal(rng); });
  const Vec x = Vec::NullaryExpr(state.range(0), [&] { return normal(rng); });
  for (auto _ : state) benchmark::DoNotOptimize(circular_convolve(a, x));
}
BENCHMARK(BM_ConvolveFft)->RangeMultiplier(4)->Range(16, 1024);

void BM_ConvolveDirect(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  const Vec a = Vec::NullaryExpr(state.range(0), [&] { return normal(rng); });
  const Vec x = Vec::NullaryExpr(state.range(0), [&] { return normal(rng); });
  for (auto _ : state) benchmark::DoNotOptimize(circular_convolve_direct(a, x));
}
BENCHMARK(BM_ConvolveDirect)->RangeMultiplier(4)->Range(16, 1024);

struct UpdateInputs {
  GroupModel g = GroupModel::int_shift(1);
  Dataset data;
  std::vector<SampleCodes> codes;
  GeneratorSet gens;
};

UpdateInputs update_inputs(Index d) {
  UpdateInputs in;
  in.g = GroupModel::int_shift(d);
  in.data = shift_data(d, 100).data;
  in.gens = init_generators(in.g, 3, 4);
  code_all_serial(in.g, in.gens, in.data, coder_config(), in.codes);
  return in;
}

void BM_UpdateFrequency(benchmark::State& state) {
  const UpdateInputs in = update_inputs(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(update_generators(in.g, in.codes, in.data, in.gens));
}
BENCHMARK(BM_UpdateFrequency)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_UpdateDense(benchmark::State& state) {
  const UpdateInputs in = update_inputs(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(update_generators_dense(in.g, in.codes, in.data, in.gens));
}
BENCHMARK(BM_UpdateDense)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
