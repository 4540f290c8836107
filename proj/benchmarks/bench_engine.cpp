// Copyright 2026 The qsep Authors
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


// Throughput of the hot paths: eigensolver, separability decomposition and
// pseudomixture construction. States are drawn once per benchmark from fixed
// seeds so runs are comparable.

#include <benchmark/benchmark.h>

#include <vector>

#include "qsep/qsep.hpp"

namespace {

using namespace qsep;

constexpr std::size_t kPool = 256;

std::vector<DensityMatrix> pool(std::uint64_t seed, auto make) {
  Rng rng(seed);
  std::vector<DensityMatrix> out;
  out.reserve(kPool);
  for (std::size_t i = 0; i < kPool; ++i) out.push_back(make(rng));
  return out;
}

void BM_HermitianEig(benchmark::State& state) {
  const auto states = pool(1, [](Rng& r) { return random_mixed(r, 4); });
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermitian_eig(states[i++ % kPool].matrix()));
  }
}
BENCHMARK(BM_HermitianEig);

void BM_PartialTransposeSpectrum(benchmark::State& state) {
  const auto states = pool(2, [](Rng& r) { return random_mixed(r, 4); });
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(is_ppt(states[i++ % kPool]));
}
BENCHMARK(BM_PartialTransposeSpectrum);

// Argument: number of product terms (sets the rank class).
void BM_Decompose(benchmark::State& state) {
  const int terms = static_cast<int>(state.range(0));
  const auto states = pool(3, [terms](Rng& r) { return random_separable(r, terms); });
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(decompose(states[i++ % kPool]));
}
BENCHMARK(BM_Decompose)->Arg(1)->Arg(2)->Arg(3)->Arg(6);

void BM_FiveTerm(benchmark::State& state) {
  const auto states = pool(4, [](Rng& r) { return random_separable(r, 6); });
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(five_term_decomposition(states[i++ % kPool]));
}
BENCHMARK(BM_FiveTerm);

// Argument: rank of the entangled state.
void BM_Pseudomix(benchmark::State& state) {
  const int rank = static_cast<int>(state.range(0));
  const auto states = pool(5, [rank](Rng& r) { return random_entangled(r, rank); });
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(pseudomix(states[i++ % kPool]));
}
BENCHMARK(BM_Pseudomix)->DenseRange(1, 4);

}  // namespace

// The distribution's benchmark_main archive carries LTO bytecode tied to one
// compiler release; defining main here keeps to the shared library.
BENCHMARK_MAIN();
