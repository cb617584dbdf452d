// Copyright 2026 The mipll Authors.
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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mipll/wmc.hpp"

namespace mipll {
namespace {

// Random formula with the given number of disjuncts over M positions.
DnfFormula random_formula(int disjuncts, int M, int c, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pos(0, M - 1), lab(0, c - 1);
  std::vector<std::vector<LabelVariable>> conj(disjuncts);
  for (auto& cj : conj) {
    for (int j = 0; j < 2; ++j) cj.push_back({pos(rng), lab(rng)});
  }
  return make_formula(conj, false);
}

WeightTable random_weights(int M, int c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.01, 0.99);
  WeightTable w(M, std::vector<double>(c));
  for (auto& row : w)
    for (auto& v : row) v = u(rng);
  return w;
}

void BM_InclusionExclusion(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const DnfFormula phi = random_formula(static_cast<int>(state.range(0)), 4, 4, rng);
  const WeightTable w = random_weights(4, 4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(wmc_inclusion_exclusion(phi, w));
}
BENCHMARK(BM_InclusionExclusion)->DenseRange(4, 16, 4);

void BM_BruteForce(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const DnfFormula phi = random_formula(static_cast<int>(state.range(0)), 4, 4, rng);
  const WeightTable w = random_weights(4, 4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(wmc_brute_force(phi, w));
}
BENCHMARK(BM_BruteForce)->DenseRange(4, 16, 4);

void BM_WmcWithGradient(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const DnfFormula phi = random_formula(static_cast<int>(state.range(0)), 4, 4, rng);
  const WeightTable w = random_weights(4, 4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(wmc_with_gradient(phi, w));
}
BENCHMARK(BM_WmcWithGradient)->DenseRange(4, 12, 4);

}  // namespace
}  // namespace mipll
