// Copyright 2026 The ctcdec Authors. All Rights Reserved.
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

#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "ctcdec/beam.h"
#include "ctcdec/char_lm.h"
#include "ctcdec/kernels.h"
#include "ctcdec/posterior.h"

namespace ctcdec {
namespace {

PosteriorMatrix RandomPosteriors(int T, int K, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> probs(static_cast<size_t>(T) * K);
  for (int t = 0; t < T; ++t) {
    double sum = 0.0;
    for (int k = 0; k < K; ++k) {
      double v = static_cast<double>(rng() >> 11) * 0x1.0p-53 + 1e-3;
      probs[t * K + k] = v * v * v;
      sum += probs[t * K + k];
    }
    for (int k = 0; k < K; ++k) probs[t * K + k] /= sum;
  }
  return PosteriorMatrix::FromProbabilities(T, K, probs);
}

void BM_PriorScaling(benchmark::State& state) {
  auto post = RandomPosteriors(static_cast<int>(state.range(0)), 48, 1);
  std::vector<PosteriorMatrix> one = {post};
  PriorVector prior = EstimatePriors(one, kDefaultPriorFloor, 1);
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) {
    if (threads == 0) {
      benchmark::DoNotOptimize(serial::ApplyPriorScaling(post, prior));
    } else {
      benchmark::DoNotOptimize(ApplyPriorScaling(post, prior, threads));
    }
  }
}
BENCHMARK(BM_PriorScaling)->Args({2000, 0})->Args({2000, 1})->Args({2000, 4});

void BM_BestPath(benchmark::State& state) {
  auto post = RandomPosteriors(static_cast<int>(state.range(0)), 48, 2);
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) {
    if (threads == 0) {
      benchmark::DoNotOptimize(serial::BestPath(post));
    } else {
      benchmark::DoNotOptimize(BestPath(post, threads));
    }
  }
}
BENCHMARK(BM_BestPath)->Args({2000, 0})->Args({2000, 1})->Args({2000, 4});

void BM_EstimatePriors(benchmark::State& state) {
  std::vector<PosteriorMatrix> all;
  for (int i = 0; i < 16; ++i) all.push_back(RandomPosteriors(500, 48, 10 + i));
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    if (threads == 0) {
      benchmark::DoNotOptimize(serial::EstimatePriors(all));
    } else {
      benchmark::DoNotOptimize(EstimatePriors(all, kDefaultPriorFloor, threads));
    }
  }
}
BENCHMARK(BM_EstimatePriors)->Arg(0)->Arg(1)->Arg(4);

void BM_BeamDecode(benchmark::State& state) {
  const int K = 29;
  auto post = RandomPosteriors(200, K, 3);
  Alphabet alphabet = Alphabet::FromLabels(std::vector<std::string>(
      {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n",
       "o", "p", "q", "r", "s", "t", "u", "v", "w", "x", "y", "z", "'", "<sp>"}));
  UniformCharLm lm(K);
  BeamConfig config;
  config.beam_width = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(BeamDecode(post, alphabet, lm, config));
}
BENCHMARK(BM_BeamDecode)->Arg(8)->Arg(32);

}  // namespace
}  // namespace ctcdec

BENCHMARK_MAIN();
