// benchmarks/dsp_bench.cc

// Copyright 2026  The meetkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <vector>

#include <benchmark/benchmark.h>

#include "meetkit/fft.h"
#include "meetkit/filter.h"
#include "meetkit/resample.h"
#include "meetkit/rng.h"
#include "meetkit/stft.h"

namespace meetkit {
namespace {

std::vector<double> Noise(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (double& v : x) v = rng.Normal();
  return x;
}

void BM_RealFft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RealFft fft(n);
  const auto x = Noise(n, 1);
  std::vector<Complex> out(fft.bins());
  for (auto _ : state) {
    fft.Forward(x, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RealFft)->Arg(256)->Arg(512)->Arg(4096);

void BM_Convolve(benchmark::State& state) {
  const auto x = Noise(16000 * 4, 2);
  const auto h = Noise(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(Convolve(x, h));
  state.SetLabel("4 s signal");
}
BENCHMARK(BM_Convolve)->Arg(64)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_StftRoundTrip(benchmark::State& state) {
  const AudioBuffer x = AudioBuffer::FromChannels(
      std::vector<std::vector<double>>(static_cast<std::size_t>(state.range(0)), Noise(16000 * 10, 4)));
  for (auto _ : state) benchmark::DoNotOptimize(Istft(Stft(x)));
  state.SetLabel("10 s per channel");
}
BENCHMARK(BM_StftRoundTrip)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Resample(benchmark::State& state) {
  const AudioBuffer x = AudioBuffer::Mono(Noise(16000 * 4, 5), 16000);
  for (auto _ : state) benchmark::DoNotOptimize(ResampleByRatio(x, 10, 11));
  state.SetLabel("4 s, speed 1.1");
}
BENCHMARK(BM_Resample)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace meetkit
