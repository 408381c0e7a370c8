// benchmarks/text_bench.cc

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

#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "meetkit/cer.h"
#include "meetkit/rng.h"
#include "meetkit/rover.h"

namespace meetkit {
namespace {

std::vector<std::string> Tokens(std::size_t n, Rng& rng) {
  static const std::vector<std::string> alphabet = {"甲", "乙", "丙", "丁", "戊", "己", "庚", "辛"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(alphabet[rng.UniformInt(0, 7)]);
  return out;
}

void BM_AlignUnits(benchmark::State& state) {
  Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ref = Tokens(n, rng), hyp = Tokens(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(AlignUnits(ref, hyp));
}
BENCHMARK(BM_AlignUnits)->Arg(100)->Arg(1000);

void BM_Rover(benchmark::State& state) {
  Rng rng(2);
  std::vector<Hypothesis> hyps;
  for (int s = 0; s < state.range(0); ++s) hyps.push_back(MakeHypothesis(Tokens(200, rng)));
  for (auto _ : state) benchmark::DoNotOptimize(Rover(hyps));
  state.SetLabel("200 tokens per system");
}
BENCHMARK(BM_Rover)->Arg(3)->Arg(5);

}  // namespace
}  // namespace meetkit
