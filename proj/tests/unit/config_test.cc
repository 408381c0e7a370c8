// tests/unit/config_test.cc

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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "meetkit/tools/config.h"

namespace meetkit {
namespace {

namespace fs = std::filesystem;

PipelineConfig Parse(const std::string& text) {
  std::istringstream in(text);
  return ParsePipelineConfig(in);
}

TEST(Config, EmptyInputGivesDefaults) {
  const PipelineConfig c = Parse("");
  EXPECT_EQ(c.stages, (std::vector<std::string>{"wpe", "beamform", "features"}));
  EXPECT_EQ(c.wpe.taps, 10);
  EXPECT_EQ(c.wpe.delay, 3);
  EXPECT_EQ(c.stft.fft_size, 512u);
  EXPECT_DOUBLE_EQ(c.beamform.segment_ms, 500.0);
  EXPECT_FALSE(c.spec_augment);
}

TEST(Config, ParsesSectionsAndLists) {
  const PipelineConfig c = Parse(
      "[pipeline]\nseed = 17\nworkers = 3\nstages = augment, features\n"
      "output_encoding = pcm16\n"
      "[wpe]\ntaps = 6\n"
      "[augment]\nspeed_factors = 0.95,1.05\n"
      "[room]\nt60_model = eyring\n"
      "[rover]\ncosts = 0,2,1,1\n");
  EXPECT_EQ(c.seed, 17u);
  EXPECT_EQ(c.workers, 3);
  EXPECT_EQ(c.stages, (std::vector<std::string>{"augment", "features"}));
  EXPECT_EQ(c.output_encoding, WavEncoding::kPcm16);
  EXPECT_EQ(c.wpe.taps, 6);
  EXPECT_EQ(c.augment.speed_factors, (std::vector<double>{0.95, 1.05}));
  EXPECT_EQ(c.t60_model, T60Model::kEyring);
  EXPECT_EQ(c.costs.substitution, 2);
  EXPECT_EQ(c.costs.insertion, 1);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(Parse("[wpe]\ntapz = 3\n"), ConfigError);
  EXPECT_THROW(Parse("[wpe]\ntaps = three\n"), ConfigError);
  EXPECT_THROW(Parse("[wpe]\ntaps = 0\n"), ConfigError);
  EXPECT_THROW(Parse("[pipeline]\nstages = wpe,denoise\n"), ConfigError);
  EXPECT_THROW(Parse("[pipeline]\noutput_encoding = mp3\n"), ConfigError);
  EXPECT_THROW(Parse("[rover]\ncosts = 1,2\n"), ConfigError);
  EXPECT_THROW(LoadPipelineConfig("/nonexistent/config.ini"), ConfigError);
}

TEST(Config, DefaultConfigRoundTrips) {
  std::ostringstream out;
  WriteDefaultConfig(out);
  EXPECT_NE(out.str().find("[wpe]"), std::string::npos);
  const PipelineConfig c = Parse(out.str());
  const PipelineConfig d = Parse("");
  EXPECT_EQ(c.stages, d.stages);
  EXPECT_EQ(c.augment.speed_factors, d.augment.speed_factors);
  EXPECT_DOUBLE_EQ(c.simulate.early_ms, d.simulate.early_ms);
  EXPECT_EQ(c.array_mics, d.array_mics);
}

TEST(Config, NoiseListsResolveAgainstConfigDirectory) {
  const fs::path dir = fs::temp_directory_path() / "meetkit_config_test";
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "run.ini");
    f << "[augment]\nnoise_scp = noise/a.scp\n[simulate]\nnoise_scp = /abs/b.scp\n";
  }
  const PipelineConfig c = LoadPipelineConfig(dir / "run.ini");
  EXPECT_EQ(fs::path(c.augment.noise_scp), dir / "noise/a.scp");
  EXPECT_EQ(c.simulate.noise_scp, "/abs/b.scp");
  fs::remove_all(dir);
}

TEST(Config, ListParsers) {
  EXPECT_EQ(ParseDoubleList(" 1, 2.5 ,3"), (std::vector<double>{1.0, 2.5, 3.0}));
  EXPECT_EQ(ParseStringList("a, b,,c"), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_THROW(ParseDoubleList("1,x"), ConfigError);
}

}  // namespace
}  // namespace meetkit
