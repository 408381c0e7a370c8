// tests/unit/cli_test.cc

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
#include <vector>

#include <gtest/gtest.h>

#include "meetkit/features.h"
#include "meetkit/rng.h"
#include "meetkit/wav_io.h"
#include "meetkit/tools/cli.h"
#include "signals.h"

namespace meetkit {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("meetkit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int Run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    args.insert(args.begin(), "-q");
    return RunCli(args, out_, err_);
  }
  void WriteText(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
  }
  std::string ReadText(const std::string& name) {
    std::ifstream in(dir_ / name);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }
  std::string P(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, HelpAndUsageErrors) {
  EXPECT_EQ(Run({"--help"}), 0);
  EXPECT_EQ(Run({"no-such-command"}), 1);
  EXPECT_EQ(Run({"wpe", "--in", P("x.wav")}), 1);  // --out missing
  EXPECT_EQ(Run({"rover", "--hyp", P("a")}), 1);
}

TEST_F(CliTest, MissingInputIsDataError) {
  EXPECT_EQ(Run({"wpe", "--in", P("absent.wav"), "--out", P("o.wav")}), 2);
  EXPECT_NE(err_.str().find("absent.wav"), std::string::npos);
}

TEST_F(CliTest, ScoreCerWritesTotals) {
  WriteText("ref", "u1\t今天天气很好\nu2\t你好\n");
  WriteText("hyp", "u1\t今天天汽很好\nu2\t你好吗\n");
  ASSERT_EQ(Run({"score-cer", "--ref", P("ref"), "--hyp", P("hyp"), "--out", P("cer.tsv")}), 0);
  const std::string tsv = ReadText("cer.tsv");
  EXPECT_NE(tsv.find("u1\t6\t1\t0\t0\t1\t0.1667"), std::string::npos) << tsv;
  EXPECT_NE(tsv.find("TOTAL\t8\t1\t0\t1\t2\t0.2500"), std::string::npos) << tsv;
}

TEST_F(CliTest, ScoreCerPermutation) {
  WriteText("ref", "m1\t甲乙 <sc> 丙丁\n");
  WriteText("hyp", "m1\t丙丁 <sc> 甲乙\n");
  ASSERT_EQ(Run({"score-cer", "--ref", P("ref"), "--hyp", P("hyp"), "--permutation"}), 0);
  EXPECT_NE(out_.str().find("m1\t4\t0\t0\t0\t0\t0.0000"), std::string::npos) << out_.str();
}

TEST_F(CliTest, RoverFusesManifests) {
  WriteText("a", "u1\t甲乙丙\n");
  WriteText("b", "u1\t甲丁丙\n");
  WriteText("c", "u1\t甲乙丙戊\n");
  ASSERT_EQ(Run({"rover", "--hyp", P("a"), "--hyp", P("b"), "--hyp", P("c")}), 0);
  EXPECT_EQ(out_.str(), "u1\t甲乙丙\n");
  EXPECT_EQ(Run({"rover", "--hyp", P("a"), "--hyp", P("b"), "--alpha", "2"}), 1);
}

TEST_F(CliTest, SotSerializeFromTimeline) {
  WriteText("timeline", "u1\tA\t1.0\t2.0\nu2\tB\t0.5\t1.0\n");
  WriteText("text", "u1\t你好\nu2\t早上好\n");
  ASSERT_EQ(Run({"sot-serialize", "--timeline", P("timeline"), "--text", P("text")}), 0);
  EXPECT_NE(out_.str().find("早上好 <sc> 你好"), std::string::npos) << out_.str();
}

TEST_F(CliTest, PipelineEmptyManifestSucceeds) {
  WriteText("wav.scp", "");
  ASSERT_EQ(Run({"pipeline", "--manifest", P("wav.scp"), "--out", P("run")}), 0);
  EXPECT_TRUE(fs::exists(dir_ / "run" / "report.tsv"));
}

TEST_F(CliTest, PipelinePartialFailureExitCode) {
  Rng rng(81);
  fs::create_directories(dir_ / "audio");
  WriteWav(dir_ / "audio/long.wav", testing::RandomBuffer(2, 16000, rng, 16000));
  WriteWav(dir_ / "audio/short.wav", testing::RandomBuffer(2, 300, rng, 16000));
  WriteText("wav.scp", "long\taudio/long.wav\nshort\taudio/short.wav\n");
  WriteText("run.ini", "[pipeline]\nstages = wpe,features\n");
  EXPECT_EQ(Run({"pipeline", "--config", P("run.ini"), "--manifest", P("wav.scp"), "--out",
                 P("run")}),
            3);
  const std::string report = ReadText("run/report.tsv");
  EXPECT_NE(report.find("long\twpe\tok"), std::string::npos) << report;
  EXPECT_NE(report.find("short\twpe\tfailed"), std::string::npos) << report;
}

TEST_F(CliTest, PipelineMissingAudioIsDataError) {
  WriteText("wav.scp", "u1\tnowhere.wav\n");
  EXPECT_EQ(Run({"pipeline", "--manifest", P("wav.scp"), "--out", P("run")}), 2);
  EXPECT_NE(err_.str().find("missing"), std::string::npos);
}

TEST_F(CliTest, FeaturesCommandWritesMatrices) {
  Rng rng(82);
  fs::create_directories(dir_ / "audio");
  WriteWav(dir_ / "audio/u1.wav", AudioBuffer::Mono(testing::SpeechLike(1.0, 16000, rng)));
  WriteText("wav.scp", "u1\taudio/u1.wav\n");
  ASSERT_EQ(Run({"features", "--manifest", P("wav.scp"), "--out", P("feats")}), 0);
  const FeatureMatrix f = ReadFeatureFile(dir_ / "feats" / "u1.mkfm");
  EXPECT_EQ(f.cols(), 83u);
  EXPECT_EQ(f.rows(), 98u);
}

TEST_F(CliTest, PrintDefaultConfig) {
  ASSERT_EQ(Run({"pipeline", "--print-default-config"}), 0);
  EXPECT_NE(out_.str().find("[beamform]"), std::string::npos);
}

}  // namespace
}  // namespace meetkit
