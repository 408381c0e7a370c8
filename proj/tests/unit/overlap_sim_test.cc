// tests/unit/overlap_sim_test.cc

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

#include <gtest/gtest.h>

#include "meetkit/overlap_sim.h"
#include "meetkit/rng.h"
#include "oracles.h"
#include "signals.h"

namespace meetkit {
namespace {

SpeakerPools MakePools(int speakers, int per_speaker, Rng& rng) {
  SpeakerPools pools;
  for (int s = 0; s < speakers; ++s) {
    const std::string spk = "S" + std::to_string(s);
    for (int u = 0; u < per_speaker; ++u) {
      Utterance utt;
      utt.id = spk + "-" + std::to_string(u);
      utt.speaker = spk;
      utt.audio = AudioBuffer::Mono(testing::SpeechLike(rng.Uniform(0.5, 2.0), 16000, rng));
      utt.transcript = "字" + std::to_string(s) + std::to_string(u);
      pools[spk].push_back(std::move(utt));
    }
  }
  return pools;
}

TEST(OverlapSim, TimelineInvariants) {
  Rng rng(71);
  const SpeakerPools pools = MakePools(6, 3, rng);
  const OverlapPolicy policy;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const MeetingMixture m = SimulateOverlap(pools, policy, seed);
    ASSERT_GE(m.n_speakers, 2);
    ASSERT_LE(m.n_speakers, 4);
    EXPECT_EQ(m.timeline.size(), static_cast<std::size_t>(m.n_speakers * 2));
    std::vector<std::pair<double, double>> iv;
    std::size_t end = 0;
    for (const auto& p : m.timeline) {
      EXPECT_LE(std::abs(p.gain_db), policy.max_gain_db);
      iv.emplace_back(static_cast<double>(p.onset), static_cast<double>(p.end()));
      end = std::max(end, p.end());
    }
    EXPECT_EQ(end, m.audio.length());
    EXPECT_NEAR(m.overlap_ratio, TimelineOverlapRatio(m.timeline, m.audio.length()), 1e-15);
    EXPECT_NEAR(m.overlap_ratio, testing::SweepOverlapRatio(iv, static_cast<double>(end)),
                1e-12);
    // Utterances of one speaker never overlap each other.
    for (std::size_t i = 0; i < m.timeline.size(); ++i) {
      for (std::size_t j = i + 1; j < m.timeline.size(); ++j) {
        if (m.timeline[i].speaker != m.timeline[j].speaker) continue;
        EXPECT_TRUE(m.timeline[i].end() <= m.timeline[j].onset ||
                    m.timeline[j].end() <= m.timeline[i].onset);
      }
    }
    EXPECT_EQ(m.reference.segments.size(), m.timeline.size());
  }
}

TEST(OverlapSim, DeterministicPerSeed) {
  Rng rng(72);
  const SpeakerPools pools = MakePools(4, 2, rng);
  EXPECT_EQ(SimulateOverlap(pools, {}, 5), SimulateOverlap(pools, {}, 5));
  EXPECT_NE(SimulateOverlap(pools, {}, 5).timeline, SimulateOverlap(pools, {}, 6).timeline);
}

TEST(OverlapSim, RatioHelperCountsTwoOrMore) {
  std::vector<PlacedUtterance> t = {{"a", "A", "", 0, 10, 0.0}, {"b", "B", "", 5, 10, 0.0},
                                    {"c", "C", "", 6, 2, 0.0}};
  EXPECT_DOUBLE_EQ(TimelineOverlapRatio(t, 20), 5.0 / 20.0);
}

TEST(OverlapSim, RejectsBadPolicyAndSmallPools) {
  OverlapPolicy p;
  p.speaker_probabilities = {0.5, 0.5, 0.5};
  EXPECT_THROW(p.Validate(), std::invalid_argument);
  p = {};
  p.overlap_min = 0.6;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
  Rng rng(73);
  EXPECT_THROW(SimulateOverlap(MakePools(1, 2, rng), {}, 1), std::invalid_argument);
}

}  // namespace
}  // namespace meetkit
