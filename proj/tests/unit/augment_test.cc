// tests/unit/augment_test.cc

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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "meetkit/augment.h"
#include "meetkit/fft.h"
#include "meetkit/metrics.h"
#include "meetkit/rng.h"
#include "meetkit/room_sim.h"
#include "oracles.h"
#include "signals.h"

namespace meetkit {
namespace {

constexpr int kFs = 16000;

double ToneGainDb(const AudioBuffer& in, const AudioBuffer& out) {
  // Middle half only, away from filter edges.
  const std::size_t n = in.length();
  return 10.0 * std::log10(MeanPower(out.channel(0).subspan(n / 4, n / 2)) /
                           MeanPower(in.channel(0).subspan(n / 4, n / 2)));
}

TEST(MixNoise, HitsSnrAndTilesShortNoise) {
  Rng rng(41);
  const AudioBuffer x = testing::RandomBuffer(2, 5000, rng, kFs);
  const AudioBuffer noise = AudioBuffer::Mono(testing::WhiteNoise(700, rng));
  const AudioBuffer y = MixNoise(x, noise, 12.5, 3);
  ASSERT_EQ(y.length(), x.length());
  ASSERT_EQ(y.channels(), 2u);
  double px = 0.0, pn = 0.0;
  for (std::size_t i = 0; i < x.data().size(); ++i) {
    px += x.data()[i] * x.data()[i];
    pn += (y.data()[i] - x.data()[i]) * (y.data()[i] - x.data()[i]);
  }
  EXPECT_NEAR(10.0 * std::log10(px / pn), 12.5, 1e-9);
  EXPECT_EQ(y, MixNoise(x, noise, 12.5, 3));
  EXPECT_NE(y, MixNoise(x, noise, 12.5, 4));
  EXPECT_THROW(MixNoise(x, testing::RandomBuffer(3, 100, rng, kFs), 0.0, 1),
               std::invalid_argument);
}

TEST(SpeedPerturb, LengthAndPitchScale) {
  const AudioBuffer x = AudioBuffer::Mono(testing::Tone(500.0, 1.0, kFs));
  for (double f : {0.9, 1.1}) {
    const AudioBuffer y = SpeedPerturb(x, f);
    EXPECT_EQ(y.length(), static_cast<std::size_t>(std::llround(16000 / f)));
    EXPECT_NEAR(testing::PeakFrequency(y.channel(0), kFs, 300, 700), 500.0 * f, 2.0);
  }
  EXPECT_EQ(SpeedPerturb(x, 1.0), x);
  EXPECT_THROW(SpeedPerturb(x, 0.3), std::invalid_argument);
}

TEST(PitchShift, KeepsLengthAndMovesTone) {
  const AudioBuffer x = AudioBuffer::Mono(testing::Tone(300.0, 1.0, kFs));
  for (double st : {-3.0, 2.0, 4.0}) {
    const AudioBuffer y = PitchShift(x, st);
    EXPECT_EQ(y.length(), x.length());
    EXPECT_NEAR(testing::PeakFrequency(y.channel(0), kFs, 200, 450),
                300.0 * std::pow(2.0, st / 12.0), 2.0);
  }
  EXPECT_EQ(PitchShift(x, 0.0), x);
  EXPECT_THROW(PitchShift(x, 5.0), std::invalid_argument);
}

TEST(TimeStretch, ExactLengthAndPitchKept) {
  const AudioBuffer x = AudioBuffer::Mono(testing::Tone(440.0, 1.0, kFs));
  const AudioBuffer y = TimeStretch(x, 20000);
  EXPECT_EQ(y.length(), 20000u);
  EXPECT_NEAR(testing::PeakFrequency(y.channel(0), kFs, 350, 550), 440.0, 2.0);
}

TEST(AddReverb, RemovesDirectDelay) {
  Rir rir;
  rir.taps = {std::vector<double>(200, 0.0), std::vector<double>(200, 0.0)};
  rir.taps[0][50] = 1.0;
  rir.taps[1][60] = 0.5;
  const AudioBuffer x = AudioBuffer::Mono({1.0, 2.0, 3.0, 0.0, 0.0});
  const AudioBuffer y = AddReverb(x, rir);
  ASSERT_EQ(y.channels(), 2u);
  ASSERT_EQ(y.length(), 5u);
  EXPECT_DOUBLE_EQ(y.at(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(y.at(0, 2), 3.0);
  // Channel 1 keeps its 10-sample lag relative to the earliest peak.
  for (std::size_t i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(y.at(1, i), 0.0);
}

TEST(Eq, LowAndHighPass) {
  const AudioBuffer low = AudioBuffer::Mono(testing::Tone(300.0, 0.5, kFs));
  const AudioBuffer high = AudioBuffer::Mono(testing::Tone(6000.0, 0.5, kFs));
  EqSpec lp;
  lp.kind = EqKind::kLowPass;
  lp.cutoff_hz = 2000.0;
  EXPECT_NEAR(ToneGainDb(low, EqFilter(low, lp)), 0.0, 0.1);
  EXPECT_LT(ToneGainDb(high, EqFilter(high, lp)), -40.0);
  EqSpec hp = lp;
  hp.kind = EqKind::kHighPass;
  EXPECT_LT(ToneGainDb(low, EqFilter(low, hp)), -40.0);
  EXPECT_NEAR(ToneGainDb(high, EqFilter(high, hp)), 0.0, 0.1);
  lp.weight = 0.5;
  EXPECT_NEAR(ToneGainDb(high, EqFilter(high, lp)), 20.0 * std::log10(0.5), 0.1);
}

TEST(Eq, ResponseCurveGain) {
  EqSpec spec;
  spec.kind = EqKind::kResponseCurve;
  spec.curve = {{100.0, 0.0}, {1000.0, 6.0}, {4000.0, -6.0}};
  EXPECT_DOUBLE_EQ(CurveGainDb(spec.curve, 50.0), 0.0);
  EXPECT_DOUBLE_EQ(CurveGainDb(spec.curve, 1000.0), 6.0);
  EXPECT_NEAR(CurveGainDb(spec.curve, 2000.0), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(CurveGainDb(spec.curve, 7000.0), -6.0);
  const AudioBuffer tone = AudioBuffer::Mono(testing::Tone(1000.0, 0.5, kFs));
  EXPECT_NEAR(ToneGainDb(tone, EqFilter(tone, spec)), 6.0, 0.5);
  spec.curve = {{1000.0, 0.0}, {500.0, 1.0}};
  EXPECT_THROW(spec.Validate(kFs), std::invalid_argument);
}

TEST(Eq, PreAndDeEmphasisInvert) {
  Rng rng(42);
  const AudioBuffer x = testing::RandomBuffer(1, 1000, rng, kFs);
  const AudioBuffer y = DeEmphasis(PreEmphasis(x, 0.95), 0.95);
  EXPECT_LT(testing::RelativeError(y.data(), x.data()), 1e-12);
  const auto taps = LowPassTaps(1000.0, kFs, 51);
  double dc = 0.0;
  for (double t : taps) dc += t;
  EXPECT_NEAR(dc, 1.0, 1e-12);
}

}  // namespace
}  // namespace meetkit
