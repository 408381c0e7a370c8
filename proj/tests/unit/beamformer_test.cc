// tests/unit/beamformer_test.cc

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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "meetkit/beamformer.h"
#include "meetkit/metrics.h"
#include "meetkit/rng.h"
#include "oracles.h"
#include "signals.h"

namespace meetkit {
namespace {

std::vector<double> Shifted(const std::vector<double>& x, int lag, std::size_t n) {
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const long j = static_cast<long>(i) - lag;
    if (j >= 0 && j < static_cast<long>(x.size())) y[i] = x[static_cast<std::size_t>(j)];
  }
  return y;
}

/// Brute-force GCC-PHAT peak via a direct DFT of the whitened cross spectrum.
int OracleGccLag(const std::vector<double>& a, const std::vector<double>& b, int max_lag) {
  const std::size_t n = 2 * a.size();
  std::vector<double> pa(a), pb(b);
  pa.resize(n, 0.0);
  pb.resize(n, 0.0);
  const auto A = testing::NaiveDft(pa), B = testing::NaiveDft(pb);
  int best = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (int lag = -max_lag; lag <= max_lag; ++lag) {
    double v = 0.0;
    for (std::size_t k = 0; k < A.size(); ++k) {
      std::complex<double> g = std::conj(A[k]) * B[k];
      const double m = std::abs(g);
      if (m > 0.0) g /= m;
      const double w = (k == 0 || k == A.size() - 1) ? 1.0 : 2.0;
      const double ph = 2.0 * M_PI * k * lag / static_cast<double>(n);
      v += w * (g * std::complex<double>(std::cos(ph), std::sin(ph))).real();
    }
    if (v > best_v) {
      best_v = v;
      best = lag;
    }
  }
  return best;
}

TEST(GccPhat, MatchesBruteForceAndIsAntisymmetric) {
  Rng rng(21);
  for (int trial = 0; trial < 6; ++trial) {
    const auto s = testing::WhiteNoise(300, rng);
    const int d = static_cast<int>(rng.UniformInt(-20, 20));
    auto a = Shifted(s, 0, 256), b = Shifted(s, d, 256);
    for (double& v : b) v += 0.05 * rng.Normal();
    const auto ab = GccPhat(a, b, 32, 3);
    const auto ba = GccPhat(b, a, 32, 3);
    ASSERT_FALSE(ab.empty());
    EXPECT_EQ(ab[0].lag, d);
    EXPECT_EQ(ab[0].lag, OracleGccLag(a, b, 32));
    EXPECT_EQ(ba[0].lag, -ab[0].lag);
    EXPECT_NEAR(ba[0].score, ab[0].score, 1e-9);
    EXPECT_LE(ab.size(), 3u);
    for (std::size_t i = 1; i < ab.size(); ++i) EXPECT_GE(ab[i - 1].score, ab[i].score);
  }
}

TEST(GccPhat, RejectsSilence) {
  const std::vector<double> z(128, 0.0), one(128, 1.0);
  EXPECT_THROW(GccPhat(z, one, 10, 2), std::invalid_argument);
  EXPECT_THROW(GccPhat(one, std::span<const double>(one).first(64), 10, 2),
               std::invalid_argument);
}

double PathObjective(const std::vector<std::vector<TdoaCandidate>>& c,
                     const std::vector<std::size_t>& path, double w, int max_lag) {
  double v = 0.0;
  for (std::size_t t = 0; t < c.size(); ++t) {
    v += c[t][path[t]].score;
    if (t) v -= w * std::abs(c[t][path[t]].lag - c[t - 1][path[t - 1]].lag) / max_lag;
  }
  return v;
}

TEST(Viterbi, MatchesExhaustiveSearch) {
  Rng rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t segments = static_cast<std::size_t>(rng.UniformInt(1, 6));
    std::vector<std::vector<TdoaCandidate>> c(segments);
    for (auto& seg : c) {
      const int k = static_cast<int>(rng.UniformInt(1, 4));
      for (int i = 0; i < k; ++i) {
        seg.push_back({static_cast<int>(rng.UniformInt(-16, 16)), rng.Uniform()});
      }
    }
    const double w = rng.Uniform(0.0, 30.0);
    const auto path = ViterbiPath(c, w, 16);
    ASSERT_EQ(path.size(), segments);
    // Exhaustive enumeration over all candidate combinations.
    double best = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> idx(segments, 0);
    while (true) {
      best = std::max(best, PathObjective(c, idx, w, 16));
      std::size_t t = 0;
      while (t < segments && ++idx[t] == c[t].size()) idx[t++] = 0;
      if (t == segments) break;
    }
    EXPECT_NEAR(PathObjective(c, path, w, 16), best, 1e-12);
    const auto lags = ViterbiTdoa(c, w, 16);
    for (std::size_t t = 0; t < segments; ++t) EXPECT_EQ(lags[t], c[t][path[t]].lag);
  }
}

TEST(Viterbi, TransitionWeightSmoothsOutlier) {
  std::vector<std::vector<TdoaCandidate>> c = {
      {{5, 1.0}}, {{5, 1.0}}, {{-10, 0.6}, {5, 0.5}}, {{5, 1.0}}, {{5, 1.0}}};
  EXPECT_EQ(ViterbiTdoa(c, 0.0, 16)[2], -10);
  EXPECT_EQ(ViterbiTdoa(c, 25.0, 16)[2], 5);
}

TEST(Segmentation, CoversSignal) {
  const auto s = Segmentation::ForSignal(16000, 8000, 4000);
  EXPECT_EQ(s.length, 8000u);
  EXPECT_EQ(s.step, 4000u);
  EXPECT_GE(s.start(s.count - 1) + s.length, 16000u);
  EXPECT_EQ(s.start(2), 8000u);
}

AudioBuffer DelayedCopies(const std::vector<double>& s, const std::vector<int>& lags,
                          double noise, Rng& rng) {
  std::vector<std::vector<double>> chans;
  for (int lag : lags) {
    auto c = Shifted(s, lag, s.size());
    for (double& v : c) v += noise * rng.Normal();
    chans.push_back(std::move(c));
  }
  return AudioBuffer::FromChannels(chans);
}

TEST(Beamform, RecoversIntegerDelays) {
  Rng rng(23);
  const auto s = testing::SpeechLike(3.0, 16000, rng);
  const std::vector<int> lags = {0, 7, -5, 12};
  const AudioBuffer x = DelayedCopies(s, lags, 0.003, rng);
  const BeamformResult r = Beamform(x);
  r.track.Validate(4);
  const std::size_t ref = r.track.reference;
  std::size_t good = 0, total = 0;
  for (std::size_t c = 0; c < 4; ++c) {
    for (std::size_t k = 0; k < r.track.segments.count; ++k) {
      ++total;
      good += r.track.delays[c][k] == lags[c] - lags[ref];
    }
  }
  EXPECT_GE(good, total * 9 / 10);
}

TEST(Beamform, WeightsSumToOne) {
  Rng rng(24);
  const auto s = testing::SpeechLike(2.0, 16000, rng);
  const AudioBuffer x = DelayedCopies(s, {0, 3, 6}, 0.01, rng);
  const BeamformResult r = Beamform(x);
  for (std::size_t k = 0; k < r.track.segments.count; ++k) {
    double sum = 0.0;
    for (std::size_t c = 0; c < 3; ++c) {
      EXPECT_GE(r.weights.weights[c][k], 0.0);
      sum += r.weights.weights[c][k];
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Beamform, DelayAndSumGainsNineDbOnEightMics) {
  // Coherent signal plus independent sensor noise: N channels give 10 log10 N.
  Rng rng(25);
  const auto s = testing::SpeechLike(4.0, 16000, rng);
  const std::vector<int> lags = {0, 2, 4, 6, 8, 10, 12, 14};
  const AudioBuffer clean = DelayedCopies(s, lags, 0.0, rng);
  AudioBuffer x = clean;
  const double sigma = std::sqrt(MeanPower(clean.channel(0)));
  for (double& v : x.data()) v += sigma * rng.Normal();
  TdoaTrack track;
  track.segments = Segmentation::ForSignal(x.length(), 8000, 4000);
  track.max_lag = 480;
  track.delays.assign(8, std::vector<int>(track.segments.count, 0));
  track.scores.assign(8, std::vector<double>(track.segments.count, 1.0));
  for (std::size_t c = 0; c < 8; ++c) {
    std::fill(track.delays[c].begin(), track.delays[c].end(), lags[c]);
  }
  ChannelWeights w;
  w.weights.assign(8, std::vector<double>(track.segments.count, 1.0 / 8));
  const AudioBuffer y = DelayAndSum(x, track, w);
  const double in = SiSdr(clean.channel(0), x.channel(0));
  const double out = SiSdr(clean.channel(0).subspan(0, y.length() - 200),
                           y.channel(0).subspan(0, y.length() - 200));
  EXPECT_NEAR(out - in, 10.0 * std::log10(8.0), 0.5);
}

TEST(Beamform, RejectsMono) {
  EXPECT_THROW(Beamform(AudioBuffer(1, 16000)), std::invalid_argument);
  BeamformConfig cfg;
  cfg.step_ms = 0.0;
  EXPECT_THROW(cfg.Validate(), std::invalid_argument);
}

}  // namespace
}  // namespace meetkit
