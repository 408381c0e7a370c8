// core/include/meetkit/beamformer.h

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

#ifndef MEETKIT_BEAMFORMER_H_
#define MEETKIT_BEAMFORMER_H_

#include <cstddef>
#include <span>
#include <vector>

#include "meetkit/audio_buffer.h"

namespace meetkit {

/// Weighted delay-and-sum beamformer settings. Durations are converted to
/// samples at the input's sample rate.
struct BeamformConfig {
  double segment_ms = 500.0;
  double step_ms = 250.0;
  double max_lag_ms = 30.0;
  int n_peaks = 4;
  double transition_weight = 25.0;
  /// Portion of the recording used for reference-channel selection.
  double reference_window_s = 60.0;
  /// Skip the joint cross-channel pass above this many non-reference
  /// channels (its state space is 2^channels).
  std::size_t max_joint_channels = 10;

  void Validate() const;
};

/// Fixed analysis grid: segment k covers [k * step, k * step + length).
struct Segmentation {
  std::size_t length = 0;
  std::size_t step = 0;
  std::size_t count = 0;

  static Segmentation ForSignal(std::size_t num_samples, std::size_t length,
                                std::size_t step);
  std::size_t start(std::size_t k) const { return k * step; }
};

struct TdoaCandidate {
  int lag = 0;
  double score = 0.0;
  friend bool operator==(const TdoaCandidate&, const TdoaCandidate&) = default;
};

/// Per-channel, per-segment delays relative to the reference channel.
/// Positive lag: the channel lags the reference.
struct TdoaTrack {
  Segmentation segments;
  int max_lag = 0;
  std::size_t reference = 0;
  std::vector<std::vector<int>> delays;     // [channel][segment]
  std::vector<std::vector<double>> scores;  // [channel][segment]

  /// Throws if shapes disagree, a delay exceeds max_lag, or the reference
  /// row is nonzero.
  void Validate(std::size_t channels) const;
};

struct ChannelWeights {
  std::vector<std::vector<double>> weights;  // [channel][segment]
};

/// Channel whose mean peak normalized cross-correlation with every other
/// channel is highest. Ties go to the lowest index.
std::size_t SelectReference(const AudioBuffer& x, std::size_t segment_length,
                            int max_lag, double max_seconds = 60.0);

/// GCC-PHAT between equal-length signals over lags [-max_lag, max_lag].
/// Returns up to n_peaks local maxima, best first. Positive lag: b lags a.
/// Throws std::invalid_argument on zero-energy input or bad sizes.
std::vector<TdoaCandidate> GccPhat(std::span<const double> a,
                                   std::span<const double> b, int max_lag,
                                   int n_peaks);

/// Step one of the TDOA search: exact Viterbi over per-segment n-best lists
/// maximizing sum(score) - transition_weight * sum(|lag_t - lag_{t-1}|) /
/// max_lag. Returns the chosen candidate index per segment.
std::vector<std::size_t> ViterbiPath(
    const std::vector<std::vector<TdoaCandidate>>& candidates,
    double transition_weight, int max_lag);

/// Same search, returning the chosen lags.
std::vector<int> ViterbiTdoa(
    const std::vector<std::vector<TdoaCandidate>>& candidates,
    double transition_weight, int max_lag);

/// Step two: joint pass over all channels where each channel keeps its
/// step-one choice and its best remaining candidate per segment. The
/// objective adds, for every channel pair whose lags move in opposite
/// directions between segments, transition_weight * min(|dc|, |dd|) /
/// max_lag. Ties keep the step-one choice. Returns lags [channel][segment].
std::vector<std::vector<int>> JointTdoaRefine(
    const std::vector<std::vector<std::vector<TdoaCandidate>>>& candidates,
    const std::vector<std::vector<std::size_t>>& first_pass,
    double transition_weight, int max_lag);

/// Per segment: raw weight max(0, normalized correlation of the aligned
/// channel with the reference), smoothed w = 0.9 w_prev + 0.1 w_raw, then
/// normalized to sum to one (uniform if everything is zero).
ChannelWeights ComputeWeights(const AudioBuffer& x, const TdoaTrack& track);

/// Shifts each channel by its per-segment lag, applies its weight and sums.
/// Segments are blended with 50%-overlap triangular windows.
AudioBuffer DelayAndSum(const AudioBuffer& x, const TdoaTrack& track,
                        const ChannelWeights& weights);

struct BeamformResult {
  AudioBuffer output;
  TdoaTrack track;
  ChannelWeights weights;
};

/// select reference -> GCC-PHAT n-best per segment -> 2-step Viterbi ->
/// weights -> delay-and-sum. Requires at least 2 channels.
BeamformResult Beamform(const AudioBuffer& x, const BeamformConfig& cfg = {});

}  // namespace meetkit

#endif  // MEETKIT_BEAMFORMER_H_
