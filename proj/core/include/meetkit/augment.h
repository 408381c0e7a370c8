// core/include/meetkit/augment.h

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

#ifndef MEETKIT_AUGMENT_H_
#define MEETKIT_AUGMENT_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "meetkit/audio_buffer.h"
#include "meetkit/room_sim.h"

namespace meetkit {

/// Adds noise scaled so that P_x / P_(g*noise) = 10^(snr_db/10), with powers
/// taken over all channels. The noise is randomly cropped when longer than
/// x and tiled from a random offset when shorter. Noise must be mono or
/// have x's channel count.
AudioBuffer MixNoise(const AudioBuffer& x, const AudioBuffer& noise,
                     double snr_db, std::uint64_t seed);

/// Convolves x with the RIR, keeping x's length and removing the direct-path
/// delay (the earliest per-channel peak of |rir|). A mono x is rendered to
/// every RIR channel; otherwise channel counts must agree.
AudioBuffer AddReverb(const AudioBuffer& x, const Rir& rir);

inline constexpr double kMinSpeedFactor = 0.5;
inline constexpr double kMaxSpeedFactor = 2.0;

/// Resampling speed change: output length round(N / factor), pitch scaled
/// by factor. The factor is quantized to 1/1000.
AudioBuffer SpeedPerturb(const AudioBuffer& x, double factor);

inline constexpr double kMaxPitchSemitones = 4.0;

/// Pitch scaled by 2^(semitones / 12) with the length kept: resample, then
/// WSOLA time-stretch back to the input length. Zero returns a copy.
AudioBuffer PitchShift(const AudioBuffer& x, double semitones);

/// WSOLA time-stretch to exactly out_length samples (20 ms Hann frames,
/// 50% overlap, +-10 ms similarity search on the channel sum).
AudioBuffer TimeStretch(const AudioBuffer& x, std::size_t out_length);

enum class EqKind { kLowPass, kHighPass, kDeEmphasis, kResponseCurve };

struct EqSpec {
  EqKind kind = EqKind::kLowPass;
  double cutoff_hz = 4000.0;  // low/high-pass
  double weight = 1.0;        // wet fraction for low/high-pass
  int taps = 101;             // odd, Hamming-windowed sinc
  double coefficient = 0.97;  // de-emphasis
  /// Response curve points (frequency Hz, gain dB), strictly increasing in
  /// frequency. Gains are interpolated linearly over log frequency and held
  /// constant outside the given range.
  std::vector<std::pair<double, double>> curve;

  void Validate(int sample_rate) const;
};

inline constexpr double kMaxEqGainDb = 12.0;

AudioBuffer EqFilter(const AudioBuffer& x, const EqSpec& spec);

/// y[n] = x[n] - a x[n-1], with x[-1] = 0.
AudioBuffer PreEmphasis(const AudioBuffer& x, double a = 0.97);

/// y[n] = x[n] + a y[n-1], with y[-1] = 0. Inverse of PreEmphasis.
AudioBuffer DeEmphasis(const AudioBuffer& x, double a = 0.97);

/// Linear-phase windowed-sinc low-pass taps normalized to unit DC gain.
std::vector<double> LowPassTaps(double cutoff_hz, int sample_rate, int taps);

/// Gain in dB of a response curve at the given frequency.
double CurveGainDb(const std::vector<std::pair<double, double>>& curve,
                   double hz);

}  // namespace meetkit

#endif  // MEETKIT_AUGMENT_H_
