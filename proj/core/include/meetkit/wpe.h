// core/include/meetkit/wpe.h

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

#ifndef MEETKIT_WPE_H_
#define MEETKIT_WPE_H_

#include "meetkit/audio_buffer.h"
#include "meetkit/stft.h"

namespace meetkit {

/// Weighted prediction error dereverberation parameters.
struct WpeConfig {
  int taps = 10;        // prediction filter length per channel, in frames
  int delay = 3;        // prediction delay, in frames
  int iterations = 3;
  double epsilon = 1e-6;  // diagonal loading relative to the mean diagonal

  void Validate() const;
};

/// Multi-channel offline WPE in the STFT domain.
///
/// Each frequency bin is handled independently. Starting from X = Y, every
/// iteration estimates the source power lambda(t) = mean_m |X(t, m)|^2,
/// solves the lambda-weighted normal equations for a multi-channel
/// prediction filter over frames t-delay .. t-delay-taps+1, and subtracts
/// the predicted late reverberation from Y. Frames with an incomplete
/// history (t < delay + taps - 1) are passed through unchanged.
///
/// Throws std::invalid_argument for fewer than taps + delay frames or
/// non-finite input.
Spectrogram Wpe(const Spectrogram& y, const WpeConfig& cfg = {});

/// STFT -> Wpe -> iSTFT.
AudioBuffer Wpe(const AudioBuffer& x, const WpeConfig& cfg = {},
                const StftConfig& stft = {});

}  // namespace meetkit

#endif  // MEETKIT_WPE_H_
