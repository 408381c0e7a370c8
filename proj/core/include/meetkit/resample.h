// core/include/meetkit/resample.h

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

#ifndef MEETKIT_RESAMPLE_H_
#define MEETKIT_RESAMPLE_H_

#include <cstddef>

#include "meetkit/audio_buffer.h"

namespace meetkit {

/// Band-limited rational resampler: polyphase windowed sinc with a Kaiser
/// window (beta 8) and 32 taps per side at the output rate's cutoff.
class Resampler {
 public:
  /// Converts by up/down, i.e. out_rate / in_rate = up / down.
  Resampler(long up, long down);

  long up() const { return up_; }
  long down() const { return down_; }

  /// round(n * up / down).
  std::size_t OutputLength(std::size_t n) const;

  AudioBuffer Process(const AudioBuffer& x, int out_rate) const;

 private:
  long up_;
  long down_;
  int half_width_;             // input-domain taps per side
  std::vector<double> table_;  // up_ phases x (2 * half_width_) taps
};

/// Resamples to target_rate; identity when the rates already match.
AudioBuffer Resample(const AudioBuffer& x, int target_rate);

/// Changes the sample count by ratio ~ up/down while keeping the nominal
/// sample rate. Used for speed and pitch manipulation.
AudioBuffer ResampleByRatio(const AudioBuffer& x, long up, long down);

}  // namespace meetkit

#endif  // MEETKIT_RESAMPLE_H_
