// core/include/meetkit/filter.h

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

#ifndef MEETKIT_FILTER_H_
#define MEETKIT_FILTER_H_

#include <cstddef>
#include <span>
#include <vector>

#include "meetkit/audio_buffer.h"

namespace meetkit {

enum class ConvMode {
  kFull,  // length N + K - 1
  kSame,  // length N, starting `offset` samples into the full result
};

/// Full linear convolution. Short filters run directly, long ones via FFT.
std::vector<double> Convolve(std::span<const double> x,
                             std::span<const double> h);

/// Applies the same FIR filter to every channel.
AudioBuffer FirFilter(const AudioBuffer& x, std::span<const double> taps,
                      ConvMode mode = ConvMode::kSame, std::size_t offset = 0);

}  // namespace meetkit

#endif  // MEETKIT_FILTER_H_
