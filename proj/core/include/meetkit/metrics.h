// core/include/meetkit/metrics.h

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

#ifndef MEETKIT_METRICS_H_
#define MEETKIT_METRICS_H_

#include <span>

#include "meetkit/audio_buffer.h"

namespace meetkit {

/// Results are clamped to [-kMetricCapDb, +kMetricCapDb].
inline constexpr double kMetricCapDb = 100.0;

/// Scale-invariant SDR in dB. Inputs must be mono, equal length, and the
/// reference must have nonzero power.
double SiSdr(const AudioBuffer& reference, const AudioBuffer& estimate);
double SiSdr(std::span<const double> reference,
             std::span<const double> estimate);

/// 10*log10(P_signal / P_noise) over equal-length spans.
double SnrDb(std::span<const double> signal, std::span<const double> noise);

}  // namespace meetkit

#endif  // MEETKIT_METRICS_H_
