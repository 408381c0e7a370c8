// core/src/audio_buffer.cc

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

#include "meetkit/audio_buffer.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace meetkit {

AudioBuffer::AudioBuffer(std::size_t channels, std::size_t length,
                         int sample_rate)
    : channels_(channels),
      length_(length),
      sample_rate_(sample_rate),
      data_(channels * length, 0.0) {
  if (sample_rate <= 0) {
    throw std::invalid_argument("sample rate must be positive, got " +
                                std::to_string(sample_rate));
  }
}

AudioBuffer AudioBuffer::Mono(std::vector<double> samples, int sample_rate) {
  AudioBuffer out(1, 0, sample_rate);
  out.length_ = samples.size();
  out.data_ = std::move(samples);
  return out;
}

AudioBuffer AudioBuffer::FromChannels(
    const std::vector<std::vector<double>>& chans, int sample_rate) {
  const std::size_t len = chans.empty() ? 0 : chans.front().size();
  AudioBuffer out(chans.size(), len, sample_rate);
  for (std::size_t c = 0; c < chans.size(); ++c) {
    if (chans[c].size() != len) {
      throw std::invalid_argument("channel " + std::to_string(c) +
                                  " has length " +
                                  std::to_string(chans[c].size()) +
                                  ", expected " + std::to_string(len));
    }
    std::copy(chans[c].begin(), chans[c].end(), out.channel(c).begin());
  }
  return out;
}

AudioBuffer AudioBuffer::ExtractChannel(std::size_t c) const {
  if (c >= channels_) throw std::out_of_range("channel index out of range");
  auto ch = channel(c);
  return Mono(std::vector<double>(ch.begin(), ch.end()), sample_rate_);
}

void AudioBuffer::CheckFinite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("audio buffer contains non-finite samples");
    }
  }
}

void AudioBuffer::Scale(double gain) {
  for (double& v : data_) v *= gain;
}

double MeanPower(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return acc / static_cast<double>(x.size());
}

double MeanPower(const AudioBuffer& x) { return MeanPower(x.data()); }

}  // namespace meetkit
