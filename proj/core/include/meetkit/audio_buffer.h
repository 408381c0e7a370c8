// core/include/meetkit/audio_buffer.h

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

#ifndef MEETKIT_AUDIO_BUFFER_H_
#define MEETKIT_AUDIO_BUFFER_H_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace meetkit {

inline constexpr int kDefaultSampleRate = 16000;

/// Multi-channel signal with a fixed sample rate. Samples are stored
/// channel-major in one contiguous block and are nominally in [-1, 1].
class AudioBuffer {
 public:
  AudioBuffer() = default;
  AudioBuffer(std::size_t channels, std::size_t length,
              int sample_rate = kDefaultSampleRate);

  /// Wraps a single channel.
  static AudioBuffer Mono(std::vector<double> samples,
                          int sample_rate = kDefaultSampleRate);
  /// All channels must have equal length.
  static AudioBuffer FromChannels(const std::vector<std::vector<double>>& chans,
                                  int sample_rate = kDefaultSampleRate);

  std::size_t channels() const { return channels_; }
  std::size_t length() const { return length_; }
  int sample_rate() const { return sample_rate_; }
  bool empty() const { return length_ == 0 || channels_ == 0; }
  double duration() const {
    return static_cast<double>(length_) / sample_rate_;
  }

  std::span<double> channel(std::size_t c) {
    return {data_.data() + c * length_, length_};
  }
  std::span<const double> channel(std::size_t c) const {
    return {data_.data() + c * length_, length_};
  }

  double& at(std::size_t c, std::size_t n) { return data_[c * length_ + n]; }
  double at(std::size_t c, std::size_t n) const {
    return data_[c * length_ + n];
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  /// Copy of one channel as a mono buffer.
  AudioBuffer ExtractChannel(std::size_t c) const;

  /// Throws std::invalid_argument if any sample is non-finite.
  void CheckFinite() const;

  void Scale(double gain);

  friend bool operator==(const AudioBuffer&, const AudioBuffer&) = default;

 private:
  std::size_t channels_ = 0;
  std::size_t length_ = 0;
  int sample_rate_ = kDefaultSampleRate;
  std::vector<double> data_;
};

/// Mean of x^2 over all channels and samples; 0 for an empty buffer.
double MeanPower(std::span<const double> x);
double MeanPower(const AudioBuffer& x);

}  // namespace meetkit

#endif  // MEETKIT_AUDIO_BUFFER_H_
