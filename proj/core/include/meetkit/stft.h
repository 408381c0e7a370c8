// core/include/meetkit/stft.h

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

#ifndef MEETKIT_STFT_H_
#define MEETKIT_STFT_H_

#include <cstddef>
#include <span>
#include <vector>

#include "meetkit/audio_buffer.h"
#include "meetkit/fft.h"

namespace meetkit {

enum class WindowType { kHann };

struct StftConfig {
  std::size_t fft_size = 512;
  std::size_t hop = 128;
  WindowType window = WindowType::kHann;
  /// Pads fft_size/2 zeros on both ends so every sample sits under a
  /// full-height window.
  bool center = true;

  /// Throws std::invalid_argument unless fft_size is a power of two,
  /// 0 < hop <= fft_size and the squared window overlap-adds to a constant.
  void Validate() const;

  std::size_t bins() const { return fft_size / 2 + 1; }
  std::size_t NumFrames(std::size_t num_samples) const;
};

/// Periodic analysis window of the given type.
std::vector<double> MakeWindow(WindowType type, std::size_t n);

/// Complex STFT, laid out channel -> frame -> bin.
class Spectrogram {
 public:
  Spectrogram() = default;
  Spectrogram(std::size_t channels, std::size_t frames, StftConfig config,
              int sample_rate, std::size_t num_samples);

  std::size_t channels() const { return channels_; }
  std::size_t frames() const { return frames_; }
  std::size_t bins() const { return bins_; }
  const StftConfig& config() const { return config_; }
  int sample_rate() const { return sample_rate_; }
  /// Length of the signal this was computed from.
  std::size_t num_samples() const { return num_samples_; }

  Complex& at(std::size_t c, std::size_t t, std::size_t f) {
    return data_[(c * frames_ + t) * bins_ + f];
  }
  const Complex& at(std::size_t c, std::size_t t, std::size_t f) const {
    return data_[(c * frames_ + t) * bins_ + f];
  }
  std::span<Complex> frame(std::size_t c, std::size_t t) {
    return {data_.data() + (c * frames_ + t) * bins_, bins_};
  }
  std::span<const Complex> frame(std::size_t c, std::size_t t) const {
    return {data_.data() + (c * frames_ + t) * bins_, bins_};
  }
  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

  void Scale(double gain);

 private:
  std::size_t channels_ = 0;
  std::size_t frames_ = 0;
  std::size_t bins_ = 0;
  StftConfig config_;
  int sample_rate_ = kDefaultSampleRate;
  std::size_t num_samples_ = 0;
  std::vector<Complex> data_;
};

Spectrogram Stft(const AudioBuffer& x, const StftConfig& cfg = {});

/// Weighted overlap-add inverse. Samples not covered by any nonzero window
/// (only possible with center == false) come back as zero.
AudioBuffer Istft(const Spectrogram& spec);

}  // namespace meetkit

#endif  // MEETKIT_STFT_H_
