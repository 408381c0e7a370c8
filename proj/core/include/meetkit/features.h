// core/include/meetkit/features.h

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

#ifndef MEETKIT_FEATURES_H_
#define MEETKIT_FEATURES_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "meetkit/audio_buffer.h"

namespace meetkit {

/// Named column range of a feature matrix.
struct FeatureBlock {
  std::string name;
  std::size_t offset = 0;
  std::size_t dims = 0;
  friend bool operator==(const FeatureBlock&, const FeatureBlock&) = default;
};

/// Row-major frames x dims matrix.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols, double value = 0.0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  double frame_shift_ms = 10.0;
  double frame_length_ms = 25.0;
  std::vector<FeatureBlock> layout;

  /// Block with the given name, or nullptr.
  const FeatureBlock* Find(const std::string& name) const;
  /// Columns side by side; row counts must match.
  static FeatureMatrix Concat(const FeatureMatrix& a, const FeatureMatrix& b);

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Frame grid shared by fbank and pitch.
struct FrameConfig {
  double frame_length_ms = 25.0;
  double frame_shift_ms = 10.0;

  std::size_t Length(int sample_rate) const;
  std::size_t Shift(int sample_rate) const;
  /// floor((N - length) / shift) + 1; 0 if N < length.
  std::size_t NumFrames(std::size_t num_samples, int sample_rate) const;
  void Validate() const;
};

struct FbankConfig {
  FrameConfig frames;
  int num_bins = 80;
  double low_hz = 20.0;
  /// Upper mel edge at 16 kHz; scaled by fs / 16000 at other rates.
  double high_hz = 7600.0;
  double preemphasis = 0.97;
  double log_floor = 1e-10;
  /// Amplitude of seeded Gaussian dither; 0 disables it.
  double dither = 0.0;

  void Validate(int sample_rate) const;
};

/// Mel scale 2595 log10(1 + f / 700) and its inverse.
double HzToMel(double hz);
double MelToHz(double mel);
/// Centre frequencies of the mel filters at the given rate.
std::vector<double> MelCenters(const FbankConfig& cfg, int sample_rate);

/// Log mel filterbank, frames x num_bins. Throws if x is shorter than one
/// frame or not mono.
FeatureMatrix Fbank(const AudioBuffer& x, const FbankConfig& cfg = {},
                    std::uint64_t seed = 0);

struct PitchConfig {
  FrameConfig frames;
  double min_hz = 60.0;
  double max_hz = 400.0;
  /// Frames with NCCF at or above this are voiced.
  double voicing_threshold = 0.5;
  int mean_window = 151;  // frames, centred
  int delta_window = 2;

  void Validate(int sample_rate) const;
};

struct PitchTrack {
  std::vector<double> pitch_hz;  // carried forward through unvoiced frames
  std::vector<double> nccf;      // peak normalized cross-correlation
  std::vector<bool> voiced;
};

/// Normalized cross-correlation pitch search, one estimate per frame.
PitchTrack TrackPitch(const AudioBuffer& x, const PitchConfig& cfg = {});

/// Columns: voicing probability, windowed mean-subtracted log pitch, delta
/// log pitch. Same frame count as Fbank on the same grid.
FeatureMatrix PitchFeatures(const AudioBuffer& x, const PitchConfig& cfg = {});

struct FeatureConfig {
  FbankConfig fbank;
  PitchConfig pitch;
  bool use_pitch = true;
};

/// Fbank, plus pitch columns when enabled (80 + 3 dims by default).
FeatureMatrix ComputeFeatures(const AudioBuffer& x,
                              const FeatureConfig& cfg = {},
                              std::uint64_t seed = 0);

struct SpecAugmentConfig {
  int num_freq_masks = 2;
  int max_freq_width = 10;
  int num_time_masks = 2;
  int max_time_width = 50;
  /// Layout block the frequency masks apply to; all columns if absent.
  std::string freq_block = "fbank";

  void Validate() const;
};

/// Zeroes num_freq_masks column bands of width U{0..F} starting at
/// U{0..D-w}, then num_time_masks row bands likewise. Widths are clamped to
/// dimension - 1 on small inputs.
FeatureMatrix SpecAugment(const FeatureMatrix& f, const SpecAugmentConfig& cfg,
                          std::uint64_t seed);

/// Binary matrix file: "MKFM", uint32 rows, uint32 cols, then float32
/// values, all little-endian, row-major.
void WriteFeatureFile(const std::filesystem::path& path,
                      const FeatureMatrix& m);
FeatureMatrix ReadFeatureFile(const std::filesystem::path& path);

}  // namespace meetkit

#endif  // MEETKIT_FEATURES_H_
