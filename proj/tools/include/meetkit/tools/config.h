// tools/include/meetkit/tools/config.h

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

#ifndef MEETKIT_TOOLS_CONFIG_H_
#define MEETKIT_TOOLS_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "meetkit/beamformer.h"
#include "meetkit/features.h"
#include "meetkit/overlap_sim.h"
#include "meetkit/room_sim.h"
#include "meetkit/rover.h"
#include "meetkit/stft.h"
#include "meetkit/wav_io.h"
#include "meetkit/wpe.h"

namespace meetkit {

/// Invalid configuration text or values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Random augmentation policy for dataset copies and the pipeline's
/// augment stage.
struct AugmentPolicy {
  std::vector<double> speed_factors{0.9, 1.0, 1.1};
  double pitch_max_semitones = 2.0;
  double pitch_probability = 0.5;
  std::string noise_scp;  // optional wav.scp of noise recordings
  double snr_min = 5.0;
  double snr_max = 20.0;
  bool reverb = true;
  double eq_probability = 0.3;
  double eq_weight_min = 0.3;
  double eq_weight_max = 1.0;

  void Validate() const;
};

struct SimulateConfig {
  std::string noise_scp;
  double snr_min = 5.0;
  double snr_max = 20.0;
  int noise_sources = 1;
  /// Length of the early part of the RIR kept in the reference signal.
  double early_ms = 25.0;

  void Validate() const;
};

struct PipelineConfig {
  std::uint64_t seed = 0;
  int workers = 1;
  std::vector<std::string> stages{"wpe", "beamform", "features"};
  WavEncoding output_encoding = WavEncoding::kFloat32;

  StftConfig stft;
  WpeConfig wpe;
  BeamformConfig beamform;
  RoomSamplingRanges room;  // array geometry rebuilt from the two below
  int array_mics = 8;
  double array_radius = 0.05;
  T60Model t60_model = T60Model::kImageCalibrated;
  RirOptions rir;
  SimulateConfig simulate;
  AugmentPolicy augment;
  OverlapPolicy overlap;
  FeatureConfig features;
  bool spec_augment = false;
  SpecAugmentConfig spec_augment_config;
  AlignCosts costs;
  double rover_alpha = 1.0;

  /// Checks every block; throws ConfigError naming the first bad one.
  void Validate() const;
};

inline const std::vector<std::string> kKnownStages = {
    "augment", "simulate", "wpe", "beamform", "features"};

/// Reads INI text. Keys missing from the text keep their defaults; unknown
/// sections or keys and out-of-range values are errors.
PipelineConfig ParsePipelineConfig(std::istream& in);
/// As above; relative noise_scp paths resolve against the file's directory.
PipelineConfig LoadPipelineConfig(const std::filesystem::path& path);

/// Every recognised key with its default value and a one-line description,
/// as INI text.
void WriteDefaultConfig(std::ostream& out);

/// Comma-separated list helpers shared with the command line.
std::vector<double> ParseDoubleList(const std::string& text);
std::vector<std::string> ParseStringList(const std::string& text);
AlignCosts ParseAlignCosts(const std::string& text);

}  // namespace meetkit

#endif  // MEETKIT_TOOLS_CONFIG_H_
