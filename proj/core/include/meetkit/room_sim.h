// core/include/meetkit/room_sim.h

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

#ifndef MEETKIT_ROOM_SIM_H_
#define MEETKIT_ROOM_SIM_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "meetkit/audio_buffer.h"

namespace meetkit {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

double Distance(const Vec3& a, const Vec3& b);

/// How a target T60 is turned into a uniform reflection coefficient.
/// kImageCalibrated searches for the coefficient whose image-source energy
/// decay has the requested T60 at the actual source and microphone.
/// kEyring uses Eyring's formula directly.
enum class T60Model { kImageCalibrated, kEyring };

/// Shoebox room. Reflection coefficients are amplitude factors ordered
/// {x=0, x=L, y=0, y=W, z=0, z=H}. When t60 is set it overrides them with a
/// uniform coefficient chosen by t60_model.
struct RoomSpec {
  Vec3 dimensions{5.0, 4.0, 3.0};
  std::array<double, 6> reflection{0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  std::optional<double> t60;
  T60Model t60_model = T60Model::kImageCalibrated;
  double sound_speed = 343.0;

  void Validate() const;
  bool Contains(const Vec3& p) const;
};

/// Uniform coefficient giving the requested T60 under Eyring's formula.
double EyringReflection(const Vec3& dimensions, double t60,
                        double sound_speed = 343.0);

struct ArraySpec {
  std::vector<Vec3> mics;
  Vec3 source;

  void Validate(const RoomSpec& room) const;
};

/// Horizontal uniform circular array centred on the origin.
std::vector<Vec3> UniformCircularArray(std::size_t mics, double radius);

struct RirOptions {
  int sample_rate = kDefaultSampleRate;
  double duration = 0.5;  // seconds
  int max_order = 40;     // per axis
  /// Images weaker than this fraction of the direct path are dropped.
  double min_relative_amplitude = 1e-6;
  /// 100 Hz high-pass on each response, as in Allen and Berkley.
  bool high_pass = true;
};

/// Uniform coefficient whose image-source energy decay between source and
/// mic, over options.duration, has a Schroeder T60 of target_t60.
double CalibratedReflection(const RoomSpec& room, const Vec3& source,
                            const Vec3& mic, double target_t60,
                            const RirOptions& options = {});

/// Per-surface coefficients used when rendering source -> mic.
std::array<double, 6> EffectiveReflections(const RoomSpec& room,
                                           const Vec3& source, const Vec3& mic,
                                           const RirOptions& options = {});

/// T60 from a Schroeder backward-integrated energy decay: linear fit of the
/// -5..-25 dB range, extrapolated to 60 dB. Returns 0 when the decay does
/// not cover that range.
double SchroederT60(std::span<const double> rir, int sample_rate);

/// Multi-microphone room impulse response.
struct Rir {
  std::vector<std::vector<double>> taps;  // [mic][sample]
  int sample_rate = kDefaultSampleRate;

  std::size_t mics() const { return taps.size(); }
  AudioBuffer ToAudio() const;
  static Rir FromAudio(const AudioBuffer& audio);
  /// Each channel zeroed from early_s seconds after its largest tap on.
  Rir EarlyPart(double early_s) const;
};

/// Allen-Berkley image method with windowed-sinc fractional-delay placement
/// (half-width 32 samples, Hann window). Deterministic.
Rir GenerateRir(const RoomSpec& room, const ArraySpec& array,
                const RirOptions& options = {});

/// Noise sources placed at random positions in the room, each rendered
/// through its own RIR to every microphone.
struct DirectionalNoise {
  std::vector<AudioBuffer> sources;  // mono
  double snr_db = 10.0;
  RoomSpec room;
  std::vector<Vec3> mics;
  RirOptions rir_options;
  double min_array_distance = 0.5;
  double wall_margin = 0.1;
  std::size_t reference_channel = 0;
};

/// Convolves a mono source with each microphone's RIR; optionally adds
/// directional noise scaled to snr_db on the reference channel. Output has
/// the source's length.
AudioBuffer SimulateArray(const AudioBuffer& source, const Rir& rir,
                          const std::optional<DirectionalNoise>& noise = {},
                          std::uint64_t seed = 0);

struct NoiseImage {
  AudioBuffer source;  // mono
  Rir rir;             // one channel per microphone
};

/// Renders each noise through its RIR (tiled from a random offset to x's
/// length), sums them and adds the result scaled to snr_db against x on the
/// reference channel.
void AddNoiseImages(AudioBuffer& x, const std::vector<NoiseImage>& noises,
                    double snr_db, std::size_t reference_channel,
                    std::uint64_t seed);

struct RoomSamplingRanges {
  Vec3 min_dimensions{3.0, 3.0, 2.5};
  Vec3 max_dimensions{10.0, 10.0, 3.5};
  double t60_min = 0.2;
  double t60_max = 0.6;
  std::vector<Vec3> array_geometry = UniformCircularArray(8, 0.05);
  double array_jitter = 0.5;  // horizontal offset of the array centre, m
  double array_height_min = 0.7;
  double array_height_max = 1.2;
  double source_height_min = 1.0;
  double source_height_max = 1.8;
  double wall_margin = 0.5;
  double source_array_distance = 0.5;

  void Validate() const;
};

/// Random room and array placement. Throws std::invalid_argument when the
/// ranges cannot produce a valid placement.
std::pair<RoomSpec, ArraySpec> SampleRoomConfig(const RoomSamplingRanges& r,
                                                std::uint64_t seed);

}  // namespace meetkit

#endif  // MEETKIT_ROOM_SIM_H_
