// tools/include/meetkit/tools/pipeline.h

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

#ifndef MEETKIT_TOOLS_PIPELINE_H_
#define MEETKIT_TOOLS_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "meetkit/audio_buffer.h"
#include "meetkit/augment.h"
#include "meetkit/features.h"
#include "meetkit/manifest.h"
#include "meetkit/rng.h"
#include "meetkit/tools/config.h"

namespace meetkit {

/// Process exit codes shared by all subcommands.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitPartial = 3,
};

/// Input or output file problem detected before or during a run.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Relative manifest entries are resolved against the manifest's directory.
std::filesystem::path ResolveEntry(const std::filesystem::path& manifest,
                                   const std::string& entry);

/// Loads every recording of a wav.scp as mono (first channel).
std::vector<AudioBuffer> LoadNoiseBank(const std::filesystem::path& scp);

/// Random room with a single microphone, for reverberating mono audio.
Rir SampleMonoRir(const PipelineConfig& cfg, Rng& rng, int sample_rate);

/// Random low-pass, high-pass, de-emphasis or response-curve filter.
EqSpec RandomEq(const AugmentPolicy& policy, Rng& rng, int sample_rate);

struct AugmentedCopy {
  std::string suffix;
  AudioBuffer audio;
};

/// Dataset copies of one mono utterance: one per speed factor, one pitch
/// copy, one noise/reverb copy when noise is available, and one EQ copy.
std::vector<AugmentedCopy> AugmentCopies(const AudioBuffer& x,
                                         const PipelineConfig& cfg,
                                         const std::vector<AudioBuffer>& noises,
                                         std::uint64_t seed);

/// One randomly augmented version: a speed factor from the list, then pitch,
/// reverb, noise and EQ, each applied per the policy.
AudioBuffer AugmentOnce(const AudioBuffer& x, const PipelineConfig& cfg,
                        const std::vector<AudioBuffer>& noises,
                        std::uint64_t seed);

struct SimulatedRecording {
  AudioBuffer array;      // one channel per microphone
  AudioBuffer reference;  // direct path plus early reflections, per mic
  RoomSpec room;
  ArraySpec geometry;
};

/// Places the mono source in a sampled room and renders the array, adding
/// directional noise from the bank when it is non-empty.
SimulatedRecording SimulateRecording(const AudioBuffer& source,
                                     const PipelineConfig& cfg,
                                     const std::vector<AudioBuffer>& noises,
                                     std::uint64_t seed);

struct PipelineOptions {
  std::filesystem::path manifest;  // wav.scp
  std::filesystem::path output_dir;
  std::optional<std::filesystem::path> reference_scp;
};

struct StageRow {
  std::string utterance;
  std::string stage;
  bool ok = true;
  std::size_t channels = 0;
  std::size_t samples = 0;  // frames for the features stage
  std::optional<double> si_sdr;
  std::optional<double> si_sdr_delta;
  std::string message;
};

struct PipelineResult {
  int exit_code = kExitOk;
  std::size_t utterances = 0;
  std::size_t failed = 0;
  std::vector<StageRow> rows;  // manifest order, then stage order
};

/// Runs the configured stage chain on every utterance of the manifest with
/// cfg.workers parallel workers. Outputs go to output_dir/<stage>/ with a
/// wav.scp (or feats.tsv) per stage, plus report.tsv and report.txt.
/// Throws ConfigError or DataError before any processing when the config
/// is invalid or inputs are missing.
PipelineResult RunPipeline(const PipelineConfig& cfg,
                           const PipelineOptions& options);

}  // namespace meetkit

#endif  // MEETKIT_TOOLS_PIPELINE_H_
