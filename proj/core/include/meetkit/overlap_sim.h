// core/include/meetkit/overlap_sim.h

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

#ifndef MEETKIT_OVERLAP_SIM_H_
#define MEETKIT_OVERLAP_SIM_H_

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "meetkit/audio_buffer.h"
#include "meetkit/manifest.h"
#include "meetkit/sot.h"

namespace meetkit {

/// Single-speaker source utterance (mono).
struct Utterance {
  std::string id;
  std::string speaker;
  AudioBuffer audio;
  std::string transcript;
};

/// An utterance as placed in a mixture.
struct PlacedUtterance {
  std::string id;
  std::string speaker;
  std::string transcript;
  std::size_t onset = 0;   // samples
  std::size_t length = 0;  // samples
  double gain_db = 0.0;

  std::size_t end() const { return onset + length; }
  friend bool operator==(const PlacedUtterance&,
                         const PlacedUtterance&) = default;
};

struct MeetingMixture {
  AudioBuffer audio;
  std::vector<PlacedUtterance> timeline;  // in placement order
  int n_speakers = 0;
  /// Fraction of mixture samples where two or more utterances are active.
  double overlap_ratio = 0.0;
  SotTranscript reference;

  std::vector<TimelineEntry> Timeline() const;
  friend bool operator==(const MeetingMixture&,
                         const MeetingMixture&) = default;
};

struct OverlapPolicy {
  /// Probabilities of 2, 3 and 4 speakers.
  std::array<double, 3> speaker_probabilities{0.5, 0.3, 0.2};
  double overlap_min = 0.25;
  double overlap_max = 0.50;
  int utterances_per_speaker = 2;
  double max_gain_db = 3.0;
  /// Candidate onsets evaluated per placement.
  int onset_candidates = 64;

  void Validate() const;
};

using SpeakerPools = std::map<std::string, std::vector<Utterance>>;

/// Overlap ratio of a timeline over [0, total_length) samples.
double TimelineOverlapRatio(const std::vector<PlacedUtterance>& timeline,
                            std::size_t total_length);

/// Draws a speaker count, distinct speakers and their utterances, then
/// places utterances left to right. Each onset is chosen from an even grid
/// between the previous onset and the current mixture end (never overlapping
/// the same speaker) so that the running overlap ratio approaches a target
/// drawn from [overlap_min, overlap_max]. Utterance gains are uniform in
/// +-max_gain_db. Throws if a pool is empty, rates differ, or there are
/// fewer speakers than the largest count with nonzero probability.
MeetingMixture SimulateOverlap(const SpeakerPools& pools,
                               const OverlapPolicy& policy,
                               std::uint64_t seed);

}  // namespace meetkit

#endif  // MEETKIT_OVERLAP_SIM_H_
