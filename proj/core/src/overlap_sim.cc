// core/src/overlap_sim.cc

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

#include "meetkit/overlap_sim.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "meetkit/rng.h"

namespace meetkit {
namespace {

struct Pick {
  const Utterance* utt;
  std::size_t speaker;  // index into the chosen speakers
};

}  // namespace

std::vector<TimelineEntry> MeetingMixture::Timeline() const {
  std::vector<TimelineEntry> out;
  const double fs = audio.sample_rate();
  for (const auto& p : timeline) {
    out.push_back({p.id, p.speaker, p.onset / fs, p.length / fs});
  }
  return out;
}

void OverlapPolicy::Validate() const {
  double sum = 0.0;
  for (double p : speaker_probabilities) {
    if (!(p >= 0.0)) throw std::invalid_argument("overlap: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("overlap: speaker probabilities must sum to 1");
  }
  if (!(overlap_min >= 0.0 && overlap_min <= overlap_max && overlap_max <= 1.0)) {
    throw std::invalid_argument("overlap: invalid overlap ratio range");
  }
  if (utterances_per_speaker < 1) {
    throw std::invalid_argument("overlap: utterances_per_speaker must be >= 1");
  }
  if (!(max_gain_db >= 0.0)) throw std::invalid_argument("overlap: bad gain range");
  if (onset_candidates < 2) {
    throw std::invalid_argument("overlap: onset_candidates must be >= 2");
  }
}

double TimelineOverlapRatio(const std::vector<PlacedUtterance>& timeline,
                            std::size_t total_length) {
  if (total_length == 0) return 0.0;
  std::vector<int> delta(total_length + 1, 0);
  for (const auto& p : timeline) {
    const std::size_t a = std::min(p.onset, total_length);
    const std::size_t b = std::min(p.end(), total_length);
    delta[a] += 1;
    delta[b] -= 1;
  }
  std::size_t overlapped = 0;
  int active = 0;
  for (std::size_t i = 0; i < total_length; ++i) {
    active += delta[i];
    if (active >= 2) ++overlapped;
  }
  return static_cast<double>(overlapped) / static_cast<double>(total_length);
}

MeetingMixture SimulateOverlap(const SpeakerPools& pools,
                               const OverlapPolicy& policy,
                               std::uint64_t seed) {
  policy.Validate();
  std::size_t needed = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (policy.speaker_probabilities[i] > 0.0) needed = i + 2;
  }
  if (pools.size() < needed) {
    throw std::invalid_argument("overlap: need " + std::to_string(needed) +
                                " speakers, have " +
                                std::to_string(pools.size()));
  }
  int rate = 0;
  for (const auto& [spk, utts] : pools) {
    if (utts.empty()) throw std::invalid_argument("overlap: empty pool " + spk);
    for (const auto& u : utts) {
      if (u.audio.channels() != 1 || u.audio.empty()) {
        throw std::invalid_argument("overlap: utterance " + u.id +
                                    " must be non-empty mono");
      }
      if (rate == 0) rate = u.audio.sample_rate();
      if (u.audio.sample_rate() != rate) {
        throw std::invalid_argument("overlap: sample rates differ");
      }
    }
  }

  Rng rng(seed);
  const double u = rng.Uniform();
  int n = 2;
  double acc = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    acc += policy.speaker_probabilities[i];
    if (u < acc) {
      n = static_cast<int>(i) + 2;
      break;
    }
    n = static_cast<int>(i) + 2;
  }

  std::vector<const std::string*> names;
  for (const auto& kv : pools) names.push_back(&kv.first);
  for (int i = 0; i < n; ++i) {
    const auto j = rng.UniformInt(i, static_cast<std::int64_t>(names.size()) - 1);
    std::swap(names[static_cast<std::size_t>(i)], names[static_cast<std::size_t>(j)]);
  }
  names.resize(static_cast<std::size_t>(n));

  std::vector<Pick> picks;
  for (std::size_t s = 0; s < names.size(); ++s) {
    const auto& pool = pools.at(*names[s]);
    std::vector<std::size_t> idx(pool.size());
    std::iota(idx.begin(), idx.end(), 0);
    const std::size_t take =
        std::min(pool.size(), static_cast<std::size_t>(policy.utterances_per_speaker));
    for (std::size_t i = 0; i < take; ++i) {
      const auto j = rng.UniformInt(static_cast<std::int64_t>(i),
                                    static_cast<std::int64_t>(idx.size()) - 1);
      std::swap(idx[i], idx[static_cast<std::size_t>(j)]);
      picks.push_back({&pool[idx[i]], s});
    }
  }
  for (std::size_t i = picks.size(); i > 1; --i) {
    const auto j = rng.UniformInt(0, static_cast<std::int64_t>(i) - 1);
    std::swap(picks[i - 1], picks[static_cast<std::size_t>(j)]);
  }
  const double target = rng.Uniform(policy.overlap_min, policy.overlap_max);

  MeetingMixture mix;
  mix.n_speakers = n;
  std::vector<unsigned char> active;  // utterances covering each sample
  std::vector<std::size_t> single_prefix;
  std::vector<std::size_t> speaker_end(names.size(), 0);
  std::size_t total = 0, overlapped = 0, prev_onset = 0;

  for (const Pick& p : picks) {
    const std::size_t len = p.utt->audio.length();
    const std::size_t lo = std::max(prev_onset, speaker_end[p.speaker]);
    const std::size_t hi = std::max(lo, total);
    single_prefix.assign(total + 1, 0);
    for (std::size_t i = 0; i < total; ++i) {
      single_prefix[i + 1] = single_prefix[i] + (active[i] == 1 ? 1 : 0);
    }
    std::size_t best_onset = lo;
    double best_err = std::numeric_limits<double>::infinity();
    const std::size_t grid = static_cast<std::size_t>(policy.onset_candidates);
    for (std::size_t g = 0; g < grid; ++g) {
      const std::size_t onset = lo + (hi - lo) * g / (grid - 1);
      const std::size_t a = std::min(onset, total);
      const std::size_t b = std::min(onset + len, total);
      const std::size_t gained = single_prefix[b] - single_prefix[a];
      const std::size_t new_total = std::max(total, onset + len);
      const double ratio =
          static_cast<double>(overlapped + gained) / static_cast<double>(new_total);
      const double err = std::abs(ratio - target);
      if (err < best_err) {
        best_err = err;
        best_onset = onset;
      }
    }
    const std::size_t end = best_onset + len;
    if (end > total) {
      active.resize(end, 0);
      total = end;
    }
    for (std::size_t i = best_onset; i < end; ++i) {
      if (active[i] == 1) ++overlapped;
      ++active[i];
    }
    speaker_end[p.speaker] = end;
    prev_onset = best_onset;
    mix.timeline.push_back({p.utt->id, *names[p.speaker], p.utt->transcript,
                            best_onset, len, 0.0});
  }
  for (auto& placed : mix.timeline) {
    placed.gain_db = rng.Uniform(-policy.max_gain_db, policy.max_gain_db);
  }

  mix.audio = AudioBuffer(1, total, rate);
  auto out = mix.audio.channel(0);
  for (std::size_t k = 0; k < picks.size(); ++k) {
    const auto& placed = mix.timeline[k];
    const double gain = std::pow(10.0, placed.gain_db / 20.0);
    const auto src = picks[k].utt->audio.channel(0);
    for (std::size_t i = 0; i < placed.length; ++i) {
      out[placed.onset + i] += gain * src[i];
    }
  }
  mix.overlap_ratio = static_cast<double>(overlapped) / static_cast<double>(total);

  std::vector<SotUtterance> sot;
  for (const auto& placed : mix.timeline) {
    if (placed.transcript.find_first_not_of(" \t") == std::string::npos) continue;
    sot.push_back({placed.transcript, placed.onset / static_cast<double>(rate),
                   placed.speaker});
  }
  if (!sot.empty()) mix.reference = SotSerialize(std::move(sot));
  return mix;
}

}  // namespace meetkit
