// core/src/beamformer.cc

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

#include "meetkit/beamformer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "meetkit/fft.h"

namespace meetkit {
namespace {

constexpr double kWeightSmoothing = 0.9;

std::size_t MsToSamples(double ms, int fs) {
  return static_cast<std::size_t>(std::llround(ms * fs / 1000.0));
}

// Segment k of channel c, shifted by `lag` and zero-padded outside the signal.
std::vector<double> SegmentOf(const AudioBuffer& x, std::size_t c,
                              const Segmentation& seg, std::size_t k,
                              int lag = 0) {
  std::vector<double> out(seg.length, 0.0);
  auto in = x.channel(c);
  const long long base = static_cast<long long>(seg.start(k)) + lag;
  for (std::size_t i = 0; i < seg.length; ++i) {
    const long long idx = base + static_cast<long long>(i);
    if (idx >= 0 && idx < static_cast<long long>(in.size())) {
      out[i] = in[static_cast<std::size_t>(idx)];
    }
  }
  return out;
}

double Energy(std::span<const double> v) {
  double e = 0.0;
  for (double s : v) e += s * s;
  return e;
}

// max over |lag| <= max_lag of sum a[n] b[n + lag] / sqrt(Ea Eb).
double PeakNormalizedXcorr(std::span<const double> a, std::span<const double> b,
                           int max_lag, RealFft& fft) {
  const double ea = Energy(a), eb = Energy(b);
  if (ea <= 0.0 || eb <= 0.0) return 0.0;
  auto fa = fft.Forward(a);
  const auto fb = fft.Forward(b);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] = std::conj(fa[i]) * fb[i];
  const auto r = fft.Inverse(fa);
  const long long n = static_cast<long long>(fft.size());
  double best = -std::numeric_limits<double>::infinity();
  for (int l = -max_lag; l <= max_lag; ++l) {
    best = std::max(best, r[static_cast<std::size_t>((l + n) % n)]);
  }
  return best / std::sqrt(ea * eb);
}

double TransitionCost(int from, int to, double weight, int max_lag) {
  return weight * std::abs(to - from) / static_cast<double>(max_lag);
}

}  // namespace

void BeamformConfig::Validate() const {
  if (!(segment_ms > 0.0) || !(step_ms > 0.0) || step_ms > segment_ms) {
    throw std::invalid_argument(
        "beamform: need 0 < step_ms <= segment_ms");
  }
  if (!(max_lag_ms > 0.0)) {
    throw std::invalid_argument("beamform: max_lag_ms must be positive");
  }
  if (2.0 * max_lag_ms > segment_ms) {
    throw std::invalid_argument(
        "beamform: segment must span at least twice the maximum lag");
  }
  if (n_peaks < 1) throw std::invalid_argument("beamform: n_peaks must be >= 1");
  if (transition_weight < 0.0) {
    throw std::invalid_argument("beamform: transition_weight must be >= 0");
  }
}

Segmentation Segmentation::ForSignal(std::size_t num_samples,
                                     std::size_t length, std::size_t step) {
  if (length == 0 || step == 0) {
    throw std::invalid_argument("segment length and step must be positive");
  }
  Segmentation s{length, step, 1};
  if (num_samples > length) {
    s.count = 1 + (num_samples - length + step - 1) / step;
  }
  return s;
}

void TdoaTrack::Validate(std::size_t channels) const {
  if (delays.size() != channels || scores.size() != channels) {
    throw std::invalid_argument("TDOA track channel count mismatch");
  }
  if (reference >= channels) {
    throw std::invalid_argument("TDOA reference channel out of range");
  }
  for (std::size_t c = 0; c < channels; ++c) {
    if (delays[c].size() != segments.count ||
        scores[c].size() != segments.count) {
      throw std::invalid_argument("TDOA track segment count mismatch");
    }
    for (int d : delays[c]) {
      if (std::abs(d) > max_lag) {
        throw std::invalid_argument("TDOA lag " + std::to_string(d) +
                                    " exceeds max_lag " +
                                    std::to_string(max_lag));
      }
      if (c == reference && d != 0) {
        throw std::invalid_argument("reference channel must have zero delay");
      }
    }
  }
}

std::size_t SelectReference(const AudioBuffer& x, std::size_t segment_length,
                            int max_lag, double max_seconds) {
  const std::size_t channels = x.channels();
  if (channels == 0) throw std::invalid_argument("select_reference: no channels");
  if (channels == 1) return 0;
  const std::size_t limit = std::min(
      x.length(), static_cast<std::size_t>(max_seconds * x.sample_rate()));
  const auto seg = Segmentation::ForSignal(limit, segment_length,
                                           segment_length);
  RealFft fft(NextPow2(2 * segment_length));

  std::vector<std::vector<double>> xcorr(channels,
                                         std::vector<double>(channels, 0.0));
  for (std::size_t k = 0; k < seg.count; ++k) {
    std::vector<std::vector<double>> parts;
    parts.reserve(channels);
    for (std::size_t c = 0; c < channels; ++c) {
      parts.push_back(SegmentOf(x, c, seg, k));
    }
    for (std::size_t i = 0; i < channels; ++i) {
      for (std::size_t j = i + 1; j < channels; ++j) {
        const double v = PeakNormalizedXcorr(parts[i], parts[j], max_lag, fft);
        xcorr[i][j] += v;
        xcorr[j][i] += v;
      }
    }
  }

  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < channels; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < channels; ++j) {
      if (j != i) s += xcorr[i][j];
    }
    s /= static_cast<double>((channels - 1) * seg.count);
    if (s > best_score + 1e-12 * std::abs(best_score)) {
      best_score = s;
      best = i;
    }
  }
  return best;
}

std::vector<TdoaCandidate> GccPhat(std::span<const double> a,
                                   std::span<const double> b, int max_lag,
                                   int n_peaks) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("gcc_phat: inputs must have equal length");
  }
  if (max_lag < 0 || a.size() < 2 * static_cast<std::size_t>(max_lag) ||
      a.size() < 2) {
    throw std::invalid_argument("gcc_phat: signals shorter than 2 * max_lag");
  }
  if (n_peaks < 1) throw std::invalid_argument("gcc_phat: n_peaks must be >= 1");
  if (Energy(a) <= 0.0 || Energy(b) <= 0.0) {
    throw std::invalid_argument("gcc_phat: zero-energy input");
  }

  RealFft fft(NextPow2(2 * a.size()));
  auto fa = fft.Forward(a);
  const auto fb = fft.Forward(b);
  double peak_mag = 0.0;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    fa[i] = std::conj(fa[i]) * fb[i];
    peak_mag = std::max(peak_mag, std::abs(fa[i]));
  }
  for (auto& v : fa) {
    const double mag = std::abs(v);
    v = mag > 1e-12 * peak_mag ? v / mag : Complex{};
  }
  const auto r = fft.Inverse(fa);

  const long long n = static_cast<long long>(fft.size());
  std::vector<double> curve(2 * static_cast<std::size_t>(max_lag) + 1);
  for (int l = -max_lag; l <= max_lag; ++l) {
    curve[static_cast<std::size_t>(l + max_lag)] =
        r[static_cast<std::size_t>((l + n) % n)];
  }

  std::vector<TdoaCandidate> peaks;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const bool left = i == 0 || curve[i] > curve[i - 1];
    const bool right = i + 1 == curve.size() || curve[i] >= curve[i + 1];
    if (left && right) {
      peaks.push_back({static_cast<int>(i) - max_lag, curve[i]});
    }
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const TdoaCandidate& p, const TdoaCandidate& q) {
                     if (p.score != q.score) return p.score > q.score;
                     return std::abs(p.lag) < std::abs(q.lag);
                   });
  if (peaks.size() > static_cast<std::size_t>(n_peaks)) {
    peaks.resize(static_cast<std::size_t>(n_peaks));
  }
  return peaks;
}

std::vector<std::size_t> ViterbiPath(
    const std::vector<std::vector<TdoaCandidate>>& candidates,
    double transition_weight, int max_lag) {
  if (candidates.empty()) {
    throw std::invalid_argument("viterbi_tdoa: no segments");
  }
  for (const auto& c : candidates) {
    if (c.empty()) {
      throw std::invalid_argument("viterbi_tdoa: empty candidate list");
    }
  }
  if (max_lag <= 0) throw std::invalid_argument("viterbi_tdoa: max_lag <= 0");

  const std::size_t segments = candidates.size();
  std::vector<std::vector<double>> score(segments);
  std::vector<std::vector<std::size_t>> back(segments);
  score[0].resize(candidates[0].size());
  for (std::size_t i = 0; i < candidates[0].size(); ++i) {
    score[0][i] = candidates[0][i].score;
  }
  for (std::size_t t = 1; t < segments; ++t) {
    const auto& prev = candidates[t - 1];
    const auto& cur = candidates[t];
    score[t].resize(cur.size());
    back[t].resize(cur.size());
    for (std::size_t j = 0; j < cur.size(); ++j) {
      double best = -std::numeric_limits<double>::infinity();
      std::size_t arg = 0;
      for (std::size_t i = 0; i < prev.size(); ++i) {
        const double v = score[t - 1][i] -
                         TransitionCost(prev[i].lag, cur[j].lag,
                                        transition_weight, max_lag);
        if (v > best) {
          best = v;
          arg = i;
        }
      }
      score[t][j] = best + cur[j].score;
      back[t][j] = arg;
    }
  }

  std::vector<std::size_t> path(segments);
  const auto& last = score.back();
  path.back() = static_cast<std::size_t>(
      std::max_element(last.begin(), last.end()) - last.begin());
  for (std::size_t t = segments - 1; t > 0; --t) {
    path[t - 1] = back[t][path[t]];
  }
  return path;
}

std::vector<int> ViterbiTdoa(
    const std::vector<std::vector<TdoaCandidate>>& candidates,
    double transition_weight, int max_lag) {
  const auto path = ViterbiPath(candidates, transition_weight, max_lag);
  std::vector<int> lags(path.size());
  for (std::size_t t = 0; t < path.size(); ++t) {
    lags[t] = candidates[t][path[t]].lag;
  }
  return lags;
}

std::vector<std::vector<int>> JointTdoaRefine(
    const std::vector<std::vector<std::vector<TdoaCandidate>>>& candidates,
    const std::vector<std::vector<std::size_t>>& first_pass,
    double transition_weight, int max_lag) {
  const std::size_t channels = candidates.size();
  if (first_pass.size() != channels) {
    throw std::invalid_argument("joint_tdoa: channel count mismatch");
  }
  if (channels == 0) return {};
  const std::size_t segments = candidates[0].size();
  if (channels >= 8 * sizeof(std::size_t) - 1) {
    throw std::invalid_argument("joint_tdoa: too many channels");
  }

  // options[c][t] = {step-one choice, best other candidate if any}
  std::vector<std::vector<std::vector<TdoaCandidate>>> options(channels);
  for (std::size_t c = 0; c < channels; ++c) {
    if (candidates[c].size() != segments || first_pass[c].size() != segments) {
      throw std::invalid_argument("joint_tdoa: segment count mismatch");
    }
    options[c].resize(segments);
    for (std::size_t t = 0; t < segments; ++t) {
      const auto& cand = candidates[c][t];
      const std::size_t chosen = first_pass[c][t];
      options[c][t].push_back(cand.at(chosen));
      std::size_t alt = cand.size();
      for (std::size_t i = 0; i < cand.size(); ++i) {
        if (i == chosen) continue;
        if (alt == cand.size() || cand[i].score > cand[alt].score) alt = i;
      }
      if (alt < cand.size()) options[c][t].push_back(cand[alt]);
    }
  }

  const std::size_t states = std::size_t{1} << channels;
  auto valid = [&](std::size_t t, std::size_t s) {
    for (std::size_t c = 0; c < channels; ++c) {
      if (((s >> c) & 1u) && options[c][t].size() < 2) return false;
    }
    return true;
  };
  auto lag_of = [&](std::size_t c, std::size_t t, std::size_t s) {
    return options[c][t][(s >> c) & 1u].lag;
  };
  auto emission = [&](std::size_t t, std::size_t s) {
    double e = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      e += options[c][t][(s >> c) & 1u].score;
    }
    return e;
  };
  const double inv_lag = 1.0 / static_cast<double>(max_lag);
  std::vector<int> delta(channels);
  auto transition = [&](std::size_t t, std::size_t from, std::size_t to) {
    double cost = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      delta[c] = lag_of(c, t, to) - lag_of(c, t - 1, from);
      cost += std::abs(delta[c]);
    }
    for (std::size_t c = 0; c < channels; ++c) {
      for (std::size_t d = c + 1; d < channels; ++d) {
        if (static_cast<long long>(delta[c]) * delta[d] < 0) {
          cost += std::min(std::abs(delta[c]), std::abs(delta[d]));
        }
      }
    }
    return transition_weight * cost * inv_lag;
  };

  const double kNegInf = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> score(segments,
                                         std::vector<double>(states, kNegInf));
  std::vector<std::vector<std::size_t>> back(
      segments, std::vector<std::size_t>(states, 0));
  for (std::size_t s = 0; s < states; ++s) {
    if (valid(0, s)) score[0][s] = emission(0, s);
  }
  for (std::size_t t = 1; t < segments; ++t) {
    for (std::size_t s = 0; s < states; ++s) {
      if (!valid(t, s)) continue;
      double best = kNegInf;
      std::size_t arg = 0;
      for (std::size_t p = 0; p < states; ++p) {
        if (score[t - 1][p] == kNegInf) continue;
        const double v = score[t - 1][p] - transition(t, p, s);
        if (v > best) {
          best = v;
          arg = p;
        }
      }
      score[t][s] = best + emission(t, s);
      back[t][s] = arg;
    }
  }

  std::size_t state = static_cast<std::size_t>(
      std::max_element(score.back().begin(), score.back().end()) -
      score.back().begin());
  std::vector<std::vector<int>> lags(channels, std::vector<int>(segments));
  for (std::size_t t = segments; t-- > 0;) {
    for (std::size_t c = 0; c < channels; ++c) lags[c][t] = lag_of(c, t, state);
    if (t > 0) state = back[t][state];
  }
  return lags;
}

ChannelWeights ComputeWeights(const AudioBuffer& x, const TdoaTrack& track) {
  const std::size_t channels = x.channels();
  track.Validate(channels);
  const auto& seg = track.segments;
  ChannelWeights out;
  out.weights.assign(channels, std::vector<double>(seg.count, 0.0));
  if (channels == 1) {
    std::fill(out.weights[0].begin(), out.weights[0].end(), 1.0);
    return out;
  }

  std::vector<double> smoothed(channels, 0.0);
  for (std::size_t k = 0; k < seg.count; ++k) {
    const auto ref = SegmentOf(x, track.reference, seg, k);
    const double e_ref = Energy(ref);
    for (std::size_t c = 0; c < channels; ++c) {
      double raw = 0.0;
      const auto aligned = SegmentOf(x, c, seg, k, track.delays[c][k]);
      const double e = Energy(aligned);
      if (e > 0.0 && e_ref > 0.0) {
        double dot = 0.0;
        for (std::size_t i = 0; i < aligned.size(); ++i) {
          dot += aligned[i] * ref[i];
        }
        raw = std::max(0.0, dot / std::sqrt(e * e_ref));
      }
      smoothed[c] = k == 0 ? raw
                           : kWeightSmoothing * smoothed[c] +
                                 (1.0 - kWeightSmoothing) * raw;
    }
    double sum = 0.0;
    for (double w : smoothed) sum += w;
    for (std::size_t c = 0; c < channels; ++c) {
      out.weights[c][k] =
          sum > 0.0 ? smoothed[c] / sum : 1.0 / static_cast<double>(channels);
    }
  }
  return out;
}

AudioBuffer DelayAndSum(const AudioBuffer& x, const TdoaTrack& track,
                        const ChannelWeights& weights) {
  const std::size_t channels = x.channels();
  track.Validate(channels);
  const auto& seg = track.segments;
  if (weights.weights.size() != channels) {
    throw std::invalid_argument("delay_and_sum: weight channel mismatch");
  }
  for (const auto& w : weights.weights) {
    if (w.size() != seg.count) {
      throw std::invalid_argument("delay_and_sum: weight segment mismatch");
    }
  }
  const std::size_t n = x.length();
  if (seg.count > 1 && seg.start(seg.count - 1) >= n) {
    throw std::invalid_argument("delay_and_sum: track extends past signal");
  }
  if (seg.start(seg.count - 1) + seg.length < n) {
    throw std::invalid_argument("delay_and_sum: track does not cover signal");
  }

  // Triangular cross-fade; with 50% overlap the windows sum to one.
  const double half = seg.length / 2.0;
  std::vector<double> window(seg.length);
  for (std::size_t i = 0; i < seg.length; ++i) {
    const double pos = static_cast<double>(i) + 0.5;
    window[i] = pos < half ? pos / half : (seg.length - pos) / half;
  }

  AudioBuffer y(1, n, x.sample_rate());
  auto out = y.channel(0);
  std::vector<double> norm(n, 0.0);
  for (std::size_t k = 0; k < seg.count; ++k) {
    const std::size_t start = seg.start(k);
    const std::size_t end = std::min(n, start + seg.length);
    for (std::size_t c = 0; c < channels; ++c) {
      const double w = weights.weights[c][k];
      if (w == 0.0) continue;
      auto in = x.channel(c);
      const long long lag = track.delays[c][k];
      for (std::size_t i = start; i < end; ++i) {
        const long long src = static_cast<long long>(i) + lag;
        if (src < 0 || src >= static_cast<long long>(n)) continue;
        out[i] += window[i - start] * w * in[static_cast<std::size_t>(src)];
      }
    }
    for (std::size_t i = start; i < end; ++i) norm[i] += window[i - start];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (norm[i] > 0.0) out[i] /= norm[i];
  }
  return y;
}

BeamformResult Beamform(const AudioBuffer& x, const BeamformConfig& cfg) {
  cfg.Validate();
  const std::size_t channels = x.channels();
  if (channels < 2) {
    throw std::invalid_argument("beamform: need at least 2 channels");
  }
  x.CheckFinite();
  const int fs = x.sample_rate();
  const std::size_t seg_len = MsToSamples(cfg.segment_ms, fs);
  const std::size_t step = std::max<std::size_t>(1, MsToSamples(cfg.step_ms, fs));
  const int max_lag = static_cast<int>(MsToSamples(cfg.max_lag_ms, fs));
  if (max_lag < 1) throw std::invalid_argument("beamform: max lag below 1 sample");

  BeamformResult result;
  auto& track = result.track;
  track.segments = Segmentation::ForSignal(x.length(), seg_len, step);
  track.max_lag = max_lag;
  track.reference =
      SelectReference(x, seg_len, max_lag, cfg.reference_window_s);
  const std::size_t segments = track.segments.count;

  std::vector<std::size_t> others;
  for (std::size_t c = 0; c < channels; ++c) {
    if (c != track.reference) others.push_back(c);
  }

  // candidates[i][t] for channel others[i]
  std::vector<std::vector<std::vector<TdoaCandidate>>> candidates(
      others.size(), std::vector<std::vector<TdoaCandidate>>(segments));
  for (std::size_t t = 0; t < segments; ++t) {
    const auto ref = SegmentOf(x, track.reference, track.segments, t);
    const bool ref_silent = Energy(ref) <= 0.0;
    for (std::size_t i = 0; i < others.size(); ++i) {
      const auto seg = SegmentOf(x, others[i], track.segments, t);
      if (ref_silent || Energy(seg) <= 0.0) {
        candidates[i][t] = {{0, 0.0}};
      } else {
        candidates[i][t] = GccPhat(ref, seg, max_lag, cfg.n_peaks);
      }
    }
  }

  std::vector<std::vector<std::size_t>> first_pass(others.size());
  for (std::size_t i = 0; i < others.size(); ++i) {
    first_pass[i] =
        ViterbiPath(candidates[i], cfg.transition_weight, max_lag);
  }
  std::vector<std::vector<int>> lags;
  if (others.size() <= cfg.max_joint_channels) {
    lags = JointTdoaRefine(candidates, first_pass, cfg.transition_weight,
                           max_lag);
  } else {
    for (std::size_t i = 0; i < others.size(); ++i) {
      std::vector<int> row(segments);
      for (std::size_t t = 0; t < segments; ++t) {
        row[t] = candidates[i][t][first_pass[i][t]].lag;
      }
      lags.push_back(std::move(row));
    }
  }

  track.delays.assign(channels, std::vector<int>(segments, 0));
  track.scores.assign(channels, std::vector<double>(segments, 1.0));
  for (std::size_t i = 0; i < others.size(); ++i) {
    const std::size_t c = others[i];
    track.delays[c] = lags[i];
    for (std::size_t t = 0; t < segments; ++t) {
      double s = 0.0;
      for (const auto& cand : candidates[i][t]) {
        if (cand.lag == lags[i][t]) {
          s = cand.score;
          break;
        }
      }
      track.scores[c][t] = s;
    }
  }

  result.weights = ComputeWeights(x, track);
  result.output = DelayAndSum(x, track, result.weights);
  return result;
}

}  // namespace meetkit
