// core/src/features.cc

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

#include "meetkit/features.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "meetkit/fft.h"
#include "meetkit/rng.h"

namespace meetkit {
namespace {

constexpr char kFeatureMagic[4] = {'M', 'K', 'F', 'M'};

template <typename T>
T ToLittle(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    std::reverse(b, b + sizeof(T));
    std::memcpy(&v, b, sizeof(T));
  }
  return v;
}

void CheckMono(const AudioBuffer& x, const char* what) {
  if (x.channels() != 1) {
    throw std::invalid_argument(std::string(what) + ": input must be mono");
  }
}

}  // namespace

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols, double value)
    : rows_(rows), cols_(cols), data_(rows * cols, value) {}

const FeatureBlock* FeatureMatrix::Find(const std::string& name) const {
  for (const auto& b : layout) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

FeatureMatrix FeatureMatrix::Concat(const FeatureMatrix& a,
                                    const FeatureMatrix& b) {
  if (a.rows() != b.rows()) {
    throw std::invalid_argument("feature concat: row counts differ (" +
                                std::to_string(a.rows()) + " vs " +
                                std::to_string(b.rows()) + ")");
  }
  FeatureMatrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) m.at(r, c) = a.at(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) m.at(r, a.cols() + c) = b.at(r, c);
  }
  m.frame_shift_ms = a.frame_shift_ms;
  m.frame_length_ms = a.frame_length_ms;
  m.layout = a.layout;
  for (auto blk : b.layout) {
    blk.offset += a.cols();
    m.layout.push_back(blk);
  }
  return m;
}

std::size_t FrameConfig::Length(int sample_rate) const {
  return static_cast<std::size_t>(
      std::lround(frame_length_ms * sample_rate / 1000.0));
}

std::size_t FrameConfig::Shift(int sample_rate) const {
  return static_cast<std::size_t>(
      std::lround(frame_shift_ms * sample_rate / 1000.0));
}

std::size_t FrameConfig::NumFrames(std::size_t n, int sample_rate) const {
  const std::size_t len = Length(sample_rate);
  if (n < len) return 0;
  return (n - len) / Shift(sample_rate) + 1;
}

void FrameConfig::Validate() const {
  if (!(frame_length_ms > 0.0) || !(frame_shift_ms > 0.0)) {
    throw std::invalid_argument("frame length and shift must be positive");
  }
}

void FbankConfig::Validate(int sample_rate) const {
  frames.Validate();
  if (sample_rate <= 0) throw std::invalid_argument("fbank: bad sample rate");
  if (frames.Length(sample_rate) < 2 || frames.Shift(sample_rate) < 1) {
    throw std::invalid_argument("fbank: frame too short at this rate");
  }
  if (num_bins < 1) throw std::invalid_argument("fbank: num_bins must be >= 1");
  const double high = high_hz * sample_rate / 16000.0;
  if (!(low_hz >= 0.0 && low_hz < high && high <= sample_rate / 2.0)) {
    throw std::invalid_argument("fbank: need 0 <= low < high <= fs/2");
  }
  if (!(log_floor > 0.0)) throw std::invalid_argument("fbank: log floor > 0");
  if (!(preemphasis >= 0.0 && preemphasis < 1.0)) {
    throw std::invalid_argument("fbank: preemphasis must be in [0, 1)");
  }
  if (!(dither >= 0.0)) throw std::invalid_argument("fbank: dither >= 0");
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

std::vector<double> MelCenters(const FbankConfig& cfg, int sample_rate) {
  const double lo = HzToMel(cfg.low_hz);
  const double hi = HzToMel(cfg.high_hz * sample_rate / 16000.0);
  const double step = (hi - lo) / (cfg.num_bins + 1);
  std::vector<double> out(static_cast<std::size_t>(cfg.num_bins));
  for (int b = 0; b < cfg.num_bins; ++b) out[b] = MelToHz(lo + (b + 1) * step);
  return out;
}

FeatureMatrix Fbank(const AudioBuffer& x, const FbankConfig& cfg,
                    std::uint64_t seed) {
  CheckMono(x, "fbank");
  const int fs = x.sample_rate();
  cfg.Validate(fs);
  const std::size_t len = cfg.frames.Length(fs);
  const std::size_t shift = cfg.frames.Shift(fs);
  const std::size_t frames = cfg.frames.NumFrames(x.length(), fs);
  if (frames == 0) {
    throw std::invalid_argument("fbank: signal shorter than one frame (" +
                                std::to_string(x.length()) + " < " +
                                std::to_string(len) + " samples)");
  }

  std::vector<double> signal(x.channel(0).begin(), x.channel(0).end());
  if (cfg.dither > 0.0) {
    Rng rng(seed);
    for (double& v : signal) v += cfg.dither * rng.Normal();
  }

  RealFft fft(NextPow2(len));
  const std::size_t bins = fft.bins();
  const std::size_t nb = static_cast<std::size_t>(cfg.num_bins);
  const double mel_lo = HzToMel(cfg.low_hz);
  const double mel_hi = HzToMel(cfg.high_hz * fs / 16000.0);
  const double mel_step = (mel_hi - mel_lo) / (cfg.num_bins + 1);
  // Sparse triangular weights: for each filter, first bin and weights.
  std::vector<std::size_t> first(nb, 0);
  std::vector<std::vector<double>> weights(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    const double left = mel_lo + b * mel_step;
    const double centre = left + mel_step;
    const double right = centre + mel_step;
    bool started = false;
    for (std::size_t k = 0; k < bins; ++k) {
      const double mel = HzToMel(static_cast<double>(k) * fs / fft.size());
      double w = 0.0;
      if (mel > left && mel < right) {
        w = mel <= centre ? (mel - left) / (centre - left)
                          : (right - mel) / (right - centre);
      }
      if (w > 0.0) {
        if (!started) {
          first[b] = k;
          started = true;
        }
        weights[b].resize(k - first[b] + 1, 0.0);
        weights[b][k - first[b]] = w;
      }
    }
  }

  std::vector<double> window(len);
  for (std::size_t i = 0; i < len; ++i) {
    window[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i /
                                       static_cast<double>(len - 1));
  }

  FeatureMatrix out(frames, nb);
  out.frame_length_ms = cfg.frames.frame_length_ms;
  out.frame_shift_ms = cfg.frames.frame_shift_ms;
  out.layout = {{"fbank", 0, nb}};
  std::vector<double> frame(len);
  std::vector<Complex> spec(bins);
  std::vector<double> power(bins);
  for (std::size_t t = 0; t < frames; ++t) {
    std::copy_n(signal.begin() + static_cast<std::ptrdiff_t>(t * shift), len,
                frame.begin());
    for (std::size_t i = len - 1; i > 0; --i) {
      frame[i] -= cfg.preemphasis * frame[i - 1];
    }
    frame[0] -= cfg.preemphasis * frame[0];
    for (std::size_t i = 0; i < len; ++i) frame[i] *= window[i];
    fft.Forward(frame, spec);
    for (std::size_t k = 0; k < bins; ++k) power[k] = std::norm(spec[k]);
    for (std::size_t b = 0; b < nb; ++b) {
      double e = 0.0;
      for (std::size_t j = 0; j < weights[b].size(); ++j) {
        e += weights[b][j] * power[first[b] + j];
      }
      out.at(t, b) = std::log(std::max(e, cfg.log_floor));
    }
  }
  return out;
}

void PitchConfig::Validate(int sample_rate) const {
  frames.Validate();
  if (!(min_hz > 0.0 && min_hz < max_hz && max_hz < sample_rate / 2.0)) {
    throw std::invalid_argument("pitch: need 0 < min_hz < max_hz < fs/2");
  }
  if (mean_window < 1 || delta_window < 1) {
    throw std::invalid_argument("pitch: windows must be >= 1");
  }
}

PitchTrack TrackPitch(const AudioBuffer& x, const PitchConfig& cfg) {
  CheckMono(x, "pitch");
  const int fs = x.sample_rate();
  cfg.Validate(fs);
  const std::size_t len = cfg.frames.Length(fs);
  const std::size_t shift = cfg.frames.Shift(fs);
  const std::size_t frames = cfg.frames.NumFrames(x.length(), fs);
  const auto s = x.channel(0);
  const std::size_t n = s.size();
  const std::size_t min_lag =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(fs / cfg.max_hz)));
  const std::size_t max_lag =
      static_cast<std::size_t>(std::ceil(fs / cfg.min_hz));

  PitchTrack track;
  track.pitch_hz.assign(frames, 0.0);
  track.nccf.assign(frames, 0.0);
  track.voiced.assign(frames, false);
  std::vector<double> nccf(max_lag + 2, 0.0);
  std::vector<double> lag_hz(frames, 0.0);

  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t start = t * shift;
    std::fill(nccf.begin(), nccf.end(), 0.0);
    for (std::size_t lag = min_lag; lag <= max_lag; ++lag) {
      if (start + lag >= n) break;
      const std::size_t count = std::min(len, n - start - lag);
      if (count < len / 2) break;
      double ab = 0.0, aa = 0.0, bb = 0.0;
      for (std::size_t i = 0; i < count; ++i) {
        const double a = s[start + i], b = s[start + lag + i];
        ab += a * b;
        aa += a * a;
        bb += b * b;
      }
      const double den = std::sqrt(aa * bb);
      nccf[lag] = den > 0.0 ? ab / den : 0.0;
    }
    double peak = 0.0;
    for (std::size_t lag = min_lag; lag <= max_lag; ++lag) peak = std::max(peak, nccf[lag]);
    if (!(peak > 0.0)) continue;
    // Shortest local maximum close to the global peak avoids octave errors.
    std::size_t best = 0;
    for (std::size_t lag = min_lag; lag <= max_lag; ++lag) {
      const bool left_ok = lag == min_lag || nccf[lag] >= nccf[lag - 1];
      const bool right_ok = nccf[lag] >= nccf[lag + 1];
      if (left_ok && right_ok && nccf[lag] >= 0.9 * peak) {
        best = lag;
        break;
      }
    }
    double refined = static_cast<double>(best);
    if (best > min_lag && best < max_lag) {
      const double ym = nccf[best - 1], y0 = nccf[best], yp = nccf[best + 1];
      const double den = ym - 2.0 * y0 + yp;
      if (den < 0.0) refined += 0.5 * (ym - yp) / den;
    }
    track.nccf[t] = nccf[best];
    lag_hz[t] = fs / refined;
    track.voiced[t] = nccf[best] >= cfg.voicing_threshold;
  }

  double carried = 0.0;
  for (std::size_t t = 0; t < frames; ++t) {
    if (track.voiced[t]) {
      carried = lag_hz[t];
      break;
    }
  }
  if (carried == 0.0) carried = std::sqrt(cfg.min_hz * cfg.max_hz);
  for (std::size_t t = 0; t < frames; ++t) {
    if (track.voiced[t]) carried = lag_hz[t];
    track.pitch_hz[t] = carried;
  }
  return track;
}

FeatureMatrix PitchFeatures(const AudioBuffer& x, const PitchConfig& cfg) {
  const PitchTrack track = TrackPitch(x, cfg);
  const std::size_t frames = track.pitch_hz.size();
  FeatureMatrix out(frames, 3);
  out.frame_length_ms = cfg.frames.frame_length_ms;
  out.frame_shift_ms = cfg.frames.frame_shift_ms;
  out.layout = {{"pitch", 0, 3}};
  std::vector<double> logp(frames);
  for (std::size_t t = 0; t < frames; ++t) logp[t] = std::log(track.pitch_hz[t]);

  std::vector<double> prefix(frames + 1, 0.0);
  for (std::size_t t = 0; t < frames; ++t) prefix[t + 1] = prefix[t] + logp[t];
  const long long half = cfg.mean_window / 2;
  const long long delta = cfg.delta_window;
  double norm = 0.0;
  for (long long k = 1; k <= delta; ++k) norm += 2.0 * k * k;
  const long long last = static_cast<long long>(frames) - 1;
  for (std::size_t t = 0; t < frames; ++t) {
    const long long tt = static_cast<long long>(t);
    const long long a = std::max(0LL, tt - half);
    const long long b = std::min(last, tt + half);
    const double mean = (prefix[b + 1] - prefix[a]) / static_cast<double>(b - a + 1);
    double d = 0.0;
    for (long long k = 1; k <= delta; ++k) {
      d += k * (logp[static_cast<std::size_t>(std::min(last, tt + k))] -
                logp[static_cast<std::size_t>(std::max(0LL, tt - k))]);
    }
    out.at(t, 0) = std::clamp(track.nccf[t], 0.0, 1.0);
    out.at(t, 1) = logp[t] - mean;
    out.at(t, 2) = d / norm;
  }
  return out;
}

FeatureMatrix ComputeFeatures(const AudioBuffer& x, const FeatureConfig& cfg,
                              std::uint64_t seed) {
  FeatureMatrix fb = Fbank(x, cfg.fbank, seed);
  if (!cfg.use_pitch) return fb;
  PitchConfig pc = cfg.pitch;
  pc.frames = cfg.fbank.frames;
  return FeatureMatrix::Concat(fb, PitchFeatures(x, pc));
}

void SpecAugmentConfig::Validate() const {
  if (num_freq_masks < 0 || num_time_masks < 0) {
    throw std::invalid_argument("spec_augment: mask counts must be >= 0");
  }
  if (max_freq_width < 0 || max_time_width < 0) {
    throw std::invalid_argument("spec_augment: widths must be >= 0");
  }
}

FeatureMatrix SpecAugment(const FeatureMatrix& f, const SpecAugmentConfig& cfg,
                          std::uint64_t seed) {
  cfg.Validate();
  FeatureMatrix out = f;
  if (f.rows() == 0 || f.cols() == 0) return out;
  Rng rng(seed);
  std::size_t offset = 0, dims = f.cols();
  if (const FeatureBlock* blk = f.Find(cfg.freq_block)) {
    offset = blk->offset;
    dims = blk->dims;
  }
  if (dims > 0) {
    const std::int64_t max_w =
        std::min<std::int64_t>(cfg.max_freq_width, static_cast<std::int64_t>(dims) - 1);
    for (int m = 0; m < cfg.num_freq_masks; ++m) {
      const std::int64_t w = rng.UniformInt(0, max_w);
      const std::int64_t s = rng.UniformInt(0, static_cast<std::int64_t>(dims) - w);
      for (std::size_t r = 0; r < out.rows(); ++r) {
        for (std::int64_t c = s; c < s + w; ++c) {
          out.at(r, offset + static_cast<std::size_t>(c)) = 0.0;
        }
      }
    }
  }
  const std::int64_t rows = static_cast<std::int64_t>(out.rows());
  const std::int64_t max_t = std::min<std::int64_t>(cfg.max_time_width, rows - 1);
  for (int m = 0; m < cfg.num_time_masks; ++m) {
    const std::int64_t w = rng.UniformInt(0, max_t);
    const std::int64_t s = rng.UniformInt(0, rows - w);
    for (std::int64_t r = s; r < s + w; ++r) {
      for (std::size_t c = 0; c < out.cols(); ++c) {
        out.at(static_cast<std::size_t>(r), c) = 0.0;
      }
    }
  }
  return out;
}

void WriteFeatureFile(const std::filesystem::path& path,
                      const FeatureMatrix& m) {
  if (m.rows() > UINT32_MAX || m.cols() > UINT32_MAX) {
    throw std::invalid_argument("feature matrix too large for file format");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(kFeatureMagic, 4);
  const std::uint32_t rows = ToLittle(static_cast<std::uint32_t>(m.rows()));
  const std::uint32_t cols = ToLittle(static_cast<std::uint32_t>(m.cols()));
  out.write(reinterpret_cast<const char*>(&rows), 4);
  out.write(reinterpret_cast<const char*>(&cols), 4);
  std::vector<float> buf(m.data().size());
  for (std::size_t i = 0; i < buf.size(); ++i) {
    buf[i] = ToLittle(static_cast<float>(m.data()[i]));
  }
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
  if (!out) throw std::runtime_error("short write to " + path.string());
}

FeatureMatrix ReadFeatureFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  char magic[4];
  std::uint32_t rows = 0, cols = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&rows), 4);
  in.read(reinterpret_cast<char*>(&cols), 4);
  if (!in || std::memcmp(magic, kFeatureMagic, 4) != 0) {
    throw std::runtime_error(path.string() + ": not a feature matrix file");
  }
  rows = ToLittle(rows);
  cols = ToLittle(cols);
  std::vector<float> buf(static_cast<std::size_t>(rows) * cols);
  in.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(buf.size() * sizeof(float)));
  if (!in) throw std::runtime_error(path.string() + ": truncated data");
  FeatureMatrix m(rows, cols);
  for (std::size_t i = 0; i < buf.size(); ++i) m.data()[i] = ToLittle(buf[i]);
  return m;
}

}  // namespace meetkit
