// core/src/stft.cc

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

#include "meetkit/stft.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace meetkit {

std::vector<double> MakeWindow(WindowType type, std::size_t n) {
  std::vector<double> w(n);
  switch (type) {
    case WindowType::kHann:
      for (std::size_t i = 0; i < n; ++i) {
        w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / n);
      }
      break;
  }
  return w;
}

void StftConfig::Validate() const {
  if (fft_size < 2 || (fft_size & (fft_size - 1)) != 0) {
    throw std::invalid_argument("STFT fft_size must be a power of two");
  }
  if (hop == 0 || hop > fft_size) {
    throw std::invalid_argument("STFT hop must be in (0, fft_size]");
  }
  const auto w = MakeWindow(window, fft_size);
  double lo = 1e300, hi = 0.0;
  for (std::size_t n = 0; n < hop; ++n) {
    double acc = 0.0;
    for (std::size_t k = n; k < fft_size; k += hop) acc += w[k] * w[k];
    lo = std::min(lo, acc);
    hi = std::max(hi, acc);
  }
  if (lo <= 0.0 || (hi - lo) > 1e-9 * hi) {
    throw std::invalid_argument(
        "STFT window/hop pair does not satisfy constant overlap-add");
  }
}

std::size_t StftConfig::NumFrames(std::size_t num_samples) const {
  const std::size_t padded = num_samples + (center ? fft_size : 0);
  if (padded <= fft_size) return 1;
  return 1 + (padded - fft_size + hop - 1) / hop;
}

Spectrogram::Spectrogram(std::size_t channels, std::size_t frames,
                         StftConfig config, int sample_rate,
                         std::size_t num_samples)
    : channels_(channels),
      frames_(frames),
      bins_(config.bins()),
      config_(config),
      sample_rate_(sample_rate),
      num_samples_(num_samples),
      data_(channels * frames * config.bins()) {}

void Spectrogram::Scale(double gain) {
  for (auto& v : data_) v *= gain;
}

Spectrogram Stft(const AudioBuffer& x, const StftConfig& cfg) {
  cfg.Validate();
  const std::size_t n = x.length();
  const std::size_t frames = cfg.NumFrames(n);
  const std::size_t pad = cfg.center ? cfg.fft_size / 2 : 0;
  const auto window = MakeWindow(cfg.window, cfg.fft_size);
  Spectrogram spec(x.channels(), frames, cfg, x.sample_rate(), n);
  RealFft fft(cfg.fft_size);
  std::vector<double> buf(cfg.fft_size);
  for (std::size_t c = 0; c < x.channels(); ++c) {
    auto in = x.channel(c);
    for (std::size_t t = 0; t < frames; ++t) {
      // Frame t covers padded samples [t*hop, t*hop + fft_size).
      const long long start =
          static_cast<long long>(t * cfg.hop) - static_cast<long long>(pad);
      for (std::size_t i = 0; i < cfg.fft_size; ++i) {
        const long long idx = start + static_cast<long long>(i);
        const double v = (idx >= 0 && idx < static_cast<long long>(n))
                             ? in[static_cast<std::size_t>(idx)]
                             : 0.0;
        buf[i] = v * window[i];
      }
      fft.Forward(buf, spec.frame(c, t));
    }
  }
  return spec;
}

AudioBuffer Istft(const Spectrogram& spec) {
  const auto& cfg = spec.config();
  cfg.Validate();
  const std::size_t n = spec.num_samples();
  const std::size_t pad = cfg.center ? cfg.fft_size / 2 : 0;
  const auto window = MakeWindow(cfg.window, cfg.fft_size);
  AudioBuffer y(spec.channels(), n, spec.sample_rate());

  std::vector<double> norm(n, 0.0);
  for (std::size_t t = 0; t < spec.frames(); ++t) {
    const long long start =
        static_cast<long long>(t * cfg.hop) - static_cast<long long>(pad);
    for (std::size_t i = 0; i < cfg.fft_size; ++i) {
      const long long idx = start + static_cast<long long>(i);
      if (idx >= 0 && idx < static_cast<long long>(n)) {
        norm[static_cast<std::size_t>(idx)] += window[i] * window[i];
      }
    }
  }

  RealFft fft(cfg.fft_size);
  std::vector<double> buf(cfg.fft_size);
  for (std::size_t c = 0; c < spec.channels(); ++c) {
    auto out = y.channel(c);
    for (std::size_t t = 0; t < spec.frames(); ++t) {
      fft.Inverse(spec.frame(c, t), buf);
      const long long start =
          static_cast<long long>(t * cfg.hop) - static_cast<long long>(pad);
      for (std::size_t i = 0; i < cfg.fft_size; ++i) {
        const long long idx = start + static_cast<long long>(i);
        if (idx >= 0 && idx < static_cast<long long>(n)) {
          out[static_cast<std::size_t>(idx)] += buf[i] * window[i];
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = norm[i] > 1e-10 ? out[i] / norm[i] : 0.0;
    }
  }
  return y;
}

}  // namespace meetkit
