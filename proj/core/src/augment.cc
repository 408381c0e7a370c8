// core/src/augment.cc

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

#include "meetkit/augment.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "meetkit/fft.h"
#include "meetkit/filter.h"
#include "meetkit/resample.h"
#include "meetkit/rng.h"

namespace meetkit {
namespace {

constexpr long kRatioDenominator = 1000;

std::vector<double> FitNoiseChannel(std::span<const double> in,
                                    std::size_t len, std::size_t offset) {
  std::vector<double> out(len);
  const std::size_t n = in.size();
  if (n >= len) {
    std::copy_n(in.begin() + static_cast<std::ptrdiff_t>(offset), len,
                out.begin());
  } else {
    for (std::size_t i = 0; i < len; ++i) out[i] = in[(offset + i) % n];
  }
  return out;
}

std::size_t PeakIndex(const std::vector<double>& h) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < h.size(); ++i) {
    if (std::abs(h[i]) > std::abs(h[k])) k = i;
  }
  return k;
}

}  // namespace

AudioBuffer MixNoise(const AudioBuffer& x, const AudioBuffer& noise,
                     double snr_db, std::uint64_t seed) {
  if (x.empty() || noise.empty()) {
    throw std::invalid_argument("mix_noise: empty signal or noise");
  }
  if (noise.channels() != 1 && noise.channels() != x.channels()) {
    throw std::invalid_argument("mix_noise: noise channel count mismatch");
  }
  if (!std::isfinite(snr_db)) {
    throw std::invalid_argument("mix_noise: SNR must be finite");
  }
  const double px = MeanPower(x);
  if (!(px > 0.0)) throw std::invalid_argument("mix_noise: zero-power signal");

  Rng rng(seed);
  const std::size_t len = x.length();
  const std::size_t nn = noise.length();
  const std::size_t offset = static_cast<std::size_t>(
      nn >= len ? rng.UniformInt(0, static_cast<std::int64_t>(nn - len))
                : rng.UniformInt(0, static_cast<std::int64_t>(nn) - 1));
  AudioBuffer fitted(x.channels(), len, x.sample_rate());
  for (std::size_t c = 0; c < x.channels(); ++c) {
    const auto src = noise.channel(noise.channels() == 1 ? 0 : c);
    const auto ch = FitNoiseChannel(src, len, offset);
    std::copy(ch.begin(), ch.end(), fitted.channel(c).begin());
  }
  const double pn = MeanPower(fitted);
  if (!(pn > 0.0)) throw std::invalid_argument("mix_noise: zero-power noise");

  const double g = std::sqrt(px / (pn * std::pow(10.0, snr_db / 10.0)));
  AudioBuffer out = x;
  auto o = out.data();
  auto z = fitted.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += g * z[i];
  return out;
}

AudioBuffer AddReverb(const AudioBuffer& x, const Rir& rir) {
  if (rir.taps.empty() || rir.taps.front().empty()) {
    throw std::invalid_argument("add_reverb: empty RIR");
  }
  if (rir.sample_rate != x.sample_rate()) {
    throw std::invalid_argument("add_reverb: sample rate mismatch (" +
                                std::to_string(x.sample_rate()) + " vs " +
                                std::to_string(rir.sample_rate) + ")");
  }
  const std::size_t mics = rir.mics();
  if (x.channels() != 1 && x.channels() != mics) {
    throw std::invalid_argument("add_reverb: channel count mismatch");
  }
  std::size_t offset = PeakIndex(rir.taps[0]);
  for (const auto& h : rir.taps) offset = std::min(offset, PeakIndex(h));

  const std::size_t n = x.length();
  AudioBuffer out(mics, n, x.sample_rate());
  for (std::size_t m = 0; m < mics; ++m) {
    const auto full =
        Convolve(x.channel(x.channels() == 1 ? 0 : m), rir.taps[m]);
    auto dst = out.channel(m);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = i + offset;
      dst[i] = k < full.size() ? full[k] : 0.0;
    }
  }
  return out;
}

AudioBuffer SpeedPerturb(const AudioBuffer& x, double factor) {
  if (!(factor >= kMinSpeedFactor && factor <= kMaxSpeedFactor)) {
    throw std::invalid_argument("speed_perturb: factor must be in [0.5, 2]");
  }
  const long down = std::lround(factor * kRatioDenominator);
  return ResampleByRatio(x, kRatioDenominator, down);
}

AudioBuffer TimeStretch(const AudioBuffer& x, std::size_t out_length) {
  if (x.empty()) throw std::invalid_argument("time_stretch: empty input");
  const std::size_t in_len = x.length();
  const std::size_t chans = x.channels();
  AudioBuffer out(chans, out_length, x.sample_rate());
  if (out_length == 0) return out;

  const std::size_t frame =
      std::max<std::size_t>(8, 2 * static_cast<std::size_t>(
                                       std::lround(0.01 * x.sample_rate())));
  const std::size_t hop = frame / 2;
  const long long tolerance = std::lround(0.01 * x.sample_rate());
  const double rate = static_cast<double>(in_len) / out_length;

  std::vector<double> window(frame);
  for (std::size_t i = 0; i < frame; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (i + 0.5) /
                                     static_cast<double>(frame));
  }
  std::vector<double> mix(in_len, 0.0);
  for (std::size_t c = 0; c < chans; ++c) {
    auto ch = x.channel(c);
    for (std::size_t i = 0; i < in_len; ++i) mix[i] += ch[i];
  }
  auto sample = [&](std::span<const double> s, long long i) {
    return i >= 0 && i < static_cast<long long>(s.size())
               ? s[static_cast<std::size_t>(i)]
               : 0.0;
  };

  std::vector<double> norm(out_length, 0.0);
  long long prev = 0;
  const std::size_t frames = out_length / hop + 1;
  for (std::size_t k = 0; k < frames; ++k) {
    const long long nominal =
        std::llround(static_cast<double>(k * hop) * rate);
    long long start = nominal;
    if (k > 0) {
      const long long natural = prev + static_cast<long long>(hop);
      double best = -std::numeric_limits<double>::infinity();
      const long long lo = std::max(0LL, nominal - tolerance);
      const long long hi = nominal + tolerance;
      for (long long cand = lo; cand <= hi; ++cand) {
        double corr = 0.0;
        for (std::size_t i = 0; i < frame; ++i) {
          const long long a = natural + static_cast<long long>(i);
          const long long b = cand + static_cast<long long>(i);
          corr += sample(mix, a) * sample(mix, b);
        }
        if (corr > best) {
          best = corr;
          start = cand;
        }
      }
    }
    prev = start;
    const std::size_t base = k * hop;
    for (std::size_t i = 0; i < frame && base + i < out_length; ++i) {
      norm[base + i] += window[i];
    }
    for (std::size_t c = 0; c < chans; ++c) {
      auto src = x.channel(c);
      auto dst = out.channel(c);
      for (std::size_t i = 0; i < frame && base + i < out_length; ++i) {
        dst[base + i] +=
            window[i] * sample(src, start + static_cast<long long>(i));
      }
    }
  }
  for (std::size_t c = 0; c < chans; ++c) {
    auto dst = out.channel(c);
    for (std::size_t i = 0; i < out_length; ++i) {
      if (norm[i] > 1e-8) dst[i] /= norm[i];
    }
  }
  return out;
}

AudioBuffer PitchShift(const AudioBuffer& x, double semitones) {
  if (!(std::abs(semitones) <= kMaxPitchSemitones)) {
    throw std::invalid_argument("pitch_shift: |semitones| must be <= 4");
  }
  if (semitones == 0.0 || x.empty()) return x;
  const double ratio = std::pow(2.0, semitones / 12.0);
  const long down = std::lround(ratio * kRatioDenominator);
  const AudioBuffer shifted = ResampleByRatio(x, kRatioDenominator, down);
  return TimeStretch(shifted, x.length());
}

void EqSpec::Validate(int sample_rate) const {
  const double nyquist = sample_rate / 2.0;
  switch (kind) {
    case EqKind::kLowPass:
    case EqKind::kHighPass:
      if (!(cutoff_hz > 0.0 && cutoff_hz < nyquist)) {
        throw std::invalid_argument("eq: cutoff must be in (0, fs/2)");
      }
      if (!(weight >= 0.0 && weight <= 1.0)) {
        throw std::invalid_argument("eq: weight must be in [0, 1]");
      }
      if (taps < 3 || taps % 2 == 0) {
        throw std::invalid_argument("eq: taps must be odd and >= 3");
      }
      break;
    case EqKind::kDeEmphasis:
      if (!(coefficient >= 0.0 && coefficient < 1.0)) {
        throw std::invalid_argument("eq: de-emphasis coefficient in [0, 1)");
      }
      break;
    case EqKind::kResponseCurve:
      if (curve.empty()) throw std::invalid_argument("eq: empty curve");
      for (std::size_t i = 0; i < curve.size(); ++i) {
        const auto& [f, g] = curve[i];
        if (!(f > 0.0) || (i > 0 && !(f > curve[i - 1].first))) {
          throw std::invalid_argument(
              "eq: curve frequencies must be positive and increasing");
        }
        if (!(std::abs(g) <= kMaxEqGainDb)) {
          throw std::invalid_argument("eq: curve gains must be within 12 dB");
        }
      }
      break;
  }
}

std::vector<double> LowPassTaps(double cutoff_hz, int sample_rate, int taps) {
  const double fc = cutoff_hz / sample_rate;
  const int mid = taps / 2;
  std::vector<double> h(static_cast<std::size_t>(taps));
  double sum = 0.0;
  for (int i = 0; i < taps; ++i) {
    const double t = i - mid;
    const double sinc =
        t == 0 ? 2.0 * fc
               : std::sin(2.0 * std::numbers::pi * fc * t) /
                     (std::numbers::pi * t);
    const double win =
        0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (taps - 1));
    h[static_cast<std::size_t>(i)] = sinc * win;
    sum += h[static_cast<std::size_t>(i)];
  }
  for (double& v : h) v /= sum;
  return h;
}

double CurveGainDb(const std::vector<std::pair<double, double>>& curve,
                   double hz) {
  if (curve.empty()) return 0.0;
  if (hz <= curve.front().first) return curve.front().second;
  if (hz >= curve.back().first) return curve.back().second;
  const auto it = std::upper_bound(
      curve.begin(), curve.end(), hz,
      [](double f, const std::pair<double, double>& p) { return f < p.first; });
  const auto& [f1, g1] = *it;
  const auto& [f0, g0] = *(it - 1);
  const double a = std::log(hz / f0) / std::log(f1 / f0);
  return g0 + a * (g1 - g0);
}

AudioBuffer PreEmphasis(const AudioBuffer& x, double a) {
  AudioBuffer out = x;
  for (std::size_t c = 0; c < x.channels(); ++c) {
    auto in = x.channel(c);
    auto dst = out.channel(c);
    for (std::size_t i = 1; i < in.size(); ++i) dst[i] = in[i] - a * in[i - 1];
  }
  return out;
}

AudioBuffer DeEmphasis(const AudioBuffer& x, double a) {
  AudioBuffer out = x;
  for (std::size_t c = 0; c < x.channels(); ++c) {
    auto dst = out.channel(c);
    for (std::size_t i = 1; i < dst.size(); ++i) dst[i] += a * dst[i - 1];
  }
  return out;
}

AudioBuffer EqFilter(const AudioBuffer& x, const EqSpec& spec) {
  spec.Validate(x.sample_rate());
  switch (spec.kind) {
    case EqKind::kDeEmphasis:
      return DeEmphasis(x, spec.coefficient);
    case EqKind::kLowPass:
    case EqKind::kHighPass: {
      auto taps = LowPassTaps(spec.cutoff_hz, x.sample_rate(), spec.taps);
      if (spec.kind == EqKind::kHighPass) {
        for (double& v : taps) v = -v;
        taps[taps.size() / 2] += 1.0;
      }
      AudioBuffer wet =
          FirFilter(x, taps, ConvMode::kSame, taps.size() / 2);
      auto w = wet.data();
      auto d = x.data();
      for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = spec.weight * w[i] + (1.0 - spec.weight) * d[i];
      }
      return wet;
    }
    case EqKind::kResponseCurve: {
      if (x.empty()) return x;
      const std::size_t nfft = NextPow2(2 * x.length());
      RealFft fft(nfft);
      std::vector<double> gain(fft.bins());
      for (std::size_t k = 0; k < gain.size(); ++k) {
        const double hz = static_cast<double>(k) * x.sample_rate() / nfft;
        gain[k] = std::pow(10.0, CurveGainDb(spec.curve, hz) / 20.0);
      }
      AudioBuffer out(x.channels(), x.length(), x.sample_rate());
      std::vector<Complex> spec_bins(fft.bins());
      std::vector<double> time(nfft);
      for (std::size_t c = 0; c < x.channels(); ++c) {
        fft.Forward(x.channel(c), spec_bins);
        for (std::size_t k = 0; k < gain.size(); ++k) spec_bins[k] *= gain[k];
        fft.Inverse(spec_bins, time);
        std::copy_n(time.begin(), x.length(), out.channel(c).begin());
      }
      return out;
    }
  }
  throw std::invalid_argument("eq: unknown filter kind");
}

}  // namespace meetkit
