// core/src/resample.cc

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

#include "meetkit/resample.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace meetkit {
namespace {

constexpr double kKaiserBeta = 8.0;
constexpr int kTapsPerSide = 32;
constexpr double kRolloff = 0.95;

double Sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

double Kaiser(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  return std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - x * x)) /
         std::cyl_bessel_i(0.0, kKaiserBeta);
}

}  // namespace

Resampler::Resampler(long up, long down) {
  if (up <= 0 || down <= 0) {
    throw std::invalid_argument("resampling ratio must be positive");
  }
  const long g = std::gcd(up, down);
  up_ = up / g;
  down_ = down / g;
  const double cutoff =
      kRolloff * std::min(1.0, static_cast<double>(up_) / down_);
  half_width_ = static_cast<int>(std::ceil(kTapsPerSide / cutoff));
  const int taps = 2 * half_width_;
  table_.assign(static_cast<std::size_t>(up_) * taps, 0.0);
  for (long p = 0; p < up_; ++p) {
    const double frac = static_cast<double>(p) / up_;
    double* row = &table_[static_cast<std::size_t>(p) * taps];
    double sum = 0.0;
    for (int i = 0; i < taps; ++i) {
      const int j = i - half_width_ + 1;  // input offset from floor(t)
      const double tau = frac - j;
      row[i] = cutoff * Sinc(cutoff * tau) * Kaiser(tau / half_width_);
      sum += row[i];
    }
    for (int i = 0; i < taps; ++i) row[i] /= sum;
  }
}

std::size_t Resampler::OutputLength(std::size_t n) const {
  return static_cast<std::size_t>(
      std::llround(static_cast<double>(n) * up_ / down_));
}

AudioBuffer Resampler::Process(const AudioBuffer& x, int out_rate) const {
  const std::size_t n_in = x.length();
  const std::size_t n_out = OutputLength(n_in);
  const int taps = 2 * half_width_;
  AudioBuffer y(x.channels(), n_out, out_rate);
  for (std::size_t c = 0; c < x.channels(); ++c) {
    auto in = x.channel(c);
    auto out = y.channel(c);
    for (std::size_t n = 0; n < n_out; ++n) {
      const long long num = static_cast<long long>(n) * down_;
      const long long base = num / up_;
      const long phase = static_cast<long>(num % up_);
      const double* row = &table_[static_cast<std::size_t>(phase) * taps];
      const long long first = base - half_width_ + 1;
      double acc = 0.0;
      const long long lo = std::max<long long>(0, -first);
      const long long hi =
          std::min<long long>(taps, static_cast<long long>(n_in) - first);
      for (long long i = lo; i < hi; ++i) acc += row[i] * in[first + i];
      out[n] = acc;
    }
  }
  return y;
}

AudioBuffer Resample(const AudioBuffer& x, int target_rate) {
  if (target_rate <= 0) {
    throw std::invalid_argument("target rate must be positive, got " +
                                std::to_string(target_rate));
  }
  if (target_rate == x.sample_rate()) return x;
  Resampler r(target_rate, x.sample_rate());
  return r.Process(x, target_rate);
}

AudioBuffer ResampleByRatio(const AudioBuffer& x, long up, long down) {
  if (up == down) return x;
  Resampler r(up, down);
  return r.Process(x, x.sample_rate());
}

}  // namespace meetkit
