// core/src/filter.cc

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

#include "meetkit/filter.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "meetkit/fft.h"

namespace meetkit {
namespace {

constexpr std::size_t kDirectThreshold = 64;

std::vector<double> ConvolveDirect(std::span<const double> x,
                                   std::span<const double> h) {
  std::vector<double> y(x.size() + h.size() - 1, 0.0);
  for (std::size_t k = 0; k < h.size(); ++k) {
    const double hk = h[k];
    if (hk == 0.0) continue;
    for (std::size_t n = 0; n < x.size(); ++n) y[n + k] += hk * x[n];
  }
  return y;
}

std::vector<double> ConvolveFft(std::span<const double> x,
                                std::span<const double> h) {
  const std::size_t out_len = x.size() + h.size() - 1;
  RealFft fft(NextPow2(out_len));
  auto xf = fft.Forward(x);
  const auto hf = fft.Forward(h);
  for (std::size_t i = 0; i < xf.size(); ++i) xf[i] *= hf[i];
  auto y = fft.Inverse(xf);
  y.resize(out_len);
  return y;
}

}  // namespace

std::vector<double> Convolve(std::span<const double> x,
                             std::span<const double> h) {
  if (h.empty()) throw std::invalid_argument("filter taps must be non-empty");
  if (x.empty()) return {};
  if (std::min(h.size(), x.size()) <= kDirectThreshold) {
    return x.size() >= h.size() ? ConvolveDirect(x, h) : ConvolveDirect(h, x);
  }
  return ConvolveFft(x, h);
}

AudioBuffer FirFilter(const AudioBuffer& x, std::span<const double> taps,
                      ConvMode mode, std::size_t offset) {
  if (taps.empty()) throw std::invalid_argument("filter taps must be non-empty");
  for (double t : taps) {
    if (!std::isfinite(t)) throw std::invalid_argument("non-finite filter tap");
  }
  const std::size_t n = x.length();
  const std::size_t out_len =
      mode == ConvMode::kFull ? n + taps.size() - 1 : n;
  AudioBuffer y(x.channels(), out_len, x.sample_rate());
  if (n == 0) return y;
  for (std::size_t c = 0; c < x.channels(); ++c) {
    const auto full = Convolve(x.channel(c), taps);
    const std::size_t start = mode == ConvMode::kFull ? 0 : offset;
    auto out = y.channel(c);
    for (std::size_t i = 0; i < out_len && start + i < full.size(); ++i) {
      out[i] = full[start + i];
    }
  }
  return y;
}

}  // namespace meetkit
