// core/src/wpe.cc

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

#include "meetkit/wpe.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace meetkit {
namespace {

using CMatrix = Eigen::MatrixXcd;

constexpr double kVarianceFloor = 1e-10;

}  // namespace

void WpeConfig::Validate() const {
  if (taps < 1) throw std::invalid_argument("wpe: taps must be >= 1");
  if (delay < 1) throw std::invalid_argument("wpe: delay must be >= 1");
  if (iterations < 1) {
    throw std::invalid_argument("wpe: iterations must be >= 1");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("wpe: epsilon must be > 0");
}

Spectrogram Wpe(const Spectrogram& y, const WpeConfig& cfg) {
  cfg.Validate();
  const std::size_t channels = y.channels();
  const std::size_t frames = y.frames();
  const std::size_t bins = y.bins();
  const std::size_t taps = static_cast<std::size_t>(cfg.taps);
  const std::size_t delay = static_cast<std::size_t>(cfg.delay);
  if (channels == 0) throw std::invalid_argument("wpe: no channels");
  if (frames < taps + delay) {
    throw std::invalid_argument("wpe: need at least taps + delay = " +
                                std::to_string(taps + delay) +
                                " frames, got " + std::to_string(frames));
  }

  double global_power = 0.0;
  for (const Complex& v : y.data()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::invalid_argument("wpe: non-finite input");
    }
    global_power += std::norm(v);
  }
  global_power /= static_cast<double>(y.data().size());

  Spectrogram x = y;
  if (global_power == 0.0) return x;
  const double floor = kVarianceFloor * global_power;

  const std::size_t first = delay + taps - 1;  // first frame with full history
  const std::size_t used = frames - first;
  const std::size_t dim = channels * taps;

  CMatrix stacked(dim, used);   // delayed observations, one column per frame
  CMatrix observed(channels, used);
  CMatrix weighted(dim, used);
  CMatrix current(channels, used);
  CMatrix corr(dim, dim);
  CMatrix cross(dim, channels);
  Eigen::VectorXd inv_power(used);

  for (std::size_t f = 0; f < bins; ++f) {
    for (std::size_t j = 0; j < used; ++j) {
      const std::size_t t = first + j;
      for (std::size_t m = 0; m < channels; ++m) {
        observed(m, j) = y.at(m, t, f);
        for (std::size_t k = 0; k < taps; ++k) {
          stacked(k * channels + m, j) = y.at(m, t - delay - k, f);
        }
      }
    }
    current = observed;

    for (int it = 0; it < cfg.iterations; ++it) {
      for (std::size_t j = 0; j < used; ++j) {
        const double lambda =
            current.col(j).squaredNorm() / static_cast<double>(channels);
        inv_power(j) = 1.0 / std::max(lambda, floor);
      }
      weighted = stacked * inv_power.asDiagonal();
      corr.noalias() = weighted * stacked.adjoint();
      cross.noalias() = weighted * observed.adjoint();

      const double mean_diag = corr.diagonal().real().mean();
      if (!(mean_diag > 0.0)) {
        current = observed;
        break;
      }
      corr.diagonal().array() += cfg.epsilon * mean_diag;
      const CMatrix filter = corr.ldlt().solve(cross);
      current.noalias() = observed - filter.adjoint() * stacked;
    }

    for (std::size_t j = 0; j < used; ++j) {
      for (std::size_t m = 0; m < channels; ++m) {
        x.at(m, first + j, f) = current(m, j);
      }
    }
  }
  return x;
}

AudioBuffer Wpe(const AudioBuffer& x, const WpeConfig& cfg,
                const StftConfig& stft) {
  return Istft(Wpe(Stft(x, stft), cfg));
}

}  // namespace meetkit
