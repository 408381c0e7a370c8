// core/src/metrics.cc

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

#include "meetkit/metrics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace meetkit {
namespace {

double CappedDb(double num, double den) {
  if (den <= 0.0) return kMetricCapDb;
  if (num <= 0.0) return -kMetricCapDb;
  return std::clamp(10.0 * std::log10(num / den), -kMetricCapDb,
                    kMetricCapDb);
}

}  // namespace

double SiSdr(std::span<const double> reference,
             std::span<const double> estimate) {
  if (reference.size() != estimate.size()) {
    throw std::invalid_argument("si_sdr: length mismatch");
  }
  double rr = 0.0, er = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    rr += reference[i] * reference[i];
    er += estimate[i] * reference[i];
  }
  if (rr <= 0.0) throw std::invalid_argument("si_sdr: zero-power reference");
  const double alpha = er / rr;
  double target = 0.0, noise = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double t = alpha * reference[i];
    const double e = estimate[i] - t;
    target += t * t;
    noise += e * e;
  }
  // Residual at rounding level counts as a perfect estimate.
  if (noise <= 1e-20 * target) return kMetricCapDb;
  return CappedDb(target, noise);
}

double SiSdr(const AudioBuffer& reference, const AudioBuffer& estimate) {
  if (reference.channels() != 1 || estimate.channels() != 1) {
    throw std::invalid_argument("si_sdr: inputs must be mono");
  }
  return SiSdr(reference.channel(0), estimate.channel(0));
}

double SnrDb(std::span<const double> signal, std::span<const double> noise) {
  if (signal.size() != noise.size()) {
    throw std::invalid_argument("snr: length mismatch");
  }
  double ps = 0.0, pn = 0.0;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    ps += signal[i] * signal[i];
    pn += noise[i] * noise[i];
  }
  return CappedDb(ps, pn);
}

}  // namespace meetkit
