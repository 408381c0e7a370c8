// tests/common/oracles.cc

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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace meetkit::testing {

std::vector<double> NaiveConvolve(std::span<const double> x,
                                  std::span<const double> h) {
  if (x.empty() || h.empty()) return {};
  std::vector<double> y(x.size() + h.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t k = 0; k < h.size(); ++k) y[i + k] += x[i] * h[k];
  }
  return y;
}

std::vector<std::complex<double>> NaiveDft(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double a = -2.0 * std::numbers::pi * static_cast<double>(k * t % n) / n;
      acc += x[t] * std::complex<double>(std::cos(a), std::sin(a));
    }
    out[k] = acc;
  }
  return out;
}

double RelativeError(std::span<const double> a, std::span<const double> b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double d = a[i] - b[i];
    num += d * d;
    den += b[i] * b[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

double SchroederT60Oracle(std::span<const double> rir, int sample_rate) {
  const std::size_t n = rir.size();
  std::vector<double> edc(n);
  double acc = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    acc += rir[i] * rir[i];
    edc[i] = acc;
  }
  if (!(acc > 0.0)) return 0.0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  bool reached = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double db = 10.0 * std::log10(std::max(edc[i], 1e-300) / acc);
    if (db < -25.0) {
      reached = true;
      break;
    }
    if (db <= -5.0) {
      const double t = static_cast<double>(i) / sample_rate;
      sx += t;
      sy += db;
      sxx += t * t;
      sxy += t * db;
      ++count;
    }
  }
  if (!reached || count < 2) return 0.0;
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return slope < 0.0 ? -60.0 / slope : 0.0;
}

EditCounts LevenshteinOracle(const std::vector<std::string>& ref,
                             const std::vector<std::string>& hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      d[i][j] = std::min({d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1),
                          d[i - 1][j] + 1, d[i][j - 1] + 1});
    }
  }
  EditCounts c;
  c.distance = d[n][m];
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        d[i][j] == d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1)) {
      if (ref[i - 1] != hyp[j - 1]) ++c.substitutions;
      --i;
      --j;
    } else if (j > 0 && d[i][j] == d[i][j - 1] + 1) {
      ++c.insertions;
      --j;
    } else {
      ++c.deletions;
      --i;
    }
  }
  return c;
}

double SweepOverlapRatio(const std::vector<std::pair<double, double>>& intervals,
                         double total) {
  if (!(total > 0.0)) return 0.0;
  std::vector<std::pair<double, int>> events;
  for (const auto& [a, b] : intervals) {
    const double lo = std::clamp(a, 0.0, total), hi = std::clamp(b, 0.0, total);
    if (hi <= lo) continue;
    events.emplace_back(lo, +1);
    events.emplace_back(hi, -1);
  }
  std::sort(events.begin(), events.end());
  double covered = 0.0, last = 0.0;
  int active = 0;
  for (const auto& [t, delta] : events) {
    if (active >= 2) covered += t - last;
    active += delta;
    last = t;
  }
  return covered / total;
}

std::vector<double> MaskCoverage(std::size_t dim, int max_width, int masks) {
  std::vector<double> p(dim, 0.0);
  for (int w0 = 0; w0 <= max_width; ++w0) {
    const std::size_t w = std::min<std::size_t>(w0, dim - 1);
    const std::size_t starts = dim - w + 1;
    for (std::size_t s = 0; s < starts; ++s) {
      for (std::size_t c = s; c < s + w && c < dim; ++c) {
        p[c] += 1.0 / ((max_width + 1.0) * starts);
      }
    }
  }
  for (double& v : p) v = 1.0 - std::pow(1.0 - v, masks);
  return p;
}

double SiSdrOracle(std::span<const double> ref, std::span<const double> est) {
  double dot = 0.0, rr = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    dot += ref[i] * est[i];
    rr += ref[i] * ref[i];
  }
  const double a = dot / rr;
  double target = 0.0, noise = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double t = a * ref[i];
    target += t * t;
    noise += (est[i] - t) * (est[i] - t);
  }
  return 10.0 * std::log10(target / noise);
}

double Median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace meetkit::testing
