// tests/common/oracles.h

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

#ifndef MEETKIT_TESTS_ORACLES_H_
#define MEETKIT_TESTS_ORACLES_H_

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace meetkit::testing {

/// Direct O(N*K) linear convolution.
std::vector<double> NaiveConvolve(std::span<const double> x,
                                  std::span<const double> h);

/// Direct O(N^2) DFT of a real sequence, bins 0..n/2.
std::vector<std::complex<double>> NaiveDft(std::span<const double> x);

/// Relative L2 error ||a - b|| / ||b||.
double RelativeError(std::span<const double> a, std::span<const double> b);

/// Schroeder backward integration, least-squares line through the
/// -5..-25 dB part of the decay, extrapolated to -60 dB. Returns 0 if the
/// decay never reaches -25 dB.
double SchroederT60Oracle(std::span<const double> rir, int sample_rate);

struct EditCounts {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t distance = 0;  // plain Levenshtein distance
};

/// Full-matrix edit distance with backtrace. On ties the backtrace prefers
/// a diagonal step, then an insertion, then a deletion.
EditCounts LevenshteinOracle(const std::vector<std::string>& ref,
                             const std::vector<std::string>& hyp);

/// Fraction of [0, total) covered by at least two of the half-open
/// intervals, by sorting endpoints and sweeping.
double SweepOverlapRatio(const std::vector<std::pair<double, double>>& intervals,
                         double total);

/// Probability that a position of a dimension of size `dim` is covered by
/// at least one of `masks` independent masks with width U{0..max_width}
/// (clamped to dim - 1) and start U{0..dim - width}.
std::vector<double> MaskCoverage(std::size_t dim, int max_width, int masks);

/// SI-SDR from its definition.
double SiSdrOracle(std::span<const double> ref, std::span<const double> est);

/// Median of a copy of v.
double Median(std::vector<double> v);

}  // namespace meetkit::testing

#endif  // MEETKIT_TESTS_ORACLES_H_
