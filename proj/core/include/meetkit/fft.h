// core/include/meetkit/fft.h

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

#ifndef MEETKIT_FFT_H_
#define MEETKIT_FFT_H_

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace meetkit {

using Complex = std::complex<double>;

std::size_t NextPow2(std::size_t n);

/// Real-input FFT of a fixed even size. Not thread-safe; give each worker its
/// own instance.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(RealFft&&) noexcept;
  RealFft& operator=(RealFft&&) noexcept;

  std::size_t size() const { return n_; }
  std::size_t bins() const { return n_ / 2 + 1; }

  /// `in` shorter than size() is zero-padded. `out` must hold bins() values.
  void Forward(std::span<const double> in, std::span<Complex> out);
  std::vector<Complex> Forward(std::span<const double> in);

  /// Inverse of Forward (1/n scaling applied). `out` must hold size() values.
  void Inverse(std::span<const Complex> in, std::span<double> out);
  std::vector<double> Inverse(std::span<const Complex> in);

 private:
  struct Impl;
  std::size_t n_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace meetkit

#endif  // MEETKIT_FFT_H_
