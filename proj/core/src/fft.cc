// core/src/fft.cc

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

#include "meetkit/fft.h"

#include <algorithm>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace meetkit {

struct RealFft::Impl {
  Eigen::FFT<double> fft;
  std::vector<double> time;
  std::vector<Complex> freq;
};

std::size_t NextPow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

RealFft::RealFft(std::size_t n) : n_(n), impl_(std::make_unique<Impl>()) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("RealFft size must be even and >= 2");
  }
  impl_->fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  impl_->time.assign(n, 0.0);
  impl_->freq.assign(n / 2 + 1, Complex{});
}

RealFft::~RealFft() = default;
RealFft::RealFft(RealFft&&) noexcept = default;
RealFft& RealFft::operator=(RealFft&&) noexcept = default;

void RealFft::Forward(std::span<const double> in, std::span<Complex> out) {
  if (in.size() > n_) throw std::invalid_argument("FFT input too long");
  if (out.size() != bins()) throw std::invalid_argument("FFT output size");
  auto& t = impl_->time;
  std::copy(in.begin(), in.end(), t.begin());
  std::fill(t.begin() + static_cast<std::ptrdiff_t>(in.size()), t.end(), 0.0);
  impl_->fft.fwd(out.data(), t.data(), static_cast<Eigen::Index>(n_));
}

std::vector<Complex> RealFft::Forward(std::span<const double> in) {
  std::vector<Complex> out(bins());
  Forward(in, out);
  return out;
}

void RealFft::Inverse(std::span<const Complex> in, std::span<double> out) {
  if (in.size() != bins()) throw std::invalid_argument("IFFT input size");
  if (out.size() != n_) throw std::invalid_argument("IFFT output size");
  // kissfft's real inverse may scribble on its input.
  auto& f = impl_->freq;
  std::copy(in.begin(), in.end(), f.begin());
  impl_->fft.inv(out.data(), f.data(), static_cast<Eigen::Index>(n_));
}

std::vector<double> RealFft::Inverse(std::span<const Complex> in) {
  std::vector<double> out(n_);
  Inverse(in, out);
  return out;
}

}  // namespace meetkit
