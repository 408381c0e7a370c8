// core/include/meetkit/rng.h

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

#ifndef MEETKIT_RNG_H_
#define MEETKIT_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace meetkit {

/// Seeded generator with distribution code owned here (the standard library
/// distributions are implementation-defined), so a seed means the same
/// stream on every toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }
  /// Uniform on [0, 1).
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  /// Uniform on the closed range [lo, hi].
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi);
  /// Standard normal (Box-Muller).
  double Normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Stable per-item seed: mixes a global seed with a key (e.g. an utterance
/// id). Independent of call order, so parallel jobs reproduce serial runs.
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view key);

}  // namespace meetkit

#endif  // MEETKIT_RNG_H_
