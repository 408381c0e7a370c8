// core/include/meetkit/cer.h

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

#ifndef MEETKIT_CER_H_
#define MEETKIT_CER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace meetkit {

struct CerReport {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t reference_length = 0;

  std::size_t errors() const { return substitutions + deletions + insertions; }
  /// errors / reference_length (0 for an empty reference).
  double cer() const;
  CerReport& operator+=(const CerReport& o);
  friend bool operator==(const CerReport&, const CerReport&) = default;
};

struct CerOptions {
  bool strip_speaker_change = true;
  bool remove_whitespace = true;
};

/// Scoring units of a transcript: one per character, with <sc> kept as a
/// single unit unless stripped.
std::vector<std::string> ScoringUnits(std::string_view text,
                                      const CerOptions& opts = {});

/// Unit-cost edit alignment. On equal cost the backtrace prefers
/// substitution (or match), then insertion, then deletion. An empty
/// reference is allowed here and yields all insertions.
CerReport AlignUnits(const std::vector<std::string>& ref,
                     const std::vector<std::string>& hyp);

/// Throws std::invalid_argument if the normalized reference is empty.
CerReport Cer(std::string_view reference, std::string_view hypothesis,
              const CerOptions& opts = {});

inline constexpr std::size_t kMaxPermutationStreams = 4;

/// Best assignment of hypothesis streams to reference streams (exhaustive;
/// the shorter side is padded with empty streams). Throws on more than four
/// streams on either side or an empty total reference.
CerReport PermutationCer(const std::vector<std::string>& references,
                         const std::vector<std::string>& hypotheses,
                         const CerOptions& opts = {});

}  // namespace meetkit

#endif  // MEETKIT_CER_H_
