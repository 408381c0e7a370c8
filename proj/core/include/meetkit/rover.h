// core/include/meetkit/rover.h

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

#ifndef MEETKIT_ROVER_H_
#define MEETKIT_ROVER_H_

#include <optional>
#include <string>
#include <vector>

namespace meetkit {

struct ScoredToken {
  std::string text;
  double confidence = 1.0;
};

using Hypothesis = std::vector<ScoredToken>;

/// Tokens with confidence 1.
Hypothesis MakeHypothesis(const std::vector<std::string>& tokens);

struct WtnEntry {
  std::optional<std::string> token;  // nullopt is NULL
  double confidence = 0.0;
  friend bool operator==(const WtnEntry&, const WtnEntry&) = default;
};

/// Word transition network: ordered slots, one entry per aligned system.
struct Wtn {
  std::size_t systems = 0;
  std::vector<std::vector<WtnEntry>> slots;

  static Wtn FromHypothesis(const Hypothesis& hyp);
  void Validate() const;
  friend bool operator==(const Wtn&, const Wtn&) = default;
};

struct AlignCosts {
  int match = 0;
  int substitution = 4;
  int insertion = 3;
  int deletion = 3;

  void Validate() const;
};

/// Aligns hyp to the slot sequence by dynamic programming and adds it as a
/// new system. A slot matches a token if any non-NULL entry equals it.
/// Inserted tokens open new slots (NULL for earlier systems); deleted slots
/// get a NULL entry for the new system. Equal-cost ties prefer match, then
/// substitution, deletion, insertion. Writes the alignment cost if asked.
Wtn AlignToWtn(const Wtn& wtn, const Hypothesis& hyp,
               const AlignCosts& costs = {}, int* cost = nullptr);

/// Per slot, score(w) = alpha * count(w) / systems + (1 - alpha) *
/// mean confidence of w; NULL competes and, if it wins, the slot emits
/// nothing. Ties go to the token seen first in system order.
std::vector<std::string> Vote(const Wtn& wtn, double alpha = 1.0);

/// Folds hypotheses into a network in the given order, then votes. Needs at
/// least two hypotheses.
std::vector<std::string> Rover(const std::vector<Hypothesis>& hypotheses,
                               double alpha = 1.0,
                               const AlignCosts& costs = {});

}  // namespace meetkit

#endif  // MEETKIT_ROVER_H_
