// core/src/cer.cc

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

#include "meetkit/cer.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "meetkit/sot.h"

namespace meetkit {
namespace {

bool IsSpace(const std::string& ch) {
  return ch == " " || ch == "\t" || ch == "\n" || ch == "\r" ||
         ch == "\xe3\x80\x80";
}

}  // namespace

double CerReport::cer() const {
  return reference_length == 0
             ? 0.0
             : static_cast<double>(errors()) /
                   static_cast<double>(reference_length);
}

CerReport& CerReport::operator+=(const CerReport& o) {
  substitutions += o.substitutions;
  deletions += o.deletions;
  insertions += o.insertions;
  reference_length += o.reference_length;
  return *this;
}

std::vector<std::string> ScoringUnits(std::string_view text,
                                      const CerOptions& opts) {
  std::vector<std::string> units;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = text.find(kSpeakerChange, pos);
    const auto piece = text.substr(
        pos, next == std::string_view::npos ? std::string_view::npos
                                            : next - pos);
    for (auto& ch : Utf8Chars(piece)) {
      if (opts.remove_whitespace && IsSpace(ch)) continue;
      units.push_back(std::move(ch));
    }
    if (next == std::string_view::npos) break;
    if (!opts.strip_speaker_change) units.emplace_back(kSpeakerChange);
    pos = next + kSpeakerChange.size();
  }
  return units;
}

CerReport AlignUnits(const std::vector<std::string>& ref,
                     const std::vector<std::string>& hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<std::size_t> d((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& {
    return d[i * (m + 1) + j];
  };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i, j - 1) + 1, at(i - 1, j) + 1});
    }
  }

  CerReport r;
  r.reference_length = n;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (at(i, j) == at(i - 1, j - 1) + (same ? 0 : 1)) {
        if (!same) ++r.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (j > 0 && at(i, j) == at(i, j - 1) + 1) {
      ++r.insertions;
      --j;
    } else {
      ++r.deletions;
      --i;
    }
  }
  return r;
}

CerReport Cer(std::string_view reference, std::string_view hypothesis,
              const CerOptions& opts) {
  const auto ref = ScoringUnits(reference, opts);
  if (ref.empty()) throw std::invalid_argument("cer: empty reference");
  return AlignUnits(ref, ScoringUnits(hypothesis, opts));
}

CerReport PermutationCer(const std::vector<std::string>& references,
                         const std::vector<std::string>& hypotheses,
                         const CerOptions& opts) {
  if (references.empty() || hypotheses.empty()) {
    throw std::invalid_argument("permutation_cer: empty stream list");
  }
  if (references.size() > kMaxPermutationStreams ||
      hypotheses.size() > kMaxPermutationStreams) {
    throw std::invalid_argument("permutation_cer: at most 4 streams");
  }
  const std::size_t k = std::max(references.size(), hypotheses.size());
  std::vector<std::vector<std::string>> refs(k), hyps(k);
  for (std::size_t i = 0; i < references.size(); ++i) {
    refs[i] = ScoringUnits(references[i], opts);
  }
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    hyps[i] = ScoringUnits(hypotheses[i], opts);
  }
  std::size_t total_ref = 0;
  for (const auto& r : refs) total_ref += r.size();
  if (total_ref == 0) throw std::invalid_argument("cer: empty reference");

  // Pairwise reports, then exhaustive search over assignments.
  std::vector<CerReport> pair(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) pair[a * k + b] = AlignUnits(refs[a], hyps[b]);
  }
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  CerReport best;
  bool have = false;
  do {
    CerReport sum;
    for (std::size_t a = 0; a < k; ++a) sum += pair[a * k + perm[a]];
    if (!have || sum.errors() < best.errors()) {
      best = sum;
      have = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace meetkit
