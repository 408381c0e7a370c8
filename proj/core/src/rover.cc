// core/src/rover.cc

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

#include "meetkit/rover.h"

#include <algorithm>
#include <stdexcept>

namespace meetkit {
namespace {

bool SlotHas(const std::vector<WtnEntry>& slot, const std::string& token) {
  for (const auto& e : slot) {
    if (e.token && *e.token == token) return true;
  }
  return false;
}

}  // namespace

Hypothesis MakeHypothesis(const std::vector<std::string>& tokens) {
  Hypothesis h;
  for (const auto& t : tokens) h.push_back({t, 1.0});
  return h;
}

Wtn Wtn::FromHypothesis(const Hypothesis& hyp) {
  Wtn w;
  w.systems = 1;
  for (const auto& t : hyp) w.slots.push_back({WtnEntry{t.text, t.confidence}});
  return w;
}

void Wtn::Validate() const {
  if (systems == 0) throw std::invalid_argument("wtn: no aligned systems");
  for (const auto& slot : slots) {
    if (slot.size() != systems) {
      throw std::invalid_argument("wtn: slot entry count differs from systems");
    }
  }
}

void AlignCosts::Validate() const {
  if (match < 0 || match > substitution) {
    throw std::invalid_argument("align costs: need 0 <= match <= substitution");
  }
  if (insertion <= 0 || deletion <= 0) {
    throw std::invalid_argument("align costs: insertion and deletion must be > 0");
  }
}

Wtn AlignToWtn(const Wtn& wtn, const Hypothesis& hyp, const AlignCosts& costs,
               int* cost) {
  wtn.Validate();
  costs.Validate();
  const std::size_t n = wtn.slots.size(), m = hyp.size();
  std::vector<int> d((n + 1) * (m + 1), 0);
  auto at = [&](std::size_t i, std::size_t j) -> int& {
    return d[i * (m + 1) + j];
  };
  auto sub = [&](std::size_t i, std::size_t j) {
    return SlotHas(wtn.slots[i - 1], hyp[j - 1].text) ? costs.match
                                                      : costs.substitution;
  };
  for (std::size_t i = 1; i <= n; ++i) at(i, 0) = at(i - 1, 0) + costs.deletion;
  for (std::size_t j = 1; j <= m; ++j) at(0, j) = at(0, j - 1) + costs.insertion;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      at(i, j) = std::min({at(i - 1, j - 1) + sub(i, j),
                           at(i - 1, j) + costs.deletion,
                           at(i, j - 1) + costs.insertion});
    }
  }
  if (cost) *cost = at(n, m);

  // Backtrace, collecting slots in reverse.
  std::vector<std::vector<WtnEntry>> rev;
  std::size_t i = n, j = m;
  const std::vector<WtnEntry> nulls(wtn.systems);
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && at(i, j) == at(i - 1, j - 1) + sub(i, j)) {
      auto slot = wtn.slots[i - 1];
      slot.push_back({hyp[j - 1].text, hyp[j - 1].confidence});
      rev.push_back(std::move(slot));
      --i;
      --j;
    } else if (i > 0 && at(i, j) == at(i - 1, j) + costs.deletion) {
      auto slot = wtn.slots[i - 1];
      slot.push_back({});
      rev.push_back(std::move(slot));
      --i;
    } else {
      auto slot = nulls;
      slot.push_back({hyp[j - 1].text, hyp[j - 1].confidence});
      rev.push_back(std::move(slot));
      --j;
    }
  }
  Wtn out;
  out.systems = wtn.systems + 1;
  out.slots.assign(rev.rbegin(), rev.rend());
  return out;
}

std::vector<std::string> Vote(const Wtn& wtn, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("vote: alpha must be in [0, 1]");
  }
  wtn.Validate();
  std::vector<std::string> out;
  const double systems = static_cast<double>(wtn.systems);
  for (const auto& slot : wtn.slots) {
    struct Candidate {
      const std::optional<std::string>* token;
      int count = 0;
      double confidence = 0.0;
    };
    std::vector<Candidate> cands;
    for (const auto& e : slot) {
      Candidate* c = nullptr;
      for (auto& k : cands) {
        if (*k.token == e.token) c = &k;
      }
      if (!c) {
        cands.push_back({&e.token});
        c = &cands.back();
      }
      ++c->count;
      c->confidence += e.confidence;
    }
    const Candidate* best = nullptr;
    double best_score = 0.0;
    for (const auto& c : cands) {
      const double score = alpha * c.count / systems +
                           (1.0 - alpha) * (c.confidence / c.count);
      if (!best || score > best_score) {
        best = &c;
        best_score = score;
      }
    }
    if (best && best->token->has_value()) out.push_back(**best->token);
  }
  return out;
}

std::vector<std::string> Rover(const std::vector<Hypothesis>& hypotheses,
                               double alpha, const AlignCosts& costs) {
  if (hypotheses.size() < 2) {
    throw std::invalid_argument("rover: need at least two hypotheses");
  }
  Wtn wtn = Wtn::FromHypothesis(hypotheses.front());
  for (std::size_t k = 1; k < hypotheses.size(); ++k) {
    wtn = AlignToWtn(wtn, hypotheses[k], costs);
  }
  return Vote(wtn, alpha);
}

}  // namespace meetkit
