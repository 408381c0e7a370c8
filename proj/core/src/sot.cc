// core/src/sot.cc

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

#include "meetkit/sot.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace meetkit {
namespace {

bool IsSpace(std::string_view ch) {
  return ch == " " || ch == "\t" || ch == "\n" || ch == "\r" ||
         ch == "\xe3\x80\x80";  // ideographic space
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<std::string> Utf8Chars(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char lead = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    if (lead < 0x80) {
      len = 1;
    } else if ((lead & 0xE0) == 0xC0) {
      len = 2;
    } else if ((lead & 0xF0) == 0xE0) {
      len = 3;
    } else if ((lead & 0xF8) == 0xF0) {
      len = 4;
    } else {
      throw std::invalid_argument("malformed UTF-8 at byte " +
                                  std::to_string(i));
    }
    if (i + len > text.size()) {
      throw std::invalid_argument("truncated UTF-8 sequence");
    }
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) {
        throw std::invalid_argument("malformed UTF-8 at byte " +
                                    std::to_string(i + k));
      }
    }
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return out;
}

std::string SotTranscript::ToString() const {
  std::string out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i > 0) {
      out += ' ';
      out += kSpeakerChange;
      out += ' ';
    }
    out += segments[i];
  }
  return out;
}

std::size_t SotTranscript::TokenCount() const {
  std::size_t n = segments.empty() ? 0 : segments.size() - 1;
  for (const auto& s : segments) {
    for (const auto& ch : Utf8Chars(s)) n += IsSpace(ch) ? 0 : 1;
  }
  return n;
}

void SotTranscript::Validate() const {
  if (segments.empty()) throw std::invalid_argument("empty SOT transcript");
  for (const auto& s : segments) {
    if (Trim(s).empty()) throw std::invalid_argument("blank SOT segment");
    if (s.find(kSpeakerChange) != std::string::npos) {
      throw std::invalid_argument("SOT segment contains <sc>");
    }
  }
}

SotTranscript SotSerialize(std::vector<SotUtterance> utterances) {
  if (utterances.empty()) {
    throw std::invalid_argument("sot_serialize: no utterances");
  }
  for (const auto& u : utterances) {
    if (!std::isfinite(u.start)) {
      throw std::invalid_argument("sot_serialize: non-finite start time");
    }
  }
  std::stable_sort(utterances.begin(), utterances.end(),
                   [](const SotUtterance& a, const SotUtterance& b) {
                     if (a.start != b.start) return a.start < b.start;
                     return a.speaker < b.speaker;
                   });
  SotTranscript t;
  for (auto& u : utterances) t.segments.emplace_back(Trim(u.transcript));
  t.Validate();
  return t;
}

SotTranscript SotParse(std::string_view text) {
  SotTranscript t;
  std::size_t pos = 0;
  while (true) {
    const auto next = text.find(kSpeakerChange, pos);
    const auto piece = Trim(text.substr(
        pos, next == std::string_view::npos ? std::string_view::npos
                                            : next - pos));
    if (piece.empty()) {
      if (next == std::string_view::npos && t.segments.empty() &&
          pos == 0) {
        throw std::invalid_argument("sot_split: empty stream");
      }
      throw std::invalid_argument(
          "sot_split: leading, trailing or repeated <sc>");
    }
    t.segments.emplace_back(piece);
    if (next == std::string_view::npos) break;
    pos = next + kSpeakerChange.size();
  }
  return t;
}

std::vector<std::string> SotSplit(std::string_view text) {
  return SotParse(text).segments;
}

}  // namespace meetkit
