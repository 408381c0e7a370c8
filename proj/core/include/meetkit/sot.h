// core/include/meetkit/sot.h

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

#ifndef MEETKIT_SOT_H_
#define MEETKIT_SOT_H_

#include <string>
#include <string_view>
#include <vector>

namespace meetkit {

/// Speaker-change token in serialized transcripts.
inline constexpr std::string_view kSpeakerChange = "<sc>";

/// Splits UTF-8 text into code points, one string each. Throws
/// std::invalid_argument on malformed UTF-8.
std::vector<std::string> Utf8Chars(std::string_view text);

/// Multi-talker transcript as ordered segments; rendered with " <sc> "
/// between consecutive segments.
struct SotTranscript {
  std::vector<std::string> segments;

  std::string ToString() const;
  /// Number of tokens: characters (whitespace excluded) plus one per <sc>.
  std::size_t TokenCount() const;
  /// Throws if empty, or any segment is blank or contains <sc>.
  void Validate() const;
  friend bool operator==(const SotTranscript&, const SotTranscript&) = default;
};

struct SotUtterance {
  std::string transcript;
  double start = 0.0;  // seconds
  std::string speaker;
};

/// Orders by start time (ties: speaker id) and joins with <sc>. Throws on an
/// empty list, empty transcripts or non-finite start times.
SotTranscript SotSerialize(std::vector<SotUtterance> utterances);

/// Parses a serialized stream. Throws on an empty stream, a leading or
/// trailing <sc>, or two adjacent <sc> tokens.
SotTranscript SotParse(std::string_view text);

/// Segment texts in stream order.
std::vector<std::string> SotSplit(std::string_view text);

}  // namespace meetkit

#endif  // MEETKIT_SOT_H_
