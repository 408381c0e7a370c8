// core/include/meetkit/manifest.h

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

#ifndef MEETKIT_MANIFEST_H_
#define MEETKIT_MANIFEST_H_

#include <filesystem>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace meetkit {

/// Malformed manifest line or unreadable manifest file.
class ManifestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One `key value` row. Fields are tab-separated; lines without a tab split
/// at the first run of whitespace. Blank lines are skipped.
using KeyValue = std::pair<std::string, std::string>;

/// Reads `utt-id <tab> value` rows (wav.scp, text). Duplicate ids and empty
/// ids are errors. Values may be empty only when allow_empty_value is set.
std::vector<KeyValue> ReadKeyValue(std::istream& in,
                                   bool allow_empty_value = false);
std::vector<KeyValue> ReadKeyValueFile(const std::filesystem::path& path,
                                       bool allow_empty_value = false);
void WriteKeyValue(std::ostream& out, const std::vector<KeyValue>& rows);
void WriteKeyValueFile(const std::filesystem::path& path,
                       const std::vector<KeyValue>& rows);

struct TimelineEntry {
  std::string utterance;
  std::string speaker;
  double start = 0.0;     // seconds
  double duration = 0.0;  // seconds
  friend bool operator==(const TimelineEntry&, const TimelineEntry&) = default;
};

std::vector<TimelineEntry> ReadTimeline(std::istream& in);
std::vector<TimelineEntry> ReadTimelineFile(const std::filesystem::path& path);
void WriteTimeline(std::ostream& out, const std::vector<TimelineEntry>& rows);

/// Dataset manifest row: utt-id, wav path, speaker, transcript.
struct DatasetEntry {
  std::string utterance;
  std::string path;
  std::string speaker;
  std::string transcript;
  friend bool operator==(const DatasetEntry&, const DatasetEntry&) = default;
};

std::vector<DatasetEntry> ReadDataset(std::istream& in);
std::vector<DatasetEntry> ReadDatasetFile(const std::filesystem::path& path);
void WriteDataset(std::ostream& out, const std::vector<DatasetEntry>& rows);
void WriteDatasetFile(const std::filesystem::path& path,
                      const std::vector<DatasetEntry>& rows);

/// Splits a line on tabs; without tabs, on whitespace runs. At most
/// max_fields fields are returned, the last holding the remainder.
std::vector<std::string> SplitFields(const std::string& line,
                                     std::size_t max_fields);

}  // namespace meetkit

#endif  // MEETKIT_MANIFEST_H_
