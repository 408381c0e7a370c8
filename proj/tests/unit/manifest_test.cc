// tests/unit/manifest_test.cc

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

#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "meetkit/manifest.h"

namespace meetkit {
namespace {

TEST(KeyValue, TabsAndWhitespace) {
  std::istringstream in("utt1\ta b.wav\n\nutt2  c.wav\n");
  const auto rows = ReadKeyValue(in);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (KeyValue{"utt1", "a b.wav"}));
  EXPECT_EQ(rows[1], (KeyValue{"utt2", "c.wav"}));
  std::ostringstream out;
  WriteKeyValue(out, rows);
  std::istringstream back(out.str());
  EXPECT_EQ(ReadKeyValue(back), rows);
}

TEST(KeyValue, RejectsDuplicatesAndEmptyValues) {
  std::istringstream dup("a\tx\na\ty\n");
  EXPECT_THROW(ReadKeyValue(dup), ManifestError);
  std::istringstream empty("a\n");
  EXPECT_THROW(ReadKeyValue(empty), ManifestError);
  std::istringstream allowed("a\n");
  EXPECT_EQ(ReadKeyValue(allowed, true).at(0).second, "");
  EXPECT_THROW(ReadKeyValueFile("/nonexistent/wav.scp"), ManifestError);
}

TEST(Timeline, RoundTrip) {
  const std::vector<TimelineEntry> rows = {{"u1", "A", 0.0, 1.25}, {"u2", "B", 0.5, 2.0}};
  std::ostringstream out;
  WriteTimeline(out, rows);
  std::istringstream in(out.str());
  EXPECT_EQ(ReadTimeline(in), rows);
  std::istringstream bad("u1\tA\tx\t1\n");
  EXPECT_THROW(ReadTimeline(bad), ManifestError);
}

TEST(Dataset, RoundTripWithSpacesInTranscript) {
  const std::vector<DatasetEntry> rows = {{"u1", "a.wav", "spk1", "你好 世界"}};
  std::ostringstream out;
  WriteDataset(out, rows);
  std::istringstream in(out.str());
  EXPECT_EQ(ReadDataset(in), rows);
}

TEST(SplitFields, KeepsRemainderInLastField) {
  EXPECT_EQ(SplitFields("a\tb\tc d", 2), (std::vector<std::string>{"a", "b\tc d"}));
  EXPECT_EQ(SplitFields("a  b c", 2), (std::vector<std::string>{"a", "b c"}));
  EXPECT_EQ(SplitFields("a", 3), (std::vector<std::string>{"a"}));
}

}  // namespace
}  // namespace meetkit
