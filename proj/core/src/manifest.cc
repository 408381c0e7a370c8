// core/src/manifest.cc

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

#include "meetkit/manifest.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace meetkit {
namespace {

std::string Where(std::size_t line) {
  return "manifest line " + std::to_string(line) + ": ";
}

std::ifstream OpenIn(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError("cannot open " + path.string());
  return in;
}

std::ofstream OpenOut(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ManifestError("cannot write " + path.string());
  return out;
}

bool Blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

double ParseSeconds(const std::string& s, std::size_t line) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || !std::isfinite(v)) {
    throw ManifestError(Where(line) + "bad number '" + s + "'");
  }
  return v;
}

template <typename Row, typename Parse>
std::vector<Row> ReadRows(std::istream& in, std::size_t fields, Parse parse) {
  std::vector<Row> rows;
  std::set<std::string> seen;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Blank(line)) continue;
    auto f = SplitFields(line, fields);
    if (f.size() != fields) {
      throw ManifestError(Where(n) + "expected " + std::to_string(fields) +
                          " fields, got " + std::to_string(f.size()));
    }
    if (!seen.insert(f[0]).second) {
      throw ManifestError(Where(n) + "duplicate id '" + f[0] + "'");
    }
    rows.push_back(parse(f, n));
  }
  return rows;
}

}  // namespace

std::vector<std::string> SplitFields(const std::string& line,
                                     std::size_t max_fields) {
  std::vector<std::string> out;
  if (max_fields == 0) return out;
  const bool tabs = line.find('\t') != std::string::npos;
  const char* sep = tabs ? "\t" : " \t";
  std::size_t pos = 0;
  if (!tabs) pos = line.find_first_not_of(' ');
  while (pos != std::string::npos && pos <= line.size()) {
    if (out.size() + 1 == max_fields) {
      out.push_back(line.substr(pos));
      break;
    }
    const auto next = line.find_first_of(sep, pos);
    out.push_back(line.substr(pos, next == std::string::npos ? next : next - pos));
    if (next == std::string::npos) break;
    pos = tabs ? next + 1 : line.find_first_not_of(' ', next);
  }
  return out;
}

std::vector<KeyValue> ReadKeyValue(std::istream& in, bool allow_empty_value) {
  std::vector<KeyValue> rows;
  std::set<std::string> seen;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Blank(line)) continue;
    auto f = SplitFields(line, 2);
    if (f.empty() || f[0].empty()) throw ManifestError(Where(n) + "empty id");
    if (f.size() < 2) f.emplace_back();
    if (f[1].empty() && !allow_empty_value) {
      throw ManifestError(Where(n) + "missing value for '" + f[0] + "'");
    }
    if (!seen.insert(f[0]).second) {
      throw ManifestError(Where(n) + "duplicate id '" + f[0] + "'");
    }
    rows.emplace_back(std::move(f[0]), std::move(f[1]));
  }
  return rows;
}

std::vector<KeyValue> ReadKeyValueFile(const std::filesystem::path& path,
                                       bool allow_empty_value) {
  auto in = OpenIn(path);
  return ReadKeyValue(in, allow_empty_value);
}

void WriteKeyValue(std::ostream& out, const std::vector<KeyValue>& rows) {
  for (const auto& [k, v] : rows) out << k << '\t' << v << '\n';
}

void WriteKeyValueFile(const std::filesystem::path& path,
                       const std::vector<KeyValue>& rows) {
  auto out = OpenOut(path);
  WriteKeyValue(out, rows);
}

std::vector<TimelineEntry> ReadTimeline(std::istream& in) {
  std::vector<TimelineEntry> rows;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Blank(line)) continue;
    auto f = SplitFields(line, 4);
    if (f.size() != 4) throw ManifestError(Where(n) + "expected 4 fields");
    TimelineEntry e{f[0], f[1], ParseSeconds(f[2], n), ParseSeconds(f[3], n)};
    if (e.start < 0.0 || e.duration < 0.0) {
      throw ManifestError(Where(n) + "negative time");
    }
    rows.push_back(std::move(e));
  }
  return rows;
}

std::vector<TimelineEntry> ReadTimelineFile(const std::filesystem::path& path) {
  auto in = OpenIn(path);
  return ReadTimeline(in);
}

void WriteTimeline(std::ostream& out, const std::vector<TimelineEntry>& rows) {
  char buf[64];
  for (const auto& e : rows) {
    out << e.utterance << '\t' << e.speaker << '\t';
    std::snprintf(buf, sizeof(buf), "%.6f\t%.6f", e.start, e.duration);
    out << buf << '\n';
  }
}

std::vector<DatasetEntry> ReadDataset(std::istream& in) {
  return ReadRows<DatasetEntry>(
      in, 4, [](std::vector<std::string>& f, std::size_t) {
        return DatasetEntry{f[0], f[1], f[2], f[3]};
      });
}

std::vector<DatasetEntry> ReadDatasetFile(const std::filesystem::path& path) {
  auto in = OpenIn(path);
  return ReadDataset(in);
}

void WriteDataset(std::ostream& out, const std::vector<DatasetEntry>& rows) {
  for (const auto& e : rows) {
    out << e.utterance << '\t' << e.path << '\t' << e.speaker << '\t'
        << e.transcript << '\n';
  }
}

void WriteDatasetFile(const std::filesystem::path& path,
                      const std::vector<DatasetEntry>& rows) {
  auto out = OpenOut(path);
  WriteDataset(out, rows);
}

}  // namespace meetkit
