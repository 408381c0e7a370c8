// tests/acceptance/acceptance_main.cc

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

// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Usage: meetkit_acceptance [--criterion N ...] [--workdir DIR]

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <exception>
#include <set>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "criteria.h"

namespace fs = std::filesystem;
using meetkit::acceptance::AllCriteria;
using meetkit::acceptance::Context;
using meetkit::acceptance::Outcome;

int main(int argc, char** argv) {
  CLI::App app{"meetkit acceptance suite"};
  std::vector<int> only;
  std::string workdir;
  app.add_option("--criterion", only, "Run only these criteria (1-11)");
  app.add_option("--workdir", workdir, "Scratch directory");
  CLI11_PARSE(app, argc, argv);

  const std::set<int> selected(only.begin(), only.end());
  Context ctx;
  ctx.workdir = workdir.empty()
                    ? fs::temp_directory_path() /
                          ("meetkit_acceptance_" + std::to_string(::getpid()))
                    : fs::path(workdir);
  fs::create_directories(ctx.workdir);

  int failed = 0, ran = 0;
  for (const auto& c : AllCriteria()) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run(ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("criterion %2d %-34s %s  %s; %.1f s (limit %.0f s)%s\n", c.id, c.name,
                pass ? "PASS" : "FAIL", o.detail.c_str(), secs, c.limit_seconds,
                in_time ? "" : " TIME LIMIT EXCEEDED");
    std::fflush(stdout);
  }
  if (workdir.empty()) fs::remove_all(ctx.workdir);
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed ? 1 : 0;
}
