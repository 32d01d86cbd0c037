// Copyright 2026 The qotm developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace qotm::cli {

// Fixed default seed: reports are reproducible artifacts, never entropic.
inline constexpr uint64_t kDefaultSeed = 7;

struct RunConfig {
  std::string subcommand;   // protocol | attack | bounds | verify-sdp |
                            // uc-distinguish
  std::string attack_name;  // for attack / uc-distinguish
  int n = 8;
  uint64_t trials = 10000;
  int m_budget = 2;
  int delta = 1;
  uint64_t seed = kDefaultSeed;
  std::optional<int> s0;
  std::optional<int> s1;
  std::string format = "json";  // json | csv
  std::string out_path;         // empty: stdout only
  int n_max = 20;               // bounds table range
};

struct RunResult {
  int exit_code = 0;     // 0 pass, 1 verdict failure, 2 usage error
  std::string artifact;  // rendered report (also written to out_path if set)
};

// Validates the config, dispatches to the named module, renders the report
// in the requested format, and writes it to out_path when set. Identical
// configs produce byte-identical artifacts.
RunResult run(const RunConfig& config);

}  // namespace qotm::cli
