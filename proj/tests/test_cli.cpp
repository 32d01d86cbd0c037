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

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "qotm/cli.hpp"
#include "qotm/protocol.hpp"

namespace {

using qotm::cli::RunConfig;
using qotm::cli::RunResult;

RunConfig base_config(const std::string& subcommand) {
  RunConfig c;
  c.subcommand = subcommand;
  return c;
}

TEST_CASE("identical configurations produce byte-identical artifacts") {
  RunConfig c = base_config("attack");
  c.attack_name = "breidbart";
  c.n = 4;
  c.trials = 2000;
  c.seed = 9;
  const RunResult first = qotm::cli::run(c);
  const RunResult second = qotm::cli::run(c);
  CHECK(first.exit_code == second.exit_code);
  CHECK(first.artifact == second.artifact);
  CHECK(first.exit_code == 0);
}

TEST_CASE("protocol subcommand reports perfect honest retrieval") {
  RunConfig c = base_config("protocol");
  c.n = 4;
  c.trials = 200;
  c.seed = 3;
  const RunResult r = qotm::cli::run(c);
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.artifact);
  CHECK(j.at("subcommand") == "protocol");
  CHECK(j.at("success_frequency").get<double>() == 1.0);
  CHECK(j.at("successes").get<uint64_t>() == 200);
  CHECK(j.at("verdict") == "pass");
  CHECK(j.at("s0").is_null());
}

TEST_CASE("protocol subcommand honors pinned secrets") {
  RunConfig c = base_config("protocol");
  c.n = 3;
  c.trials = 50;
  c.s0 = 1;
  c.s1 = 0;
  const RunResult r = qotm::cli::run(c);
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.artifact);
  CHECK(j.at("s0").get<int>() == 1);
  CHECK(j.at("s1").get<int>() == 0);
}

TEST_CASE("usage errors exit with code 2 and a usage message") {
  const auto expect_usage = [](RunConfig c) {
    const RunResult r = qotm::cli::run(c);
    CHECK(r.exit_code == 2);
    CHECK(r.artifact.rfind("usage error: ", 0) == 0);
  };

  {
    RunConfig c = base_config("attack");
    c.attack_name = "unknown-attack";
    expect_usage(c);
  }
  {
    RunConfig c = base_config("nonsense");
    expect_usage(c);
  }
  {
    RunConfig c = base_config("protocol");
    c.format = "xml";
    expect_usage(c);
  }
  {
    RunConfig c = base_config("protocol");
    c.n = 0;
    expect_usage(c);
  }
  {
    RunConfig c = base_config("protocol");
    c.n = 21;
    expect_usage(c);
  }
  {
    RunConfig c = base_config("protocol");
    c.trials = 0;
    expect_usage(c);
  }
  {
    RunConfig c = base_config("protocol");
    c.s0 = 2;
    expect_usage(c);
  }
  {
    RunConfig c = base_config("attack");
    c.attack_name = "breidbart";
    c.m_budget = 1;
    expect_usage(c);
  }
  {
    RunConfig c = base_config("attack");
    c.attack_name = "rewind";
    c.n = 2;
    c.delta = 3;  // needs 2*delta <= 2^n
    expect_usage(c);
  }
  {
    RunConfig c = base_config("bounds");
    c.n_max = 0;
    expect_usage(c);
  }
}

TEST_CASE("bounds subcommand emits one csv row per n") {
  RunConfig c = base_config("bounds");
  c.format = "csv";
  c.m_budget = 10;
  c.n_max = 20;
  const RunResult r = qotm::cli::run(c);
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.artifact);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "n,m,noninteractive_bound,interactive_bound");
  int rows = 0;
  std::string first_row;
  while (std::getline(lines, line)) {
    if (rows == 0) {
      first_row = line;
    }
    ++rows;
  }
  CHECK(rows == 20);
  CHECK(first_row == "1,10,0.8535533905932737,1.0");
}

TEST_CASE("bounds subcommand json rows carry both bound columns") {
  RunConfig c = base_config("bounds");
  c.m_budget = 10;
  c.n_max = 40;
  const RunResult r = qotm::cli::run(c);
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.artifact);
  REQUIRE(j.at("rows").size() == 40);
  const auto& last = j.at("rows").back();
  CHECK(last.at("n").get<int>() == 40);
  // 90 * alpha^40 ~ 0.160.
  CHECK(last.at("interactive_bound").get<double>() ==
        doctest::Approx(0.160).epsilon(0.01));
}

TEST_CASE("verify-sdp subcommand passes and reports the optimum") {
  RunConfig c = base_config("verify-sdp");
  const RunResult r = qotm::cli::run(c);
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.artifact);
  CHECK(j.at("verdict") == "pass");
  CHECK(std::abs(j.at("value").get<double>() - 0.8535533906) < 1e-9);
  CHECK(j.at("duality_gap").get<double>() <= 1e-10);
  CHECK(j.at("constraints").size() == 7);
  CHECK(j.at("tensor").size() == 4);

  RunConfig csv = base_config("verify-sdp");
  csv.format = "csv";
  const RunResult rc = qotm::cli::run(csv);
  CHECK(rc.exit_code == 0);
  CHECK(rc.artifact.rfind("name,slack\n", 0) == 0);
  CHECK(rc.artifact.find("duality_gap,") != std::string::npos);
  CHECK(rc.artifact.find("value,0.8535533905932737") != std::string::npos);
}

TEST_CASE("uc-distinguish defaults to breidbart and fills the report") {
  RunConfig c = base_config("uc-distinguish");
  c.n = 2;
  c.trials = 3000;
  const RunResult r = qotm::cli::run(c);
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.artifact);
  CHECK(j.at("subcommand") == "uc-distinguish");
  CHECK(j.at("adversary") == "breidbart");
  CHECK(j.at("seed").get<uint64_t>() == qotm::cli::kDefaultSeed);
  CHECK(j.at("case2_frequency").get<double>() > 0.0);
  CHECK(j.at("verdict") == "pass");
}

TEST_CASE("uc-distinguish with the honest adversary has zero advantage") {
  RunConfig c = base_config("uc-distinguish");
  c.attack_name = "honest";
  c.n = 3;
  c.trials = 500;
  const RunResult r = qotm::cli::run(c);
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.artifact);
  CHECK(j.at("empirical_advantage").get<double>() == 0.0);
  CHECK(j.at("case2_frequency").get<double>() == 0.0);
}

TEST_CASE("uc-distinguish csv row matches the experiment schema") {
  RunConfig c = base_config("uc-distinguish");
  c.attack_name = "naive-z";
  c.n = 2;
  c.trials = 400;
  c.format = "csv";
  const RunResult r = qotm::cli::run(c);
  std::istringstream lines(r.artifact);
  std::string header;
  REQUIRE(std::getline(lines, header));
  CHECK(header == qotm::ExperimentReport::csv_header());
  std::string row;
  REQUIRE(std::getline(lines, row));
  CHECK(row.find("naive-z") != std::string::npos);
}

TEST_CASE("rewind subcommand certifies exact recovery") {
  RunConfig c = base_config("attack");
  c.attack_name = "rewind";
  c.n = 2;
  c.delta = 1;
  c.trials = 2;
  const RunResult r = qotm::cli::run(c);
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.artifact);
  CHECK(j.at("cases_checked").get<int>() == 8);
  CHECK(j.at("exact_recoveries").get<int>() == 8);
  CHECK(std::abs(j.at("min_fidelity").get<double>() - 1.0) < 1e-9);
}

TEST_CASE("bounded-key subcommand with delta 1 always wins") {
  RunConfig c = base_config("attack");
  c.attack_name = "bounded-key";
  c.n = 3;
  c.delta = 1;
  c.trials = 100;
  const RunResult r = qotm::cli::run(c);
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.artifact);
  CHECK(j.at("empirical_frequency").get<double>() == 1.0);
  CHECK(j.at("analytic_lower_bound").get<double>() == 1.0);
}

TEST_CASE("attack csv uses the frozen column layout") {
  RunConfig c = base_config("attack");
  c.attack_name = "breidbart";
  c.n = 3;
  c.trials = 5000;
  c.format = "csv";
  const RunResult r = qotm::cli::run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.artifact.rfind(
            "seed,n,m,trials,adversary,empirical_frequency,analytic_bound,"
            "verdict\n",
            0) == 0);
}

TEST_CASE("artifacts are mirrored to --out when requested") {
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "qotm_cli_out_test.json";
  RunConfig c = base_config("bounds");
  c.n_max = 5;
  c.out_path = path.string();
  const RunResult r = qotm::cli::run(c);
  CHECK(r.exit_code == 0);
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream contents;
  contents << in.rdbuf();
  CHECK(contents.str() == r.artifact);
  in.close();
  std::filesystem::remove(path);
}

TEST_CASE("usage failures do not write the output file") {
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "qotm_cli_usage_test.json";
  std::filesystem::remove(path);
  RunConfig c = base_config("protocol");
  c.n = 0;
  c.out_path = path.string();
  const RunResult r = qotm::cli::run(c);
  CHECK(r.exit_code == 2);
  CHECK_FALSE(std::filesystem::exists(path));
}

}  // namespace
