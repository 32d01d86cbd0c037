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

#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "qotm/cli.hpp"

namespace {

void add_common_options(CLI::App* sub, qotm::cli::RunConfig* config) {
  sub->add_option("--n", config->n, "key length in qubits");
  sub->add_option("--trials", config->trials, "number of Monte Carlo trials");
  sub->add_option("--m", config->m_budget, "adversary wrap-query budget");
  sub->add_option("--delta", config->delta,
                  "key-set size for measure-and-access memories");
  sub->add_option("--seed", config->seed, "root seed for all randomness");
  sub->add_option("--s0", config->s0, "pin the first secret bit");
  sub->add_option("--s1", config->s1, "pin the second secret bit");
  sub->add_option("--format", config->format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", config->out_path,
                  "also write the report to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-time memories from BB84 states and a stateless token"};
  app.require_subcommand(1);

  qotm::cli::RunConfig config;

  CLI::App* protocol =
      app.add_subcommand("protocol", "run the honest protocol end to end");
  add_common_options(protocol, &config);

  CLI::App* attack =
      app.add_subcommand("attack", "run a named adversary against the token");
  attack
      ->add_option("name", config.attack_name, "attack identifier")
      ->required()
      ->check(CLI::IsMember({"breidbart", "naive-z", "adaptive-guess",
                             "honest", "rewind", "bounded-key"}));
  add_common_options(attack, &config);

  CLI::App* bounds =
      app.add_subcommand("bounds", "tabulate the analytic security bounds");
  bounds->add_option("--n-max", config.n_max, "largest key length to list");
  add_common_options(bounds, &config);

  CLI::App* verify_sdp = app.add_subcommand(
      "verify-sdp", "check the semidefinite witness certificate");
  add_common_options(verify_sdp, &config);

  CLI::App* uc = app.add_subcommand(
      "uc-distinguish", "real-vs-ideal distinguishing experiment");
  uc->add_option("name", config.attack_name,
                 "adversary driving the experiment")
      ->check(CLI::IsMember(
          {"breidbart", "naive-z", "adaptive-guess", "honest"}));
  add_common_options(uc, &config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : 2;
  }

  if (protocol->parsed()) {
    config.subcommand = "protocol";
  } else if (attack->parsed()) {
    config.subcommand = "attack";
  } else if (bounds->parsed()) {
    config.subcommand = "bounds";
  } else if (verify_sdp->parsed()) {
    config.subcommand = "verify-sdp";
  } else if (uc->parsed()) {
    config.subcommand = "uc-distinguish";
  }

  try {
    const qotm::cli::RunResult result = qotm::cli::run(config);
    if (result.exit_code == 2) {
      std::cerr << result.artifact;
    } else {
      std::cout << result.artifact;
    }
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
