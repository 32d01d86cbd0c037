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

#include "qotm/cli.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qotm/adversaries.hpp"
#include "qotm/bounds.hpp"

namespace qotm::cli {

namespace {

using nlohmann::ordered_json;

std::string finish_json(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string finish_csv(const std::string& header,
                       const std::vector<std::string>& rows) {
  std::ostringstream os;
  os << header << '\n';
  for (const std::string& row : rows) {
    os << row << '\n';
  }
  return os.str();
}

ordered_json optional_bit_json(const std::optional<int>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

void validate_common(const RunConfig& c) {
  if (c.n < 1 || c.n > kMaxStatevectorQubits) {
    throw std::invalid_argument("n must lie in [1, 20]");
  }
  if (c.trials < 1) {
    throw std::invalid_argument("trials must be positive");
  }
  if (c.m_budget < 1) {
    throw std::invalid_argument("m must be positive");
  }
  if (c.delta < 1) {
    throw std::invalid_argument("delta must be positive");
  }
  if (c.format != "json" && c.format != "csv") {
    throw std::invalid_argument("format must be json or csv");
  }
  for (const std::optional<int>& s : {c.s0, c.s1}) {
    if (s && *s != 0 && *s != 1) {
      throw std::invalid_argument("secrets must be bits");
    }
  }
}

RunResult run_protocol(const RunConfig& c) {
  RandomStream rng(c.seed);
  uint64_t successes = 0;
  for (uint64_t t = 0; t < c.trials; ++t) {
    RandomStream trial = rng.child(t);
    RandomStream secrets = trial.child(0);
    const int a0 = c.s0 ? *c.s0 : secrets.bit();
    const int a1 = c.s1 ? *c.s1 : secrets.bit();
    RandomStream sender_rng = trial.child(1);
    SenderOutput out = sender_create(a0, a1, c.n, sender_rng);
    RandomStream receiver_rng = trial.child(2);
    const int b = receiver_rng.bit();
    const int value = honest_receiver_execute(b, out, receiver_rng);
    if (value == (b == 0 ? a0 : a1)) {
      ++successes;
    }
  }
  const double frequency =
      static_cast<double>(successes) / static_cast<double>(c.trials);
  const bool pass = successes == c.trials;

  RunResult result;
  result.exit_code = pass ? 0 : 1;
  if (c.format == "json") {
    ordered_json j;
    j["subcommand"] = "protocol";
    j["seed"] = c.seed;
    j["n"] = c.n;
    j["trials"] = c.trials;
    j["s0"] = optional_bit_json(c.s0);
    j["s1"] = optional_bit_json(c.s1);
    j["successes"] = successes;
    j["success_frequency"] = frequency;
    j["verdict"] = pass ? "pass" : "fail";
    result.artifact = finish_json(j);
  } else {
    std::ostringstream row;
    row << c.seed << ',' << c.n << ',' << c.trials << ',' << successes << ','
        << format_double(frequency) << ',' << (pass ? "pass" : "fail");
    result.artifact = finish_csv(
        "seed,n,trials,successes,success_frequency,verdict", {row.str()});
  }
  return result;
}

RunResult run_wrap_attack(const RunConfig& c) {
  const std::string& name = c.attack_name;
  if ((name == "breidbart" || name == "naive-z") && c.m_budget < 2) {
    throw std::invalid_argument(name + " needs a query budget m >= 2");
  }
  const AttackStrategy strategy = make_attack(name, c.m_budget);

  RandomStream rng(c.seed);
  uint64_t both = 0;
  for (uint64_t t = 0; t < c.trials; ++t) {
    RandomStream trial = rng.child(t);
    RandomStream secrets = trial.child(0);
    const int a0 = c.s0 ? *c.s0 : secrets.bit();
    const int a1 = c.s1 ? *c.s1 : secrets.bit();
    RandomStream sender_rng = trial.child(1);
    SenderOutput out = sender_create(a0, a1, c.n, sender_rng, c.m_budget);
    RealWrapAccess access(out.wrap);
    RandomStream adversary_rng = trial.child(2);
    const AttackResult res = strategy.run(out.quantum_key, access,
                                          adversary_rng);
    if (res.both_accepted) {
      ++both;
    }
  }
  const double trials = static_cast<double>(c.trials);
  const double frequency = static_cast<double>(both) / trials;

  // Attacks with a closed-form both-accept probability are checked
  // two-sided; the adaptive attack is checked against the interactive upper
  // bound only.
  std::optional<double> analytic_value;
  double analytic_bound;
  double sigma;
  bool pass;
  if (name == "breidbart") {
    analytic_value = noninteractive_bound(c.n);
  } else if (name == "naive-z") {
    analytic_value = std::pow(0.75, c.n);
  } else if (name == "honest") {
    analytic_value = 0.0;
  }
  if (analytic_value) {
    analytic_bound = noninteractive_bound(c.n);
    sigma = std::sqrt(*analytic_value * (1.0 - *analytic_value) / trials);
    pass = std::abs(frequency - *analytic_value) <= 3.0 * sigma;
  } else {
    analytic_bound = interactive_bound(c.n, c.m_budget);
    sigma = std::sqrt(frequency * (1.0 - frequency) / trials);
    pass = frequency <= analytic_bound + 3.0 * sigma;
  }

  RunResult result;
  result.exit_code = pass ? 0 : 1;
  if (c.format == "json") {
    ordered_json j;
    j["subcommand"] = "attack";
    j["adversary"] = name;
    j["seed"] = c.seed;
    j["n"] = c.n;
    j["m"] = c.m_budget;
    j["trials"] = c.trials;
    j["empirical_frequency"] = frequency;
    j["analytic_value"] = analytic_value ? ordered_json(*analytic_value)
                                         : ordered_json(nullptr);
    j["analytic_bound"] = analytic_bound;
    j["sigma"] = sigma;
    j["verdict"] = pass ? "pass" : "fail";
    result.artifact = finish_json(j);
  } else {
    std::ostringstream row;
    row << c.seed << ',' << c.n << ',' << c.m_budget << ',' << c.trials << ','
        << name << ',' << format_double(frequency) << ','
        << format_double(analytic_bound) << ',' << (pass ? "pass" : "fail");
    result.artifact = finish_csv(
        "seed,n,m,trials,adversary,empirical_frequency,analytic_bound,"
        "verdict",
        {row.str()});
  }
  return result;
}

RunResult run_rewind_attack(const RunConfig& c) {
  if (c.n + 4 > kMaxStatevectorQubits) {
    throw std::invalid_argument("rewind needs n + 4 register qubits: n <= 16");
  }
  if (2 * static_cast<uint64_t>(c.delta) > (uint64_t{1} << c.n)) {
    throw std::invalid_argument("rewind needs 2*delta <= 2^n");
  }
  RandomStream rng(c.seed);
  uint64_t cases = 0;
  uint64_t exact = 0;
  double min_fidelity = 1.0;
  for (uint64_t t = 0; t < c.trials; ++t) {
    for (int combo = 0; combo < 4; ++combo) {
      const int a0 = combo >> 1;
      const int a1 = combo & 1;
      RandomStream spec_rng = rng.child(4 * t + static_cast<uint64_t>(combo));
      auto [spec, initial] = make_toy_ma_memory(c.n, c.delta, spec_rng, a0, a1);
      const RewindTrace trace = rewinding_attack_traced(spec, initial);
      ++cases;
      min_fidelity = std::min(min_fidelity, trace.rewind_fidelity);
      if (trace.s0_bit == a0 && trace.s1_bit == a1 &&
          std::abs(trace.rewind_fidelity - 1.0) <= kSpectralTol &&
          std::abs(trace.s0_certainty - 1.0) <= kSpectralTol &&
          std::abs(trace.s1_certainty - 1.0) <= kSpectralTol) {
        ++exact;
      }
    }
  }
  const bool pass = exact == cases;

  RunResult result;
  result.exit_code = pass ? 0 : 1;
  if (c.format == "json") {
    ordered_json j;
    j["subcommand"] = "attack";
    j["adversary"] = "rewind";
    j["seed"] = c.seed;
    j["n"] = c.n;
    j["delta"] = c.delta;
    j["trials"] = c.trials;
    j["cases_checked"] = cases;
    j["exact_recoveries"] = exact;
    j["min_fidelity"] = min_fidelity;
    j["verdict"] = pass ? "pass" : "fail";
    result.artifact = finish_json(j);
  } else {
    std::ostringstream row;
    row << c.seed << ',' << c.n << ',' << c.delta << ',' << c.trials << ','
        << "rewind" << ',' << cases << ',' << exact << ','
        << format_double(min_fidelity) << ',' << (pass ? "pass" : "fail");
    result.artifact = finish_csv(
        "seed,n,delta,trials,adversary,cases_checked,exact_recoveries,"
        "min_fidelity,verdict",
        {row.str()});
  }
  return result;
}

RunResult run_bounded_key_attack(const RunConfig& c) {
  if (c.n + 3 > kMaxStatevectorQubits) {
    throw std::invalid_argument("bounded-key needs n <= 17");
  }
  if (2 * static_cast<uint64_t>(c.delta) > (uint64_t{1} << c.n)) {
    throw std::invalid_argument("bounded-key needs 2*delta <= 2^n");
  }
  RandomStream rng(c.seed);
  uint64_t successes = 0;
  for (uint64_t t = 0; t < c.trials; ++t) {
    RandomStream trial = rng.child(t);
    RandomStream spec_rng = trial.child(0);
    auto [spec, initial] = make_toy_ma_memory(c.n, c.delta, spec_rng);
    CountingOracle oracle(spec);
    RandomStream measure_rng = trial.child(1);
    const AttackResult res =
        bounded_key_attack(spec, initial, oracle, measure_rng);
    if (res.extracted[0] && *res.extracted[0] == spec.s0 &&
        res.extracted[1] && *res.extracted[1] == spec.s1) {
      ++successes;
    }
  }
  const double frequency =
      static_cast<double>(successes) / static_cast<double>(c.trials);
  const double lower_bound =
      1.0 / (static_cast<double>(c.delta) * static_cast<double>(c.delta));
  const bool pass = frequency >= lower_bound;

  RunResult result;
  result.exit_code = pass ? 0 : 1;
  if (c.format == "json") {
    ordered_json j;
    j["subcommand"] = "attack";
    j["adversary"] = "bounded-key";
    j["seed"] = c.seed;
    j["n"] = c.n;
    j["delta"] = c.delta;
    j["trials"] = c.trials;
    j["empirical_frequency"] = frequency;
    j["analytic_lower_bound"] = lower_bound;
    j["verdict"] = pass ? "pass" : "fail";
    result.artifact = finish_json(j);
  } else {
    std::ostringstream row;
    row << c.seed << ',' << c.n << ',' << c.delta << ',' << c.trials << ','
        << "bounded-key" << ',' << format_double(frequency) << ','
        << format_double(lower_bound) << ',' << (pass ? "pass" : "fail");
    result.artifact = finish_csv(
        "seed,n,delta,trials,adversary,empirical_frequency,"
        "analytic_lower_bound,verdict",
        {row.str()});
  }
  return result;
}

RunResult run_attack(const RunConfig& c) {
  if (c.attack_name == "rewind") {
    return run_rewind_attack(c);
  }
  if (c.attack_name == "bounded-key") {
    return run_bounded_key_attack(c);
  }
  return run_wrap_attack(c);
}

RunResult run_bounds(const RunConfig& c) {
  if (c.n_max < 1) {
    throw std::invalid_argument("n-max must be positive");
  }
  RunResult result;
  if (c.format == "json") {
    ordered_json rows = ordered_json::array();
    for (int n = 1; n <= c.n_max; ++n) {
      rows.push_back({{"n", n},
                      {"noninteractive_bound", noninteractive_bound(n)},
                      {"interactive_bound", interactive_bound(n, c.m_budget)}});
    }
    ordered_json j;
    j["subcommand"] = "bounds";
    j["m"] = c.m_budget;
    j["n_max"] = c.n_max;
    j["rows"] = rows;
    result.artifact = finish_json(j);
  } else {
    std::vector<std::string> rows;
    for (int n = 1; n <= c.n_max; ++n) {
      std::ostringstream row;
      row << n << ',' << c.m_budget << ','
          << format_double(noninteractive_bound(n)) << ','
          << format_double(interactive_bound(n, c.m_budget));
      rows.push_back(row.str());
    }
    result.artifact =
        finish_csv("n,m,noninteractive_bound,interactive_bound", rows);
  }
  return result;
}

RunResult run_verify_sdp(const RunConfig& c) {
  RunResult result;
  try {
    const SdpWitnessPair pair = verify_witness_pair();
    std::vector<TensorWitnessReport> tensor;
    for (int n = 1; n <= 4; ++n) {
      tensor.push_back(verify_tensor_witnesses(n));
    }
    if (c.format == "json") {
      ordered_json constraints = ordered_json::array();
      for (const SdpConstraint& con : pair.constraints) {
        constraints.push_back({{"name", con.name}, {"slack", con.slack}});
      }
      ordered_json tensor_rows = ordered_json::array();
      for (const TensorWitnessReport& r : tensor) {
        tensor_rows.push_back(
            {{"n", r.n},
             {"primal_value", r.primal_value},
             {"dual_value", r.dual_value},
             {"min_dual_slack", r.min_dual_slack},
             {"partial_trace_residual", r.partial_trace_residual},
             {"dense_cross_checked", r.dense_cross_checked}});
      }
      ordered_json j;
      j["subcommand"] = "verify-sdp";
      j["value"] = pair.value;
      j["duality_gap"] = pair.duality_gap;
      j["constraints"] = constraints;
      j["tensor"] = tensor_rows;
      j["verdict"] = "pass";
      result.artifact = finish_json(j);
    } else {
      std::vector<std::string> rows;
      for (const SdpConstraint& con : pair.constraints) {
        rows.push_back(con.name + "," + format_double(con.slack));
      }
      rows.push_back("duality_gap," + format_double(pair.duality_gap));
      rows.push_back("value," + format_double(pair.value));
      result.artifact = finish_csv("name,slack", rows);
    }
    result.exit_code = 0;
  } catch (const VerificationError& e) {
    ordered_json j;
    j["subcommand"] = "verify-sdp";
    j["verdict"] = "fail";
    j["error"] = e.what();
    result.artifact = finish_json(j);
    result.exit_code = 1;
  }
  return result;
}

RunResult run_uc_distinguish(const RunConfig& c) {
  const std::string name =
      c.attack_name.empty() ? std::string("breidbart") : c.attack_name;
  if ((name == "breidbart" || name == "naive-z") && c.m_budget < 2) {
    throw std::invalid_argument(name + " needs a query budget m >= 2");
  }
  const AttackStrategy strategy = make_attack(name, c.m_budget);
  RandomStream rng(c.seed);
  ExperimentReport report = distinguishing_experiment(
      strategy, c.s0, c.s1, c.n, c.m_budget, c.trials, rng);
  report.seed = c.seed;

  RunResult result;
  result.exit_code = report.verdict ? 0 : 1;
  if (c.format == "json") {
    ordered_json j;
    j["subcommand"] = "uc-distinguish";
    const ordered_json fields = report.to_json();
    for (const auto& [key, value] : fields.items()) {
      j[key] = value;
    }
    result.artifact = finish_json(j);
  } else {
    result.artifact =
        finish_csv(ExperimentReport::csv_header(), {report.csv_row()});
  }
  return result;
}

void write_artifact(const RunConfig& c, const std::string& artifact) {
  if (c.out_path.empty()) {
    return;
  }
  std::ofstream out(c.out_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output path: " + c.out_path);
  }
  out << artifact;
  if (!out) {
    throw std::runtime_error("failed writing output path: " + c.out_path);
  }
}

}  // namespace

RunResult run(const RunConfig& config) {
  RunResult result;
  try {
    validate_common(config);
    if (config.subcommand == "protocol") {
      result = run_protocol(config);
    } else if (config.subcommand == "attack") {
      result = run_attack(config);
    } else if (config.subcommand == "bounds") {
      result = run_bounds(config);
    } else if (config.subcommand == "verify-sdp") {
      result = run_verify_sdp(config);
    } else if (config.subcommand == "uc-distinguish") {
      result = run_uc_distinguish(config);
    } else {
      throw std::invalid_argument("unknown subcommand: " + config.subcommand);
    }
  } catch (const std::invalid_argument& e) {
    result.exit_code = 2;
    result.artifact = std::string("usage error: ") + e.what() + "\n";
    return result;
  }
  write_artifact(config, result.artifact);
  return result;
}

}  // namespace qotm::cli
