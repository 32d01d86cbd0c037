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

#include <array>
#include <functional>
#include <json.hpp>
#include <optional>
#include <string>

#include "qotm/errors.hpp"
#include "qotm/token.hpp"

namespace qotm {

// The ideal one-time memory: hands out exactly one of the two secrets, then
// deletes itself.
class IdealOTM {
 public:
  IdealOTM(int s0, int s1);

  int execute(int b);
  bool consumed() const { return consumed_; }

 private:
  int s0_, s1_;
  bool consumed_ = false;
};

int ideal_execute(IdealOTM& otm, int b);

// Single-use handle on the quantum key |x>_theta. The secret key stays
// inside; a holder either measures every qubit in a product basis (O(n),
// exact for the product states this protocol prepares) or takes the full
// statevector. Either path consumes the key.
class QuantumKey {
 public:
  explicit QuantumKey(BB84Key key) : key_(std::move(key)) {}

  int n() const { return key_.n(); }
  bool consumed() const { return consumed_; }

  BitString measure_rotated(const std::vector<double>& angle_per_qubit,
                            RandomStream& rng);
  BitString measure_all(double angle, RandomStream& rng);
  Statevector take_statevector();

 private:
  void consume();

  BB84Key key_;
  bool consumed_ = false;
};

// What the sender hands over: the quantum key and the wrapped token. The
// secret key is retained for the experiment harness only.
struct SenderOutput {
  QuantumKey quantum_key;
  WrapInstance wrap;
  BB84Key secret_key;
};

SenderOutput sender_create(int s0, int s1, int n, RandomStream& rng,
                           int query_budget = WrapInstance::kDefaultBudget);

// Measures in the basis matching b and runs the token once; returns s_b.
int honest_receiver_execute(int b, SenderOutput& out, RandomStream& rng);

// The ideal-world translator: answers wrap queries from a dummy program with
// zeroed secrets, fetching the real secret from the ideal OTM on the first
// accepting query. A later accepting query with the other b is the Case-2
// failure: flagged, answered with the dummy bit 0.
class SimulatorState {
 public:
  SimulatorState(int n, IdealOTM& ideal, RandomStream& rng);

  QueryOutcome answer(const BitString& y, int b);

  const TokenProgram& dummy_program() const { return dummy_; }
  bool case2_flagged() const { return case2_; }
  int ideal_queries() const { return ideal_queries_; }

 private:
  static constexpr int kCase2Fallback = 0;

  TokenProgram dummy_;
  std::optional<std::pair<int, int>> first_accept_;  // (b, s_b)
  IdealOTM* ideal_;
  bool case2_ = false;
  int ideal_queries_ = 0;
};

QueryOutcome simulator_answer(SimulatorState& sim, const BitString& y, int b);

// Narrow classical-query interface handed to adversaries: bitstring in,
// bit/reject out, nothing else. Enforces the query budget in both worlds.
class WrapAccess {
 public:
  virtual ~WrapAccess() = default;
  virtual QueryOutcome query(const BitString& y, int b) = 0;
  virtual int queries_remaining() const = 0;
};

class RealWrapAccess final : public WrapAccess {
 public:
  explicit RealWrapAccess(WrapInstance& wrap) : wrap_(&wrap) {}
  QueryOutcome query(const BitString& y, int b) override;
  int queries_remaining() const override;

 private:
  WrapInstance* wrap_;
};

class SimulatorWrapAccess final : public WrapAccess {
 public:
  SimulatorWrapAccess(SimulatorState& sim, int budget)
      : sim_(&sim), budget_(budget) {}
  QueryOutcome query(const BitString& y, int b) override;
  int queries_remaining() const override { return budget_ - used_; }

 private:
  SimulatorState* sim_;
  int budget_;
  int used_ = 0;
};

// An adversary: consumes one quantum key and classical wrap access, reports
// guesses for the two secrets plus bookkeeping.
struct AttackResult {
  std::array<std::optional<int>, 2> extracted;
  int queries_made = 0;
  bool both_accepted = false;
};

struct AttackStrategy {
  std::string name;
  std::function<AttackResult(QuantumKey&, WrapAccess&, RandomStream&)> run;
};

struct ExperimentReport {
  uint64_t seed = 0;
  int n = 0;
  int m = 0;
  uint64_t trials = 0;
  std::string adversary;
  double case2_frequency = 0.0;
  double empirical_advantage = 0.0;
  double analytic_bound = 0.0;
  bool verdict = false;
  // Details kept out of the fixed CSV row.
  double real_frequency = 0.0;
  double ideal_frequency = 0.0;
  double sigma = 0.0;

  nlohmann::ordered_json to_json() const;
  static std::string csv_header();
  std::string csv_row() const;
};

// Runs the adversary `trials` times against the real protocol and `trials`
// times against simulator+ideal. The environment's distinguisher outputs 1
// iff both secret guesses are correct; secrets are uniform per trial unless
// pinned. empirical_advantage is the absolute difference of the two
// distinguisher frequencies; the verdict allows 3 sigma of statistical slack
// over the analytic interactive bound.
ExperimentReport distinguishing_experiment(const AttackStrategy& adversary,
                                           std::optional<int> s0,
                                           std::optional<int> s1, int n,
                                           int m_budget, uint64_t trials,
                                           RandomStream& rng);

// Deterministic double formatting shared by the report writers.
std::string format_double(double v);

}  // namespace qotm
