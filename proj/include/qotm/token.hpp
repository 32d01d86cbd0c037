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

#include <json.hpp>
#include <utility>
#include <vector>

#include "qotm/errors.hpp"
#include "qotm/quantum.hpp"

namespace qotm {

// Hardcoded values of the stateless token: two secret bits plus the check
// strings (x, theta).
struct TokenProgram {
  TokenProgram() = default;
  TokenProgram(int s0_, int s1_, BitString x_, BasisString theta_);

  int s0 = 0;
  int s1 = 0;
  BitString x;
  BasisString theta;

  int n() const { return x.size(); }
};

// Token reply: either the requested secret bit or a reject.
struct QueryOutcome {
  bool accepted = false;
  int value = 0;  // s_b when accepted; meaningless otherwise

  friend bool operator==(const QueryOutcome& a, const QueryOutcome& b) {
    return a.accepted == b.accepted && (!a.accepted || a.value == b.value);
  }
};

// Pure function of (program, y, b): b=0 accepts iff y agrees with x on every
// rectilinear position, b=1 dually on diagonal positions. A length mismatch
// is an error, not a reject.
QueryOutcome verify_query(const TokenProgram& program, const BitString& y,
                          int b);

struct WrapLogEntry {
  BitString y;
  int b = 0;
  QueryOutcome outcome;
};

// The wrapped token: delegates every run to verify_query, counts queries
// against a fixed budget, and logs (y, b, output) triples. Statelessness
// means every logged verdict is reproducible from the program alone.
class WrapInstance {
 public:
  static constexpr int kDefaultBudget = 1000;

  explicit WrapInstance(TokenProgram program, int query_budget = kDefaultBudget);

  QueryOutcome run(const BitString& y, int b);

  int query_budget() const { return budget_; }
  int queries_used() const { return used_; }
  const std::vector<WrapLogEntry>& log() const { return log_; }
  // Held by the experiment harness only, never shown to adversaries.
  const TokenProgram& program() const { return program_; }

  // Replays the log through verify_query and reports whether every verdict
  // reproduces.
  bool replay_matches() const;

 private:
  TokenProgram program_;
  int budget_;
  int used_ = 0;
  std::vector<WrapLogEntry> log_;
};

QueryOutcome wrap_run(WrapInstance& wrap, const BitString& y, int b);

// Measure-and-access memory: a total map f from query strings to
// {0, 1, reject} whose non-reject values are the secrets on the disjoint key
// sets K0, K1, plus honest unitaries preparing uniform superpositions over
// each key set. Registers: ancilla (qubit 0), query (qubits 1..n), answer
// (two least significant qubits: reject flag, then value bit).
struct MAMemorySpec {
  static constexpr int kReject = 2;

  int n = 0;
  std::vector<int> f;  // size 2^n, values in {0, 1, kReject}
  std::vector<uint64_t> k0, k1;
  int delta = 0;
  int s0 = 0;
  int s1 = 0;
  // Householder vectors on the ancilla+query factor; empty means identity.
  // honest_unitary(i) = (I - 2 h_i h_i^T) tensor I_answer.
  Eigen::VectorXd h0, h1;

  int total_qubits() const { return n + 3; }
  int f_of(uint64_t y) const { return f[static_cast<size_t>(y)]; }

  Eigen::MatrixXcd honest_unitary_ab(int i) const;
  // Full-space unitary on ancilla x query x answer.
  Eigen::MatrixXcd honest_unitary(int i) const;

  // Checks every structural invariant, including exact honest correctness.
  void validate() const;
};

// Two answer bits encode the three-valued output: (flag, value) with
// valid v -> (0, v) and reject -> (1, 0).
uint64_t answer_encoding(int f_value);

// O_f on query x answer registers: |y>|c> -> |y>|c xor enc(f(y))>.
Eigen::MatrixXcd oracle_unitary(int n, const std::vector<int>& f_table);
Eigen::MatrixXcd oracle_unitary(const MAMemorySpec& spec);

// Applies the honest unitary (self-adjoint) or the oracle to a full-space
// state without materializing matrices.
Statevector apply_honest_unitary(const MAMemorySpec& spec, int i,
                                 const Statevector& state);
Statevector apply_oracle(const MAMemorySpec& spec, const Statevector& state);

// Builds a random toy memory: disjoint key sets of size delta, secrets drawn
// from rng unless pinned by the trailing arguments, and exact honest
// unitaries. Returns the spec and the initial all-zeros state.
std::pair<MAMemorySpec, Statevector> make_toy_ma_memory(int n, int delta,
                                                        RandomStream& rng,
                                                        int s0 = -1,
                                                        int s1 = -1);

nlohmann::ordered_json token_program_to_json(const TokenProgram& program);
TokenProgram token_program_from_json(const nlohmann::json& j);
nlohmann::ordered_json ma_memory_to_json(const MAMemorySpec& spec);
MAMemorySpec ma_memory_from_json(const nlohmann::json& j);

}  // namespace qotm
