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

#include <string>
#include <utility>

#include "qotm/protocol.hpp"

namespace qotm {

// --- Classical-query attacks on the wrapped token ---
// Each consumes the single quantum key and classical wrap access only; the
// narrowed WrapAccess interface makes superposition queries unrepresentable.

// Measures every qubit at the intermediate angle pi/8 and submits the one
// outcome string for both b values. Optimal: both accepted with probability
// alpha^n.
AttackResult breidbart_attack(QuantumKey& key, WrapAccess& wrap,
                              RandomStream& rng);

// Baseline: measures computationally and submits the outcome for both b
// values. Both accepted with probability (3/4)^n.
AttackResult naive_z_attack(QuantumKey& key, WrapAccess& wrap,
                            RandomStream& rng);

// Measures computationally, secures s0 with the outcome, then spends up to
// m - 1 further queries on b = 1 guesses drawn uniformly without replacement.
AttackResult adaptive_guess_attack(QuantumKey& key, WrapAccess& wrap, int m,
                                   RandomStream& rng);

// The honest receiver recast as an adversary: picks one b uniformly, runs
// the protocol, learns exactly one secret.
AttackResult honest_attack(QuantumKey& key, WrapAccess& wrap,
                           RandomStream& rng);

// Registry keyed by the stable CLI identifiers breidbart, naive-z,
// adaptive-guess, honest. Throws std::invalid_argument for other names
// (rewind and bounded-key target a different memory model and are driven
// separately).
AttackStrategy make_attack(const std::string& name, int m);

// Exact both-accept probability of the Breidbart attack: sums outcome
// probabilities over all 2^n strings against all 4^n keys. n <= 6.
double exact_breidbart_both_accept(int n);

// --- Superposition-query rewinding attack on a measure-and-access memory ---

struct RewindTrace {
  int s0_bit = 0;
  int s1_bit = 0;
  // Overlap of the rewound state with (initial state) x |s0> on the copy
  // register; exactly 1 in the exact-correctness model.
  double rewind_fidelity = 0.0;
  // Probability mass on the reported bits; exactly 1 here.
  double s0_certainty = 0.0;
  double s1_certainty = 0.0;
};

// Runs U0 + oracle, copies the answer bit into a fresh register by CNOT,
// rewinds with the inverses, then runs U1 + oracle and reads the second bit.
// Pure unitary simulation; no sampling is needed because both bits carry
// certainty 1.
RewindTrace rewinding_attack_traced(const MAMemorySpec& spec,
                                    const Statevector& initial);

std::pair<int, int> rewinding_attack(const MAMemorySpec& spec,
                                     const Statevector& initial);

// --- Classical-oracle bounded-key attack on a measure-and-access memory ---

class ClassicalOracle {
 public:
  virtual ~ClassicalOracle() = default;
  // Returns f(y): 0, 1, or MAMemorySpec::kReject.
  virtual int query(uint64_t y) = 0;
  virtual int queries_made() const = 0;
};

class CountingOracle final : public ClassicalOracle {
 public:
  explicit CountingOracle(const MAMemorySpec& spec) : spec_(&spec) {}

  int query(uint64_t y) override {
    ++count_;
    return spec_->f_of(y);
  }
  int queries_made() const override { return count_; }

 private:
  const MAMemorySpec* spec_;
  int count_ = 0;
};

// Applies U0 and measures the query register for y0, asks the classical
// oracle for f(y0), rewinds the collapsed state with U0^dagger, applies U1,
// measures again for y1 and asks for f(y1). Succeeds on both secrets with
// probability at least 1/delta^2.
AttackResult bounded_key_attack(const MAMemorySpec& spec,
                                const Statevector& initial,
                                ClassicalOracle& oracle, RandomStream& rng);

}  // namespace qotm
