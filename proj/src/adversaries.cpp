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

#include "qotm/adversaries.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

#include "qotm/errors.hpp"

namespace qotm {

namespace {

constexpr double kPi = std::numbers::pi;

// Submits one measured string for both b values.
AttackResult measure_and_submit_both(QuantumKey& key, WrapAccess& wrap,
                                     RandomStream& rng, double angle) {
  AttackResult result;
  const BitString y = key.measure_all(angle, rng);
  const QueryOutcome o0 = wrap.query(y, 0);
  ++result.queries_made;
  if (o0.accepted) {
    result.extracted[0] = o0.value;
  }
  const QueryOutcome o1 = wrap.query(y, 1);
  ++result.queries_made;
  if (o1.accepted) {
    result.extracted[1] = o1.value;
  }
  result.both_accepted = o0.accepted && o1.accepted;
  return result;
}

}  // namespace

AttackResult breidbart_attack(QuantumKey& key, WrapAccess& wrap,
                              RandomStream& rng) {
  return measure_and_submit_both(key, wrap, rng, kPi / 8.0);
}

AttackResult naive_z_attack(QuantumKey& key, WrapAccess& wrap,
                            RandomStream& rng) {
  return measure_and_submit_both(key, wrap, rng, 0.0);
}

AttackResult adaptive_guess_attack(QuantumKey& key, WrapAccess& wrap, int m,
                                   RandomStream& rng) {
  if (m < 1) {
    throw std::invalid_argument("adaptive_guess_attack: m must be >= 1");
  }
  AttackResult result;
  const int n = key.n();
  const BitString y = key.measure_all(0.0, rng);
  if (wrap.queries_remaining() < 1) {
    return result;  // budget already gone: truncated, nothing learned
  }
  const QueryOutcome o0 = wrap.query(y, 0);
  ++result.queries_made;
  if (o0.accepted) {
    result.extracted[0] = o0.value;
  }

  // Remaining queries: b = 1 guesses, uniform without replacement.
  const uint64_t space = uint64_t{1} << n;
  std::unordered_set<uint64_t> tried;
  while (result.queries_made < m && wrap.queries_remaining() > 0 &&
         !result.extracted[1] && tried.size() < space) {
    uint64_t guess = rng.below(space);
    while (tried.count(guess) != 0) {
      guess = rng.below(space);
    }
    tried.insert(guess);
    const QueryOutcome o1 = wrap.query(BitString(n, guess), 1);
    ++result.queries_made;
    if (o1.accepted) {
      result.extracted[1] = o1.value;
      result.both_accepted = o0.accepted;
    }
  }
  return result;
}

AttackResult honest_attack(QuantumKey& key, WrapAccess& wrap,
                           RandomStream& rng) {
  AttackResult result;
  const int b = rng.bit();
  const BitString y = key.measure_all(b == 0 ? 0.0 : kPi / 4.0, rng);
  const QueryOutcome outcome = wrap.query(y, b);
  ++result.queries_made;
  if (outcome.accepted) {
    result.extracted[static_cast<size_t>(b)] = outcome.value;
  }
  return result;
}

AttackStrategy make_attack(const std::string& name, int m) {
  if (name == "breidbart") {
    return {name, [](QuantumKey& k, WrapAccess& w, RandomStream& r) {
              return breidbart_attack(k, w, r);
            }};
  }
  if (name == "naive-z") {
    return {name, [](QuantumKey& k, WrapAccess& w, RandomStream& r) {
              return naive_z_attack(k, w, r);
            }};
  }
  if (name == "adaptive-guess") {
    return {name, [m](QuantumKey& k, WrapAccess& w, RandomStream& r) {
              return adaptive_guess_attack(k, w, m, r);
            }};
  }
  if (name == "honest") {
    return {name, [](QuantumKey& k, WrapAccess& w, RandomStream& r) {
              return honest_attack(k, w, r);
            }};
  }
  throw std::invalid_argument("unknown attack: " + name);
}

double exact_breidbart_both_accept(int n) {
  if (n < 1 || n > 6) {
    throw std::invalid_argument(
        "exact enumeration supported for 1 <= n <= 6");
  }
  // Per-qubit outcome probabilities at pi/8, from the actual amplitudes.
  const double c = std::cos(kPi / 8.0);
  const double s = std::sin(kPi / 8.0);
  double p[2][2][2];  // [x][theta][outcome]
  for (int x = 0; x < 2; ++x) {
    for (int t = 0; t < 2; ++t) {
      const Statevector psi = prepare_bb84(
          {BitString(1, static_cast<uint64_t>(x)),
           BasisString(1, static_cast<uint64_t>(t))});
      const cplx a0 = c * psi.amp(0) + s * psi.amp(1);
      const cplx a1 = -s * psi.amp(0) + c * psi.amp(1);
      p[x][t][0] = std::norm(a0);
      p[x][t][1] = std::norm(a1);
    }
  }

  const uint64_t keys = uint64_t{1} << (2 * n);
  const uint64_t strings = uint64_t{1} << n;
  double total = 0.0;
  for (uint64_t k = 0; k < keys; ++k) {
    // Two bits per position, most significant first: (x_i, theta_i).
    BitString x = BitString::zeros(n);
    uint64_t diag = 0;
    for (int i = 0; i < n; ++i) {
      const auto pair = static_cast<int>((k >> (2 * (n - 1 - i))) & 3u);
      x.set_bit(i, pair >> 1);
      diag = (diag << 1) | static_cast<uint64_t>(pair & 1);
    }
    const TokenProgram program(0, 0, x, BasisString(n, diag));
    for (uint64_t ybits = 0; ybits < strings; ++ybits) {
      const BitString y(n, ybits);
      if (!verify_query(program, y, 0).accepted ||
          !verify_query(program, y, 1).accepted) {
        continue;
      }
      double prob = 1.0;
      for (int i = 0; i < n; ++i) {
        const int t = static_cast<int>((diag >> (n - 1 - i)) & 1u);
        prob *= p[x.bit(i)][t][y.bit(i)];
      }
      total += prob;
    }
  }
  return total / static_cast<double>(keys);
}

namespace {

// The rewinding attack extends the memory registers with one copy qubit D
// as the least significant bit: index = a*2^(n+3) + y*8 + c*2 + d.

void apply_honest_with_copy(const Eigen::VectorXd& h, Eigen::VectorXcd& v) {
  if (h.size() == 0) {
    return;
  }
  Eigen::Map<Eigen::MatrixXcd> m(v.data(), 8, h.size());
  const Eigen::VectorXcd mh = m * h.cast<cplx>();
  m.noalias() -= 2.0 * mh * h.transpose().cast<cplx>();
}

void apply_oracle_with_copy(const MAMemorySpec& spec, Eigen::VectorXcd& v) {
  Eigen::VectorXcd out(v.size());
  const uint64_t ymask = (uint64_t{1} << spec.n) - 1;
  for (Eigen::Index idx = 0; idx < v.size(); ++idx) {
    const auto u = static_cast<uint64_t>(idx);
    const uint64_t y = (u >> 3) & ymask;
    const uint64_t target = u ^ (answer_encoding(spec.f_of(y)) << 1);
    out(static_cast<Eigen::Index>(target)) = v(idx);
  }
  v = std::move(out);
}

// CNOT from the answer value bit (bit 1) onto the copy qubit (bit 0).
void copy_value_bit(Eigen::VectorXcd& v) {
  Eigen::VectorXcd out(v.size());
  for (Eigen::Index idx = 0; idx < v.size(); ++idx) {
    const auto u = static_cast<uint64_t>(idx);
    out(static_cast<Eigen::Index>(u ^ ((u >> 1) & 1u))) = v(idx);
  }
  v = std::move(out);
}

double mass_of_bit(const Eigen::VectorXcd& v, int bit) {
  double mass = 0.0;
  for (Eigen::Index idx = 0; idx < v.size(); ++idx) {
    if ((static_cast<uint64_t>(idx) >> bit) & 1u) {
      mass += std::norm(v(idx));
    }
  }
  return mass;
}

}  // namespace

RewindTrace rewinding_attack_traced(const MAMemorySpec& spec,
                                    const Statevector& initial) {
  if (initial.num_qubits() != spec.total_qubits()) {
    throw std::invalid_argument("rewinding_attack: register mismatch");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(initial.dim() * 2);
  for (Eigen::Index i = 0; i < initial.dim(); ++i) {
    v(2 * i) = initial.amp(static_cast<uint64_t>(i));
  }

  RewindTrace trace;

  // First honest run, copy the answer bit out, then rewind. The Householder
  // unitaries and the XOR oracle are their own inverses.
  apply_honest_with_copy(spec.h0, v);
  apply_oracle_with_copy(spec, v);
  copy_value_bit(v);
  apply_oracle_with_copy(spec, v);
  apply_honest_with_copy(spec.h0, v);

  const double p_copy1 = mass_of_bit(v, 0);
  trace.s0_bit = p_copy1 > 0.5 ? 1 : 0;
  trace.s0_certainty = trace.s0_bit == 1 ? p_copy1 : 1.0 - p_copy1;

  cplx overlap = 0.0;
  for (Eigen::Index i = 0; i < initial.dim(); ++i) {
    overlap += std::conj(initial.amp(static_cast<uint64_t>(i))) *
               v(2 * i + trace.s0_bit);
  }
  trace.rewind_fidelity = std::abs(overlap);

  // Second honest run on the rewound state; read the answer value bit.
  apply_honest_with_copy(spec.h1, v);
  apply_oracle_with_copy(spec, v);
  const double p_value1 = mass_of_bit(v, 1);
  trace.s1_bit = p_value1 > 0.5 ? 1 : 0;
  trace.s1_certainty = trace.s1_bit == 1 ? p_value1 : 1.0 - p_value1;
  return trace;
}

std::pair<int, int> rewinding_attack(const MAMemorySpec& spec,
                                     const Statevector& initial) {
  const RewindTrace trace = rewinding_attack_traced(spec, initial);
  return {trace.s0_bit, trace.s1_bit};
}

AttackResult bounded_key_attack(const MAMemorySpec& spec,
                                const Statevector& initial,
                                ClassicalOracle& oracle, RandomStream& rng) {
  if (initial.num_qubits() != spec.total_qubits()) {
    throw std::invalid_argument("bounded_key_attack: register mismatch");
  }
  std::vector<int> query_register;
  for (int i = 1; i <= spec.n; ++i) {
    query_register.push_back(i);
  }

  AttackResult result;
  Statevector state = apply_honest_unitary(spec, 0, initial);
  auto [y0, collapsed] = measure_subset(state, query_register, rng);
  const int f0 = oracle.query(y0.to_index());
  ++result.queries_made;
  if (f0 != MAMemorySpec::kReject) {
    result.extracted[0] = f0;
  }

  // Uncompute U0 on the collapsed residual (self-adjoint), then run U1.
  Statevector rewound = apply_honest_unitary(spec, 0, collapsed);
  Statevector second = apply_honest_unitary(spec, 1, rewound);
  auto [y1, rest] = measure_subset(second, query_register, rng);
  (void)rest;
  const int f1 = oracle.query(y1.to_index());
  ++result.queries_made;
  if (f1 != MAMemorySpec::kReject) {
    result.extracted[1] = f1;
  }
  result.both_accepted = result.extracted[0].has_value() &&
                         result.extracted[1].has_value();
  return result;
}

}  // namespace qotm
