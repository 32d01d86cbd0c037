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

#include "qotm/protocol.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "qotm/bounds.hpp"
#include "qotm/quantum.hpp"

namespace qotm {

namespace {

void check_bit(int v, const char* what) {
  if (v != 0 && v != 1) {
    throw std::invalid_argument(std::string(what) + " must be 0 or 1");
  }
}

}  // namespace

IdealOTM::IdealOTM(int s0, int s1) : s0_(s0), s1_(s1) {
  check_bit(s0, "s0");
  check_bit(s1, "s1");
}

int IdealOTM::execute(int b) {
  check_bit(b, "b");
  if (consumed_) {
    throw AlreadyConsumedError("ideal one-time memory already executed");
  }
  consumed_ = true;
  return b == 0 ? s0_ : s1_;
}

int ideal_execute(IdealOTM& otm, int b) { return otm.execute(b); }

void QuantumKey::consume() {
  if (consumed_) {
    throw AlreadyConsumedError("quantum key already consumed");
  }
  consumed_ = true;
}

BitString QuantumKey::measure_rotated(
    const std::vector<double>& angle_per_qubit, RandomStream& rng) {
  if (static_cast<int>(angle_per_qubit.size()) != n()) {
    throw std::invalid_argument("need one measurement angle per qubit");
  }
  consume();
  // The key is a product state, so the outcome distribution factorizes into
  // independent per-qubit Bernoullis with these exact probabilities.
  BitString out = BitString::zeros(n());
  for (int i = 0; i < n(); ++i) {
    const double a = angle_per_qubit[static_cast<size_t>(i)];
    double p0;
    if (key_.theta.basis(i) == Basis::rectilinear) {
      const double c = std::cos(a);
      const double s = std::sin(a);
      p0 = key_.x.bit(i) == 0 ? c * c : s * s;
    } else {
      const double s2 = std::sin(2.0 * a);
      p0 = key_.x.bit(i) == 0 ? 0.5 * (1.0 + s2) : 0.5 * (1.0 - s2);
    }
    out.set_bit(i, rng.uniform() < p0 ? 0 : 1);
  }
  return out;
}

BitString QuantumKey::measure_all(double angle, RandomStream& rng) {
  return measure_rotated(std::vector<double>(static_cast<size_t>(n()), angle),
                         rng);
}

Statevector QuantumKey::take_statevector() {
  consume();
  return prepare_bb84(key_);
}

SenderOutput sender_create(int s0, int s1, int n, RandomStream& rng,
                           int query_budget) {
  BB84Key key = random_key(n, rng);
  TokenProgram program(s0, s1, key.x, key.theta);
  return SenderOutput{QuantumKey(key), WrapInstance(std::move(program), query_budget),
                      std::move(key)};
}

int honest_receiver_execute(int b, SenderOutput& out, RandomStream& rng) {
  check_bit(b, "b");
  Statevector psi = out.quantum_key.take_statevector();
  if (b == 1) {
    psi = apply_hadamard_all(psi);
  }
  auto [y, post] = measure_computational(psi, rng);
  (void)post;
  QueryOutcome outcome = out.wrap.run(y, b);
  if (!outcome.accepted) {
    // Measuring in the basis matching b always agrees with x on the
    // positions the token checks, so rejection here means a harness bug.
    throw std::logic_error("honest receiver query was rejected");
  }
  return outcome.value;
}

SimulatorState::SimulatorState(int n, IdealOTM& ideal, RandomStream& rng)
    : dummy_(0, 0, BitString::random(n, rng), BasisString::random(n, rng)),
      ideal_(&ideal) {}

QueryOutcome SimulatorState::answer(const BitString& y, int b) {
  QueryOutcome outcome = verify_query(dummy_, y, b);
  if (!outcome.accepted) {
    return outcome;
  }
  if (!first_accept_) {
    const int secret = ideal_->execute(b);
    ++ideal_queries_;
    first_accept_ = std::pair<int, int>(b, secret);
    return QueryOutcome{true, secret};
  }
  if (first_accept_->first == b) {
    return QueryOutcome{true, first_accept_->second};
  }
  // Both branches accepted: the one-time resource is spent, so the
  // translation can only hand back the dummy value and flag the event.
  case2_ = true;
  return QueryOutcome{true, kCase2Fallback};
}

QueryOutcome simulator_answer(SimulatorState& sim, const BitString& y, int b) {
  return sim.answer(y, b);
}

QueryOutcome RealWrapAccess::query(const BitString& y, int b) {
  return wrap_->run(y, b);
}

int RealWrapAccess::queries_remaining() const {
  return wrap_->query_budget() - wrap_->queries_used();
}

QueryOutcome SimulatorWrapAccess::query(const BitString& y, int b) {
  if (used_ >= budget_) {
    throw BudgetExceededError("query budget exhausted");
  }
  ++used_;
  return sim_->answer(y, b);
}

std::string format_double(double v) {
  // Shortest representation that round-trips; keeps report artifacts stable
  // across platforms.
  return nlohmann::json(v).dump();
}

nlohmann::ordered_json ExperimentReport::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["n"] = n;
  j["m"] = m;
  j["trials"] = trials;
  j["adversary"] = adversary;
  j["case2_frequency"] = case2_frequency;
  j["empirical_advantage"] = empirical_advantage;
  j["analytic_bound"] = analytic_bound;
  j["verdict"] = verdict ? "pass" : "fail";
  j["details"] = nlohmann::ordered_json{{"real_frequency", real_frequency},
                                        {"ideal_frequency", ideal_frequency},
                                        {"sigma", sigma}};
  return j;
}

std::string ExperimentReport::csv_header() {
  return "seed,n,m,trials,adversary,case2_frequency,empirical_advantage,"
         "analytic_bound,verdict";
}

std::string ExperimentReport::csv_row() const {
  std::ostringstream os;
  os << seed << ',' << n << ',' << m << ',' << trials << ',' << adversary
     << ',' << format_double(case2_frequency) << ','
     << format_double(empirical_advantage) << ','
     << format_double(analytic_bound) << ',' << (verdict ? "pass" : "fail");
  return os.str();
}

ExperimentReport distinguishing_experiment(const AttackStrategy& adversary,
                                           std::optional<int> s0,
                                           std::optional<int> s1, int n,
                                           int m_budget, uint64_t trials,
                                           RandomStream& rng) {
  if (trials == 0) {
    throw std::invalid_argument("trials must be positive");
  }
  if (m_budget < 1) {
    throw std::invalid_argument("query budget must be positive");
  }
  uint64_t real_hits = 0;
  uint64_t ideal_hits = 0;
  uint64_t case2_count = 0;

  const auto guessed_both = [](const AttackResult& r, int a0, int a1) {
    return r.extracted[0] && r.extracted[1] && *r.extracted[0] == a0 &&
           *r.extracted[1] == a1;
  };

  for (uint64_t t = 0; t < trials; ++t) {
    {
      RandomStream trial = rng.child(2 * t);
      RandomStream secrets = trial.child(0);
      const int a0 = s0 ? *s0 : secrets.bit();
      const int a1 = s1 ? *s1 : secrets.bit();
      RandomStream sender_rng = trial.child(1);
      SenderOutput out = sender_create(a0, a1, n, sender_rng, m_budget);
      RealWrapAccess access(out.wrap);
      RandomStream adversary_rng = trial.child(2);
      AttackResult result =
          adversary.run(out.quantum_key, access, adversary_rng);
      if (guessed_both(result, a0, a1)) {
        ++real_hits;
      }
    }
    {
      RandomStream trial = rng.child(2 * t + 1);
      RandomStream secrets = trial.child(0);
      const int a0 = s0 ? *s0 : secrets.bit();
      const int a1 = s1 ? *s1 : secrets.bit();
      IdealOTM ideal(a0, a1);
      RandomStream sim_rng = trial.child(1);
      SimulatorState sim(n, ideal, sim_rng);
      QuantumKey fake_key(
          BB84Key{sim.dummy_program().x, sim.dummy_program().theta});
      SimulatorWrapAccess access(sim, m_budget);
      RandomStream adversary_rng = trial.child(2);
      AttackResult result = adversary.run(fake_key, access, adversary_rng);
      if (guessed_both(result, a0, a1)) {
        ++ideal_hits;
      }
      if (sim.case2_flagged()) {
        ++case2_count;
      }
    }
  }

  const double denom = static_cast<double>(trials);
  ExperimentReport report;
  report.n = n;
  report.m = m_budget;
  report.trials = trials;
  report.adversary = adversary.name;
  report.real_frequency = static_cast<double>(real_hits) / denom;
  report.ideal_frequency = static_cast<double>(ideal_hits) / denom;
  report.case2_frequency = static_cast<double>(case2_count) / denom;
  report.empirical_advantage =
      std::abs(report.real_frequency - report.ideal_frequency);
  report.analytic_bound = interactive_bound(n, m_budget);
  const double vr =
      report.real_frequency * (1.0 - report.real_frequency) / denom;
  const double vi =
      report.ideal_frequency * (1.0 - report.ideal_frequency) / denom;
  report.sigma = std::sqrt(vr + vi);
  report.verdict =
      report.empirical_advantage <= report.analytic_bound + 3.0 * report.sigma;
  return report;
}

}  // namespace qotm
