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

// Acceptance runner: executes the ten release criteria end to end and prints
// one PASS/FAIL line per criterion. Exits nonzero iff any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qotm/adversaries.hpp"
#include "qotm/bounds.hpp"
#include "qotm/cli.hpp"
#include "qotm/protocol.hpp"

namespace {

using qotm::AttackResult;
using qotm::AttackStrategy;
using qotm::BitString;
using qotm::kAlpha;
using qotm::RandomStream;
using qotm::RealWrapAccess;
using qotm::SenderOutput;

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& label) {
    if (!condition) {
      pass = false;
      if (detail.tellp() > 0) {
        detail << "; ";
      }
      detail << "failed: " << label;
    }
  }
};

// ---------------------------------------------------------------------------
// 1. The semidefinite witness pair certifies the single-qubit optimum via the
//    CLI verification path, with zero duality gap, in under a second.
Outcome criterion_sdp_witnesses() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  qotm::cli::RunConfig config;
  config.subcommand = "verify-sdp";
  const qotm::cli::RunResult result = qotm::cli::run(config);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  out.require(result.exit_code == 0, "verify-sdp exit code 0");
  const auto j = nlohmann::json::parse(result.artifact);
  const double value = j.at("value").get<double>();
  const double gap = j.at("duality_gap").get<double>();
  out.require(std::abs(value - 0.8535533906) <= 1e-10,
              "optimal value 0.8535533906 within 1e-10");
  out.require(gap <= 1e-10, "duality gap at most 1e-10");
  out.require(seconds < 1.0, "completes in under 1 second");
  out.detail << "value=" << qotm::format_double(value)
             << " gap=" << qotm::format_double(gap) << " time="
             << qotm::format_double(seconds) << "s";
  return out;
}

// ---------------------------------------------------------------------------
// 2. Every V_bc has spectrum {1 - 1/sqrt2, 1 + 1/sqrt2} and the top
//    eigenvector of V_00 is (cos pi/8, sin pi/8) up to phase.
Outcome criterion_vbc_spectra() {
  Outcome out;
  double worst = 0.0;
  for (int b = 0; b < 2; ++b) {
    for (int c = 0; c < 2; ++c) {
      auto [vals, vecs] = qotm::eig_hermitian(qotm::v_bc(b, c));
      worst = std::max(worst, std::abs(vals(0) - 0.2928932188134524));
      worst = std::max(worst, std::abs(vals(1) - 1.7071067811865475));
    }
  }
  out.require(worst <= 1e-12, "eigenvalues 1 -/+ 1/sqrt2 within 1e-12");

  auto [vals, vecs] = qotm::eig_hermitian(qotm::v_bc(0, 0));
  Eigen::VectorXcd expected(2);
  expected << std::cos(kPi / 8.0), std::sin(kPi / 8.0);
  const qotm::cplx phase = expected.dot(vecs.col(1));
  const double vec_err = (vecs.col(1) - phase * expected).norm();
  out.require(vec_err <= 1e-10,
              "top eigenvector of V_00 is (cos pi/8, sin pi/8) up to phase");
  out.detail << "max eigenvalue error=" << qotm::format_double(worst)
             << " eigenvector error=" << qotm::format_double(vec_err);
  return out;
}

// ---------------------------------------------------------------------------
// 3. Breidbart both-accept: Monte Carlo at 1e6 trials tracks alpha^n within
//    3 sigma for n in {1,2,4,8}, exact enumeration matches alpha^n to 1e-10
//    for n <= 6, all in under a minute.
Outcome criterion_breidbart_probability() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const AttackStrategy attack = qotm::make_attack("breidbart", 2);
  RandomStream rng(7);
  const uint64_t kTrials = 1000000;
  for (const int n : {1, 2, 4, 8}) {
    RandomStream stream = rng.child(static_cast<uint64_t>(n));
    uint64_t both = 0;
    for (uint64_t t = 0; t < kTrials; ++t) {
      RandomStream trial = stream.child(t);
      RandomStream sender_rng = trial.child(0);
      SenderOutput sender = qotm::sender_create(0, 1, n, sender_rng, 2);
      RealWrapAccess access(sender.wrap);
      RandomStream attack_rng = trial.child(1);
      const AttackResult r =
          attack.run(sender.quantum_key, access, attack_rng);
      both += r.both_accepted ? 1 : 0;
    }
    const double freq =
        static_cast<double>(both) / static_cast<double>(kTrials);
    const double p = std::pow(kAlpha, n);
    const double sigma =
        std::sqrt(p * (1.0 - p) / static_cast<double>(kTrials));
    out.require(std::abs(freq - p) <= 3.0 * sigma,
                "monte carlo frequency within 3 sigma of alpha^" +
                    std::to_string(n));
    out.detail << "n=" << n << ":" << qotm::format_double(freq) << " ";
  }
  double worst = 0.0;
  for (int n = 1; n <= 6; ++n) {
    worst = std::max(worst, std::abs(qotm::exact_breidbart_both_accept(n) -
                                     std::pow(kAlpha, n)));
  }
  out.require(worst <= 1e-10, "exact enumeration equals alpha^n to 1e-10");
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  out.require(seconds < 60.0, "completes in under 60 seconds");
  out.detail << "exact error=" << qotm::format_double(worst)
             << " time=" << qotm::format_double(seconds) << "s";
  return out;
}

// ---------------------------------------------------------------------------
// 4. The restricted single-qubit achievability search reproduces the optimum:
//    value 0.853553 within 1e-6 at resolution 1e4, argmax angle pi/8 modulo
//    pi/2 within one grid step, and no resolution ever beats the dual value.
Outcome criterion_numeric_search() {
  Outcome out;
  const qotm::NumericSearchResult fine = qotm::numeric_search_n1(10000);
  out.require(std::abs(fine.best_value - 0.853553) <= 1e-6,
              "best value 0.853553 within 1e-6");
  const double folded = std::fmod(fine.best_angle, kPi / 2.0);
  out.require(std::abs(folded - kPi / 8.0) <= 2.0 * kPi / 10000.0,
              "best angle pi/8 modulo pi/2 within one grid step");
  for (const int res : {8, 100, 999, 10000}) {
    const qotm::NumericSearchResult r = qotm::numeric_search_n1(res);
    out.require(r.best_value <= kAlpha + 1e-9,
                "resolution " + std::to_string(res) +
                    " stays below the dual value");
  }
  out.detail << "value=" << qotm::format_double(fine.best_value)
             << " angle=" << qotm::format_double(fine.best_angle);
  return out;
}

// ---------------------------------------------------------------------------
// 5. Interactive-bound grid: the adaptive guessing adversary never exceeds
//    min(1, m(m-1) alpha^n) + 3 sigma across n x m cells at 1e5 trials per
//    cell, in under five minutes.
Outcome criterion_interactive_grid() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const uint64_t kTrials = 100000;
  RandomStream rng(7);
  uint64_t cell = 0;
  for (const int n : {4, 8, 12, 16, 20}) {
    for (const int m : {2, 4, 8, 16, 32}) {
      const AttackStrategy attack = qotm::make_attack("adaptive-guess", m);
      RandomStream stream = rng.child(cell++);
      uint64_t both = 0;
      for (uint64_t t = 0; t < kTrials; ++t) {
        RandomStream trial = stream.child(t);
        RandomStream sender_rng = trial.child(0);
        SenderOutput sender = qotm::sender_create(0, 1, n, sender_rng, m);
        RealWrapAccess access(sender.wrap);
        RandomStream attack_rng = trial.child(1);
        const AttackResult r =
            attack.run(sender.quantum_key, access, attack_rng);
        both += r.both_accepted ? 1 : 0;
      }
      const double freq =
          static_cast<double>(both) / static_cast<double>(kTrials);
      const double bound = qotm::interactive_bound(n, m);
      const double sigma =
          std::sqrt(freq * (1.0 - freq) / static_cast<double>(kTrials));
      out.require(freq <= bound + 3.0 * sigma,
                  "cell n=" + std::to_string(n) + " m=" + std::to_string(m) +
                      " within the interactive bound");
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  out.require(seconds < 300.0, "completes in under 5 minutes");
  out.detail << "25 cells at 1e5 trials each time="
             << qotm::format_double(seconds) << "s";
  return out;
}

// ---------------------------------------------------------------------------
// 6. Honest completeness: for every (s0, s1, b) and every n in 1..10, one
//    thousand protocol runs all retrieve s_b.
Outcome criterion_honest_completeness() {
  Outcome out;
  RandomStream rng(7);
  uint64_t runs = 0;
  uint64_t correct = 0;
  for (int combo = 0; combo < 8; ++combo) {
    const int s0 = (combo >> 2) & 1;
    const int s1 = (combo >> 1) & 1;
    const int b = combo & 1;
    for (int n = 1; n <= 10; ++n) {
      RandomStream stream =
          rng.child(static_cast<uint64_t>(combo * 100 + n));
      for (int t = 0; t < 1000; ++t) {
        RandomStream trial = stream.child(static_cast<uint64_t>(t));
        SenderOutput sender = qotm::sender_create(s0, s1, n, trial);
        const int got = qotm::honest_receiver_execute(b, sender, trial);
        ++runs;
        correct += got == (b == 0 ? s0 : s1) ? 1 : 0;
      }
    }
  }
  out.require(correct == runs, "every honest run retrieves s_b");
  out.detail << correct << "/" << runs << " retrievals correct";
  return out;
}

// ---------------------------------------------------------------------------
// 7. Simulation: the honest adversary has zero distinguishing advantage, and
//    the Breidbart adversary at n=8 triggers Case 2 with frequency 0.2820
//    (within 3 sigma at 1e5 trials) while staying below the interactive
//    bound.
Outcome criterion_distinguishing() {
  Outcome out;
  RandomStream honest_rng(7);
  const qotm::ExperimentReport honest = qotm::distinguishing_experiment(
      qotm::make_attack("honest", 2), std::nullopt, std::nullopt, 8, 2,
      100000, honest_rng);
  out.require(honest.empirical_advantage <= 3.0 * honest.sigma,
              "honest advantage zero within 3 sigma");
  out.require(honest.case2_frequency == 0.0, "honest never triggers Case 2");

  RandomStream breidbart_rng(7);
  const qotm::ExperimentReport breidbart = qotm::distinguishing_experiment(
      qotm::make_attack("breidbart", 2), std::nullopt, std::nullopt, 8, 2,
      100000, breidbart_rng);
  const double target = 0.2820;
  const double sigma = std::sqrt(target * (1.0 - target) / 100000.0);
  out.require(std::abs(breidbart.case2_frequency - target) <= 3.0 * sigma,
              "breidbart n=8 Case-2 frequency 0.2820 within 3 sigma");
  out.require(
      breidbart.empirical_advantage <= qotm::interactive_bound(8, 2),
      "breidbart advantage below the interactive bound");
  out.detail << "honest advantage="
             << qotm::format_double(honest.empirical_advantage)
             << " breidbart case2="
             << qotm::format_double(breidbart.case2_frequency)
             << " advantage="
             << qotm::format_double(breidbart.empirical_advantage);
  return out;
}

// ---------------------------------------------------------------------------
// 8. Rewinding on exact-correctness memories recovers both secrets with
//    probability exactly one (pure statevector evolution, no sampling), for
//    every feasible (n, delta) with n <= 4 and every secret combination.
Outcome criterion_rewinding() {
  Outcome out;
  RandomStream rng(7);
  int cases = 0;
  double worst = 0.0;
  for (int n = 2; n <= 4; ++n) {
    for (int delta = 1; 2 * delta <= (1 << n); delta *= 2) {
      for (int combo = 0; combo < 4; ++combo) {
        for (int rep = 0; rep < 10; ++rep) {
          RandomStream spec_rng = rng.child(
              static_cast<uint64_t>(((n * 16 + delta) * 4 + combo) * 10 + rep));
          auto [spec, initial] = qotm::make_toy_ma_memory(
              n, delta, spec_rng, combo >> 1, combo & 1);
          const qotm::RewindTrace trace =
              qotm::rewinding_attack_traced(spec, initial);
          ++cases;
          const bool bits_right =
              trace.s0_bit == (combo >> 1) && trace.s1_bit == (combo & 1);
          worst = std::max({worst, std::abs(trace.rewind_fidelity - 1.0),
                            std::abs(trace.s0_certainty - 1.0),
                            std::abs(trace.s1_certainty - 1.0)});
          if (!bits_right) {
            out.require(false, "recovered bits match the planted secrets");
          }
        }
      }
    }
  }
  out.require(worst <= qotm::kSpectralTol,
              "fidelity and certainties equal one within tolerance");
  out.detail << cases << " cases max deviation from certainty="
             << qotm::format_double(worst);
  return out;
}

// ---------------------------------------------------------------------------
// 9. The two-query classical-oracle attack wins both secrets with frequency
//    at least 1/delta^2 for delta in {1, 2, 4} at 1e5 trials each.
Outcome criterion_bounded_key() {
  Outcome out;
  RandomStream rng(7);
  const uint64_t kTrials = 100000;
  for (const int delta : {1, 2, 4}) {
    const int n = 3;  // 2*delta <= 2^n holds for every delta here
    RandomStream stream = rng.child(static_cast<uint64_t>(delta));
    uint64_t wins = 0;
    for (uint64_t t = 0; t < kTrials; ++t) {
      RandomStream trial = stream.child(t);
      RandomStream spec_rng = trial.child(0);
      auto [spec, initial] = qotm::make_toy_ma_memory(n, delta, spec_rng);
      qotm::CountingOracle oracle(spec);
      RandomStream measure_rng = trial.child(1);
      const AttackResult r =
          qotm::bounded_key_attack(spec, initial, oracle, measure_rng);
      const bool win = r.extracted[0] && r.extracted[1] &&
                       *r.extracted[0] == spec.s0 &&
                       *r.extracted[1] == spec.s1;
      wins += win ? 1 : 0;
    }
    const double freq =
        static_cast<double>(wins) / static_cast<double>(kTrials);
    const double floor = 1.0 / (static_cast<double>(delta) * delta);
    out.require(freq >= floor, "delta=" + std::to_string(delta) +
                                   " frequency at least 1/delta^2");
    out.detail << "delta=" << delta << ":" << qotm::format_double(freq)
               << " ";
  }
  return out;
}

// ---------------------------------------------------------------------------
// 10. Statelessness: every logged wrap verdict reproduces under replay, a
//     fresh instance rebuilt from the serialized program answers the same
//     query log identically, and repeated queries return identical outcomes.
Outcome criterion_statelessness() {
  Outcome out;
  RandomStream rng(7);
  int replays = 0;
  for (int rep = 0; rep < 200; ++rep) {
    RandomStream trial = rng.child(static_cast<uint64_t>(rep));
    const int n = 1 + static_cast<int>(trial.below(12));
    const auto key = qotm::random_key(n, trial);
    const qotm::TokenProgram program(trial.bit(), trial.bit(), key.x,
                                     key.theta);
    qotm::WrapInstance wrap(program, 64);

    // A mix of fresh and repeated queries, covering accepts and rejects.
    std::vector<std::pair<BitString, int>> queries;
    for (int q = 0; q < 16; ++q) {
      queries.emplace_back(BitString::random(n, trial),
                           static_cast<int>(trial.bit()));
    }
    queries.emplace_back(key.x, 0);  // guaranteed accept
    for (int q = 0; q < 17; ++q) {
      queries.push_back(queries[static_cast<size_t>(q)]);  // exact repeats
    }
    std::vector<qotm::QueryOutcome> outcomes;
    for (const auto& [y, b] : queries) {
      outcomes.push_back(wrap.run(y, b));
    }

    out.require(wrap.replay_matches(), "log replays through verify_query");

    // Repeated queries returned identical outcomes.
    for (size_t q = 0; q < 17; ++q) {
      if (!(outcomes[q] == outcomes[q + 17])) {
        out.require(false, "repeated query outcomes identical");
      }
    }

    // A fresh wrap rebuilt from the serialized program reproduces the run.
    const qotm::TokenProgram rebuilt = qotm::token_program_from_json(
        nlohmann::json::parse(qotm::token_program_to_json(program).dump()));
    qotm::WrapInstance fresh(rebuilt, 64);
    for (size_t q = 0; q < queries.size(); ++q) {
      if (!(fresh.run(queries[q].first, queries[q].second) == outcomes[q])) {
        out.require(false, "fresh instance reproduces the logged outcomes");
      }
    }
    ++replays;
  }
  out.detail << replays << " instances replayed byte-for-byte";
  return out;
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> criteria = {
      {"sdp witness pair certifies the optimum", criterion_sdp_witnesses},
      {"V_bc spectra and top eigenvector", criterion_vbc_spectra},
      {"breidbart probability alpha^n", criterion_breidbart_probability},
      {"numeric achievability search", criterion_numeric_search},
      {"interactive bound grid", criterion_interactive_grid},
      {"honest completeness", criterion_honest_completeness},
      {"distinguishing experiments", criterion_distinguishing},
      {"rewinding recovers both secrets", criterion_rewinding},
      {"bounded-key classical attack", criterion_bounded_key},
      {"wrap statelessness and replay", criterion_statelessness},
  };

  bool all_pass = true;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    double seconds = 0.0;
    const auto start = std::chrono::steady_clock::now();
    try {
      outcome = criteria[i].run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail << "exception: " << e.what();
    }
    seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    all_pass = all_pass && outcome.pass;
    std::printf("criterion %02zu %s %s (%s) [%.2fs]\n", i + 1,
                outcome.pass ? "PASS" : "FAIL", criteria[i].label,
                outcome.detail.str().c_str(), seconds);
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
