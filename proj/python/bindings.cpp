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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <optional>
#include <vector>

#include "qotm/adversaries.hpp"
#include "qotm/bounds.hpp"
#include "qotm/cli.hpp"

namespace py = pybind11;

namespace {

using qotm::BasisString;
using qotm::BitString;
using qotm::Statevector;

std::vector<std::complex<double>> to_amplitudes(const Statevector& s) {
  const auto& a = s.amplitudes();
  return {a.data(), a.data() + a.size()};
}

Statevector from_amplitudes(const std::vector<std::complex<double>>& amps) {
  int n = 0;
  while ((size_t{1} << n) < amps.size()) {
    ++n;
  }
  if ((size_t{1} << n) != amps.size()) {
    throw std::invalid_argument("amplitude count must be a power of two");
  }
  Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
  for (size_t i = 0; i < amps.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = amps[i];
  }
  return Statevector(n, std::move(v));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "One-time memories built from BB84 conjugate coding and a stateless "
      "classical token: protocol, attacks, and security-bound verification.";

  py::register_exception<qotm::BudgetExceededError>(m, "BudgetExceededError");
  py::register_exception<qotm::AlreadyConsumedError>(m,
                                                     "AlreadyConsumedError");
  py::register_exception<qotm::VerificationError>(m, "VerificationError");

  m.attr("ALPHA") = qotm::kAlpha;
  m.attr("DEFAULT_QUERY_BUDGET") = qotm::WrapInstance::kDefaultBudget;
  m.attr("DEFAULT_SEED") = qotm::cli::kDefaultSeed;

  py::class_<qotm::RandomStream>(m, "RandomStream")
      .def(py::init<uint64_t>(), py::arg("seed"))
      .def("child", &qotm::RandomStream::child, py::arg("index"))
      .def("next_u32", &qotm::RandomStream::next_u32)
      .def("next_u64", &qotm::RandomStream::next_u64)
      .def("uniform", &qotm::RandomStream::uniform)
      .def("bit", &qotm::RandomStream::bit)
      .def("below", &qotm::RandomStream::below, py::arg("bound"));

  m.def(
      "prepare_bb84",
      [](const std::string& x, const std::string& theta) {
        return to_amplitudes(qotm::prepare_bb84(
            {BitString::from_string(x), BasisString::from_string(theta)}));
      },
      py::arg("x"), py::arg("theta"),
      "Amplitudes of the product state encoding bits x in bases theta "
      "('+' rectilinear, 'x' diagonal).");

  m.def(
      "apply_hadamard_all",
      [](const std::vector<std::complex<double>>& amps) {
        return to_amplitudes(qotm::apply_hadamard_all(from_amplitudes(amps)));
      },
      py::arg("amplitudes"));

  m.def(
      "measure_computational",
      [](const std::vector<std::complex<double>>& amps,
         qotm::RandomStream& rng) {
        auto [outcome, post] =
            qotm::measure_computational(from_amplitudes(amps), rng);
        return py::make_tuple(outcome.str(), to_amplitudes(post));
      },
      py::arg("amplitudes"), py::arg("rng"));

  m.def(
      "measure_in_rotated_basis",
      [](const std::vector<std::complex<double>>& amps,
         const std::vector<double>& angles, qotm::RandomStream& rng) {
        auto [outcome, post] = qotm::measure_in_rotated_basis(
            from_amplitudes(amps), angles, rng);
        return py::make_tuple(outcome.str(), to_amplitudes(post));
      },
      py::arg("amplitudes"), py::arg("angles"), py::arg("rng"));

  m.def(
      "verify_query",
      [](int s0, int s1, const std::string& x, const std::string& theta,
         const std::string& y, int b) -> std::optional<int> {
        const qotm::TokenProgram program(s0, s1, BitString::from_string(x),
                                         BasisString::from_string(theta));
        const qotm::QueryOutcome outcome =
            qotm::verify_query(program, BitString::from_string(y), b);
        if (!outcome.accepted) {
          return std::nullopt;
        }
        return outcome.value;
      },
      py::arg("s0"), py::arg("s1"), py::arg("x"), py::arg("theta"),
      py::arg("y"), py::arg("b"),
      "Returns the released secret bit, or None when the token rejects.");

  py::class_<qotm::WrapInstance>(m, "WrapInstance")
      .def(py::init([](int s0, int s1, const std::string& x,
                       const std::string& theta, int budget) {
             return qotm::WrapInstance(
                 qotm::TokenProgram(s0, s1, BitString::from_string(x),
                                    BasisString::from_string(theta)),
                 budget);
           }),
           py::arg("s0"), py::arg("s1"), py::arg("x"), py::arg("theta"),
           py::arg("budget") = qotm::WrapInstance::kDefaultBudget)
      .def(
          "run",
          [](qotm::WrapInstance& w, const std::string& y,
             int b) -> std::optional<int> {
            const qotm::QueryOutcome outcome =
                w.run(BitString::from_string(y), b);
            if (!outcome.accepted) {
              return std::nullopt;
            }
            return outcome.value;
          },
          py::arg("y"), py::arg("b"))
      .def_property_readonly("query_budget", &qotm::WrapInstance::query_budget)
      .def_property_readonly("queries_used", &qotm::WrapInstance::queries_used)
      .def("replay_matches", &qotm::WrapInstance::replay_matches);

  py::class_<qotm::IdealOTM>(m, "IdealOTM")
      .def(py::init<int, int>(), py::arg("s0"), py::arg("s1"))
      .def("execute", &qotm::IdealOTM::execute, py::arg("b"))
      .def_property_readonly("consumed", &qotm::IdealOTM::consumed);

  m.def("noninteractive_bound", &qotm::noninteractive_bound, py::arg("n"));
  m.def("interactive_bound", &qotm::interactive_bound, py::arg("n"),
        py::arg("m"));
  m.def("fixed_output_bound", &qotm::fixed_output_bound, py::arg("m"),
        py::arg("g_size"), py::arg("p"));
  m.def("exact_breidbart_both_accept", &qotm::exact_breidbart_both_accept,
        py::arg("n"));

  m.def(
      "numeric_search_n1",
      [](int grid_resolution) {
        const qotm::NumericSearchResult r =
            qotm::numeric_search_n1(grid_resolution);
        return py::make_tuple(r.best_value, r.best_angle);
      },
      py::arg("grid_resolution"),
      "Returns (best_value, best_angle) of the restricted achievability "
      "search.");

  m.def("verify_sdp", []() {
    const qotm::SdpWitnessPair pair = qotm::verify_witness_pair();
    py::list constraints;
    for (const qotm::SdpConstraint& c : pair.constraints) {
      py::dict d;
      d["name"] = c.name;
      d["slack"] = c.slack;
      constraints.append(d);
    }
    py::dict out;
    out["value"] = pair.value;
    out["duality_gap"] = pair.duality_gap;
    out["constraints"] = constraints;
    return out;
  });

  m.def(
      "run_cli",
      [](const std::string& subcommand, const std::string& attack, int n,
         uint64_t trials, int m, int delta, uint64_t seed,
         std::optional<int> s0, std::optional<int> s1,
         const std::string& format, const std::string& out, int n_max) {
        qotm::cli::RunConfig config;
        config.subcommand = subcommand;
        config.attack_name = attack;
        config.n = n;
        config.trials = trials;
        config.m_budget = m;
        config.delta = delta;
        config.seed = seed;
        config.s0 = s0;
        config.s1 = s1;
        config.format = format;
        config.out_path = out;
        config.n_max = n_max;
        const qotm::cli::RunResult result = qotm::cli::run(config);
        return py::make_tuple(result.exit_code, result.artifact);
      },
      py::arg("subcommand"), py::arg("attack") = "", py::arg("n") = 8,
      py::arg("trials") = 10000, py::arg("m") = 2, py::arg("delta") = 1,
      py::arg("seed") = qotm::cli::kDefaultSeed,
      py::arg("s0") = std::nullopt, py::arg("s1") = std::nullopt,
      py::arg("format") = "json", py::arg("out") = "", py::arg("n_max") = 20,
      "Drives the experiment runner; returns (exit_code, artifact_text).");
}
