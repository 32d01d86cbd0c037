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

#include "qotm/token.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace qotm {

TokenProgram::TokenProgram(int s0_, int s1_, BitString x_, BasisString theta_)
    : s0(s0_), s1(s1_), x(std::move(x_)), theta(std::move(theta_)) {
  if (x.size() != theta.size())
    throw std::invalid_argument("TokenProgram: |x| != |theta|");
  if ((s0 & ~1) || (s1 & ~1))
    throw std::invalid_argument("TokenProgram: secrets must be bits");
}

QueryOutcome verify_query(const TokenProgram& program, const BitString& y,
                          int b) {
  if (y.size() != program.n())
    throw std::invalid_argument("verify_query: |y| != n");
  if (b != 0 && b != 1) throw std::invalid_argument("verify_query: b not a bit");
  // diff has bits only below n, so the complement mask needs no truncation.
  const uint64_t diff = y.to_index() ^ program.x.to_index();
  const uint64_t diag = program.theta.diagonal_mask();
  const uint64_t checked = b == 0 ? ~diag : diag;
  if ((diff & checked) != 0) return {false, 0};
  return {true, b == 0 ? program.s0 : program.s1};
}

WrapInstance::WrapInstance(TokenProgram program, int query_budget)
    : program_(std::move(program)), budget_(query_budget) {
  if (budget_ < 0) throw std::invalid_argument("WrapInstance: negative budget");
}

QueryOutcome WrapInstance::run(const BitString& y, int b) {
  if (used_ >= budget_)
    throw BudgetExceededError("wrap query budget exhausted (" +
                              std::to_string(budget_) + ")");
  const QueryOutcome out = verify_query(program_, y, b);
  ++used_;
  log_.push_back({y, b, out});
  return out;
}

bool WrapInstance::replay_matches() const {
  return std::all_of(log_.begin(), log_.end(), [&](const WrapLogEntry& e) {
    return verify_query(program_, e.y, e.b) == e.outcome;
  });
}

QueryOutcome wrap_run(WrapInstance& wrap, const BitString& y, int b) {
  return wrap.run(y, b);
}

// ------------------------------------------------------------ MA memory ----

uint64_t answer_encoding(int f_value) {
  switch (f_value) {
    case 0:
      return 0b00;
    case 1:
      return 0b01;
    case MAMemorySpec::kReject:
      return 0b10;
    default:
      throw std::invalid_argument("answer_encoding: bad f value");
  }
}

Eigen::MatrixXcd MAMemorySpec::honest_unitary_ab(int i) const {
  const Eigen::Index dim = Eigen::Index{1} << (n + 1);
  const Eigen::VectorXd& h = i == 0 ? h0 : h1;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  if (h.size() != 0) u -= 2.0 * (h * h.transpose()).cast<cplx>();
  return u;
}

Eigen::MatrixXcd MAMemorySpec::honest_unitary(int i) const {
  return kron(honest_unitary_ab(i), Eigen::MatrixXcd::Identity(4, 4));
}

void MAMemorySpec::validate() const {
  if (n < 1 || n + 3 > kMaxStatevectorQubits)
    throw std::invalid_argument("MAMemorySpec: bad register width");
  const uint64_t keys = uint64_t{1} << n;
  if (f.size() != keys) throw std::invalid_argument("MAMemorySpec: |f| != 2^n");
  if (delta < 1 || 2 * static_cast<uint64_t>(delta) > keys)
    throw std::invalid_argument("MAMemorySpec: infeasible delta");
  if (k0.empty() || k1.empty() ||
      static_cast<int>(std::max(k0.size(), k1.size())) != delta)
    throw std::invalid_argument("MAMemorySpec: delta != max key-set size");
  if ((s0 & ~1) || (s1 & ~1))
    throw std::invalid_argument("MAMemorySpec: secrets must be bits");

  std::unordered_set<uint64_t> seen;
  for (uint64_t y : k0)
    if (y >= keys || !seen.insert(y).second)
      throw std::invalid_argument("MAMemorySpec: bad K0");
  for (uint64_t y : k1)
    if (y >= keys || !seen.insert(y).second)
      throw std::invalid_argument("MAMemorySpec: K0, K1 not disjoint");

  for (uint64_t y = 0; y < keys; ++y) {
    const bool in0 = std::find(k0.begin(), k0.end(), y) != k0.end();
    const bool in1 = std::find(k1.begin(), k1.end(), y) != k1.end();
    const int expect = in0 ? s0 : in1 ? s1 : kReject;
    if (f[static_cast<size_t>(y)] != expect)
      throw std::invalid_argument("MAMemorySpec: f inconsistent with key sets");
  }

  // Honest correctness with certainty: U_i|0...0> is supported on ancilla 0
  // and query strings inside K_i.
  for (int i = 0; i < 2; ++i) {
    const Eigen::VectorXd& h = i == 0 ? h0 : h1;
    const std::vector<uint64_t>& ks = i == 0 ? k0 : k1;
    const Eigen::Index dim = Eigen::Index{1} << (n + 1);
    Eigen::VectorXd image = Eigen::VectorXd::Zero(dim);
    image(0) = 1.0;
    if (h.size() != 0) {
      if (h.size() != dim)
        throw std::invalid_argument("MAMemorySpec: Householder vector size");
      image -= 2.0 * h(0) * h;
    }
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
      if (std::abs(image(idx)) < 1e-14) continue;
      const auto u = static_cast<uint64_t>(idx);
      if ((u >> n) != 0 || std::find(ks.begin(), ks.end(), u) == ks.end())
        throw std::invalid_argument(
            "MAMemorySpec: honest unitary leaks outside K" + std::to_string(i));
    }
  }
}

Eigen::MatrixXcd oracle_unitary(int n, const std::vector<int>& f_table) {
  if (n < 1 || n > kMaxStatevectorQubits - 2)
    throw std::invalid_argument("oracle_unitary: bad width");
  if (f_table.size() != (size_t{1} << n))
    throw std::invalid_argument("oracle_unitary: |f| != 2^n");
  const Eigen::Index dim = Eigen::Index{1} << (n + 2);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto idx = static_cast<uint64_t>(col);
    const uint64_t y = idx >> 2;
    const uint64_t c = idx & 0b11;
    const uint64_t row = (y << 2) | (c ^ answer_encoding(f_table[y]));
    u(static_cast<Eigen::Index>(row), col) = 1.0;
  }
  return u;
}

Eigen::MatrixXcd oracle_unitary(const MAMemorySpec& spec) {
  return oracle_unitary(spec.n, spec.f);
}

Statevector apply_honest_unitary(const MAMemorySpec& spec, int i,
                                 const Statevector& state) {
  if (state.num_qubits() != spec.total_qubits())
    throw std::invalid_argument("apply_honest_unitary: register mismatch");
  const Eigen::VectorXd& h = i == 0 ? spec.h0 : spec.h1;
  Eigen::VectorXcd v = state.amplitudes();
  if (h.size() != 0) {
    // State layout: index = ab * 4 + c. Columns of the (4 x dim_ab) view are
    // the answer factor per ancilla+query basis state.
    Eigen::Map<Eigen::MatrixXcd> m(v.data(), 4, h.size());
    const Eigen::VectorXcd mh = m * h.cast<cplx>();
    m.noalias() -= 2.0 * mh * h.transpose().cast<cplx>();
  }
  return Statevector(state.num_qubits(), std::move(v));
}

Statevector apply_oracle(const MAMemorySpec& spec, const Statevector& state) {
  if (state.num_qubits() != spec.total_qubits())
    throw std::invalid_argument("apply_oracle: register mismatch");
  const auto& in = state.amplitudes();
  Eigen::VectorXcd out(in.size());
  const uint64_t ymask = (uint64_t{1} << spec.n) - 1;
  for (Eigen::Index idx = 0; idx < in.size(); ++idx) {
    const auto u = static_cast<uint64_t>(idx);
    const uint64_t y = (u >> 2) & ymask;
    const uint64_t target = u ^ answer_encoding(spec.f_of(y));
    out(static_cast<Eigen::Index>(target)) = in(idx);
  }
  return Statevector(state.num_qubits(), std::move(out));
}

std::pair<MAMemorySpec, Statevector> make_toy_ma_memory(int n, int delta,
                                                        RandomStream& rng,
                                                        int s0, int s1) {
  if (n < 1 || n + 3 > kMaxStatevectorQubits)
    throw std::invalid_argument("make_toy_ma_memory: bad register width");
  const uint64_t keys = uint64_t{1} << n;
  if (delta < 1 || 2 * static_cast<uint64_t>(delta) > keys)
    throw std::invalid_argument("make_toy_ma_memory: need 2*delta <= 2^n");

  // Floyd's sampling: a uniform (2*delta)-subset of the key space.
  const auto want = static_cast<uint64_t>(2 * delta);
  std::unordered_set<uint64_t> chosen_set;
  std::vector<uint64_t> chosen;
  for (uint64_t j = keys - want; j < keys; ++j) {
    const uint64_t t = rng.below(j + 1);
    const uint64_t pick = chosen_set.insert(t).second ? t : j;
    if (pick != t) chosen_set.insert(pick);
    chosen.push_back(pick);
  }
  for (size_t i = chosen.size(); i > 1; --i)
    std::swap(chosen[i - 1], chosen[rng.below(i)]);

  MAMemorySpec spec;
  spec.n = n;
  spec.delta = delta;
  spec.s0 = s0 < 0 ? rng.bit() : s0;
  spec.s1 = s1 < 0 ? rng.bit() : s1;
  spec.k0.assign(chosen.begin(), chosen.begin() + delta);
  spec.k1.assign(chosen.begin() + delta, chosen.end());
  spec.f.assign(keys, MAMemorySpec::kReject);
  for (uint64_t y : spec.k0) spec.f[static_cast<size_t>(y)] = spec.s0;
  for (uint64_t y : spec.k1) spec.f[static_cast<size_t>(y)] = spec.s1;

  // Householder reflection sending |0>|0...0> to |0> x uniform(K_i).
  const Eigen::Index dim_ab = Eigen::Index{1} << (n + 1);
  const double amp = 1.0 / std::sqrt(static_cast<double>(delta));
  for (int i = 0; i < 2; ++i) {
    Eigen::VectorXd target = Eigen::VectorXd::Zero(dim_ab);
    for (uint64_t y : i == 0 ? spec.k0 : spec.k1)
      target(static_cast<Eigen::Index>(y)) = amp;
    Eigen::VectorXd diff = -target;
    diff(0) += 1.0;
    const double norm = diff.norm();
    Eigen::VectorXd& h = i == 0 ? spec.h0 : spec.h1;
    if (norm > 1e-12) h = diff / norm;
  }

  spec.validate();
  return {std::move(spec), Statevector::basis_state(n + 3, 0)};
}

// ----------------------------------------------------------------- JSON ----

nlohmann::ordered_json token_program_to_json(const TokenProgram& program) {
  return {{"s0", program.s0},
          {"s1", program.s1},
          {"x", program.x.str()},
          {"theta", program.theta.str()}};
}

TokenProgram token_program_from_json(const nlohmann::json& j) {
  return TokenProgram(j.at("s0").get<int>(), j.at("s1").get<int>(),
                      BitString::from_string(j.at("x").get<std::string>()),
                      BasisString::from_string(j.at("theta").get<std::string>()));
}

namespace {

nlohmann::ordered_json matrix_to_json(const Eigen::MatrixXcd& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) throw std::invalid_argument("matrix_from_json: empty");
  const auto cols = static_cast<Eigen::Index>(j.at(0).size());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& e = j.at(static_cast<size_t>(i)).at(static_cast<size_t>(c));
      m(i, c) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return m;
}

// Recovers the Householder vector from U = I - 2hh^T (or empty for U = I).
Eigen::VectorXd householder_from_unitary(const Eigen::MatrixXcd& u_ab) {
  const Eigen::MatrixXcd residual =
      (Eigen::MatrixXcd::Identity(u_ab.rows(), u_ab.cols()) - u_ab) / 2.0;
  if (residual.cwiseAbs().maxCoeff() < 1e-12) return {};
  if (residual.imag().cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("ma_memory_from_json: unitary not real");
  const Eigen::MatrixXd r = residual.real();
  Eigen::Index best = 0;
  r.diagonal().maxCoeff(&best);
  if (r(best, best) <= 0)
    throw std::invalid_argument("ma_memory_from_json: not a reflection");
  const Eigen::VectorXd h = r.col(best) / std::sqrt(r(best, best));
  if ((r - h * h.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("ma_memory_from_json: not rank-1 reflection");
  return h;
}

}  // namespace

nlohmann::ordered_json ma_memory_to_json(const MAMemorySpec& spec) {
  nlohmann::ordered_json ks = nlohmann::ordered_json::array();
  for (int i = 0; i < 2; ++i) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (uint64_t y : i == 0 ? spec.k0 : spec.k1)
      arr.push_back(BitString(spec.n, y).str());
    ks.push_back(std::move(arr));
  }
  return {{"n", spec.n},
          {"f", spec.f},
          {"key_sets", ks},
          {"delta", spec.delta},
          {"s0", spec.s0},
          {"s1", spec.s1},
          {"honest_unitaries",
           {matrix_to_json(spec.honest_unitary(0)),
            matrix_to_json(spec.honest_unitary(1))}}};
}

MAMemorySpec ma_memory_from_json(const nlohmann::json& j) {
  MAMemorySpec spec;
  spec.n = j.at("n").get<int>();
  spec.f = j.at("f").get<std::vector<int>>();
  spec.delta = j.at("delta").get<int>();
  spec.s0 = j.at("s0").get<int>();
  spec.s1 = j.at("s1").get<int>();
  for (int i = 0; i < 2; ++i) {
    std::vector<uint64_t>& ks = i == 0 ? spec.k0 : spec.k1;
    for (const auto& s : j.at("key_sets").at(static_cast<size_t>(i)))
      ks.push_back(BitString::from_string(s.get<std::string>()).to_index());
  }
  for (int i = 0; i < 2; ++i) {
    const Eigen::MatrixXcd full =
        matrix_from_json(j.at("honest_unitaries").at(static_cast<size_t>(i)));
    const Eigen::Index dim_ab = Eigen::Index{1} << (spec.n + 1);
    if (full.rows() != dim_ab * 4)
      throw std::invalid_argument("ma_memory_from_json: unitary dimension");
    Eigen::MatrixXcd ab(dim_ab, dim_ab);
    for (Eigen::Index r = 0; r < dim_ab; ++r)
      for (Eigen::Index c = 0; c < dim_ab; ++c) ab(r, c) = full(r * 4, c * 4);
    if ((kron(ab, Eigen::MatrixXcd::Identity(4, 4)) - full)
            .cwiseAbs()
            .maxCoeff() > 1e-12)
      throw std::invalid_argument(
          "ma_memory_from_json: unitary does not factor over the answer register");
    (i == 0 ? spec.h0 : spec.h1) = householder_from_unitary(ab);
  }
  spec.validate();
  return spec;
}

}  // namespace qotm
