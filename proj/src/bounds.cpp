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

#include "qotm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qotm/errors.hpp"
#include "qotm/token.hpp"

namespace qotm {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Vector2cd psi_plus() {
  return {std::cos(kPi / 8.0), std::sin(kPi / 8.0)};
}

Eigen::Vector2cd psi_minus() {
  return {-std::sin(kPi / 8.0), std::cos(kPi / 8.0)};
}

Eigen::MatrixXcd v_bc_matrix(int b, int c) {
  if ((b != 0 && b != 1) || (c != 0 && c != 1)) {
    throw std::invalid_argument("v_bc: b and c must be bits");
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(b, b) += 1.0;
  // H|c> = (|0> + (-1)^c |1>)/sqrt(2).
  const double sign = c == 0 ? 1.0 : -1.0;
  m(0, 0) += 0.5;
  m(0, 1) += 0.5 * sign;
  m(1, 0) += 0.5 * sign;
  m(1, 1) += 0.5;
  return m;
}

Eigen::MatrixXcd a_prime_matrix() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(8, 8);
  for (int b = 0; b < 2; ++b) {
    for (int c = 0; c < 2; ++c) {
      m.block((2 * b + c) * 2, (2 * b + c) * 2, 2, 2) =
          0.25 * v_bc_matrix(b, c);
    }
  }
  return m;
}

Eigen::MatrixXcd x_prime_matrix() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(8, 8);
  const Eigen::Vector2cd plus = psi_plus();
  const Eigen::Vector2cd minus = psi_minus();
  m.block(0, 0, 2, 2) = plus * plus.adjoint();   // key pattern (b,c) = (0,0)
  m.block(6, 6, 2, 2) = minus * minus.adjoint();  // key pattern (b,c) = (1,1)
  return m;
}

std::string slack_message(const SdpConstraint& c) {
  std::ostringstream os;
  os << "constraint " << c.name << " violated (slack " << c.slack << ")";
  return os.str();
}

// Digit i (0 = most significant) of `pattern` in base 4, for n digits.
int base4_digit(uint64_t pattern, int n, int i) {
  return static_cast<int>((pattern >> (2 * (n - 1 - i))) & 3u);
}

}  // namespace

HermitianOperator v_bc(int b, int c) {
  return HermitianOperator(v_bc_matrix(b, c));
}

HermitianOperator objective_a_prime() {
  return HermitianOperator(a_prime_matrix());
}

HermitianOperator primal_witness() {
  return HermitianOperator(x_prime_matrix());
}

HermitianOperator dual_witness() {
  return HermitianOperator(0.5 * kAlpha *
                           Eigen::MatrixXcd::Identity(2, 2).eval());
}

std::vector<SdpConstraint> primal_constraints(
    const Eigen::MatrixXcd& x_prime) {
  if (x_prime.rows() != 8 || x_prime.cols() != 8) {
    throw std::invalid_argument("primal witness must be 8x8");
  }
  std::vector<SdpConstraint> out;
  out.push_back({"primal_psd", min_eigenvalue(x_prime)});
  const Eigen::MatrixXcd reduced = trace_out_first(x_prime, 4, 2);
  const double residual =
      (reduced - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff();
  out.push_back({"primal_partial_trace", -residual});
  return out;
}

std::vector<SdpConstraint> dual_constraints(const Eigen::MatrixXcd& y) {
  if (y.rows() != 2 || y.cols() != 2) {
    throw std::invalid_argument("dual witness must be 2x2");
  }
  std::vector<SdpConstraint> out;
  for (int b = 0; b < 2; ++b) {
    for (int c = 0; c < 2; ++c) {
      const Eigen::MatrixXcd diff = y - 0.25 * v_bc_matrix(b, c);
      out.push_back({"dual_vbc_" + std::to_string(b) + std::to_string(c),
                     min_eigenvalue(diff)});
    }
  }
  const Eigen::MatrixXcd block =
      kron(Eigen::MatrixXcd::Identity(4, 4), y) - a_prime_matrix();
  out.push_back({"dual_block", min_eigenvalue(block)});
  return out;
}

void require_feasible(const std::vector<SdpConstraint>& constraints) {
  for (const SdpConstraint& c : constraints) {
    if (!c.satisfied()) {
      throw VerificationError(slack_message(c));
    }
  }
}

void verify_primal(const Eigen::MatrixXcd& x_prime) {
  require_feasible(primal_constraints(x_prime));
}

void verify_dual(const Eigen::MatrixXcd& y) {
  require_feasible(dual_constraints(y));
}

SdpWitnessPair verify_witness_pair() {
  SdpWitnessPair pair{objective_a_prime(), primal_witness(), dual_witness(),
                      0.0, 0.0, {}};
  pair.constraints = primal_constraints(pair.primal_x_prime.entries());
  std::vector<SdpConstraint> dual =
      dual_constraints(pair.dual_y.entries());
  pair.constraints.insert(pair.constraints.end(), dual.begin(), dual.end());
  require_feasible(pair.constraints);

  const double primal_value =
      (pair.primal_x_prime.entries() * pair.objective_a_prime.entries())
          .trace()
          .real();
  const double dual_value = pair.dual_y.entries().trace().real();
  pair.duality_gap = std::abs(primal_value - dual_value);
  if (pair.duality_gap > kSpectralTol) {
    std::ostringstream os;
    os << "constraint duality_gap violated (gap " << pair.duality_gap << ")";
    throw VerificationError(os.str());
  }
  pair.value = primal_value;
  return pair;
}

TensorWitnessReport verify_tensor_witnesses(int n) {
  if (n < 1 || n > 4) {
    throw std::invalid_argument("tensor witnesses are verified for 1 <= n <= 4");
  }
  const uint64_t patterns = uint64_t{1} << (2 * n);
  const Eigen::Index block_dim = Eigen::Index{1} << n;
  const double expected = std::pow(kAlpha, n);

  const Eigen::Vector2cd psi[2] = {psi_plus(), psi_minus()};
  Eigen::MatrixXcd vq[4];
  for (int d = 0; d < 4; ++d) {
    vq[d] = 0.25 * v_bc_matrix(d >> 1, d & 1);
  }

  TensorWitnessReport report;
  report.n = n;
  report.min_dual_slack = std::numeric_limits<double>::infinity();
  double primal_min_eig = std::numeric_limits<double>::infinity();
  Eigen::MatrixXcd reduced = Eigen::MatrixXcd::Zero(block_dim, block_dim);
  const Eigen::MatrixXcd dual_block_base =
      std::pow(0.5 * kAlpha, n) *
      Eigen::MatrixXcd::Identity(block_dim, block_dim);
  report.dual_value = dual_block_base.trace().real();

  for (uint64_t k = 0; k < patterns; ++k) {
    // Objective block for this key pattern.
    Eigen::MatrixXcd obj = Eigen::MatrixXcd::Identity(1, 1);
    bool diagonal_pair = true;  // every per-position pair in {(0,0),(1,1)}
    for (int i = 0; i < n; ++i) {
      const int d = base4_digit(k, n, i);
      obj = kron(obj, vq[d]);
      diagonal_pair = diagonal_pair && (d == 0 || d == 3);
    }
    report.min_dual_slack =
        std::min(report.min_dual_slack, min_eigenvalue(dual_block_base - obj));
    if (!diagonal_pair) {
      continue;  // the primal witness block vanishes for this pattern
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
    for (int i = 0; i < n; ++i) {
      const int d = base4_digit(k, n, i);
      v = kron(Eigen::MatrixXcd(v), Eigen::MatrixXcd(psi[d == 3])).col(0);
    }
    const Eigen::MatrixXcd block = v * v.adjoint();
    primal_min_eig = std::min(primal_min_eig, min_eigenvalue(block));
    reduced += block;
    report.primal_value += (block * obj).trace().real();
  }

  report.partial_trace_residual =
      (reduced - Eigen::MatrixXcd::Identity(block_dim, block_dim))
          .cwiseAbs()
          .maxCoeff();

  const auto fail = [](const std::string& name, double slack) {
    throw VerificationError(slack_message({name, slack}));
  };
  if (primal_min_eig < -kSpectralTol) {
    fail("tensor_primal_psd", primal_min_eig);
  }
  if (report.partial_trace_residual > kSpectralTol) {
    fail("tensor_partial_trace", -report.partial_trace_residual);
  }
  if (report.min_dual_slack < -kSpectralTol) {
    fail("tensor_dual_block", report.min_dual_slack);
  }
  if (std::abs(report.primal_value - expected) > kSpectralTol) {
    fail("tensor_primal_value", -std::abs(report.primal_value - expected));
  }
  if (std::abs(report.dual_value - expected) > kSpectralTol) {
    fail("tensor_dual_value", -std::abs(report.dual_value - expected));
  }

  if (n <= 3) {
    // Independent dense rebuild: position-major Kronecker powers of the
    // single-position operators, then a register permutation into
    // (all key pairs, then all state qubits) order.
    Eigen::MatrixXcd a_int = Eigen::MatrixXcd::Identity(1, 1);
    Eigen::MatrixXcd x_int = Eigen::MatrixXcd::Identity(1, 1);
    for (int i = 0; i < n; ++i) {
      a_int = kron(a_int, a_prime_matrix());
      x_int = kron(x_int, x_prime_matrix());
    }
    const Eigen::Index dim = a_int.rows();
    std::vector<Eigen::Index> grouped(static_cast<size_t>(dim));
    for (Eigen::Index r = 0; r < dim; ++r) {
      uint64_t key = 0;
      uint64_t state = 0;
      for (int i = 0; i < n; ++i) {
        const uint64_t trip =
            (static_cast<uint64_t>(r) >> (3 * (n - 1 - i))) & 7u;
        key = (key << 2) | (trip >> 1);
        state = (state << 1) | (trip & 1u);
      }
      grouped[static_cast<size_t>(r)] =
          static_cast<Eigen::Index>((key << n) | state);
    }

    // Assemble the block-diagonal grouped-order operators for comparison.
    Eigen::MatrixXcd a_grp = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd x_grp = Eigen::MatrixXcd::Zero(dim, dim);
    for (uint64_t k = 0; k < patterns; ++k) {
      Eigen::MatrixXcd obj = Eigen::MatrixXcd::Identity(1, 1);
      bool diagonal_pair = true;
      for (int i = 0; i < n; ++i) {
        const int d = base4_digit(k, n, i);
        obj = kron(obj, vq[d]);
        diagonal_pair = diagonal_pair && (d == 0 || d == 3);
      }
      const Eigen::Index off = static_cast<Eigen::Index>(k) * block_dim;
      a_grp.block(off, off, block_dim, block_dim) = obj;
      if (diagonal_pair) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
        for (int i = 0; i < n; ++i) {
          const int d = base4_digit(k, n, i);
          v = kron(Eigen::MatrixXcd(v), Eigen::MatrixXcd(psi[d == 3])).col(0);
        }
        x_grp.block(off, off, block_dim, block_dim) = v * v.adjoint();
      }
    }

    double mismatch = 0.0;
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) {
        const Eigen::Index gr = grouped[static_cast<size_t>(r)];
        const Eigen::Index gc = grouped[static_cast<size_t>(c)];
        mismatch = std::max(mismatch, std::abs(a_grp(gr, gc) - a_int(r, c)));
        mismatch = std::max(mismatch, std::abs(x_grp(gr, gc) - x_int(r, c)));
      }
    }
    if (mismatch > 1e-12) {
      fail("tensor_dense_mismatch", -mismatch);
    }
    report.dense_cross_checked = true;
  }

  return report;
}

double noninteractive_bound(int n) {
  if (n < 1) {
    throw std::invalid_argument("n must be >= 1");
  }
  return std::pow(kAlpha, n);
}

double interactive_bound(int n, int m) {
  if (n < 1) {
    throw std::invalid_argument("n must be >= 1");
  }
  if (m < 0) {
    throw std::invalid_argument("m must be >= 0");
  }
  if (m < 2) {
    return 0.0;
  }
  const double raw =
      static_cast<double>(m) * (m - 1.0) * std::pow(kAlpha, n);
  return std::min(1.0, raw);
}

double fixed_output_bound(int m, long long g_size, double p) {
  if (g_size < 2) {
    throw std::invalid_argument("g_size must be >= 2");
  }
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("p must lie in [0, 1]");
  }
  if (m < 2) {
    return 0.0;
  }
  const double pairs = 0.5 * static_cast<double>(m) * (m - 1.0);
  const double raw =
      pairs * static_cast<double>(g_size) * (g_size - 1.0) * p;
  return std::min(1.0, raw);
}

NumericSearchResult numeric_search_n1(int grid_resolution) {
  if (grid_resolution < 8) {
    throw std::invalid_argument("grid_resolution must be >= 8");
  }
  // The four single-qubit keys and the matching one-bit token verifier.
  struct KeyCase {
    TokenProgram program;
    Eigen::Vector2cd psi;
  };
  std::vector<KeyCase> keys;
  for (int x = 0; x < 2; ++x) {
    for (int t = 0; t < 2; ++t) {
      const BB84Key key{BitString(1, static_cast<uint64_t>(x)),
                        BasisString(1, static_cast<uint64_t>(t))};
      const Statevector state = prepare_bb84(key);
      keys.push_back({TokenProgram(0, 0, key.x, key.theta),
                      Eigen::Vector2cd(state.amp(0), state.amp(1))});
    }
  }

  NumericSearchResult best;
  best.best_value = -1.0;
  for (int j = 0; j < grid_resolution; ++j) {
    const double a = static_cast<double>(j) * kPi / grid_resolution;
    const Eigen::Vector2cd e[2] = {{std::cos(a), std::sin(a)},
                                   {-std::sin(a), std::cos(a)}};
    for (int conv = 0; conv < 2; ++conv) {
      double total = 0.0;
      for (const KeyCase& key : keys) {
        for (int o = 0; o < 2; ++o) {
          const double prob = std::norm(e[o].dot(key.psi));
          const BitString y0(1, static_cast<uint64_t>(o));
          const BitString y1(1, static_cast<uint64_t>(conv == 0 ? o : 1 - o));
          if (verify_query(key.program, y0, 0).accepted &&
              verify_query(key.program, y1, 1).accepted) {
            total += 0.25 * prob;
          }
        }
      }
      // Ties broken toward the smallest angle; the tolerance keeps later
      // angles that match the maximum only up to rounding from stealing the
      // argmax (both conventions attain the optimum, at different angles).
      if (total > best.best_value + 1e-12) {
        best.best_value = total;
        best.best_angle = a;
      }
    }
  }
  return best;
}

ChoiMatrix::ChoiMatrix(int in_dim, int out_dim, Eigen::MatrixXcd entries)
    : in_dim_(in_dim), out_dim_(out_dim), m_(std::move(entries)) {
  if (in_dim_ < 1 || out_dim_ < 1) {
    throw std::invalid_argument("ChoiMatrix: dimensions must be positive");
  }
  const Eigen::Index dim = Eigen::Index{in_dim_} * out_dim_;
  if (m_.rows() != dim || m_.cols() != dim) {
    throw std::invalid_argument("ChoiMatrix: entries must be (out*in) square");
  }
}

ChoiMatrix ChoiMatrix::from_kraus(int in_dim, int out_dim,
                                  const std::vector<Eigen::MatrixXcd>& kraus) {
  if (kraus.empty()) {
    throw std::invalid_argument("from_kraus: need at least one operator");
  }
  for (const Eigen::MatrixXcd& k : kraus) {
    if (k.rows() != out_dim || k.cols() != in_dim) {
      throw std::invalid_argument("from_kraus: operator shape mismatch");
    }
  }
  const Eigen::Index dim = Eigen::Index{in_dim} * out_dim;
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(dim, dim);
  for (const Eigen::MatrixXcd& k : kraus) {
    for (int y = 0; y < out_dim; ++y) {
      for (int yp = 0; yp < out_dim; ++yp) {
        for (int i = 0; i < in_dim; ++i) {
          for (int jj = 0; jj < in_dim; ++jj) {
            j(Eigen::Index{y} * in_dim + i, Eigen::Index{yp} * in_dim + jj) +=
                k(y, i) * std::conj(k(yp, jj));
          }
        }
      }
    }
  }
  return ChoiMatrix(in_dim, out_dim, std::move(j));
}

bool ChoiMatrix::is_completely_positive(double tol) const {
  const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) {
    return false;
  }
  return min_eigenvalue(m_) >= -tol;
}

bool ChoiMatrix::is_trace_preserving(double tol) const {
  const Eigen::MatrixXcd reduced = trace_out_first(m_, out_dim_, in_dim_);
  return (reduced - Eigen::MatrixXcd::Identity(in_dim_, in_dim_))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

void ChoiMatrix::verify(double tol) const {
  if (!is_completely_positive(tol)) {
    std::ostringstream os;
    os << "choi matrix is not completely positive (min eigenvalue "
       << min_eigenvalue(m_) << ")";
    throw VerificationError(os.str());
  }
  if (!is_trace_preserving(tol)) {
    throw VerificationError(
        "choi matrix is not trace preserving (partial trace deviates from "
        "identity)");
  }
}

ChoiMatrix measurement_channel_choi(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::MatrixXcd k0 = Eigen::MatrixXcd::Zero(2, 2);
  Eigen::MatrixXcd k1 = Eigen::MatrixXcd::Zero(2, 2);
  k0(0, 0) = c;
  k0(0, 1) = s;
  k1(1, 0) = -s;
  k1(1, 1) = c;
  return ChoiMatrix::from_kraus(2, 2, {k0, k1});
}

}  // namespace qotm
