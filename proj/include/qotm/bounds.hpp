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

#include <numbers>
#include <string>
#include <vector>

#include "qotm/quantum.hpp"

namespace qotm {

// alpha = 1/2 + 1/(2*sqrt(2)) = cos^2(pi/8): the single-qubit optimum for
// answering both basis challenges, and the base of every bound below.
inline constexpr double kAlpha = 0.5 + 0.25 * std::numbers::sqrt2;

// --- Semidefinite witnesses (reduced space: two key qubits x one state
// qubit, dim 8; the constant prefix registers of the full formulation are
// factored out) ---

// V_{b,c} = |b><b| + H|c><c|H. Eigenvalues 1 +/- 1/sqrt(2).
HermitianOperator v_bc(int b, int c);

// Block-diagonal objective: block (b,c) (offset (2b+c)*2) holds (1/4)V_{b,c}.
HermitianOperator objective_a_prime();

// X' = |00><00| (x) |psi+><psi+| + |11><11| (x) |psi-><psi-| with
// psi+ = (cos pi/8, sin pi/8), psi- = (-sin pi/8, cos pi/8).
HermitianOperator primal_witness();

// Y = (1/4 + 1/(4*sqrt(2))) I_2, i.e. (alpha/2) I_2.
HermitianOperator dual_witness();

// One feasibility condition: satisfied iff slack >= -kSpectralTol. For PSD
// conditions slack is the minimum eigenvalue; for equality conditions it is
// minus the largest entrywise residual.
struct SdpConstraint {
  std::string name;
  double slack;

  bool satisfied() const { return slack >= -kSpectralTol; }
};

struct SdpWitnessPair {
  HermitianOperator objective_a_prime;
  HermitianOperator primal_x_prime;
  HermitianOperator dual_y;
  double value = 0.0;
  double duality_gap = 0.0;
  std::vector<SdpConstraint> constraints;
};

// Feasibility predicates on arbitrary candidate witnesses, so broken inputs
// can be diagnosed. Constraint names: primal_psd, primal_partial_trace,
// dual_vbc_{00,01,10,11}, dual_block.
std::vector<SdpConstraint> primal_constraints(const Eigen::MatrixXcd& x_prime);
std::vector<SdpConstraint> dual_constraints(const Eigen::MatrixXcd& y);

// Throws VerificationError naming the first violated constraint.
void require_feasible(const std::vector<SdpConstraint>& constraints);
void verify_primal(const Eigen::MatrixXcd& x_prime);
void verify_dual(const Eigen::MatrixXcd& y);

// Builds the canonical witnesses, checks every constraint, and asserts the
// zero duality gap. Throws VerificationError on any violation.
SdpWitnessPair verify_witness_pair();

// n-fold tensor extension, exploiting block-diagonality over the 4^n key
// patterns (blocks of dim 2^n). Checks primal/dual feasibility and that both
// objective values equal alpha^n; for n <= 3 additionally rebuilds all three
// operators densely by position-major Kronecker products and a register
// permutation, and compares entrywise. Throws VerificationError on failure.
struct TensorWitnessReport {
  int n = 0;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double min_dual_slack = 0.0;
  double partial_trace_residual = 0.0;
  bool dense_cross_checked = false;
};

TensorWitnessReport verify_tensor_witnesses(int n);

// --- Analytic bounds ---

// alpha^n: the best both-accept probability for a single stored key.
double noninteractive_bound(int n);

// min(1, 2*C(m,2)*alpha^n): both-accept probability for any adversary
// limited to m wrap queries.
double interactive_bound(int n, int m);

// min(1, C(m,2)*g_size*(g_size-1)*p): fixed-output-ensemble bound.
double fixed_output_bound(int m, long long g_size, double p);

// --- Achievability search (n = 1) ---

struct NumericSearchResult {
  double best_value = 0.0;
  double best_angle = 0.0;
};

// Sweeps projective measurement angles a = j*pi/resolution over [0, pi) and
// both outcome->(z-bit, x-bit) conventions (o,o) and (o,1-o); for each
// strategy evaluates the exact average both-accept probability over the four
// single-qubit keys. Ties broken toward the smallest angle.
NumericSearchResult numeric_search_n1(int grid_resolution);

// --- Choi representation J(Phi) = sum_ij Phi(|i><j|) (x) |i><j| ---
// The output factor comes first: J acts on (out (x) in).
class ChoiMatrix {
 public:
  ChoiMatrix(int in_dim, int out_dim, Eigen::MatrixXcd entries);

  static ChoiMatrix from_kraus(int in_dim, int out_dim,
                               const std::vector<Eigen::MatrixXcd>& kraus);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const Eigen::MatrixXcd& entries() const { return m_; }

  // Complete positivity: J PSD within tol.
  bool is_completely_positive(double tol = kSpectralTol) const;
  // Trace preservation: Tr_out J = I_in within tol.
  bool is_trace_preserving(double tol = kSpectralTol) const;
  // Throws VerificationError naming the violated predicate.
  void verify(double tol = kSpectralTol) const;

 private:
  int in_dim_;
  int out_dim_;
  Eigen::MatrixXcd m_;
};

// The qubit -> classical-bit channel "measure at `angle`, output the outcome
// as a basis state": Kraus operators |o><e_o(angle)|.
ChoiMatrix measurement_channel_choi(double angle);

}  // namespace qotm
