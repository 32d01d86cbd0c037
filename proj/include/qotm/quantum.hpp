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

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "qotm/bits.hpp"
#include "qotm/random.hpp"

namespace qotm {

using cplx = std::complex<double>;

// Tolerances: 1e-12 for unitarity/normalization, 1e-10 for spectral and PSD
// checks (double precision over dim <= 4096).
inline constexpr double kNormTol = 1e-12;
inline constexpr double kSpectralTol = 1e-10;

inline constexpr int kMaxStatevectorQubits = 20;
inline constexpr int kMaxDensityQubits = 6;

// Dense normalized state over n qubits; qubit 0 is the most significant bit
// of the amplitude index.
class Statevector {
 public:
  Statevector(int num_qubits, Eigen::VectorXcd amplitudes);

  static Statevector basis_state(int num_qubits, uint64_t index);

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return amp_.size(); }
  cplx amp(uint64_t i) const { return amp_(static_cast<Eigen::Index>(i)); }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }

 private:
  int num_qubits_;
  Eigen::VectorXcd amp_;
};

class HermitianOperator {
 public:
  explicit HermitianOperator(Eigen::MatrixXcd entries);

  Eigen::Index dim() const { return m_.rows(); }
  const Eigen::MatrixXcd& entries() const { return m_; }

 private:
  Eigen::MatrixXcd m_;
};

class DensityMatrix {
 public:
  explicit DensityMatrix(Eigen::MatrixXcd entries);

  static DensityMatrix from_pure(const Statevector& psi);

  Eigen::Index dim() const { return m_.rows(); }
  int num_qubits() const { return num_qubits_; }
  const Eigen::MatrixXcd& entries() const { return m_; }

 private:
  int num_qubits_;
  Eigen::MatrixXcd m_;
};

// |x>_theta as a tensor product; rectilinear uses {|0>,|1>}, diagonal uses
// {|+>,|->}.
Statevector prepare_bb84(const BB84Key& key);

Statevector apply_hadamard_all(const Statevector& state);

std::pair<BitString, Statevector> measure_computational(
    const Statevector& state, RandomStream& rng);

// Each qubit measured in {cos(a)|0> + sin(a)|1>, -sin(a)|0> + cos(a)|1>};
// angle 0 reproduces measure_computational.
std::pair<BitString, Statevector> measure_in_rotated_basis(
    const Statevector& state, const std::vector<double>& angle_per_qubit,
    RandomStream& rng);

// Projective measurement of a subset of qubits; returns the outcome on the
// measured qubits (in ascending index order) and the collapsed state.
std::pair<BitString, Statevector> measure_subset(
    const Statevector& state, const std::vector<int>& qubits,
    RandomStream& rng);

DensityMatrix partial_trace(const DensityMatrix& op,
                            const std::vector<int>& keep);

// Eigenvalues ascending; eigenvector columns orthonormal.
std::pair<Eigen::VectorXd, Eigen::MatrixXcd> eig_hermitian(
    const HermitianOperator& op);

bool is_psd(const HermitianOperator& op, double tol);

double min_eigenvalue(const Eigen::MatrixXcd& hermitian);

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Trace over the first (resp. second) tensor factor of a (d1*d2)x(d1*d2)
// matrix; used for Choi-matrix predicates where factors are not qubits.
Eigen::MatrixXcd trace_out_first(const Eigen::MatrixXcd& m, int d1, int d2);
Eigen::MatrixXcd trace_out_second(const Eigen::MatrixXcd& m, int d1, int d2);

}  // namespace qotm
