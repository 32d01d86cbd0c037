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

#include "qotm/quantum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qotm {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865476;

uint64_t mask_for(int n) {
  return n == 0 ? 0 : (~uint64_t{0} >> (64 - n));
}

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxStatevectorQubits)
    throw std::invalid_argument("statevector size out of range: n = " +
                                std::to_string(n));
}

}  // namespace

// --------------------------------------------------------------- bits ----

BitString::BitString(int n, uint64_t index_bits) : n_(n), bits_(index_bits) {
  if (n < 0 || n > 63) throw std::invalid_argument("BitString: bad length");
  if ((index_bits & ~mask_for(n)) != 0)
    throw std::invalid_argument("BitString: value wider than length");
}

BitString BitString::from_string(std::string_view s) {
  BitString out(static_cast<int>(s.size()), 0);
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1')
      throw std::invalid_argument("BitString: expected '0'/'1'");
    out.set_bit(static_cast<int>(i), s[i] - '0');
  }
  return out;
}

BitString BitString::random(int n, RandomStream& rng) {
  return BitString(n, rng.next_u64() & mask_for(n));
}

void BitString::set_bit(int i, int v) {
  if (i < 0 || i >= n_) throw std::out_of_range("BitString: index");
  const uint64_t m = uint64_t{1} << shift(i);
  bits_ = v ? (bits_ | m) : (bits_ & ~m);
}

std::string BitString::str() const {
  std::string s(static_cast<size_t>(n_), '0');
  for (int i = 0; i < n_; ++i) s[static_cast<size_t>(i)] = char('0' + bit(i));
  return s;
}

BasisString::BasisString(int n, uint64_t diag_mask) : n_(n), diag_(diag_mask) {
  if (n < 0 || n > 63) throw std::invalid_argument("BasisString: bad length");
  if ((diag_mask & ~mask_for(n)) != 0)
    throw std::invalid_argument("BasisString: mask wider than length");
}

BasisString BasisString::from_string(std::string_view s) {
  const int n = static_cast<int>(s.size());
  uint64_t diag = 0;
  for (int i = 0; i < n; ++i) {
    const char c = s[static_cast<size_t>(i)];
    if (c == 'x')
      diag |= uint64_t{1} << (n - 1 - i);
    else if (c != '+')
      throw std::invalid_argument("BasisString: expected '+'/'x'");
  }
  return BasisString(n, diag);
}

BasisString BasisString::random(int n, RandomStream& rng) {
  return BasisString(n, rng.next_u64() & mask_for(n));
}

int BasisString::count_diagonal() const { return std::popcount(diag_); }

std::string BasisString::str() const {
  std::string s(static_cast<size_t>(n_), '+');
  for (int i = 0; i < n_; ++i)
    if (basis(i) == Basis::diagonal) s[static_cast<size_t>(i)] = 'x';
  return s;
}

BB84Key random_key(int n, RandomStream& rng) {
  return {BitString::random(n, rng), BasisString::random(n, rng)};
}

// -------------------------------------------------------------- states ----

Statevector::Statevector(int num_qubits, Eigen::VectorXcd amplitudes)
    : num_qubits_(num_qubits), amp_(std::move(amplitudes)) {
  check_qubit_count(num_qubits);
  if (amp_.size() != (Eigen::Index{1} << num_qubits))
    throw std::invalid_argument("Statevector: amplitude count != 2^n");
  const double sq = amp_.squaredNorm();
  if (std::abs(sq - 1.0) > 1e-9)
    throw std::invalid_argument("Statevector: not normalized");
}

Statevector Statevector::basis_state(int num_qubits, uint64_t index) {
  check_qubit_count(num_qubits);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << num_qubits);
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return Statevector(num_qubits, std::move(v));
}

HermitianOperator::HermitianOperator(Eigen::MatrixXcd entries)
    : m_(std::move(entries)) {
  if (m_.rows() != m_.cols())
    throw std::invalid_argument("HermitianOperator: not square");
  const double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > kNormTol)
    throw std::invalid_argument("HermitianOperator: not Hermitian");
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols())
    throw std::invalid_argument("DensityMatrix: not square");
  const auto dim = static_cast<uint64_t>(m_.rows());
  if (dim == 0 || (dim & (dim - 1)) != 0)
    throw std::invalid_argument("DensityMatrix: dim not a power of 2");
  num_qubits_ = std::bit_width(dim) - 1;
  if (num_qubits_ > kMaxDensityQubits)
    throw std::invalid_argument("DensityMatrix: more than 6 qubits");
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kNormTol)
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(m_.trace().real() - 1.0) > 1e-9 ||
      std::abs(m_.trace().imag()) > kNormTol)
    throw std::invalid_argument("DensityMatrix: trace != 1");
  if (min_eigenvalue(m_) < -kSpectralTol)
    throw std::invalid_argument("DensityMatrix: not positive semidefinite");
}

DensityMatrix DensityMatrix::from_pure(const Statevector& psi) {
  if (psi.num_qubits() > kMaxDensityQubits)
    throw std::invalid_argument("DensityMatrix: more than 6 qubits");
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

// ---------------------------------------------------------- operations ----

Statevector prepare_bb84(const BB84Key& key) {
  const int n = key.n();
  check_qubit_count(n);
  // Amplitude at index i is the product over qubits of the single-qubit
  // factor selected by bit q of i (qubit 0 most significant).
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::VectorXcd amps(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    cplx a = 1.0;
    for (int q = 0; q < n; ++q) {
      const int b = static_cast<int>(
          (static_cast<uint64_t>(i) >> (n - 1 - q)) & 1u);
      if (key.theta.basis(q) == Basis::rectilinear) {
        if (b != key.x.bit(q)) {
          a = 0.0;
          break;
        }
      } else {
        a *= (b == 1 && key.x.bit(q) == 1) ? -kInvSqrt2 : kInvSqrt2;
      }
    }
    amps(i) = a;
  }
  return Statevector(n, std::move(amps));
}

Statevector apply_hadamard_all(const Statevector& state) {
  const int n = state.num_qubits();
  Eigen::VectorXcd v = state.amplitudes();
  for (int q = 0; q < n; ++q) {
    const Eigen::Index stride = Eigen::Index{1} << (n - 1 - q);
    for (Eigen::Index base = 0; base < v.size(); base += 2 * stride) {
      for (Eigen::Index i = base; i < base + stride; ++i) {
        const cplx a = v(i);
        const cplx b = v(i + stride);
        v(i) = (a + b) * kInvSqrt2;
        v(i + stride) = (a - b) * kInvSqrt2;
      }
    }
  }
  return Statevector(n, std::move(v));
}

namespace {

// Samples an index from |v|^2; v need not be renormalized as long as its
// squared norm is within rounding of 1.
Eigen::Index sample_index(const Eigen::VectorXcd& v, RandomStream& rng) {
  const double r = rng.uniform();
  double acc = 0.0;
  Eigen::Index last_support = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double p = std::norm(v(i));
    if (p > 0.0) last_support = i;
    acc += p;
    if (r < acc) return i;
  }
  return last_support;
}

}  // namespace

std::pair<BitString, Statevector> measure_computational(
    const Statevector& state, RandomStream& rng) {
  const Eigen::Index idx = sample_index(state.amplitudes(), rng);
  return {BitString::from_index(static_cast<uint64_t>(idx),
                                state.num_qubits()),
          Statevector::basis_state(state.num_qubits(),
                                   static_cast<uint64_t>(idx))};
}

std::pair<BitString, Statevector> measure_in_rotated_basis(
    const Statevector& state, const std::vector<double>& angle_per_qubit,
    RandomStream& rng) {
  const int n = state.num_qubits();
  if (static_cast<int>(angle_per_qubit.size()) != n)
    throw std::invalid_argument("measure_in_rotated_basis: need one angle per qubit");
  // Rotate each qubit so the target basis becomes computational, sample,
  // then emit the matching product of basis vectors as the post-state.
  Eigen::VectorXcd v = state.amplitudes();
  for (int q = 0; q < n; ++q) {
    const double c = std::cos(angle_per_qubit[static_cast<size_t>(q)]);
    const double s = std::sin(angle_per_qubit[static_cast<size_t>(q)]);
    const Eigen::Index stride = Eigen::Index{1} << (n - 1 - q);
    for (Eigen::Index base = 0; base < v.size(); base += 2 * stride) {
      for (Eigen::Index i = base; i < base + stride; ++i) {
        const cplx a = v(i);
        const cplx b = v(i + stride);
        v(i) = c * a + s * b;
        v(i + stride) = -s * a + c * b;
      }
    }
  }
  const auto idx = static_cast<uint64_t>(sample_index(v, rng));
  const BitString y = BitString::from_index(idx, n);
  // Post-state is the product of the measured basis vectors.
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::VectorXcd prod(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    double a = 1.0;
    for (int q = 0; q < n; ++q) {
      const double c = std::cos(angle_per_qubit[static_cast<size_t>(q)]);
      const double s = std::sin(angle_per_qubit[static_cast<size_t>(q)]);
      const int b = static_cast<int>((static_cast<uint64_t>(i) >>
                                      (n - 1 - q)) & 1u);
      a *= y.bit(q) ? (b ? c : -s) : (b ? s : c);
    }
    prod(i) = a;
  }
  return {y, Statevector(n, std::move(prod))};
}

std::pair<BitString, Statevector> measure_subset(const Statevector& state,
                                                 const std::vector<int>& qubits,
                                                 RandomStream& rng) {
  const int n = state.num_qubits();
  if (qubits.empty())
    throw std::invalid_argument("measure_subset: empty qubit set");
  std::vector<int> qs = qubits;
  std::sort(qs.begin(), qs.end());
  if (std::adjacent_find(qs.begin(), qs.end()) != qs.end())
    throw std::invalid_argument("measure_subset: duplicate qubit");
  if (qs.front() < 0 || qs.back() >= n)
    throw std::invalid_argument("measure_subset: qubit out of range");

  const int k = static_cast<int>(qs.size());
  const auto& v = state.amplitudes();
  const auto pattern_of = [&](uint64_t i) {
    uint64_t p = 0;
    for (int j = 0; j < k; ++j)
      p |= ((i >> (n - 1 - qs[static_cast<size_t>(j)])) & 1u)
           << (k - 1 - j);
    return p;
  };

  std::vector<double> probs(size_t{1} << k, 0.0);
  for (Eigen::Index i = 0; i < v.size(); ++i)
    probs[pattern_of(static_cast<uint64_t>(i))] += std::norm(v(i));

  const double r = rng.uniform();
  double acc = 0.0;
  uint64_t chosen = 0;
  uint64_t last_support = 0;
  bool picked = false;
  for (size_t p = 0; p < probs.size(); ++p) {
    if (probs[p] > 0.0) last_support = p;
    acc += probs[p];
    if (r < acc) {
      chosen = p;
      picked = true;
      break;
    }
  }
  if (!picked) chosen = last_support;

  Eigen::VectorXcd post = Eigen::VectorXcd::Zero(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (pattern_of(static_cast<uint64_t>(i)) == chosen) post(i) = v(i);
  post /= std::sqrt(probs[chosen]);
  return {BitString(k, chosen), Statevector(n, std::move(post))};
}

DensityMatrix partial_trace(const DensityMatrix& op,
                            const std::vector<int>& keep) {
  const int n = op.num_qubits();
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  std::vector<int> ks = keep;
  std::sort(ks.begin(), ks.end());
  if (std::adjacent_find(ks.begin(), ks.end()) != ks.end())
    throw std::invalid_argument("partial_trace: duplicate qubit");
  if (ks.front() < 0 || ks.back() >= n)
    throw std::invalid_argument("partial_trace: qubit out of range");

  const int k = static_cast<int>(ks.size());
  std::vector<int> ds;
  for (int q = 0; q < n; ++q)
    if (!std::binary_search(ks.begin(), ks.end(), q)) ds.push_back(q);

  const auto place = [n](uint64_t bits, const std::vector<int>& qubits) {
    uint64_t out = 0;
    const int kq = static_cast<int>(qubits.size());
    for (int j = 0; j < kq; ++j)
      out |= ((bits >> (kq - 1 - j)) & 1u)
             << (n - 1 - qubits[static_cast<size_t>(j)]);
    return out;
  };

  const uint64_t dim_keep = uint64_t{1} << k;
  const uint64_t dim_drop = uint64_t{1} << (n - k);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(
      static_cast<Eigen::Index>(dim_keep), static_cast<Eigen::Index>(dim_keep));
  const auto& m = op.entries();
  for (uint64_t a = 0; a < dim_keep; ++a)
    for (uint64_t b = 0; b < dim_keep; ++b) {
      cplx acc = 0.0;
      for (uint64_t e = 0; e < dim_drop; ++e) {
        const uint64_t i = place(a, ks) | place(e, ds);
        const uint64_t j = place(b, ks) | place(e, ds);
        acc += m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  return DensityMatrix(std::move(out));
}

std::pair<Eigen::VectorXd, Eigen::MatrixXcd> eig_hermitian(
    const HermitianOperator& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(op.entries());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

bool is_psd(const HermitianOperator& op, double tol) {
  return min_eigenvalue(op.entries()) >= -tol;
}

double min_eigenvalue(const Eigen::MatrixXcd& hermitian) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      hermitian, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("min_eigenvalue: eigensolver failed");
  return solver.eigenvalues()(0);
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXcd trace_out_first(const Eigen::MatrixXcd& m, int d1, int d2) {
  if (m.rows() != Eigen::Index{d1} * d2 || m.cols() != m.rows())
    throw std::invalid_argument("trace_out_first: dimension mismatch");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d2, d2);
  for (int a = 0; a < d1; ++a)
    out += m.block(Eigen::Index{a} * d2, Eigen::Index{a} * d2, d2, d2);
  return out;
}

Eigen::MatrixXcd trace_out_second(const Eigen::MatrixXcd& m, int d1, int d2) {
  if (m.rows() != Eigen::Index{d1} * d2 || m.cols() != m.rows())
    throw std::invalid_argument("trace_out_second: dimension mismatch");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d1, d1);
  for (int a = 0; a < d1; ++a)
    for (int b = 0; b < d1; ++b) {
      cplx acc = 0.0;
      for (int i = 0; i < d2; ++i)
        acc += m(Eigen::Index{a} * d2 + i, Eigen::Index{b} * d2 + i);
      out(a, b) = acc;
    }
  return out;
}

}  // namespace qotm
