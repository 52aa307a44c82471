// Copyright 2026 The qembed Authors
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

#include "qembed/qcore.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qembed/statevector_kernels.hpp"

namespace qembed {

namespace {

int log2_exact(std::size_t dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("amplitude count " + std::to_string(dim) +
                                " is not a power of two >= 2");
  }
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

void check_qubit(int n_qubits, int qubit) {
  if (qubit < 0 || qubit >= n_qubits) {
    throw std::out_of_range("qubit index " + std::to_string(qubit) +
                            " out of range for " + std::to_string(n_qubits) + " qubits");
  }
}

void check_qubit_count(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count " + std::to_string(n_qubits) +
                                " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
}

}  // namespace

StateVector StateVector::zero(int n_qubits) { return basis(n_qubits, 0); }

StateVector StateVector::basis(int n_qubits, std::size_t index) {
  check_qubit_count(n_qubits);
  std::vector<cplx> amps(std::size_t{1} << n_qubits);
  if (index >= amps.size()) throw std::out_of_range("basis index out of range");
  amps[index] = 1.0;
  return StateVector(n_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<cplx> amplitudes) {
  const int n = log2_exact(amplitudes.size());
  check_qubit_count(n);
  StateVector s(n, std::move(amplitudes));
  const double nrm = s.norm();
  if (!(std::abs(nrm - 1.0) <= kNormTolerance)) {
    throw std::invalid_argument("state norm " + std::to_string(nrm) + " differs from 1");
  }
  return s;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const cplx& a : amplitudes_) acc += std::norm(a);
  return std::sqrt(acc);
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("density matrix must be square");
  }
  n_qubits_ = log2_exact(static_cast<std::size_t>(entries_.rows()));
  const double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10) {
    throw std::invalid_argument("density matrix is not Hermitian (deviation " +
                                std::to_string(herm) + ")");
  }
  const cplx tr = entries_.trace();
  if (std::abs(tr - 1.0) > 1e-10) {
    throw std::invalid_argument("density matrix trace " + std::to_string(tr.real()) +
                                " differs from 1");
  }
  const Eigen::MatrixXcd sym = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-9) {
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& state) {
  const auto amps = state.amplitudes();
  Eigen::Map<const Eigen::VectorXcd> v(amps.data(), static_cast<Eigen::Index>(amps.size()));
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::mixture(std::span<const StateVector> states) {
  if (states.empty()) throw std::invalid_argument("mixture of zero states");
  const auto dim = static_cast<Eigen::Index>(states.front().dim());
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  for (const StateVector& s : states) {
    if (static_cast<Eigen::Index>(s.dim()) != dim) {
      throw std::invalid_argument("mixture over states of different dimension");
    }
    Eigen::Map<const Eigen::VectorXcd> v(s.amplitudes().data(), dim);
    acc.selfadjointView<Eigen::Lower>().rankUpdate(v);
  }
  acc = acc.selfadjointView<Eigen::Lower>();
  acc /= static_cast<double>(states.size());
  // Restore exact trace 1 after accumulation drift.
  acc /= acc.trace().real();
  return DensityMatrix(std::move(acc));
}

namespace gates {

Gate1 identity() { return Gate1::Identity(); }

Gate1 hadamard() {
  Gate1 h;
  h << 1, 1, 1, -1;
  return h * M_SQRT1_2;
}

Gate1 pauli(PauliAxis axis) {
  Gate1 p;
  switch (axis) {
    case PauliAxis::X: p << 0, 1, 1, 0; break;
    case PauliAxis::Y: p << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case PauliAxis::Z: p << 1, 0, 0, -1; break;
  }
  return p;
}

Gate1 s() {
  Gate1 g;
  g << 1, 0, 0, cplx(0, 1);
  return g;
}

Gate1 s_dagger() { return s().adjoint(); }

Gate1 rotation(PauliAxis axis, double theta) {
  return std::cos(theta / 2) * Gate1::Identity() -
         cplx(0, std::sin(theta / 2)) * pauli(axis);
}

Gate1 z_phase(double phi) {
  Gate1 g = Gate1::Zero();
  g(0, 0) = std::polar(1.0, phi);
  g(1, 1) = std::polar(1.0, -phi);
  return g;
}

Gate2 cnot() {
  Gate2 g = Gate2::Zero();
  g(0, 0) = g(1, 1) = 1;
  g(2, 3) = g(3, 2) = 1;
  return g;
}

Gate2 zz_phase(double phi) {
  Gate2 g = Gate2::Zero();
  g(0, 0) = g(3, 3) = std::polar(1.0, phi);
  g(1, 1) = g(2, 2) = std::polar(1.0, -phi);
  return g;
}

}  // namespace gates

bool is_unitary(const Eigen::MatrixXcd& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  const Eigen::MatrixXcd err = m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return err.cwiseAbs().maxCoeff() <= tolerance;
}

StateVector apply_one_qubit(const StateVector& state, int qubit, const Gate1& gate) {
  check_qubit(state.n_qubits(), qubit);
  if (!is_unitary(gate)) throw std::invalid_argument("one-qubit gate is not unitary");
  std::vector<cplx> amps(state.amplitudes().begin(), state.amplitudes().end());
  kernels::apply_gate1(amps, state.n_qubits(), qubit, gate);
  return StateVector::from_amplitudes(std::move(amps));
}

StateVector apply_two_qubit(const StateVector& state, int qubit_a, int qubit_b,
                            const Gate2& gate) {
  check_qubit(state.n_qubits(), qubit_a);
  check_qubit(state.n_qubits(), qubit_b);
  if (qubit_a == qubit_b) throw std::invalid_argument("two-qubit gate on equal indices");
  if (!is_unitary(gate)) throw std::invalid_argument("two-qubit gate is not unitary");
  std::vector<cplx> amps(state.amplitudes().begin(), state.amplitudes().end());
  kernels::apply_gate2(amps, state.n_qubits(), qubit_a, qubit_b, gate);
  return StateVector::from_amplitudes(std::move(amps));
}

cplx inner_product(const StateVector& bra, const StateVector& ket) {
  if (bra.n_qubits() != ket.n_qubits()) {
    throw std::invalid_argument("inner product of states with different qubit counts");
  }
  return kernels::dot(bra.amplitudes(), ket.amplitudes());
}

double fidelity(const StateVector& a, const StateVector& b) {
  const cplx ov = inner_product(a, b);
  return ov.real() * ov.real() + ov.imag() * ov.imag();
}

DensityMatrix reduced_density_1q(const StateVector& state, int keep) {
  check_qubit(state.n_qubits(), keep);
  const std::size_t mask = qubit_mask(state.n_qubits(), keep);
  const auto amps = state.amplitudes();
  cplx r00 = 0.0, r01 = 0.0, r11 = 0.0;
  for (std::size_t i0 = 0; i0 < amps.size(); ++i0) {
    if (i0 & mask) continue;
    const cplx a = amps[i0];
    const cplx b = amps[i0 | mask];
    r00 += std::norm(a);
    r11 += std::norm(b);
    r01 += a * std::conj(b);
  }
  Eigen::Matrix2cd rho;
  rho << r00, r01, std::conj(r01), r11;
  return DensityMatrix(rho);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.entries().rows() != sigma.entries().rows()) {
    throw std::invalid_argument("trace distance between matrices of different dimension");
  }
  const Eigen::MatrixXcd diff = rho.entries() - sigma.entries();
  const Eigen::MatrixXcd sym = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym, Eigen::EigenvaluesOnly);
  const double td = 0.5 * solver.eigenvalues().cwiseAbs().sum();
  return std::min(td, 1.0);
}

double pauli_expectation(const StateVector& state, int qubit, PauliAxis axis) {
  check_qubit(state.n_qubits(), qubit);
  const std::size_t mask = qubit_mask(state.n_qubits(), qubit);
  const auto amps = state.amplitudes();
  double acc = 0.0;
  for (std::size_t i0 = 0; i0 < amps.size(); ++i0) {
    if (i0 & mask) continue;
    const cplx a = amps[i0];
    const cplx b = amps[i0 | mask];
    switch (axis) {
      case PauliAxis::X: acc += 2.0 * (std::conj(a) * b).real(); break;
      case PauliAxis::Y: acc += 2.0 * (std::conj(a) * b).imag(); break;
      case PauliAxis::Z: acc += std::norm(a) - std::norm(b); break;
    }
  }
  return acc;
}

}  // namespace qembed
