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

#pragma once

// Dense pure-state and density-matrix primitives.
//
// Qubit ordering: qubit 0 is the most significant bit of the amplitude
// index, so for n qubits the amplitude of |b_0 b_1 ... b_{n-1}> sits at
// index sum_q b_q * 2^(n-1-q). Two-qubit gates act on the local basis
// |b_a b_b> with qubit_a as the high bit.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qembed {

using cplx = std::complex<double>;
using Gate1 = Eigen::Matrix2cd;
using Gate2 = Eigen::Matrix4cd;

inline constexpr int kMaxQubits = 16;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-10;

enum class PauliAxis { X, Y, Z };

inline constexpr PauliAxis kPauliAxes[] = {PauliAxis::X, PauliAxis::Y, PauliAxis::Z};

/// Bit mask selecting `qubit` in an amplitude index of an n-qubit register.
inline std::size_t qubit_mask(int n_qubits, int qubit) {
  return std::size_t{1} << (n_qubits - 1 - qubit);
}

class StateVector {
 public:
  /// |0...0> on n qubits.
  static StateVector zero(int n_qubits);
  /// Computational basis state |index>.
  static StateVector basis(int n_qubits, std::size_t index);
  /// Takes ownership of `amplitudes`; throws std::invalid_argument unless the
  /// length is a power of two and the norm is 1 within kNormTolerance.
  static StateVector from_amplitudes(std::vector<cplx> amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  cplx operator[](std::size_t i) const { return amplitudes_[i]; }
  double norm() const;

 private:
  StateVector(int n_qubits, std::vector<cplx> amplitudes)
      : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {}

  int n_qubits_ = 0;
  std::vector<cplx> amplitudes_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-10), unit trace (1e-10) and eigenvalues >= -1e-9.
  explicit DensityMatrix(Eigen::MatrixXcd entries);

  static DensityMatrix pure(const StateVector& state);
  /// Uniform mixture of pure states; all states must share n_qubits.
  static DensityMatrix mixture(std::span<const StateVector> states);

  int n_qubits() const { return n_qubits_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }

 private:
  int n_qubits_ = 0;
  Eigen::MatrixXcd entries_;
};

namespace gates {
Gate1 identity();
Gate1 hadamard();
Gate1 pauli(PauliAxis axis);
Gate1 s();
Gate1 s_dagger();
/// exp(-i theta/2 sigma_axis)
Gate1 rotation(PauliAxis axis, double theta);
/// diag(e^{i phi}, e^{-i phi}) = exp(i phi Z)
Gate1 z_phase(double phi);
/// Control is the high bit of the local basis.
Gate2 cnot();
/// exp(i phi Z (x) Z)
Gate2 zz_phase(double phi);
}  // namespace gates

bool is_unitary(const Eigen::MatrixXcd& m, double tolerance = kUnitaryTolerance);

StateVector apply_one_qubit(const StateVector& state, int qubit, const Gate1& gate);
StateVector apply_two_qubit(const StateVector& state, int qubit_a, int qubit_b,
                            const Gate2& gate);

cplx inner_product(const StateVector& bra, const StateVector& ket);
/// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

DensityMatrix reduced_density_1q(const StateVector& state, int keep);

/// (1/2) sum |lambda_i| over the eigenvalues of rho - sigma.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// <psi| P_qubit |psi>, evaluated directly on the amplitudes.
double pauli_expectation(const StateVector& state, int qubit, PauliAxis axis);

}  // namespace qembed
