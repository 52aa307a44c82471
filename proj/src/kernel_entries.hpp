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

// Per-entry arithmetic shared by the parallel builders and the serial
// reference so both produce identical bits.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "qembed/qcore.hpp"

namespace qembed::detail {

// Bloch vector per qubit, layout matching pauli_expectations().
inline std::vector<double> bloch_vectors(const StateVector& s) {
  std::vector<double> v;
  v.reserve(3 * static_cast<std::size_t>(s.n_qubits()));
  for (int q = 0; q < s.n_qubits(); ++q) {
    for (PauliAxis axis : kPauliAxes) v.push_back(pauli_expectation(s, q, axis));
  }
  return v;
}

inline std::vector<Eigen::Matrix2cd> reduced_matrices(const StateVector& s) {
  std::vector<Eigen::Matrix2cd> out;
  out.reserve(static_cast<std::size_t>(s.n_qubits()));
  for (int q = 0; q < s.n_qubits(); ++q) out.push_back(reduced_density_1q(s, q).entries());
  return out;
}

inline double frobenius_exponent(const std::vector<Eigen::Matrix2cd>& a,
                                 const std::vector<Eigen::Matrix2cd>& b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += (a[k] - b[k]).squaredNorm();
  return acc;
}

inline double fidelity_entry(const StateVector& a, const StateVector& b) {
  return fidelity(a, b);
}

inline double rbf_value(const Eigen::MatrixXd& x, Eigen::Index i, const Eigen::MatrixXd& y,
                        Eigen::Index j, double gamma) {
  double d2 = 0.0;
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    const double d = x(i, c) - y(j, c);
    d2 += d * d;
  }
  return std::exp(-gamma * d2);
}

inline double linear_value(const Eigen::MatrixXd& x, Eigen::Index i, const Eigen::MatrixXd& y,
                           Eigen::Index j) {
  double acc = 0.0;
  for (Eigen::Index c = 0; c < x.cols(); ++c) acc += x(i, c) * y(j, c);
  return acc;
}

}  // namespace qembed::detail
