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

// Shared helpers for the unit and acceptance tests.

#include <cmath>
#include <algorithm>
#include <complex>
#include <initializer_list>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "qembed/qcore.hpp"

namespace qembed::testing {

inline StateVector random_state(int n_qubits, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> amps(std::size_t{1} << n_qubits);
  double norm = 0.0;
  for (auto& a : amps) {
    a = {g(rng), g(rng)};
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  return StateVector::from_amplitudes(std::move(amps));
}

inline Eigen::VectorXcd to_vector(const StateVector& s) {
  Eigen::VectorXcd v(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
  return v;
}

inline Eigen::MatrixXcd pauli_matrix(PauliAxis axis) {
  Eigen::MatrixXcd p(2, 2);
  const cplx i(0, 1);
  switch (axis) {
    case PauliAxis::X: p << 0, 1, 1, 0; break;
    case PauliAxis::Y: p << 0, -i, i, 0; break;
    case PauliAxis::Z: p << 1, 0, 0, -1; break;
  }
  return p;
}

/// Dense operator acting with `op` on `qubit` (qubit 0 is the leftmost factor).
inline Eigen::MatrixXcd embed_operator(int n_qubits, int qubit, const Eigen::MatrixXcd& op) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) {
    const Eigen::MatrixXcd f = q == qubit ? op : Eigen::MatrixXcd::Identity(2, 2);
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index c = 0; c < out.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = out(r, c) * f;
    out = next;
  }
  return out;
}

/// Relative error with an absolute floor so near-zero derivatives compare sanely.
inline double rel_error(double a, double b) {
  return std::abs(a - b) / std::max(1e-3, std::max(std::abs(a), std::abs(b)));
}

// Dense matrix-exponential oracles built from the layer Hamiltonians.

inline Eigen::MatrixXcd expi(const Eigen::MatrixXcd& h) {
  return (Eigen::MatrixXcd(h * std::complex<double>(0, 1))).exp();
}

inline Eigen::MatrixXcd pauli_term(int n, PauliAxis axis, std::initializer_list<int> qubits) {
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(1 << n, 1 << n);
  for (int q : qubits) op = op * embed_operator(n, q, pauli_matrix(axis));
  return op;
}

inline Eigen::VectorXcd oracle_zz(const std::vector<double>& z, int layers) {
  const int n = static_cast<int>(z.size());
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < n; ++i) h += z[i] * pauli_term(n, PauliAxis::Z, {i});
  for (int k = 0; k + 1 < n; ++k)
    h += (std::numbers::pi - z[k]) * (std::numbers::pi - z[k + 1]) / 2.0 *
         pauli_term(n, PauliAxis::Z, {k, k + 1});
  Eigen::MatrixXcd hadamards = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd had(2, 2);
  had << 1, 1, 1, -1;
  had /= std::sqrt(2.0);
  for (int q = 0; q < n; ++q) hadamards = hadamards * embed_operator(n, q, had);
  const Eigen::MatrixXcd layer = expi(h) * hadamards;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(0) = 1.0;
  for (int l = 0; l < layers; ++l) v = layer * v;
  return v;
}

inline Eigen::VectorXcd oracle_xyz(const std::vector<double>& z, int n, int layers) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd layer = Eigen::MatrixXcd::Identity(dim, dim);
  for (auto axis : kPauliAxes) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 0; k < n; ++k) h += z[k] * pauli_term(n, axis, {k});
    for (int k = 0; k + 1 < n; ++k) h += z[n + k] * pauli_term(n, axis, {k, k + 1});
    layer = expi(h) * layer;
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(0) = 1.0;
  for (int l = 0; l < layers; ++l) v = layer * v;
  return v;
}

// Projected gradient ascent on the dual with an exact projection onto
// {0 <= a <= C, y.a = 0} found by bisection on the multiplier.
inline std::vector<double> qp_oracle(const Eigen::MatrixXd& k, const std::vector<int>& y, double C) {
  const int n = static_cast<int>(y.size());
  Eigen::MatrixXd q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q(i, j) = y[i] * y[j] * k(i, j);
  const double lmax = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(q).eigenvalues().maxCoeff();
  const double step = 1.0 / std::max(lmax, 1e-12);
  auto project = [&](const Eigen::VectorXd& v) {
    auto at = [&](double mu) {
      Eigen::VectorXd a(n);
      for (int i = 0; i < n; ++i) a(i) = std::clamp(v(i) - mu * y[i], 0.0, C);
      return a;
    };
    auto residual = [&](double mu) {
      const Eigen::VectorXd a = at(mu);
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += y[i] * a(i);
      return s;
    };
    double lo = -1e6, hi = 1e6;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (residual(mid) > 0 ? lo : hi) = mid;
    }
    return at(0.5 * (lo + hi));
  };
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
  for (int it = 0; it < 200000; ++it) {
    const Eigen::VectorXd next = project(a + step * (Eigen::VectorXd::Ones(n) - q * a));
    const double moved = (next - a).cwiseAbs().maxCoeff();
    a = next;
    if (moved < 1e-14) break;
  }
  return {a.data(), a.data() + n};
}

}  // namespace qembed::testing
