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

// Gram-matrix construction. The public builders parallelize over rows with
// OpenMP; every entry is computed by exactly one thread with the same
// arithmetic as the serial reference in qembed/serial/reference.hpp, so
// results are bit-identical to it.

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qembed/qcore.hpp"

namespace qembed {

enum class KernelKind { Fidelity, PQK, RBF, Linear };

std::string to_string(KernelKind kind);
KernelKind parse_kernel_kind(const std::string& text);

inline constexpr double kGramSymmetryTolerance = 1e-10;
inline constexpr double kGramDiagonalTolerance = 1e-10;
inline constexpr double kGramPsdTolerance = -1e-8;

class GramMatrix {
 public:
  /// Validates symmetry, unit diagonal (all kinds except Linear) and
  /// smallest eigenvalue >= kGramPsdTolerance; throws NumericalError with
  /// diagnostics otherwise.
  GramMatrix(KernelKind kind, Eigen::MatrixXd entries,
             std::map<std::string, double> params = {});

  KernelKind kind() const { return kind_; }
  Eigen::Index size() const { return entries_.rows(); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }
  const std::map<std::string, double>& params() const { return params_; }
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  KernelKind kind_;
  Eigen::MatrixXd entries_;
  std::map<std::string, double> params_;
  double min_eigenvalue_ = 0.0;
};

GramMatrix fidelity_gram(std::span<const StateVector> states);

double rbf_entry(std::span<const double> h_i, std::span<const double> h_j,
                 double gamma = 1.0);
/// Rows of `features` are samples.
GramMatrix rbf_gram(const Eigen::MatrixXd& features, double gamma);
GramMatrix linear_gram(const Eigen::MatrixXd& features);

enum class VarianceMode { Pooled, PerObservable };

/// Row per state: <X_0>, <Y_0>, <Z_0>, <X_1>, ...
Eigen::MatrixXd pauli_expectations(std::span<const StateVector> states);

/// gamma = 1 / (Var(v) d). Pooled: population variance over every entry of
/// `expectations`. PerObservable: mean of the per-column population
/// variances. Throws NumericalError when the variance is zero.
double pqk_gamma(const Eigen::MatrixXd& expectations, int d,
                 VarianceMode mode = VarianceMode::Pooled);

/// sum_k ||rho_k(a) - rho_k(b)||_F^2 from 1-qubit reduced density matrices.
double pqk_exponent_frobenius(const StateVector& a, const StateVector& b);
/// (1/2) sum_k sum_P (<P_k>_a - <P_k>_b)^2; algebraically equal to the above.
double pqk_exponent_pauli(const StateVector& a, const StateVector& b);

GramMatrix pqk_gram(std::span<const StateVector> states, double gamma);

// Rectangular kernels between evaluation rows and training columns, used to
// score held-out samples.
Eigen::MatrixXd fidelity_cross(std::span<const StateVector> rows,
                               std::span<const StateVector> cols);
Eigen::MatrixXd pqk_cross(std::span<const StateVector> rows,
                          std::span<const StateVector> cols, double gamma);
Eigen::MatrixXd rbf_cross(const Eigen::MatrixXd& rows, const Eigen::MatrixXd& cols,
                          double gamma);
Eigen::MatrixXd linear_cross(const Eigen::MatrixXd& rows, const Eigen::MatrixXd& cols);

/// Binary cache: "QEGRAM01", u32 version, u32 kind, u64 N, u32 param count,
/// then per param (u32 key length, key bytes, f64 value), then N*N f64
/// row-major. Little-endian.
void write_gram(const std::filesystem::path& path, const GramMatrix& gram);
GramMatrix read_gram(const std::filesystem::path& path);

}  // namespace qembed
