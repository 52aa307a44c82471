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

// ZZ and XYZ embedding circuits driven by encoder outputs.
//
// ZZ layer:  exp(i sum_i phi_i Z_i + i sum_k phi_k,k+1 Z_k Z_k+1) H^n,
//            phi_i = z_i, phi_k,k+1 = (pi - z_k)(pi - z_k+1)/2.
// XYZ layer: E_Z E_Y E_X with E_P = exp(i sum_k z_k P_k + i sum_k z_{n+k} P_k P_k+1),
//            E_X applied first. Starts from |0...0>; no Hadamards.
//
// Pairs are the linear chain (k, k+1), k = 0..n-2. The XYZ input has 2n
// entries; z[2n-1] has no coupling to attach to on an open chain and is
// ignored.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qembed/qcore.hpp"

namespace qembed {

enum class FeatureMapKind { ZZ, XYZ };
enum class Entanglement { Linear };

std::string to_string(FeatureMapKind kind);
FeatureMapKind parse_feature_map_kind(const std::string& text);

struct FeatureMapSpec {
  FeatureMapKind kind = FeatureMapKind::ZZ;
  int n_qubits = 4;
  int layers = 3;
  Entanglement entanglement = Entanglement::Linear;

  static FeatureMapSpec zz(int n_qubits, int layers = 3);
  static FeatureMapSpec xyz(int n_qubits, int layers = 2);

  /// Encoder output width this map consumes: n for ZZ, 2n for XYZ.
  int input_dim() const { return kind == FeatureMapKind::ZZ ? n_qubits : 2 * n_qubits; }
  std::vector<std::pair<int, int>> pairs() const;
  void validate() const;
};

struct AngleVector {
  std::vector<double> singles;
  std::vector<double> pairs;
};

AngleVector zz_angles(std::span<const double> z);

StateVector embed_zz(std::span<const double> z, const FeatureMapSpec& spec);
StateVector embed_xyz(std::span<const double> z, const FeatureMapSpec& spec);
StateVector embed(std::span<const double> z, const FeatureMapSpec& spec);

/// Embeds every row of `angles`; parallel over rows.
std::vector<StateVector> embed_rows(const Eigen::MatrixXd& angles, const FeatureMapSpec& spec);

enum class GradientMethod { Adjoint, FiniteDifference };

struct FidelityGradient {
  double fidelity = 0.0;
  std::vector<double> d_left;   // dF/dz_left
  std::vector<double> d_right;  // dF/dz_right
};

/// F = |<psi(z_left)|psi(z_right)>|^2 and its gradient with respect to both
/// angle inputs. The finite-difference path uses central differences with
/// step 1e-6 and is kept as a cross-check.
FidelityGradient fidelity_gradient(std::span<const double> z_left,
                                   std::span<const double> z_right,
                                   const FeatureMapSpec& spec,
                                   GradientMethod method = GradientMethod::Adjoint);

}  // namespace qembed
