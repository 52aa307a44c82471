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

#include "qembed/serial/reference.hpp"

#include <cmath>

#include "../kernel_entries.hpp"

namespace qembed::serial {

Eigen::MatrixXd fidelity_gram(std::span<const StateVector> states) {
  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      k(i, j) = k(j, i) = detail::fidelity_entry(states[i], states[j]);
    }
  }
  return k;
}

Eigen::MatrixXd pqk_gram(std::span<const StateVector> states, double gamma) {
  const auto n = static_cast<Eigen::Index>(states.size());
  std::vector<std::vector<Eigen::Matrix2cd>> rdm;
  for (const StateVector& s : states) rdm.push_back(detail::reduced_matrices(s));
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      k(i, j) = k(j, i) = std::exp(-gamma * detail::frobenius_exponent(rdm[i], rdm[j]));
    }
  }
  return k;
}

Eigen::MatrixXd rbf_gram(const Eigen::MatrixXd& features, double gamma) {
  const Eigen::Index n = features.rows();
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      k(i, j) = k(j, i) = detail::rbf_value(features, i, features, j, gamma);
    }
  }
  return k;
}

Eigen::MatrixXd linear_gram(const Eigen::MatrixXd& features) {
  const Eigen::Index n = features.rows();
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      k(i, j) = k(j, i) = detail::linear_value(features, i, features, j);
    }
  }
  return k;
}

std::vector<StateVector> embed_rows(const Eigen::MatrixXd& angles, const FeatureMapSpec& spec) {
  std::vector<StateVector> out;
  out.reserve(static_cast<std::size_t>(angles.rows()));
  std::vector<double> z(static_cast<std::size_t>(angles.cols()));
  for (Eigen::Index r = 0; r < angles.rows(); ++r) {
    for (Eigen::Index c = 0; c < angles.cols(); ++c) z[c] = angles(r, c);
    out.push_back(embed(z, spec));
  }
  return out;
}

}  // namespace qembed::serial
