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

#include <Eigen/Dense>

namespace qembed {

/// Principal-component projection fitted on training rows.
///
/// Components are the top-k eigenvectors of the sample covariance, ordered
/// by descending eigenvalue. Each component's largest-magnitude coordinate
/// is made positive so fits serialize reproducibly.
class PCA {
 public:
  /// Throws DataError when the centered data has rank below k or when
  /// there are fewer than k + 1 rows.
  static PCA fit(const Eigen::MatrixXd& x, int k);

  PCA(Eigen::RowVectorXd mean, Eigen::MatrixXd components, Eigen::VectorXd explained_variance);

  int input_dim() const { return static_cast<int>(mean_.size()); }
  int output_dim() const { return static_cast<int>(components_.cols()); }
  const Eigen::RowVectorXd& mean() const { return mean_; }
  /// input_dim x k, orthonormal columns.
  const Eigen::MatrixXd& components() const { return components_; }
  const Eigen::VectorXd& explained_variance() const { return explained_variance_; }

  Eigen::MatrixXd transform(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd inverse_transform(const Eigen::MatrixXd& projected) const;

 private:
  Eigen::RowVectorXd mean_;
  Eigen::MatrixXd components_;
  Eigen::VectorXd explained_variance_;
};

}  // namespace qembed
