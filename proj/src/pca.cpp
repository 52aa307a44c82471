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

#include "qembed/pca.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "qembed/errors.hpp"

namespace qembed {

namespace {
constexpr double kRankTolerance = 1e-10;
}

PCA PCA::fit(const Eigen::MatrixXd& x, int k) {
  if (k < 1 || k > x.cols()) {
    throw std::invalid_argument("PCA dimension " + std::to_string(k) + " outside [1, " +
                                std::to_string(x.cols()) + "]");
  }
  if (x.rows() < k + 1) {
    throw DataError("PCA to " + std::to_string(k) + " dimensions needs at least " +
                    std::to_string(k + 1) + " rows, got " + std::to_string(x.rows()));
  }
  if (!x.allFinite()) throw DataError("PCA input contains non-finite values");
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Eigen::MatrixXd centered = x.rowwise() - mean;
  const Eigen::MatrixXd cov =
      (centered.transpose() * centered) / static_cast<double>(x.rows() - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) throw NumericalError("PCA eigendecomposition failed");

  // Eigen sorts ascending; take the last k in reverse.
  const Eigen::Index d = x.cols();
  const double top = eig.eigenvalues()(d - 1);
  Eigen::MatrixXd comps(d, k);
  Eigen::VectorXd var(k);
  for (int c = 0; c < k; ++c) {
    const double lambda = eig.eigenvalues()(d - 1 - c);
    if (!(lambda > kRankTolerance * std::max(1.0, top))) {
      throw DataError("PCA input has rank " + std::to_string(c) + " < " + std::to_string(k));
    }
    Eigen::VectorXd v = eig.eigenvectors().col(d - 1 - c);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0.0) v = -v;
    comps.col(c) = v;
    var(c) = lambda;
  }
  return PCA(mean, comps, var);
}

PCA::PCA(Eigen::RowVectorXd mean, Eigen::MatrixXd components, Eigen::VectorXd explained_variance)
    : mean_(std::move(mean)),
      components_(std::move(components)),
      explained_variance_(std::move(explained_variance)) {
  if (components_.rows() != mean_.size() || explained_variance_.size() != components_.cols()) {
    throw std::invalid_argument("inconsistent PCA shapes");
  }
}

Eigen::MatrixXd PCA::transform(const Eigen::MatrixXd& x) const {
  if (x.cols() != mean_.size()) {
    throw std::invalid_argument("PCA expects " + std::to_string(mean_.size()) +
                                " columns, got " + std::to_string(x.cols()));
  }
  return (x.rowwise() - mean_) * components_;
}

Eigen::MatrixXd PCA::inverse_transform(const Eigen::MatrixXd& projected) const {
  if (projected.cols() != components_.cols()) {
    throw std::invalid_argument("projected width does not match PCA dimension");
  }
  return (projected * components_.transpose()).rowwise() + mean_;
}

}  // namespace qembed
