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

// Soft-margin kernel SVM on a precomputed Gram matrix, solved with
// sequential minimal optimization (second-order working-set selection).

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qembed/kernels.hpp"

namespace qembed {

struct SVMOptions {
  double C = 1.0;
  /// Stop once the maximal KKT violation drops below this.
  double tolerance = 1e-5;
  long max_iterations = 10'000'000;
};

struct SVMPrediction {
  int label = 0;
  double margin = 0.0;
};

class SVMModel {
 public:
  SVMModel(KernelKind kind, double C, std::vector<double> alpha, std::vector<int> labels,
           double bias, double kkt_residual, long iterations);

  KernelKind kind() const { return kind_; }
  double C() const { return C_; }
  double bias() const { return bias_; }
  std::span<const double> alpha() const { return alpha_; }
  /// alpha_i * y_i for every training sample (zero off the support set).
  std::span<const double> coefficients() const { return coef_; }
  std::span<const int> support() const { return support_; }
  std::size_t training_size() const { return alpha_.size(); }
  double kkt_residual() const { return kkt_residual_; }
  long iterations() const { return iterations_; }

  /// f = sum_i alpha_i y_i K(x_i, x) + b. Throws on a length mismatch.
  double decision(std::span<const double> kernel_row) const;
  /// Label +1 when f > 0, else -1.
  SVMPrediction predict(std::span<const double> kernel_row) const;
  /// One prediction per row of `cross` (rows: samples, cols: training set).
  std::vector<int> predict_rows(const Eigen::MatrixXd& cross) const;

 private:
  KernelKind kind_;
  double C_;
  std::vector<double> alpha_;
  std::vector<double> coef_;
  std::vector<int> support_;
  double bias_;
  double kkt_residual_;
  long iterations_;
};

/// Throws std::invalid_argument on single-class or non +-1 labels or a size
/// mismatch, NumericalError if the solver exhausts its iteration budget.
SVMModel svm_fit(const GramMatrix& gram, std::span<const int> labels,
                 const SVMOptions& options = {});

/// sum alpha - (1/2) sum_ij alpha_i alpha_j y_i y_j K_ij
double svm_dual_objective(const Eigen::MatrixXd& gram, std::span<const int> labels,
                          std::span<const double> alpha);

/// Maximal violating-pair gap of the KKT conditions at `alpha`.
double svm_kkt_residual(const Eigen::MatrixXd& gram, std::span<const int> labels,
                        std::span<const double> alpha, double C);

}  // namespace qembed
