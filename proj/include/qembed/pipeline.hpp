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

// End-to-end experiment runs: sample selection, splitting, embedding
// training, classifier training and scoring, repeated over seeds.
//
// Every run uses one split drawn with `split_seed`; the repetition seeds only
// change initialization and minibatch order.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qembed/config.hpp"
#include "qembed/dataset.hpp"
#include "qembed/kernels.hpp"
#include "qembed/pca.hpp"
#include "qembed/report.hpp"

namespace qembed {

struct RunOptions {
  /// Receives progress lines; seeds log in seed order once they finish.
  std::function<void(const std::string&)> log;
};

/// Target filter, activator cap and (unless ratio_after_split) ratio
/// sampling, all seeded by split_seed.
std::vector<Sample> select_samples(const std::vector<Sample>& all, const ExperimentConfig& config);

struct PreparedData {
  LabeledData train, val, test;  // standardized with train statistics
  Standardizer scaler;
  std::vector<Sample> selected;
  SplitIndices split;
};

PreparedData prepare_data(const std::vector<Sample>& all, const ExperimentConfig& config);

/// Angle preprocessing for quantum SVM rows: PCA to n_qubits, then a
/// z-score of the components. Both steps are fitted on `fit_rows` only.
struct AngleTransform {
  PCA pca;
  Standardizer scale;

  static AngleTransform fit(const Eigen::MatrixXd& fit_rows, int n_qubits);
  Eigen::MatrixXd angles(const Eigen::MatrixXd& x) const;
};

/// Map inputs from per-qubit angles: the angles themselves for ZZ; for XYZ
/// the angles followed by (pi - a_k)(pi - a_k+1)/2 chain terms and a zero.
Eigen::MatrixXd map_inputs(const Eigen::MatrixXd& angles, FeatureMapKind kind);

/// Gram matrix an SVM row trains on (training plus validation rows),
/// built exactly as run_condition builds it.
GramMatrix svm_training_gram(const ExperimentConfig& config, const PreparedData& data,
                             std::map<std::string, double>* diagnostics = nullptr);

/// Human-readable statement of the protocol choices, copied into reports.
std::vector<std::string> protocol_notes(const ExperimentConfig& config);

/// Row label such as "SVM_PQK_ZZ q4" or "SVM_RBF pca4".
std::string row_label(const ExperimentConfig& config);

RunReport run_condition(const ExperimentConfig& config, const RunOptions& options = {});
RunReport run_condition(const ExperimentConfig& config, const std::vector<Sample>& samples,
                        const RunOptions& options = {});

/// The twelve COVID-19 kernel-SVM rows (4 and 8 qubits for each quantum
/// kernel; classical kernels with 4-dim PCA and without PCA).
std::vector<ExperimentConfig> covid_battery_configs(const ExperimentConfig& base);
/// QCNN, RBF single-layer and the three pretrained variants (ZZ and XYZ).
std::vector<ExperimentConfig> litpcba_battery_configs(const ExperimentConfig& base);

BatteryReport run_battery(const std::string& name, const std::vector<ExperimentConfig>& rows,
                          const RunOptions& options = {});

/// 0 for a complete report, 1 otherwise.
int exit_code(const std::string& status);

}  // namespace qembed
