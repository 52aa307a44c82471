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

// Experiment configuration and its flat key=value text form.
//
// File format: one `key = value` per line, `#` starts a comment, blank lines
// are ignored, unknown keys are errors. `qembed run --help-keys` lists every
// key with its default.

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "qembed/dataset.hpp"
#include "qembed/encoder.hpp"
#include "qembed/featuremap.hpp"
#include "qembed/kernels.hpp"
#include "qembed/optim.hpp"

namespace qembed {

enum class Condition {
  NQE_ZZ_QCNN,
  NQE_XYZ_QCNN,
  RBF_SingleLayer,
  QPre1_FineTuneRBF,
  QPre2_Frozen,
  QPre3_Joint,
  SVM_ZZ,
  SVM_PQK_ZZ,
  SVM_XYZ,
  SVM_PQK_XYZ,
  SVM_RBF,
  SVM_Linear,
};

std::string to_string(Condition c);
Condition parse_condition(const std::string& text);
const std::vector<Condition>& all_conditions();

bool is_svm(Condition c);
bool is_quantum_svm(Condition c);
bool uses_qcnn(Condition c);
bool is_pretrained_variant(Condition c);

struct ExperimentConfig {
  std::string dataset;
  std::string target;  // empty keeps every target
  Condition condition = Condition::SVM_PQK_ZZ;
  ClassRatio class_ratio = ClassRatio::AsIs;
  bool ratio_after_split = false;
  int n_qubits = 0;  // 0 picks 8 for QCNN/encoder conditions, 4 for SVM rows
  int layers = 0;    // 0 picks the map default
  FeatureMapKind feature_map = FeatureMapKind::ZZ;  // map behind QPre* encoders
  int pca_dims = 0;  // classical SVM rows only; 0 skips PCA
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  std::uint64_t split_seed = 0;
  SplitFractions split;
  int max_activators = 200;  // 0 disables the cap
  double svm_c = 1.0;
  double svm_tolerance = 1e-5;
  VarianceMode pqk_variance = VarianceMode::Pooled;
  std::vector<int> encoder_hidden{64, 32};
  Activation encoder_activation = Activation::Tanh;
  /// Small initial outputs start every sample near the same embedded state.
  double encoder_output_scale = 0.01;
  TrainConfig embed_train{1e-2, 32, 100, 40, 4, 0, Optimizer::Adam};
  TrainConfig classifier_train{1e-2, 32, 100, 40, 4, 0, Optimizer::Adam};
  GradientMethod gradient = GradientMethod::Adjoint;
  int td_cap = 512;
  std::string nqe_encoder;  // optional pre-trained encoder for QPre*
  std::string output_dir;   // not part of the fingerprint
  bool write_artifacts = true;

  int resolved_qubits() const;
  int resolved_layers() const;
  /// Map used by the condition's encoder or kernel.
  FeatureMapSpec feature_map_spec() const;

  /// Throws ConfigError naming the offending key.
  void set(const std::string& key, const std::string& value);
  void validate() const;

  /// Sorted key/value pairs; every key appears.
  std::vector<std::pair<std::string, std::string>> entries() const;
  /// `key=value` lines in key order, excluding output_dir.
  std::string canonical() const;
  /// FNV-1a 64 of canonical(), as 16 hex digits.
  std::string fingerprint() const;
};

struct ConfigKeyInfo {
  std::string key;
  std::string description;
};
const std::vector<ConfigKeyInfo>& config_keys();

ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace qembed
