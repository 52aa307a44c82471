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

// One affine layer with a logistic output, trained on binary cross-entropy
// with logits. Optionally trained jointly with an encoder in front of it.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qembed/dataset.hpp"
#include "qembed/encoder.hpp"
#include "qembed/optim.hpp"

namespace qembed {

struct LogisticHead {
  Eigen::VectorXd weight;
  double bias = 0.0;

  static LogisticHead zeros(int dim);

  int input_dim() const { return static_cast<int>(weight.size()); }
  double logit(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  double probability(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  /// +1 when the probability is at least 0.5.
  int predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  std::vector<int> predict_rows(const Eigen::MatrixXd& x) const;

  /// weight then bias
  Eigen::VectorXd parameters() const;
  void set_parameters(const Eigen::VectorXd& flat);
};

/// Mean BCE with logits; label +1 is the positive target.
double bce_with_logits(const LogisticHead& head, const Eigen::MatrixXd& x,
                       std::span<const int> labels);

struct HeadGradient {
  double loss = 0.0;
  Eigen::VectorXd d_weight;
  double d_bias = 0.0;
  /// dL/dx per row, used to chain into an encoder.
  Eigen::MatrixXd d_input;
};
HeadGradient bce_with_logits_gradient(const LogisticHead& head, const Eigen::MatrixXd& x,
                                      std::span<const int> labels);

struct SingleLayerResult {
  LogisticHead head;
  LossHistory history;
  int best_epoch = 0;
  int epochs_run = 0;
};

/// Minibatch Adam (`config.batch_pairs` samples per step) with early
/// stopping on the validation loss. Throws NumericalError on divergence.
SingleLayerResult single_layer_train(const LogisticHead& initial, const Eigen::MatrixXd& train_x,
                                     std::span<const int> train_y, const Eigen::MatrixXd& val_x,
                                     std::span<const int> val_y, const TrainConfig& config);

struct JointGradient {
  double loss = 0.0;
  GradientRecord encoder;
  Eigen::VectorXd d_weight;
  double d_bias = 0.0;
};

/// BCE of head(encoder(x)) and its gradient w.r.t. both parameter sets.
double joint_bce(const EncoderNetwork& encoder, const LogisticHead& head,
                 const LabeledData& data);
JointGradient joint_bce_gradient(const EncoderNetwork& encoder, const LogisticHead& head,
                                 const LabeledData& data);

struct JointResult {
  EncoderNetwork encoder;
  LogisticHead head;
  LossHistory history;
  int best_epoch = 0;
  int epochs_run = 0;
};

JointResult joint_train(const EncoderNetwork& encoder, const LogisticHead& head,
                        const LabeledData& train, const LabeledData& val,
                        const TrainConfig& config);

}  // namespace qembed
