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

// Embedding trainers: fidelity-based NQE loss and RBF kernel-target
// alignment, both minimized over the encoder weights with Adam.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "qembed/dataset.hpp"
#include "qembed/encoder.hpp"
#include "qembed/featuremap.hpp"
#include "qembed/optim.hpp"

namespace qembed {

struct IndexPair {
  int i = 0;
  int j = 0;
  bool operator==(const IndexPair&) const = default;
};

class PairBatch {
 public:
  /// Requires 0 <= i < j < n_samples and no repeated pair.
  PairBatch(std::vector<IndexPair> pairs, int n_samples);

  /// Draws up to `size` distinct pairs, about half same-class and half
  /// cross-class, so both residual types appear under class imbalance.
  static PairBatch sample(std::span<const int> labels, int size, std::mt19937_64& rng);

  std::span<const IndexPair> pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }

 private:
  std::vector<IndexPair> pairs_;
};

/// mean over pairs of (|<x_i|x_j>|^2 - (1 + y_i y_j)/2)^2
double nqe_loss(const EncoderNetwork& encoder, const FeatureMapSpec& map,
                std::span<const IndexPair> pairs, const LabeledData& data);

struct LossGradient {
  double loss = 0.0;
  GradientRecord grad;
};

LossGradient nqe_loss_and_gradient(const EncoderNetwork& encoder, const FeatureMapSpec& map,
                                   std::span<const IndexPair> pairs, const LabeledData& data,
                                   GradientMethod method = GradientMethod::Adjoint);
GradientRecord nqe_loss_gradient(const EncoderNetwork& encoder, const FeatureMapSpec& map,
                                 std::span<const IndexPair> pairs, const LabeledData& data,
                                 GradientMethod method = GradientMethod::Adjoint);

/// (1/M) sum_{i<j} (exp(-gamma ||h_i - h_j||^2) - [y_i == y_j])^2 over the
/// rows in `rows` (all rows when empty).
double rbf_align_loss(const EncoderNetwork& encoder, const LabeledData& data,
                      std::span<const int> rows = {}, double gamma = 1.0);
LossGradient rbf_align_loss_and_gradient(const EncoderNetwork& encoder,
                                         const LabeledData& data,
                                         std::span<const int> rows = {}, double gamma = 1.0);

enum class EmbeddingObjective { NQE, RBFAlign };

struct EmbeddingTrainOptions {
  GradientMethod gradient = GradientMethod::Adjoint;
  /// Fixed pair count used to score train/validation NQE loss each epoch.
  int eval_pairs = 512;
  /// Cap on samples scored for the RBF train loss each epoch.
  int eval_samples = 512;
};

struct TrainResult {
  EncoderNetwork encoder;  // parameters at the best validation loss
  LossHistory history;     // epoch 0 is the untrained evaluation
  int best_epoch = 0;
  int epochs_run = 0;
};

/// Throws NumericalError when a loss turns NaN.
TrainResult train_embedding(EmbeddingObjective objective, const EncoderNetwork& initial,
                            const std::optional<FeatureMapSpec>& map,
                            const LabeledData& train, const LabeledData& val,
                            const TrainConfig& config, const EmbeddingTrainOptions& options = {});

/// Trace distance between the uniform mixtures of each class's embedded
/// states. At most `cap_per_class` samples per class are drawn (seeded).
double ensemble_trace_distance(const EncoderNetwork& encoder, const FeatureMapSpec& map,
                               const LabeledData& data, std::uint64_t seed = 0,
                               int cap_per_class = 512);

}  // namespace qembed
