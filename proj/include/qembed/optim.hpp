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

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qembed {

enum class Optimizer { Adam };

struct TrainConfig {
  double learning_rate = 1e-2;
  /// Pairs per step for pair losses; samples per step otherwise.
  int batch_pairs = 32;
  int max_epochs = 200;
  int patience = 40;
  int steps_per_epoch = 4;
  std::uint64_t seed = 0;
  Optimizer optimizer = Optimizer::Adam;

  /// Throws ConfigError on non-positive sizes or a negative rate.
  void validate() const;
};

class Adam {
 public:
  Adam(Eigen::Index n_params, double learning_rate, double beta1 = 0.9,
       double beta2 = 0.999, double epsilon = 1e-8);

  void step(Eigen::VectorXd& params, const Eigen::VectorXd& grad);

 private:
  double lr_, beta1_, beta2_, eps_;
  Eigen::VectorXd m_, v_;
  long t_ = 0;
};

/// Tracks the best validation loss; training stops once `patience` epochs
/// pass without a strict improvement.
class EarlyStopping {
 public:
  explicit EarlyStopping(int patience);

  /// Returns true when `loss` improves on the best so far.
  bool observe(int epoch, double loss);
  bool should_stop(int epoch) const { return epoch - best_epoch_ >= patience_; }
  int best_epoch() const { return best_epoch_; }
  double best_loss() const { return best_loss_; }

 private:
  int patience_;
  int best_epoch_ = 0;
  double best_loss_ = std::numeric_limits<double>::infinity();
};

struct EpochLoss {
  int epoch = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;
};

struct LossHistory {
  std::vector<EpochLoss> rows;

  /// "epoch,train_loss,val_loss" header then one line per epoch.
  std::string to_csv() const;
  void write_csv(const std::filesystem::path& path) const;
};

}  // namespace qembed
