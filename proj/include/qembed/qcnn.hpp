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

// Eight-qubit quantum convolutional classifier.
//
// Layout, with active qubits halving 8 -> 4 -> 2 -> 1:
//   conv:  SU(4) blocks on adjacent active pairs (0,1),(2,3),... then
//          (1,2),(3,4),...; one shared 15-angle set per sublayer.
//   pool:  for each pair (keep, drop) = (active[2m], active[2m+1]),
//          CRz then CRx on `keep` controlled by `drop`; one shared 2-angle
//          set per pooling layer. Dropped qubits are then ignored.
// The readout is qubit 0 and p = (1 - <Z_0>) / 2.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qembed/circuit.hpp"
#include "qembed/optim.hpp"
#include "qembed/qcore.hpp"

namespace qembed {

inline constexpr int kSU4ParamCount = 15;

/// U3(t1, t2, t3) = Rz(t2) Rx(-pi/2) Rz(t1) Rx(pi/2) Rz(t3)
Gate1 u3(double theta1, double theta2, double theta3);

struct SU4Block {
  std::array<double, kSU4ParamCount> angles{};
  int qubit_a = 0;
  int qubit_b = 1;
};

/// Gate order on (a, b), a being the high bit:
///   U3(p0,p1,p2) on a, U3(p3,p4,p5) on b
///   CNOT a->b; Ry(p6) on a, Rz(p7) on b; CNOT b->a; Ry(p8) on a; CNOT a->b
///   U3(p9,p10,p11) on a, U3(p12,p13,p14) on b
/// Throws std::invalid_argument on a wrong count or non-finite angle.
Gate2 su4_unitary(std::span<const double> angles);
Gate2 su4_unitary(const SU4Block& block);

/// Appends the same decomposition to `circuit`, reading angles from
/// params[first_param .. first_param + 14].
void append_su4(Circuit& circuit, int qubit_a, int qubit_b, int first_param);

class QCNN {
 public:
  static constexpr int kQubits = 8;
  static constexpr int kReadout = 0;

  static int parameter_count();
  /// Active qubits entering each conv layer: {0..7}, {0,2,4,6}, {0,4}.
  static std::vector<std::vector<int>> active_schedule();

  explicit QCNN(std::vector<double> params);
  /// Angles uniform in [0, 2 pi).
  static QCNN random(std::uint64_t seed);

  std::span<const double> parameters() const { return params_; }

  /// Probability of the positive class. Throws on a non-8-qubit input.
  double forward(const StateVector& state) const;

  struct Gradient {
    double probability = 0.0;
    std::vector<double> d_params;
  };
  Gradient gradient(const StateVector& state) const;

 private:
  std::vector<double> params_;
};

/// Mean binary cross-entropy; label +1 is the target p = 1.
double qcnn_bce(const QCNN& model, std::span<const StateVector> states,
                std::span<const int> labels);

struct QCNNLossGradient {
  double loss = 0.0;
  std::vector<double> gradient;
};
QCNNLossGradient qcnn_bce_gradient(const QCNN& model, std::span<const StateVector> states,
                                   std::span<const int> labels);

struct QCNNTrainResult {
  QCNN model;
  LossHistory history;
  int best_epoch = 0;
  int epochs_run = 0;
};

/// Adam on the cross-entropy; `config.batch_pairs` is the minibatch size.
/// Returns the parameters with the best validation loss. Throws
/// NumericalError when the loss turns non-finite.
QCNNTrainResult qcnn_train(const QCNN& initial, std::span<const StateVector> train_states,
                           std::span<const int> train_labels,
                           std::span<const StateVector> val_states,
                           std::span<const int> val_labels, const TrainConfig& config);

}  // namespace qembed
