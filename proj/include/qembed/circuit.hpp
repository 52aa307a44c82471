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

// Parameterized gate lists with exact expectation gradients.
//
// Rotations are exp(-i theta/2 sigma). A controlled rotation acts on the
// target only where the control qubit is 1, so its generator is
// |1><1|_control (x) sigma_target.

#include <span>
#include <vector>

#include "qembed/qcore.hpp"

namespace qembed {

class Circuit {
 public:
  Circuit(int n_qubits, int n_params);

  int n_qubits() const { return n_qubits_; }
  int n_params() const { return n_params_; }
  std::size_t size() const { return ops_.size(); }

  void add_fixed(int qubit, const Gate1& gate);
  void add_cnot(int control, int target);
  /// theta = params[param]
  void add_rotation(PauliAxis axis, int qubit, int param);
  void add_controlled_rotation(PauliAxis axis, int control, int target, int param);

  /// Runs the gate list on `input`. Throws std::invalid_argument on a
  /// qubit-count or parameter-count mismatch.
  StateVector run(const StateVector& input, std::span<const double> params) const;

  struct Expectation {
    double value = 0.0;
    std::vector<double> gradient;  // d value / d params
  };

  /// <Z_qubit> on the output state and its gradient, by one forward pass
  /// and one reverse sweep.
  Expectation z_expectation(const StateVector& input, int qubit,
                            std::span<const double> params) const;

 private:
  enum class OpKind { Fixed, CNOT, Rotation, ControlledRotation };
  struct Op {
    OpKind kind;
    int q0 = 0;  // control for two-qubit ops
    int q1 = 0;
    PauliAxis axis = PauliAxis::Z;
    int param = -1;
    Gate1 matrix = Gate1::Identity();
  };

  void check_qubit(int q) const;
  void check_param(int p) const;
  void check_call(const StateVector& input, std::span<const double> params) const;
  void apply(const Op& op, std::span<cplx> amps, std::span<const double> params,
             bool adjoint) const;

  int n_qubits_;
  int n_params_;
  std::vector<Op> ops_;
};

}  // namespace qembed
