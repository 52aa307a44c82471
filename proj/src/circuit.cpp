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

#include "qembed/circuit.hpp"

#include <stdexcept>
#include <string>

#include "qembed/statevector_kernels.hpp"

namespace qembed {

Circuit::Circuit(int n_qubits, int n_params) : n_qubits_(n_qubits), n_params_(n_params) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("circuit qubit count out of range: " + std::to_string(n_qubits));
  }
  if (n_params < 0) throw std::invalid_argument("negative parameter count");
}

void Circuit::check_qubit(int q) const {
  if (q < 0 || q >= n_qubits_) {
    throw std::out_of_range("qubit " + std::to_string(q) + " outside register of " +
                            std::to_string(n_qubits_));
  }
}

void Circuit::check_param(int p) const {
  if (p < 0 || p >= n_params_) {
    throw std::out_of_range("parameter index " + std::to_string(p) + " out of range");
  }
}

void Circuit::add_fixed(int qubit, const Gate1& gate) {
  check_qubit(qubit);
  if (!is_unitary(gate)) throw std::invalid_argument("fixed gate is not unitary");
  ops_.push_back({OpKind::Fixed, qubit, qubit, PauliAxis::Z, -1, gate});
}

void Circuit::add_cnot(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw std::invalid_argument("cnot control equals target");
  ops_.push_back({OpKind::CNOT, control, target});
}

void Circuit::add_rotation(PauliAxis axis, int qubit, int param) {
  check_qubit(qubit);
  check_param(param);
  ops_.push_back({OpKind::Rotation, qubit, qubit, axis, param});
}

void Circuit::add_controlled_rotation(PauliAxis axis, int control, int target, int param) {
  check_qubit(control);
  check_qubit(target);
  check_param(param);
  if (control == target) throw std::invalid_argument("controlled rotation on one qubit");
  ops_.push_back({OpKind::ControlledRotation, control, target, axis, param});
}

void Circuit::check_call(const StateVector& input, std::span<const double> params) const {
  if (input.n_qubits() != n_qubits_) {
    throw std::invalid_argument("circuit expects " + std::to_string(n_qubits_) +
                                " qubits, got " + std::to_string(input.n_qubits()));
  }
  if (static_cast<int>(params.size()) != n_params_) {
    throw std::invalid_argument("circuit expects " + std::to_string(n_params_) +
                                " parameters, got " + std::to_string(params.size()));
  }
}

void Circuit::apply(const Op& op, std::span<cplx> amps, std::span<const double> params,
                    bool adjoint) const {
  const double sign = adjoint ? -1.0 : 1.0;
  switch (op.kind) {
    case OpKind::Fixed:
      kernels::apply_gate1(amps, n_qubits_, op.q0,
                           adjoint ? Gate1(op.matrix.adjoint()) : op.matrix);
      break;
    case OpKind::CNOT:
      kernels::apply_cnot(amps, n_qubits_, op.q0, op.q1);
      break;
    case OpKind::Rotation:
      kernels::apply_gate1(amps, n_qubits_, op.q0,
                           gates::rotation(op.axis, sign * params[op.param]));
      break;
    case OpKind::ControlledRotation:
      kernels::apply_controlled_rotation(amps, n_qubits_, op.q0, op.q1, op.axis,
                                         sign * params[op.param]);
      break;
  }
}

StateVector Circuit::run(const StateVector& input, std::span<const double> params) const {
  check_call(input, params);
  std::vector<cplx> amps(input.amplitudes().begin(), input.amplitudes().end());
  for (const Op& op : ops_) apply(op, amps, params, false);
  return StateVector::from_amplitudes(std::move(amps));
}

Circuit::Expectation Circuit::z_expectation(const StateVector& input, int qubit,
                                            std::span<const double> params) const {
  check_call(input, params);
  check_qubit(qubit);
  std::vector<cplx> psi(input.amplitudes().begin(), input.amplitudes().end());
  for (const Op& op : ops_) apply(op, psi, params, false);

  const std::size_t mask = qubit_mask(n_qubits_, qubit);
  Expectation out;
  out.gradient.assign(static_cast<std::size_t>(n_params_), 0.0);
  std::vector<cplx> lambda(psi.size());
  for (std::size_t b = 0; b < psi.size(); ++b) {
    const double s = (b & mask) ? -1.0 : 1.0;
    lambda[b] = s * psi[b];
    out.value += s * std::norm(psi[b]);
  }

  // d<Z>/dtheta = Im <lambda| G |psi> with psi the state just after the gate
  // and lambda the observable-weighted state pulled back to the same point.
  std::vector<cplx> gen(psi.size());
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
    const Op& op = *it;
    if (op.kind == OpKind::Rotation || op.kind == OpKind::ControlledRotation) {
      gen = psi;
      if (op.kind == OpKind::ControlledRotation) {
        const std::size_t cmask = qubit_mask(n_qubits_, op.q0);
        for (std::size_t b = 0; b < gen.size(); ++b) {
          if (!(b & cmask)) gen[b] = 0.0;
        }
      }
      kernels::apply_gate1(gen, n_qubits_, op.q1, gates::pauli(op.axis));
      out.gradient[static_cast<std::size_t>(op.param)] += kernels::dot(lambda, gen).imag();
    }
    apply(op, psi, params, true);
    apply(op, lambda, params, true);
  }
  return out;
}

}  // namespace qembed
