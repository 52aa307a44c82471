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

// In-place amplitude kernels shared by the circuit builders. Callers own the
// buffer; these never allocate.

#include <span>

#include "qembed/qcore.hpp"

namespace qembed::kernels {

void apply_gate1(std::span<cplx> amps, int n_qubits, int qubit, const Gate1& gate);
void apply_gate2(std::span<cplx> amps, int n_qubits, int qubit_a, int qubit_b,
                 const Gate2& gate);
void apply_hadamard_all(std::span<cplx> amps, int n_qubits);
/// amps[b] *= exp(i * phases[b])
void apply_diagonal_phase(std::span<cplx> amps, std::span<const double> phases);
/// Applies exp(-i theta/2 sigma_axis) on `target` only where `control` is 1.
void apply_controlled_rotation(std::span<cplx> amps, int n_qubits, int control,
                               int target, PauliAxis axis, double theta);
void apply_cnot(std::span<cplx> amps, int n_qubits, int control, int target);

cplx dot(std::span<const cplx> bra, std::span<const cplx> ket);

}  // namespace qembed::kernels
