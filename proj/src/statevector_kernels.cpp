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

#include "qembed/statevector_kernels.hpp"

#include <cmath>

namespace qembed::kernels {

namespace {

// Inserts a zero bit at position `bit` of k.
inline std::size_t insert_zero(std::size_t k, std::size_t mask) {
  const std::size_t low = k & (mask - 1);
  return ((k ^ low) << 1) | low;
}

}  // namespace

void apply_gate1(std::span<cplx> amps, int n_qubits, int qubit, const Gate1& gate) {
  const std::size_t mask = qubit_mask(n_qubits, qubit);
  const std::size_t half = amps.size() / 2;
  const cplx g00 = gate(0, 0), g01 = gate(0, 1), g10 = gate(1, 0), g11 = gate(1, 1);
  for (std::size_t k = 0; k < half; ++k) {
    const std::size_t i0 = insert_zero(k, mask);
    const std::size_t i1 = i0 | mask;
    const cplx a = amps[i0];
    const cplx b = amps[i1];
    amps[i0] = g00 * a + g01 * b;
    amps[i1] = g10 * a + g11 * b;
  }
}

void apply_gate2(std::span<cplx> amps, int n_qubits, int qubit_a, int qubit_b,
                 const Gate2& gate) {
  const std::size_t ma = qubit_mask(n_qubits, qubit_a);
  const std::size_t mb = qubit_mask(n_qubits, qubit_b);
  const std::size_t lo = ma < mb ? ma : mb;
  const std::size_t hi = ma < mb ? mb : ma;
  const std::size_t quarter = amps.size() / 4;
  for (std::size_t k = 0; k < quarter; ++k) {
    const std::size_t base = insert_zero(insert_zero(k, lo), hi);
    const std::size_t idx[4] = {base, base | mb, base | ma, base | ma | mb};
    cplx v[4];
    for (int r = 0; r < 4; ++r) v[r] = amps[idx[r]];
    for (int r = 0; r < 4; ++r) {
      amps[idx[r]] = gate(r, 0) * v[0] + gate(r, 1) * v[1] + gate(r, 2) * v[2] +
                     gate(r, 3) * v[3];
    }
  }
}

void apply_hadamard_all(std::span<cplx> amps, int n_qubits) {
  const double r = M_SQRT1_2;
  for (int q = 0; q < n_qubits; ++q) {
    const std::size_t mask = qubit_mask(n_qubits, q);
    const std::size_t half = amps.size() / 2;
    for (std::size_t k = 0; k < half; ++k) {
      const std::size_t i0 = insert_zero(k, mask);
      const std::size_t i1 = i0 | mask;
      const cplx a = amps[i0];
      const cplx b = amps[i1];
      amps[i0] = r * (a + b);
      amps[i1] = r * (a - b);
    }
  }
}

void apply_diagonal_phase(std::span<cplx> amps, std::span<const double> phases) {
  for (std::size_t b = 0; b < amps.size(); ++b) {
    amps[b] *= cplx(std::cos(phases[b]), std::sin(phases[b]));
  }
}

void apply_controlled_rotation(std::span<cplx> amps, int n_qubits, int control,
                               int target, PauliAxis axis, double theta) {
  const Gate1 g = gates::rotation(axis, theta);
  const std::size_t mc = qubit_mask(n_qubits, control);
  const std::size_t mt = qubit_mask(n_qubits, target);
  for (std::size_t i0 = 0; i0 < amps.size(); ++i0) {
    if ((i0 & mc) == 0 || (i0 & mt) != 0) continue;
    const std::size_t i1 = i0 | mt;
    const cplx a = amps[i0];
    const cplx b = amps[i1];
    amps[i0] = g(0, 0) * a + g(0, 1) * b;
    amps[i1] = g(1, 0) * a + g(1, 1) * b;
  }
}

void apply_cnot(std::span<cplx> amps, int n_qubits, int control, int target) {
  const std::size_t mc = qubit_mask(n_qubits, control);
  const std::size_t mt = qubit_mask(n_qubits, target);
  for (std::size_t i0 = 0; i0 < amps.size(); ++i0) {
    if ((i0 & mc) == 0 || (i0 & mt) != 0) continue;
    std::swap(amps[i0], amps[i0 | mt]);
  }
}

cplx dot(std::span<const cplx> bra, std::span<const cplx> ket) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < bra.size(); ++i) {
    const double ar = bra[i].real(), ai = bra[i].imag();
    const double br = ket[i].real(), bi = ket[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

}  // namespace qembed::kernels
