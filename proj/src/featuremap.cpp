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

#include "qembed/featuremap.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qembed/statevector_kernels.hpp"

namespace qembed {

namespace {

using std::numbers::pi;

// One exponential of commuting Pauli strings on a single axis. Its angle
// derivatives with respect to the raw input z are carried per term.
struct Term {
  int qubit = 0;
  bool coupled = false;  // true: P_q P_q+1
  double angle = 0.0;
  int dz_index[2] = {-1, -1};
  double dz_weight[2] = {0.0, 0.0};
};

struct Block {
  enum class Kind { HadamardAll, Phase } kind = Kind::Phase;
  PauliAxis axis = PauliAxis::Z;
  std::vector<Term> terms;
};

using Circuit = std::vector<Block>;

Circuit build_circuit(std::span<const double> z, const FeatureMapSpec& spec) {
  const int n = spec.n_qubits;
  Circuit circuit;
  if (spec.kind == FeatureMapKind::ZZ) {
    Block phase;
    phase.axis = PauliAxis::Z;
    for (int i = 0; i < n; ++i) {
      Term t;
      t.qubit = i;
      t.angle = z[i];
      t.dz_index[0] = i;
      t.dz_weight[0] = 1.0;
      phase.terms.push_back(t);
    }
    for (int k = 0; k + 1 < n; ++k) {
      Term t;
      t.qubit = k;
      t.coupled = true;
      t.angle = (pi - z[k]) * (pi - z[k + 1]) / 2.0;
      t.dz_index[0] = k;
      t.dz_weight[0] = -(pi - z[k + 1]) / 2.0;
      t.dz_index[1] = k + 1;
      t.dz_weight[1] = -(pi - z[k]) / 2.0;
      phase.terms.push_back(t);
    }
    Block had;
    had.kind = Block::Kind::HadamardAll;
    for (int l = 0; l < spec.layers; ++l) {
      circuit.push_back(had);
      circuit.push_back(phase);
    }
    return circuit;
  }

  auto factor = [&](PauliAxis axis) {
    Block b;
    b.axis = axis;
    for (int k = 0; k < n; ++k) {
      Term t;
      t.qubit = k;
      t.angle = z[k];
      t.dz_index[0] = k;
      t.dz_weight[0] = 1.0;
      b.terms.push_back(t);
    }
    for (int k = 0; k + 1 < n; ++k) {
      Term t;
      t.qubit = k;
      t.coupled = true;
      t.angle = z[n + k];
      t.dz_index[0] = n + k;
      t.dz_weight[0] = 1.0;
      b.terms.push_back(t);
    }
    return b;
  };
  const Block ex = factor(PauliAxis::X);
  const Block ey = factor(PauliAxis::Y);
  const Block ez = factor(PauliAxis::Z);
  for (int l = 0; l < spec.layers; ++l) {
    circuit.push_back(ex);
    circuit.push_back(ey);
    circuit.push_back(ez);
  }
  return circuit;
}

// Sign of the Z-string of a term on basis index b.
inline double term_sign(const Term& t, int n, std::size_t b) {
  const bool bit = (b & qubit_mask(n, t.qubit)) != 0;
  if (!t.coupled) return bit ? -1.0 : 1.0;
  const bool next = (b & qubit_mask(n, t.qubit + 1)) != 0;
  return (bit != next) ? -1.0 : 1.0;
}

// Maps the axis into the Z basis: B P B^dag = Z.
void rotate_to_z(std::span<cplx> amps, int n, PauliAxis axis) {
  if (axis == PauliAxis::Z) return;
  if (axis == PauliAxis::Y) {
    const Gate1 sd = gates::s_dagger();
    for (int q = 0; q < n; ++q) kernels::apply_gate1(amps, n, q, sd);
  }
  kernels::apply_hadamard_all(amps, n);
}

void rotate_from_z(std::span<cplx> amps, int n, PauliAxis axis) {
  if (axis == PauliAxis::Z) return;
  kernels::apply_hadamard_all(amps, n);
  if (axis == PauliAxis::Y) {
    const Gate1 s = gates::s();
    for (int q = 0; q < n; ++q) kernels::apply_gate1(amps, n, q, s);
  }
}

void apply_block(std::span<cplx> amps, int n, const Block& block, double direction,
                 std::vector<double>& phase_scratch) {
  if (block.kind == Block::Kind::HadamardAll) {
    kernels::apply_hadamard_all(amps, n);
    return;
  }
  phase_scratch.assign(amps.size(), 0.0);
  for (std::size_t b = 0; b < amps.size(); ++b) {
    double ph = 0.0;
    for (const Term& t : block.terms) ph += t.angle * term_sign(t, n, b);
    phase_scratch[b] = direction * ph;
  }
  rotate_to_z(amps, n, block.axis);
  kernels::apply_diagonal_phase(amps, phase_scratch);
  rotate_from_z(amps, n, block.axis);
}

std::vector<cplx> run_circuit(const Circuit& circuit, int n) {
  std::vector<cplx> amps(std::size_t{1} << n);
  amps[0] = 1.0;
  std::vector<double> scratch;
  for (const Block& b : circuit) apply_block(amps, n, b, 1.0, scratch);
  return amps;
}

void check_input(std::span<const double> z, const FeatureMapSpec& spec) {
  spec.validate();
  if (static_cast<int>(z.size()) != spec.input_dim()) {
    throw std::invalid_argument("feature map expects " + std::to_string(spec.input_dim()) +
                                " angles, got " + std::to_string(z.size()));
  }
  for (double v : z) {
    if (!std::isfinite(v)) throw std::invalid_argument("feature map angle is not finite");
  }
}

// d<left|right>/dz_right, accumulated into grad, given final states.
// Returns the overlap <left|right>.
void overlap_gradient_right(const Circuit& circuit, int n, std::vector<cplx> left,
                            std::vector<cplx> right, cplx overlap,
                            std::span<double> grad) {
  std::vector<double> scratch;
  std::vector<cplx> lam_rot, phi_rot;
  for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) {
    const Block& block = *it;
    if (block.kind == Block::Kind::Phase) {
      lam_rot = left;
      phi_rot = right;
      rotate_to_z(lam_rot, n, block.axis);
      rotate_to_z(phi_rot, n, block.axis);
      std::vector<cplx> w(phi_rot.size());
      for (std::size_t b = 0; b < w.size(); ++b) w[b] = std::conj(lam_rot[b]) * phi_rot[b];
      for (const Term& t : block.terms) {
        cplx acc = 0.0;
        for (std::size_t b = 0; b < w.size(); ++b) acc += term_sign(t, n, b) * w[b];
        // d<l|r>/dtheta = i * acc; dF/dtheta = 2 Re(conj(s) * i * acc)
        const double dF = 2.0 * (std::conj(overlap) * cplx(0.0, 1.0) * acc).real();
        for (int m = 0; m < 2; ++m) {
          if (t.dz_index[m] >= 0) grad[t.dz_index[m]] += dF * t.dz_weight[m];
        }
      }
    }
    apply_block(left, n, block, -1.0, scratch);
    apply_block(right, n, block, -1.0, scratch);
  }
}

}  // namespace

std::string to_string(FeatureMapKind kind) { return kind == FeatureMapKind::ZZ ? "zz" : "xyz"; }

FeatureMapKind parse_feature_map_kind(const std::string& text) {
  if (text == "zz" || text == "ZZ") return FeatureMapKind::ZZ;
  if (text == "xyz" || text == "XYZ") return FeatureMapKind::XYZ;
  throw std::invalid_argument("unknown feature map '" + text + "'");
}

FeatureMapSpec FeatureMapSpec::zz(int n_qubits, int layers) {
  return {FeatureMapKind::ZZ, n_qubits, layers, Entanglement::Linear};
}

FeatureMapSpec FeatureMapSpec::xyz(int n_qubits, int layers) {
  return {FeatureMapKind::XYZ, n_qubits, layers, Entanglement::Linear};
}

std::vector<std::pair<int, int>> FeatureMapSpec::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int k = 0; k + 1 < n_qubits; ++k) out.emplace_back(k, k + 1);
  return out;
}

void FeatureMapSpec::validate() const {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("feature map qubit count out of range");
  }
  if (layers < 1) throw std::invalid_argument("feature map needs at least one layer");
}

AngleVector zz_angles(std::span<const double> z) {
  AngleVector out;
  out.singles.assign(z.begin(), z.end());
  for (std::size_t k = 0; k + 1 < z.size(); ++k) {
    out.pairs.push_back((pi - z[k]) * (pi - z[k + 1]) / 2.0);
  }
  return out;
}

StateVector embed_zz(std::span<const double> z, const FeatureMapSpec& spec) {
  if (spec.kind != FeatureMapKind::ZZ) throw std::invalid_argument("embed_zz needs a ZZ spec");
  check_input(z, spec);
  return StateVector::from_amplitudes(run_circuit(build_circuit(z, spec), spec.n_qubits));
}

StateVector embed_xyz(std::span<const double> z, const FeatureMapSpec& spec) {
  if (spec.kind != FeatureMapKind::XYZ) {
    throw std::invalid_argument("embed_xyz needs an XYZ spec");
  }
  check_input(z, spec);
  return StateVector::from_amplitudes(run_circuit(build_circuit(z, spec), spec.n_qubits));
}

StateVector embed(std::span<const double> z, const FeatureMapSpec& spec) {
  return spec.kind == FeatureMapKind::ZZ ? embed_zz(z, spec) : embed_xyz(z, spec);
}

FidelityGradient fidelity_gradient(std::span<const double> z_left,
                                   std::span<const double> z_right,
                                   const FeatureMapSpec& spec, GradientMethod method) {
  check_input(z_left, spec);
  check_input(z_right, spec);
  const int n = spec.n_qubits;
  FidelityGradient out;
  out.d_left.assign(z_left.size(), 0.0);
  out.d_right.assign(z_right.size(), 0.0);

  if (method == GradientMethod::FiniteDifference) {
    constexpr double eps = 1e-6;
    auto fid = [&](std::span<const double> a, std::span<const double> b) {
      const auto sa = run_circuit(build_circuit(a, spec), n);
      const auto sb = run_circuit(build_circuit(b, spec), n);
      return std::norm(kernels::dot(sa, sb));
    };
    out.fidelity = fid(z_left, z_right);
    std::vector<double> zl(z_left.begin(), z_left.end());
    std::vector<double> zr(z_right.begin(), z_right.end());
    for (std::size_t i = 0; i < zl.size(); ++i) {
      const double keep = zl[i];
      zl[i] = keep + eps;
      const double fp = fid(zl, zr);
      zl[i] = keep - eps;
      const double fm = fid(zl, zr);
      zl[i] = keep;
      out.d_left[i] = (fp - fm) / (2 * eps);
    }
    for (std::size_t i = 0; i < zr.size(); ++i) {
      const double keep = zr[i];
      zr[i] = keep + eps;
      const double fp = fid(zl, zr);
      zr[i] = keep - eps;
      const double fm = fid(zl, zr);
      zr[i] = keep;
      out.d_right[i] = (fp - fm) / (2 * eps);
    }
    return out;
  }

  const Circuit cl = build_circuit(z_left, spec);
  const Circuit cr = build_circuit(z_right, spec);
  auto left = run_circuit(cl, n);
  auto right = run_circuit(cr, n);
  const cplx s = kernels::dot(left, right);
  out.fidelity = std::norm(s);
  overlap_gradient_right(cr, n, left, right, s, out.d_right);
  overlap_gradient_right(cl, n, right, left, std::conj(s), out.d_left);
  return out;
}

}  // namespace qembed

namespace qembed {

std::vector<StateVector> embed_rows(const Eigen::MatrixXd& angles, const FeatureMapSpec& spec) {
  const Eigen::Index rows = angles.rows();
  std::vector<std::vector<cplx>> amps(static_cast<std::size_t>(rows));
  std::vector<std::vector<double>> z(static_cast<std::size_t>(rows));
  for (Eigen::Index r = 0; r < rows; ++r) {
    z[r].resize(static_cast<std::size_t>(angles.cols()));
    for (Eigen::Index c = 0; c < angles.cols(); ++c) z[r][c] = angles(r, c);
    check_input(z[r], spec);
  }
#pragma omp parallel for schedule(static)
  for (Eigen::Index r = 0; r < rows; ++r) {
    amps[r] = run_circuit(build_circuit(z[r], spec), spec.n_qubits);
  }
  std::vector<StateVector> out;
  out.reserve(amps.size());
  for (auto& a : amps) out.push_back(StateVector::from_amplitudes(std::move(a)));
  return out;
}

}  // namespace qembed
