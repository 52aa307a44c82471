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

#include "qembed/qcnn.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qembed/errors.hpp"

namespace qembed {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kProbFloor = 1e-12;

Gate2 kron(const Gate1& a, const Gate1& b) {
  Gate2 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

Gate2 cnot_low_to_high() {
  Gate2 m = Gate2::Zero();
  // control b (low bit), target a (high bit)
  m(0, 0) = 1.0;
  m(2, 2) = 1.0;
  m(1, 3) = 1.0;
  m(3, 1) = 1.0;
  return m;
}

void append_u3(Circuit& c, int qubit, int first) {
  c.add_rotation(PauliAxis::Z, qubit, first + 2);
  c.add_fixed(qubit, gates::rotation(PauliAxis::X, kHalfPi));
  c.add_rotation(PauliAxis::Z, qubit, first);
  c.add_fixed(qubit, gates::rotation(PauliAxis::X, -kHalfPi));
  c.add_rotation(PauliAxis::Z, qubit, first + 1);
}

struct Layout {
  Circuit circuit{QCNN::kQubits, 0};
  int n_params = 0;
};

Layout build_layout() {
  // Count parameters first so the circuit can validate indices.
  const auto schedule = QCNN::active_schedule();
  int count = 0;
  for (const auto& active : schedule) {
    const int n = static_cast<int>(active.size());
    count += kSU4ParamCount;                    // even sublayer
    if (n > 2) count += kSU4ParamCount;         // odd sublayer
    count += 2;                                 // pooling
  }
  Layout out{Circuit(QCNN::kQubits, count), count};
  int next = 0;
  for (const auto& active : schedule) {
    const int n = static_cast<int>(active.size());
    for (int k = 0; k + 1 < n; k += 2) append_su4(out.circuit, active[k], active[k + 1], next);
    next += kSU4ParamCount;
    if (n > 2) {
      for (int k = 1; k + 1 < n; k += 2) {
        append_su4(out.circuit, active[k], active[k + 1], next);
      }
      next += kSU4ParamCount;
    }
    for (int k = 0; k + 1 < n; k += 2) {
      out.circuit.add_controlled_rotation(PauliAxis::Z, active[k + 1], active[k], next);
      out.circuit.add_controlled_rotation(PauliAxis::X, active[k + 1], active[k], next + 1);
    }
    next += 2;
  }
  return out;
}

const Layout& layout() {
  static const Layout instance = build_layout();
  return instance;
}

double clamp_probability(double p) { return std::clamp(p, kProbFloor, 1.0 - kProbFloor); }

double bce_term(double p, int label) {
  const double q = clamp_probability(p);
  return label > 0 ? -std::log(q) : -std::log(1.0 - q);
}

void check_labels(std::span<const StateVector> states, std::span<const int> labels) {
  if (states.size() != labels.size()) {
    throw std::invalid_argument("state and label counts differ");
  }
  if (states.empty()) throw std::invalid_argument("empty QCNN batch");
  for (int y : labels) {
    if (y != 1 && y != -1) throw std::invalid_argument("labels must be +1 or -1");
  }
}

}  // namespace

Gate1 u3(double theta1, double theta2, double theta3) {
  return gates::rotation(PauliAxis::Z, theta2) * gates::rotation(PauliAxis::X, -kHalfPi) *
         gates::rotation(PauliAxis::Z, theta1) * gates::rotation(PauliAxis::X, kHalfPi) *
         gates::rotation(PauliAxis::Z, theta3);
}

Gate2 su4_unitary(std::span<const double> p) {
  if (p.size() != static_cast<std::size_t>(kSU4ParamCount)) {
    throw std::invalid_argument("SU(4) block needs 15 angles, got " + std::to_string(p.size()));
  }
  for (double v : p) {
    if (!std::isfinite(v)) throw std::invalid_argument("SU(4) angle is not finite");
  }
  const Gate1 id = gates::identity();
  const Gate2 cx_ab = gates::cnot();
  const Gate2 cx_ba = cnot_low_to_high();
  Gate2 u = kron(u3(p[0], p[1], p[2]), u3(p[3], p[4], p[5]));
  u = cx_ab * u;
  u = kron(gates::rotation(PauliAxis::Y, p[6]), gates::rotation(PauliAxis::Z, p[7])) * u;
  u = cx_ba * u;
  u = kron(gates::rotation(PauliAxis::Y, p[8]), id) * u;
  u = cx_ab * u;
  u = kron(u3(p[9], p[10], p[11]), u3(p[12], p[13], p[14])) * u;
  return u;
}

Gate2 su4_unitary(const SU4Block& block) { return su4_unitary(block.angles); }

void append_su4(Circuit& c, int a, int b, int first) {
  append_u3(c, a, first);
  append_u3(c, b, first + 3);
  c.add_cnot(a, b);
  c.add_rotation(PauliAxis::Y, a, first + 6);
  c.add_rotation(PauliAxis::Z, b, first + 7);
  c.add_cnot(b, a);
  c.add_rotation(PauliAxis::Y, a, first + 8);
  c.add_cnot(a, b);
  append_u3(c, a, first + 9);
  append_u3(c, b, first + 12);
}

int QCNN::parameter_count() { return layout().n_params; }

std::vector<std::vector<int>> QCNN::active_schedule() {
  return {{0, 1, 2, 3, 4, 5, 6, 7}, {0, 2, 4, 6}, {0, 4}};
}

QCNN::QCNN(std::vector<double> params) : params_(std::move(params)) {
  if (static_cast<int>(params_.size()) != parameter_count()) {
    throw std::invalid_argument("QCNN expects " + std::to_string(parameter_count()) +
                                " parameters, got " + std::to_string(params_.size()));
  }
  for (double v : params_) {
    if (!std::isfinite(v)) throw std::invalid_argument("QCNN parameter is not finite");
  }
}

QCNN QCNN::random(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<double> params(static_cast<std::size_t>(parameter_count()));
  for (double& v : params) v = angle(rng);
  return QCNN(std::move(params));
}

double QCNN::forward(const StateVector& state) const {
  if (state.n_qubits() != kQubits) {
    throw std::invalid_argument("QCNN expects an 8-qubit state, got " +
                                std::to_string(state.n_qubits()));
  }
  const StateVector out = layout().circuit.run(state, params_);
  const double p = 0.5 * (1.0 - pauli_expectation(out, kReadout, PauliAxis::Z));
  assert(p >= -1e-12 && p <= 1.0 + 1e-12);
  return std::clamp(p, 0.0, 1.0);
}

QCNN::Gradient QCNN::gradient(const StateVector& state) const {
  if (state.n_qubits() != kQubits) {
    throw std::invalid_argument("QCNN expects an 8-qubit state, got " +
                                std::to_string(state.n_qubits()));
  }
  const Circuit::Expectation e = layout().circuit.z_expectation(state, kReadout, params_);
  Gradient g;
  g.probability = std::clamp(0.5 * (1.0 - e.value), 0.0, 1.0);
  g.d_params.resize(e.gradient.size());
  for (std::size_t k = 0; k < e.gradient.size(); ++k) g.d_params[k] = -0.5 * e.gradient[k];
  return g;
}

double qcnn_bce(const QCNN& model, std::span<const StateVector> states,
                std::span<const int> labels) {
  check_labels(states, labels);
  std::vector<double> terms(states.size());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < states.size(); ++i) {
    terms[i] = bce_term(model.forward(states[i]), labels[i]);
  }
  double acc = 0.0;
  for (double t : terms) acc += t;
  return acc / static_cast<double>(states.size());
}

QCNNLossGradient qcnn_bce_gradient(const QCNN& model, std::span<const StateVector> states,
                                   std::span<const int> labels) {
  check_labels(states, labels);
  std::vector<QCNN::Gradient> parts(states.size());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < states.size(); ++i) parts[i] = model.gradient(states[i]);
  const double inv_n = 1.0 / static_cast<double>(states.size());
  QCNNLossGradient out;
  out.gradient.assign(model.parameters().size(), 0.0);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const double p = parts[i].probability;
    out.loss += bce_term(p, labels[i]) * inv_n;
    // The clamp makes the loss flat outside [floor, 1 - floor].
    if (p <= kProbFloor || p >= 1.0 - kProbFloor) continue;
    const double dl_dp = labels[i] > 0 ? -1.0 / p : 1.0 / (1.0 - p);
    for (std::size_t k = 0; k < out.gradient.size(); ++k) {
      out.gradient[k] += inv_n * dl_dp * parts[i].d_params[k];
    }
  }
  return out;
}

QCNNTrainResult qcnn_train(const QCNN& initial, std::span<const StateVector> train_states,
                           std::span<const int> train_labels,
                           std::span<const StateVector> val_states,
                           std::span<const int> val_labels, const TrainConfig& config) {
  config.validate();
  check_labels(train_states, train_labels);
  check_labels(val_states, val_labels);

  auto evaluate = [&](const QCNN& m, int epoch) {
    EpochLoss e{epoch, qcnn_bce(m, train_states, train_labels),
                qcnn_bce(m, val_states, val_labels)};
    if (!std::isfinite(e.train_loss) || !std::isfinite(e.val_loss)) {
      std::ostringstream msg;
      msg << "QCNN training diverged at epoch " << epoch;
      throw NumericalError(msg.str());
    }
    return e;
  };

  QCNNTrainResult result{initial, {}, 0, 0};
  EarlyStopping stopper(config.patience);
  result.history.rows.push_back(evaluate(initial, 0));
  stopper.observe(0, result.history.rows.back().val_loss);

  std::mt19937_64 rng(config.seed);
  const std::size_t n = train_states.size();
  const std::size_t batch = std::min<std::size_t>(n, static_cast<std::size_t>(config.batch_pairs));
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  Eigen::VectorXd params = Eigen::Map<const Eigen::VectorXd>(
      initial.parameters().data(), static_cast<Eigen::Index>(initial.parameters().size()));
  Adam adam(params.size(), config.learning_rate);
  QCNN current = initial;
  std::vector<StateVector> batch_states;
  std::vector<int> batch_labels;
  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    for (int step = 0; step < config.steps_per_epoch; ++step) {
      std::shuffle(order.begin(), order.end(), rng);
      batch_states.clear();
      batch_labels.clear();
      for (std::size_t k = 0; k < batch; ++k) {
        batch_states.push_back(train_states[order[k]]);
        batch_labels.push_back(train_labels[order[k]]);
      }
      const QCNNLossGradient lg = qcnn_bce_gradient(current, batch_states, batch_labels);
      adam.step(params, Eigen::Map<const Eigen::VectorXd>(
                            lg.gradient.data(), static_cast<Eigen::Index>(lg.gradient.size())));
      current = QCNN(std::vector<double>(params.data(), params.data() + params.size()));
    }
    result.history.rows.push_back(evaluate(current, epoch));
    result.epochs_run = epoch;
    if (stopper.observe(epoch, result.history.rows.back().val_loss)) result.model = current;
    if (stopper.should_stop(epoch)) break;
  }
  result.best_epoch = stopper.best_epoch();
  return result;
}

}  // namespace qembed
