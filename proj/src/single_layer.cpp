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

#include "qembed/single_layer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "qembed/errors.hpp"

namespace qembed {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double target(int label) {
  if (label != 1 && label != -1) throw std::invalid_argument("labels must be +1 or -1");
  return label > 0 ? 1.0 : 0.0;
}

// max(z, 0) - z t + log(1 + exp(-|z|))
double logit_loss(double z, double t) {
  return std::max(z, 0.0) - z * t + std::log1p(std::exp(-std::abs(z)));
}

void check_shapes(const LogisticHead& head, const Eigen::MatrixXd& x,
                  std::span<const int> labels) {
  if (x.cols() != head.weight.size()) {
    throw std::invalid_argument("head expects " + std::to_string(head.weight.size()) +
                                " features, got " + std::to_string(x.cols()));
  }
  if (static_cast<std::size_t>(x.rows()) != labels.size()) {
    throw std::invalid_argument("row and label counts differ");
  }
  if (labels.empty()) throw std::invalid_argument("empty batch");
}

void check_finite(double loss, int epoch) {
  if (!std::isfinite(loss)) {
    throw NumericalError("single-layer training diverged at epoch " + std::to_string(epoch));
  }
}

std::vector<int> take(std::span<const int> v, std::span<const std::size_t> idx) {
  std::vector<int> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(v[i]);
  return out;
}

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& x, std::span<const std::size_t> idx) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), x.cols());
  for (std::size_t r = 0; r < idx.size(); ++r) out.row(r) = x.row(idx[r]);
  return out;
}

// Draws `steps` minibatches per epoch from a reshuffled index list.
class Batcher {
 public:
  Batcher(std::size_t n, int batch, std::uint64_t seed)
      : order_(n), batch_(std::min<std::size_t>(n, static_cast<std::size_t>(batch))), rng_(seed) {
    for (std::size_t i = 0; i < n; ++i) order_[i] = i;
  }
  std::span<const std::size_t> next() {
    std::shuffle(order_.begin(), order_.end(), rng_);
    return {order_.data(), batch_};
  }

 private:
  std::vector<std::size_t> order_;
  std::size_t batch_;
  std::mt19937_64 rng_;
};

}  // namespace

LogisticHead LogisticHead::zeros(int dim) {
  if (dim < 1) throw std::invalid_argument("head dimension must be positive");
  return {Eigen::VectorXd::Zero(dim), 0.0};
}

double LogisticHead::logit(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != weight.size()) throw std::invalid_argument("head input width mismatch");
  return weight.dot(x) + bias;
}

double LogisticHead::probability(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return sigmoid(logit(x));
}

int LogisticHead::predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return probability(x) >= 0.5 ? 1 : -1;
}

std::vector<int> LogisticHead::predict_rows(const Eigen::MatrixXd& x) const {
  std::vector<int> out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index r = 0; r < x.rows(); ++r) out[r] = predict(x.row(r).transpose());
  return out;
}

Eigen::VectorXd LogisticHead::parameters() const {
  Eigen::VectorXd p(weight.size() + 1);
  p.head(weight.size()) = weight;
  p(weight.size()) = bias;
  return p;
}

void LogisticHead::set_parameters(const Eigen::VectorXd& flat) {
  if (flat.size() != weight.size() + 1) throw std::invalid_argument("head parameter count");
  weight = flat.head(weight.size());
  bias = flat(weight.size());
}

double bce_with_logits(const LogisticHead& head, const Eigen::MatrixXd& x,
                       std::span<const int> labels) {
  check_shapes(head, x, labels);
  double acc = 0.0;
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    acc += logit_loss(head.logit(x.row(r).transpose()), target(labels[r]));
  }
  return acc / static_cast<double>(x.rows());
}

HeadGradient bce_with_logits_gradient(const LogisticHead& head, const Eigen::MatrixXd& x,
                                      std::span<const int> labels) {
  check_shapes(head, x, labels);
  const double inv_n = 1.0 / static_cast<double>(x.rows());
  HeadGradient g;
  g.d_weight = Eigen::VectorXd::Zero(head.weight.size());
  g.d_input.resize(x.rows(), x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double z = head.logit(x.row(r).transpose());
    const double t = target(labels[r]);
    g.loss += logit_loss(z, t) * inv_n;
    const double dz = (sigmoid(z) - t) * inv_n;
    g.d_weight += dz * x.row(r).transpose();
    g.d_bias += dz;
    g.d_input.row(r) = dz * head.weight.transpose();
  }
  return g;
}

SingleLayerResult single_layer_train(const LogisticHead& initial, const Eigen::MatrixXd& train_x,
                                     std::span<const int> train_y, const Eigen::MatrixXd& val_x,
                                     std::span<const int> val_y, const TrainConfig& config) {
  config.validate();
  check_shapes(initial, train_x, train_y);
  check_shapes(initial, val_x, val_y);
  SingleLayerResult result{initial, {}, 0, 0};
  EarlyStopping stopper(config.patience);
  LogisticHead head = initial;
  auto evaluate = [&](int epoch) {
    EpochLoss e{epoch, bce_with_logits(head, train_x, train_y), bce_with_logits(head, val_x, val_y)};
    check_finite(e.train_loss, epoch);
    check_finite(e.val_loss, epoch);
    return e;
  };
  result.history.rows.push_back(evaluate(0));
  stopper.observe(0, result.history.rows.back().val_loss);

  Batcher batcher(static_cast<std::size_t>(train_x.rows()), config.batch_pairs, config.seed);
  Eigen::VectorXd params = head.parameters();
  Adam adam(params.size(), config.learning_rate);
  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    for (int step = 0; step < config.steps_per_epoch; ++step) {
      const auto idx = batcher.next();
      const HeadGradient g =
          bce_with_logits_gradient(head, take_rows(train_x, idx), take(train_y, idx));
      Eigen::VectorXd flat(params.size());
      flat.head(g.d_weight.size()) = g.d_weight;
      flat(g.d_weight.size()) = g.d_bias;
      adam.step(params, flat);
      head.set_parameters(params);
    }
    result.history.rows.push_back(evaluate(epoch));
    result.epochs_run = epoch;
    if (stopper.observe(epoch, result.history.rows.back().val_loss)) result.head = head;
    if (stopper.should_stop(epoch)) break;
  }
  result.best_epoch = stopper.best_epoch();
  return result;
}

double joint_bce(const EncoderNetwork& encoder, const LogisticHead& head,
                 const LabeledData& data) {
  return bce_with_logits(head, encoder.forward_rows(data.x), data.y);
}

JointGradient joint_bce_gradient(const EncoderNetwork& encoder, const LogisticHead& head,
                                 const LabeledData& data) {
  const Eigen::MatrixXd h = encoder.forward_rows(data.x);
  const HeadGradient hg = bce_with_logits_gradient(head, h, data.y);
  JointGradient out{hg.loss, encoder.zero_gradient(), hg.d_weight, hg.d_bias};
  for (Eigen::Index r = 0; r < data.x.rows(); ++r) {
    out.encoder += encoder.backward(data.x.row(r).transpose(), hg.d_input.row(r).transpose());
  }
  return out;
}

JointResult joint_train(const EncoderNetwork& encoder, const LogisticHead& head,
                        const LabeledData& train, const LabeledData& val,
                        const TrainConfig& config) {
  config.validate();
  if (head.input_dim() != encoder.output_dim()) {
    throw std::invalid_argument("head width does not match encoder output");
  }
  JointResult result{encoder, head, {}, 0, 0};
  EncoderNetwork net = encoder;
  LogisticHead cls = head;
  auto evaluate = [&](int epoch) {
    EpochLoss e{epoch, joint_bce(net, cls, train), joint_bce(net, cls, val)};
    check_finite(e.train_loss, epoch);
    check_finite(e.val_loss, epoch);
    return e;
  };
  EarlyStopping stopper(config.patience);
  result.history.rows.push_back(evaluate(0));
  stopper.observe(0, result.history.rows.back().val_loss);

  Batcher batcher(static_cast<std::size_t>(train.size()), config.batch_pairs, config.seed);
  const Eigen::Index n_enc = static_cast<Eigen::Index>(net.parameter_count());
  Eigen::VectorXd params(n_enc + cls.weight.size() + 1);
  params.head(n_enc) = net.parameters();
  params.tail(cls.weight.size() + 1) = cls.parameters();
  Adam adam(params.size(), config.learning_rate);
  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    for (int step = 0; step < config.steps_per_epoch; ++step) {
      const auto idx = batcher.next();
      std::vector<int> rows(idx.begin(), idx.end());
      const JointGradient g = joint_bce_gradient(net, cls, train.subset(rows));
      Eigen::VectorXd flat(params.size());
      flat.head(n_enc) = g.encoder.flat();
      flat.segment(n_enc, g.d_weight.size()) = g.d_weight;
      flat(params.size() - 1) = g.d_bias;
      adam.step(params, flat);
      net.set_parameters(params.head(n_enc));
      cls.set_parameters(params.tail(cls.weight.size() + 1));
    }
    result.history.rows.push_back(evaluate(epoch));
    result.epochs_run = epoch;
    if (stopper.observe(epoch, result.history.rows.back().val_loss)) {
      result.encoder = net;
      result.head = cls;
    }
    if (stopper.should_stop(epoch)) break;
  }
  result.best_epoch = stopper.best_epoch();
  return result;
}

}  // namespace qembed
