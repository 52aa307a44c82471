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

#include "qembed/encoder.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "qembed/io.hpp"

namespace qembed {

namespace {

constexpr std::string_view kEncoderMagic = "QEENCODR";
constexpr std::uint32_t kEncoderVersion = 1;

void apply_activation(Eigen::VectorXd& v, Activation a) {
  if (a == Activation::Tanh) {
    v = v.array().tanh();
  } else {
    v = v.cwiseMax(0.0);
  }
}

// Derivative expressed through the activated value.
Eigen::VectorXd activation_grad(const Eigen::VectorXd& pre, const Eigen::VectorXd& post,
                                Activation a) {
  if (a == Activation::Tanh) return 1.0 - post.array().square();
  return (pre.array() > 0.0).cast<double>();
}

}  // namespace

std::string to_string(Activation a) { return a == Activation::Tanh ? "tanh" : "relu"; }

Activation parse_activation(const std::string& text) {
  if (text == "tanh") return Activation::Tanh;
  if (text == "relu") return Activation::ReLU;
  throw std::invalid_argument("unknown activation '" + text + "'");
}

GradientRecord& GradientRecord::operator+=(const GradientRecord& other) {
  for (std::size_t l = 0; l < layers.size(); ++l) {
    layers[l].weight += other.layers[l].weight;
    layers[l].bias += other.layers[l].bias;
  }
  if (input.size() == other.input.size()) input += other.input;
  return *this;
}

GradientRecord& GradientRecord::operator*=(double s) {
  for (auto& l : layers) {
    l.weight *= s;
    l.bias *= s;
  }
  input *= s;
  return *this;
}

Eigen::VectorXd GradientRecord::flat() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
  Eigen::VectorXd out(static_cast<Eigen::Index>(n));
  Eigen::Index k = 0;
  for (const auto& l : layers) {
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) out(k++) = l.weight(r, c);
    }
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) out(k++) = l.bias(r);
  }
  return out;
}

EncoderNetwork::EncoderNetwork(std::vector<int> layer_dims, Activation activation,
                               std::vector<DenseLayer> layers)
    : dims_(std::move(layer_dims)), activation_(activation), layers_(std::move(layers)) {
  if (dims_.size() < 2) throw std::invalid_argument("encoder needs at least one layer");
  if (layers_.size() + 1 != dims_.size()) {
    throw std::invalid_argument("encoder layer count does not match dims");
  }
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    if (dims_[l] < 1 || dims_[l + 1] < 1) throw std::invalid_argument("encoder dim < 1");
    if (layers_[l].weight.rows() != dims_[l + 1] || layers_[l].weight.cols() != dims_[l] ||
        layers_[l].bias.size() != dims_[l + 1]) {
      throw std::invalid_argument("encoder layer shape mismatch");
    }
  }
}

EncoderNetwork EncoderNetwork::xavier(std::vector<int> layer_dims, Activation activation,
                                      std::uint64_t seed, double output_scale) {
  std::mt19937_64 rng(seed);
  std::vector<DenseLayer> layers;
  for (std::size_t l = 0; l + 1 < layer_dims.size(); ++l) {
    const int fan_in = layer_dims[l], fan_out = layer_dims[l + 1];
    const double a = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-a, a);
    DenseLayer d{Eigen::MatrixXd(fan_out, fan_in), Eigen::VectorXd::Zero(fan_out)};
    for (int r = 0; r < fan_out; ++r) {
      for (int c = 0; c < fan_in; ++c) d.weight(r, c) = dist(rng);
    }
    if (l + 2 == layer_dims.size()) d.weight *= output_scale;
    layers.push_back(std::move(d));
  }
  return EncoderNetwork(std::move(layer_dims), activation, std::move(layers));
}

EncoderNetwork EncoderNetwork::zeros(std::vector<int> layer_dims, Activation activation) {
  std::vector<DenseLayer> layers;
  for (std::size_t l = 0; l + 1 < layer_dims.size(); ++l) {
    layers.push_back({Eigen::MatrixXd::Zero(layer_dims[l + 1], layer_dims[l]),
                      Eigen::VectorXd::Zero(layer_dims[l + 1])});
  }
  return EncoderNetwork(std::move(layer_dims), activation, std::move(layers));
}

Eigen::VectorXd EncoderNetwork::forward(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != input_dim()) {
    throw std::invalid_argument("encoder input has length " + std::to_string(x.size()) +
                                ", expected " + std::to_string(input_dim()));
  }
  if (!x.allFinite()) throw std::invalid_argument("encoder input contains NaN or Inf");
  Eigen::VectorXd a = x;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    a = layers_[l].weight * a + layers_[l].bias;
    if (l + 1 < layers_.size()) apply_activation(a, activation_);
  }
  return a;
}

Eigen::MatrixXd EncoderNetwork::forward_rows(const Eigen::MatrixXd& x) const {
  Eigen::MatrixXd out(x.rows(), output_dim());
  for (Eigen::Index r = 0; r < x.rows(); ++r) out.row(r) = forward(x.row(r).transpose());
  return out;
}

GradientRecord EncoderNetwork::backward(const Eigen::Ref<const Eigen::VectorXd>& x,
                                        const Eigen::Ref<const Eigen::VectorXd>& upstream) const {
  if (x.size() != input_dim()) throw std::invalid_argument("encoder input shape mismatch");
  if (upstream.size() != output_dim()) {
    throw std::invalid_argument("upstream gradient has length " +
                                std::to_string(upstream.size()) + ", expected " +
                                std::to_string(output_dim()));
  }
  std::vector<Eigen::VectorXd> pre, post;
  post.push_back(x);
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    Eigen::VectorXd z = layers_[l].weight * post.back() + layers_[l].bias;
    pre.push_back(z);
    if (l + 1 < layers_.size()) apply_activation(z, activation_);
    post.push_back(std::move(z));
  }
  GradientRecord g;
  g.layers.resize(layers_.size());
  Eigen::VectorXd delta = upstream;
  for (std::size_t l = layers_.size(); l-- > 0;) {
    g.layers[l].weight = delta * post[l].transpose();
    g.layers[l].bias = delta;
    Eigen::VectorXd back = layers_[l].weight.transpose() * delta;
    if (l > 0) {
      delta = back.cwiseProduct(activation_grad(pre[l - 1], post[l], activation_));
    } else {
      g.input = std::move(back);
    }
  }
  return g;
}

GradientRecord EncoderNetwork::zero_gradient() const {
  GradientRecord g;
  for (const auto& l : layers_) {
    g.layers.push_back({Eigen::MatrixXd::Zero(l.weight.rows(), l.weight.cols()),
                        Eigen::VectorXd::Zero(l.bias.size())});
  }
  g.input = Eigen::VectorXd::Zero(input_dim());
  return g;
}

std::size_t EncoderNetwork::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
  return n;
}

Eigen::VectorXd EncoderNetwork::parameters() const {
  GradientRecord view;
  view.layers = layers_;
  return view.flat();
}

void EncoderNetwork::set_parameters(const Eigen::VectorXd& flat) {
  if (static_cast<std::size_t>(flat.size()) != parameter_count()) {
    throw std::invalid_argument("parameter vector length mismatch");
  }
  Eigen::Index k = 0;
  for (auto& l : layers_) {
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) l.weight(r, c) = flat(k++);
    }
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) l.bias(r) = flat(k++);
  }
}

std::string EncoderNetwork::serialize() const {
  io::BinaryWriter w;
  w.bytes(kEncoderMagic);
  w.put<std::uint32_t>(kEncoderVersion);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(activation_));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(dims_.size()));
  for (int d : dims_) w.put<std::uint32_t>(static_cast<std::uint32_t>(d));
  const Eigen::VectorXd p = parameters();
  for (Eigen::Index i = 0; i < p.size(); ++i) w.put<double>(p(i));
  return w.buffer();
}

EncoderNetwork EncoderNetwork::deserialize(const std::string& bytes) {
  io::BinaryReader r(bytes);
  if (r.bytes(kEncoderMagic.size()) != kEncoderMagic) throw DataError("not an encoder file");
  if (r.get<std::uint32_t>() != kEncoderVersion) throw DataError("unsupported encoder version");
  const auto act = r.get<std::uint32_t>();
  if (act > static_cast<std::uint32_t>(Activation::ReLU)) throw DataError("bad activation");
  const auto n_dims = r.get<std::uint32_t>();
  if (n_dims < 2 || n_dims > 64) throw DataError("bad encoder layer count");
  std::vector<int> dims;
  for (std::uint32_t i = 0; i < n_dims; ++i) dims.push_back(static_cast<int>(r.get<std::uint32_t>()));
  EncoderNetwork net = zeros(dims, static_cast<Activation>(act));
  Eigen::VectorXd p(static_cast<Eigen::Index>(net.parameter_count()));
  for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = r.get<double>();
  if (!r.at_end()) throw DataError("trailing bytes in encoder file");
  net.set_parameters(p);
  return net;
}

void EncoderNetwork::save(const std::filesystem::path& path) const {
  io::atomic_write(path, serialize());
}

EncoderNetwork EncoderNetwork::load(const std::filesystem::path& path) {
  return deserialize(io::read_file(path));
}

}  // namespace qembed
