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
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qembed {

enum class Activation { Tanh, ReLU };

std::string to_string(Activation a);
Activation parse_activation(const std::string& text);

struct DenseLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;
};

/// Parameter gradients shaped like the network, plus the input gradient.
struct GradientRecord {
  std::vector<DenseLayer> layers;
  Eigen::VectorXd input;

  GradientRecord& operator+=(const GradientRecord& other);
  GradientRecord& operator*=(double s);
  /// Same layout as EncoderNetwork::parameters().
  Eigen::VectorXd flat() const;
};

/// Fully connected network; hidden layers use `activation`, the output layer
/// is affine.
class EncoderNetwork {
 public:
  EncoderNetwork(std::vector<int> layer_dims, Activation activation,
                 std::vector<DenseLayer> layers);

  /// Uniform(-a, a) with a = sqrt(6 / (fan_in + fan_out)) per layer, zero
  /// biases. `output_scale` multiplies the last layer's weights.
  static EncoderNetwork xavier(std::vector<int> layer_dims, Activation activation,
                               std::uint64_t seed, double output_scale = 1.0);
  static EncoderNetwork zeros(std::vector<int> layer_dims, Activation activation);

  const std::vector<int>& layer_dims() const { return dims_; }
  int input_dim() const { return dims_.front(); }
  int output_dim() const { return dims_.back(); }
  Activation activation() const { return activation_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }

  /// Throws std::invalid_argument on a length mismatch or non-finite input.
  Eigen::VectorXd forward(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  /// Rows are samples.
  Eigen::MatrixXd forward_rows(const Eigen::MatrixXd& x) const;

  /// Exact gradient of <upstream, forward(x)> with respect to every
  /// parameter and to x.
  GradientRecord backward(const Eigen::Ref<const Eigen::VectorXd>& x,
                          const Eigen::Ref<const Eigen::VectorXd>& upstream) const;
  GradientRecord zero_gradient() const;

  std::size_t parameter_count() const;
  /// Per layer: weight row-major, then bias.
  Eigen::VectorXd parameters() const;
  void set_parameters(const Eigen::VectorXd& flat);

  /// "QEENCODR", u32 version, u32 activation, u32 dim count, u32 dims...,
  /// then per layer weight row-major and bias as f64.
  void save(const std::filesystem::path& path) const;
  static EncoderNetwork load(const std::filesystem::path& path);
  std::string serialize() const;
  static EncoderNetwork deserialize(const std::string& bytes);

 private:
  std::vector<int> dims_;
  Activation activation_;
  std::vector<DenseLayer> layers_;
};

}  // namespace qembed
