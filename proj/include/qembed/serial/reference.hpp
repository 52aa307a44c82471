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

// Single-threaded reference versions of the parallel kernels. Tests compare
// the OpenMP paths against these entry by entry; the benchmark times both.

#include <span>

#include <Eigen/Dense>

#include "qembed/featuremap.hpp"
#include "qembed/qcore.hpp"

namespace qembed::serial {

Eigen::MatrixXd fidelity_gram(std::span<const StateVector> states);
Eigen::MatrixXd pqk_gram(std::span<const StateVector> states, double gamma);
Eigen::MatrixXd rbf_gram(const Eigen::MatrixXd& features, double gamma);
Eigen::MatrixXd linear_gram(const Eigen::MatrixXd& features);
std::vector<StateVector> embed_rows(const Eigen::MatrixXd& angles, const FeatureMapSpec& spec);

}  // namespace qembed::serial
