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

#include <span>

namespace qembed {

struct Metrics {
  double accuracy = 0.0;
  double balanced_accuracy = 0.0;
  double sensitivity = 0.0;  // recall on +1
  double specificity = 0.0;  // recall on -1
};

/// Labels are +1 / -1. Throws std::invalid_argument on empty or mismatched
/// input, and when y_true holds a single class.
Metrics compute_metrics(std::span<const int> y_true, std::span<const int> y_pred);

double accuracy(std::span<const int> y_true, std::span<const int> y_pred);
double balanced_accuracy(std::span<const int> y_true, std::span<const int> y_pred);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // population (divides by n)
};

/// Summed in index order. Throws on empty input.
MeanStd mean_std(std::span<const double> values);

/// True when balanced accuracy is within `margin` of 0.5.
bool near_chance(double balanced_accuracy, double margin = 0.02);

}  // namespace qembed
