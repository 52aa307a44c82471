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

#include "qembed/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace qembed {

namespace {

struct Counts {
  long tp = 0, tn = 0, fp = 0, fn = 0;
};

Counts count(std::span<const int> y_true, std::span<const int> y_pred) {
  if (y_true.empty()) throw std::invalid_argument("metrics on empty input");
  if (y_true.size() != y_pred.size()) throw std::invalid_argument("label length mismatch");
  Counts c;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const int t = y_true[i], p = y_pred[i];
    if ((t != 1 && t != -1) || (p != 1 && p != -1)) {
      throw std::invalid_argument("labels must be +1 or -1");
    }
    if (t == 1) (p == 1 ? c.tp : c.fn)++;
    else (p == -1 ? c.tn : c.fp)++;
  }
  return c;
}

}  // namespace

Metrics compute_metrics(std::span<const int> y_true, std::span<const int> y_pred) {
  const Counts c = count(y_true, y_pred);
  if (c.tp + c.fn == 0 || c.tn + c.fp == 0) {
    throw std::invalid_argument("balanced accuracy needs both classes in y_true");
  }
  Metrics m;
  m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(y_true.size());
  m.sensitivity = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  m.specificity = static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
  m.balanced_accuracy = 0.5 * (m.sensitivity + m.specificity);
  return m;
}

double accuracy(std::span<const int> y_true, std::span<const int> y_pred) {
  const Counts c = count(y_true, y_pred);
  return static_cast<double>(c.tp + c.tn) / static_cast<double>(y_true.size());
}

double balanced_accuracy(std::span<const int> y_true, std::span<const int> y_pred) {
  return compute_metrics(y_true, y_pred).balanced_accuracy;
}

MeanStd mean_std(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mean_std of an empty list");
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return {mean, std::sqrt(sq / static_cast<double>(values.size()))};
}

bool near_chance(double balanced_accuracy, double margin) {
  return std::abs(balanced_accuracy - 0.5) <= margin;
}

}  // namespace qembed
