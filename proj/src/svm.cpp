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

#include "qembed/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qembed/errors.hpp"

namespace qembed {

namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_problem(const Eigen::MatrixXd& k, std::span<const int> y) {
  if (k.rows() != k.cols() || static_cast<std::size_t>(k.rows()) != y.size()) {
    throw std::invalid_argument("gram size " + std::to_string(k.rows()) +
                                " does not match label count " + std::to_string(y.size()));
  }
  bool pos = false, neg = false;
  for (int v : y) {
    if (v == 1) pos = true;
    else if (v == -1) neg = true;
    else throw std::invalid_argument("SVM labels must be +1 or -1");
  }
  if (!pos || !neg) throw std::invalid_argument("SVM needs both classes in the labels");
}

bool in_up(double a, int y, double C) { return (y == 1 && a < C) || (y == -1 && a > 0.0); }
bool in_low(double a, int y, double C) { return (y == -1 && a < C) || (y == 1 && a > 0.0); }

// Gradient of the minimization form (1/2) a'Qa - e'a.
std::vector<double> dual_gradient(const Eigen::MatrixXd& k, std::span<const int> y,
                                  std::span<const double> alpha) {
  const auto n = static_cast<Eigen::Index>(y.size());
  std::vector<double> g(y.size(), -1.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (alpha[j] == 0.0) continue;
    for (Eigen::Index i = 0; i < n; ++i) g[i] += y[i] * y[j] * k(i, j) * alpha[j];
  }
  return g;
}

double violation(std::span<const double> g, std::span<const int> y,
                 std::span<const double> alpha, double C) {
  double up = -kInf, low = kInf;
  for (std::size_t t = 0; t < y.size(); ++t) {
    const double v = -y[t] * g[t];
    if (in_up(alpha[t], y[t], C)) up = std::max(up, v);
    if (in_low(alpha[t], y[t], C)) low = std::min(low, v);
  }
  return up - low;
}

}  // namespace

SVMModel::SVMModel(KernelKind kind, double C, std::vector<double> alpha, std::vector<int> labels,
                   double bias, double kkt_residual, long iterations)
    : kind_(kind),
      C_(C),
      alpha_(std::move(alpha)),
      bias_(bias),
      kkt_residual_(kkt_residual),
      iterations_(iterations) {
  if (alpha_.size() != labels.size()) throw std::invalid_argument("alpha/label size mismatch");
  coef_.resize(alpha_.size());
  for (std::size_t i = 0; i < alpha_.size(); ++i) {
    coef_[i] = alpha_[i] * labels[i];
    if (alpha_[i] > 0.0) support_.push_back(static_cast<int>(i));
  }
}

double SVMModel::decision(std::span<const double> row) const {
  if (row.size() != coef_.size()) {
    throw std::invalid_argument("kernel row has " + std::to_string(row.size()) +
                                " entries, model was trained on " +
                                std::to_string(coef_.size()));
  }
  double f = bias_;
  for (int i : support_) f += coef_[i] * row[i];
  return f;
}

SVMPrediction SVMModel::predict(std::span<const double> row) const {
  const double f = decision(row);
  return {f > 0.0 ? 1 : -1, f};
}

std::vector<int> SVMModel::predict_rows(const Eigen::MatrixXd& cross) const {
  std::vector<int> out(static_cast<std::size_t>(cross.rows()));
  std::vector<double> row(static_cast<std::size_t>(cross.cols()));
  for (Eigen::Index r = 0; r < cross.rows(); ++r) {
    for (Eigen::Index c = 0; c < cross.cols(); ++c) row[c] = cross(r, c);
    out[r] = predict(row).label;
  }
  return out;
}

SVMModel svm_fit(const GramMatrix& gram, std::span<const int> y, const SVMOptions& opt) {
  const Eigen::MatrixXd& k = gram.entries();
  check_problem(k, y);
  if (!(opt.C > 0.0) || !std::isfinite(opt.C)) throw std::invalid_argument("C must be positive");
  if (!(opt.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const std::size_t n = y.size();
  const double C = opt.C;
  std::vector<double> alpha(n, 0.0);
  std::vector<double> g(n, -1.0);

  long iter = 0;
  double gap = kInf;
  for (; iter < opt.max_iterations; ++iter) {
    // Working-set selection using second-order information.
    int i = -1;
    double gmax = -kInf;
    for (std::size_t t = 0; t < n; ++t) {
      if (in_up(alpha[t], y[t], C) && -y[t] * g[t] >= gmax) {
        gmax = -y[t] * g[t];
        i = static_cast<int>(t);
      }
    }
    int j = -1;
    double gmin = kInf;
    double best = kInf;
    for (std::size_t t = 0; t < n; ++t) {
      if (!in_low(alpha[t], y[t], C)) continue;
      const double v = -y[t] * g[t];
      gmin = std::min(gmin, v);
      if (i >= 0 && v < gmax) {
        const double b = gmax - v;
        double a = k(i, i) + k(t, t) - 2.0 * k(i, t);
        if (a <= 0.0) a = kTau;
        const double score = -(b * b) / a;
        if (score <= best) {
          best = score;
          j = static_cast<int>(t);
        }
      }
    }
    gap = gmax - gmin;
    if (i < 0 || j < 0 || gap < opt.tolerance) break;

    const double ai = alpha[i], aj = alpha[j];
    double quad = k(i, i) + k(j, j) - 2.0 * k(i, j);
    if (quad <= 0.0) quad = kTau;
    if (y[i] != y[j]) {
      const double delta = (-g[i] - g[j]) / quad;
      const double diff = ai - aj;
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) { alpha[j] = 0.0; alpha[i] = diff; }
      } else {
        if (alpha[i] < 0.0) { alpha[i] = 0.0; alpha[j] = -diff; }
      }
      if (diff > 0.0) {
        if (alpha[i] > C) { alpha[i] = C; alpha[j] = C - diff; }
      } else {
        if (alpha[j] > C) { alpha[j] = C; alpha[i] = C + diff; }
      }
    } else {
      const double delta = (g[i] - g[j]) / quad;
      const double sum = ai + aj;
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > C) {
        if (alpha[i] > C) { alpha[i] = C; alpha[j] = sum - C; }
      } else {
        if (alpha[j] < 0.0) { alpha[j] = 0.0; alpha[i] = sum; }
      }
      if (sum > C) {
        if (alpha[j] > C) { alpha[j] = C; alpha[i] = sum - C; }
      } else {
        if (alpha[i] < 0.0) { alpha[i] = 0.0; alpha[j] = sum; }
      }
    }
    const double dai = alpha[i] - ai, daj = alpha[j] - aj;
    for (std::size_t t = 0; t < n; ++t) {
      g[t] += y[t] * (y[i] * k(t, i) * dai + y[j] * k(t, j) * daj);
    }
  }
  if (gap >= opt.tolerance && iter >= opt.max_iterations) {
    throw NumericalError("SVM solver did not converge in " + std::to_string(iter) +
                         " iterations (KKT gap " + std::to_string(gap) + ")");
  }

  // Bias from free support vectors, else the midpoint of the feasible range.
  double ub = kInf, lb = -kInf, sum_free = 0.0;
  int n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * g[t];
    if (alpha[t] >= C) {
      if (y[t] == -1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (alpha[t] <= 0.0) {
      if (y[t] == 1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  const double rho = n_free > 0 ? sum_free / n_free : 0.5 * (ub + lb);
  const double residual = std::max(0.0, violation(g, y, alpha, C));
  return SVMModel(gram.kind(), C, std::move(alpha), std::vector<int>(y.begin(), y.end()), -rho,
                  residual, iter);
}

double svm_dual_objective(const Eigen::MatrixXd& k, std::span<const int> y,
                          std::span<const double> alpha) {
  check_problem(k, y);
  if (alpha.size() != y.size()) throw std::invalid_argument("alpha/label size mismatch");
  double linear = 0.0, quad = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    linear += alpha[i];
    for (std::size_t j = 0; j < y.size(); ++j) {
      quad += alpha[i] * alpha[j] * y[i] * y[j] * k(i, j);
    }
  }
  return linear - 0.5 * quad;
}

double svm_kkt_residual(const Eigen::MatrixXd& k, std::span<const int> y,
                        std::span<const double> alpha, double C) {
  check_problem(k, y);
  if (alpha.size() != y.size()) throw std::invalid_argument("alpha/label size mismatch");
  return std::max(0.0, violation(dual_gradient(k, y, alpha), y, alpha, C));
}

}  // namespace qembed
