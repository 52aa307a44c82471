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

#include "qembed/kernels.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "kernel_entries.hpp"
#include "qembed/errors.hpp"

namespace qembed {

namespace {

void check_states(std::span<const StateVector> states) {
  if (states.empty()) throw std::invalid_argument("Gram matrix over an empty list");
  for (const StateVector& s : states) {
    if (s.n_qubits() != states.front().n_qubits()) {
      throw std::invalid_argument("Gram matrix over states with mixed qubit counts");
    }
  }
}

void check_features(const Eigen::MatrixXd& features) {
  if (features.rows() == 0) throw std::invalid_argument("Gram matrix over an empty list");
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("kernel gamma must be positive and finite");
  }
}

template <typename Entry>
Eigen::MatrixXd symmetric_fill(Eigen::Index n, const Entry& entry, bool unit_diagonal) {
  Eigen::MatrixXd k(n, n);
#pragma omp parallel for schedule(dynamic, 4)
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) = unit_diagonal ? 1.0 : entry(i, i);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = entry(i, j);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

template <typename Entry>
Eigen::MatrixXd rect_fill(Eigen::Index rows, Eigen::Index cols, const Entry& entry) {
  Eigen::MatrixXd k(rows, cols);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) k(i, j) = entry(i, j);
  }
  return k;
}

}  // namespace

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Fidelity: return "fidelity";
    case KernelKind::PQK: return "pqk";
    case KernelKind::RBF: return "rbf";
    case KernelKind::Linear: return "linear";
  }
  return "unknown";
}

KernelKind parse_kernel_kind(const std::string& text) {
  if (text == "fidelity") return KernelKind::Fidelity;
  if (text == "pqk") return KernelKind::PQK;
  if (text == "rbf") return KernelKind::RBF;
  if (text == "linear") return KernelKind::Linear;
  throw std::invalid_argument("unknown kernel kind '" + text + "'");
}

GramMatrix::GramMatrix(KernelKind kind, Eigen::MatrixXd entries,
                       std::map<std::string, double> params)
    : kind_(kind), entries_(std::move(entries)), params_(std::move(params)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw NumericalError("Gram matrix must be square and non-empty");
  }
  if (!entries_.allFinite()) throw NumericalError("Gram matrix has non-finite entries");
  const double asym = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
  if (asym > kGramSymmetryTolerance) {
    std::ostringstream msg;
    msg << to_string(kind_) << " Gram matrix asymmetric by " << asym;
    throw NumericalError(msg.str());
  }
  if (kind_ != KernelKind::Linear) {
    const double diag = (entries_.diagonal().array() - 1.0).abs().maxCoeff();
    if (diag > kGramDiagonalTolerance) {
      std::ostringstream msg;
      msg << to_string(kind_) << " Gram diagonal deviates from 1 by " << diag;
      throw NumericalError(msg.str());
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(entries_, Eigen::EigenvaluesOnly);
  min_eigenvalue_ = solver.eigenvalues().minCoeff();
  if (min_eigenvalue_ < kGramPsdTolerance) {
    std::ostringstream msg;
    msg << to_string(kind_) << " Gram matrix (N=" << entries_.rows()
        << ") is not PSD: smallest eigenvalue " << min_eigenvalue_;
    throw NumericalError(msg.str());
  }
}

GramMatrix fidelity_gram(std::span<const StateVector> states) {
  check_states(states);
  auto entry = [&](Eigen::Index i, Eigen::Index j) {
    return detail::fidelity_entry(states[i], states[j]);
  };
  return GramMatrix(KernelKind::Fidelity,
                    symmetric_fill(static_cast<Eigen::Index>(states.size()), entry, true));
}

double rbf_entry(std::span<const double> h_i, std::span<const double> h_j, double gamma) {
  if (h_i.size() != h_j.size()) throw std::invalid_argument("rbf_entry length mismatch");
  check_gamma(gamma);
  double d2 = 0.0;
  for (std::size_t c = 0; c < h_i.size(); ++c) {
    const double d = h_i[c] - h_j[c];
    d2 += d * d;
  }
  return std::exp(-gamma * d2);
}

GramMatrix rbf_gram(const Eigen::MatrixXd& features, double gamma) {
  check_features(features);
  check_gamma(gamma);
  auto entry = [&](Eigen::Index i, Eigen::Index j) {
    return detail::rbf_value(features, i, features, j, gamma);
  };
  return GramMatrix(KernelKind::RBF, symmetric_fill(features.rows(), entry, true),
                    {{"gamma", gamma}});
}

GramMatrix linear_gram(const Eigen::MatrixXd& features) {
  check_features(features);
  auto entry = [&](Eigen::Index i, Eigen::Index j) {
    return detail::linear_value(features, i, features, j);
  };
  return GramMatrix(KernelKind::Linear, symmetric_fill(features.rows(), entry, false));
}

Eigen::MatrixXd pauli_expectations(std::span<const StateVector> states) {
  check_states(states);
  const int n = states.front().n_qubits();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(states.size()), 3 * n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    const auto v = detail::bloch_vectors(states[r]);
    for (Eigen::Index c = 0; c < out.cols(); ++c) out(r, c) = v[c];
  }
  return out;
}

double pqk_gamma(const Eigen::MatrixXd& expectations, int d, VarianceMode mode) {
  if (d < 1) throw std::invalid_argument("pqk_gamma needs d >= 1");
  if (expectations.rows() < 2) {
    throw std::invalid_argument("pqk_gamma needs at least two samples");
  }
  double var = 0.0;
  if (mode == VarianceMode::Pooled) {
    const double mean = expectations.mean();
    var = (expectations.array() - mean).square().mean();
  } else {
    const Eigen::RowVectorXd mean = expectations.colwise().mean();
    const Eigen::RowVectorXd col_var =
        (expectations.rowwise() - mean).array().square().colwise().mean();
    var = col_var.mean();
  }
  if (!(var > 0.0)) {
    throw NumericalError("degenerate data: Pauli expectation variance is zero");
  }
  return 1.0 / (var * d);
}

double pqk_exponent_frobenius(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("PQK qubit count mismatch");
  return detail::frobenius_exponent(detail::reduced_matrices(a), detail::reduced_matrices(b));
}

double pqk_exponent_pauli(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("PQK qubit count mismatch");
  const auto va = detail::bloch_vectors(a);
  const auto vb = detail::bloch_vectors(b);
  double acc = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) acc += (va[i] - vb[i]) * (va[i] - vb[i]);
  return 0.5 * acc;
}

GramMatrix pqk_gram(std::span<const StateVector> states, double gamma) {
  check_states(states);
  check_gamma(gamma);
  std::vector<std::vector<Eigen::Matrix2cd>> rdm(states.size());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < states.size(); ++i) rdm[i] = detail::reduced_matrices(states[i]);
  auto entry = [&](Eigen::Index i, Eigen::Index j) {
    return std::exp(-gamma * detail::frobenius_exponent(rdm[i], rdm[j]));
  };
  return GramMatrix(KernelKind::PQK,
                    symmetric_fill(static_cast<Eigen::Index>(states.size()), entry, true),
                    {{"gamma", gamma}});
}

Eigen::MatrixXd fidelity_cross(std::span<const StateVector> rows,
                               std::span<const StateVector> cols) {
  auto entry = [&](Eigen::Index i, Eigen::Index j) {
    return detail::fidelity_entry(rows[i], cols[j]);
  };
  return rect_fill(static_cast<Eigen::Index>(rows.size()),
                   static_cast<Eigen::Index>(cols.size()), entry);
}

Eigen::MatrixXd pqk_cross(std::span<const StateVector> rows,
                          std::span<const StateVector> cols, double gamma) {
  check_gamma(gamma);
  std::vector<std::vector<Eigen::Matrix2cd>> rr(rows.size()), rc(cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rr[i] = detail::reduced_matrices(rows[i]);
  for (std::size_t j = 0; j < cols.size(); ++j) rc[j] = detail::reduced_matrices(cols[j]);
  auto entry = [&](Eigen::Index i, Eigen::Index j) {
    return std::exp(-gamma * detail::frobenius_exponent(rr[i], rc[j]));
  };
  return rect_fill(static_cast<Eigen::Index>(rows.size()),
                   static_cast<Eigen::Index>(cols.size()), entry);
}

Eigen::MatrixXd rbf_cross(const Eigen::MatrixXd& rows, const Eigen::MatrixXd& cols,
                          double gamma) {
  check_gamma(gamma);
  if (rows.cols() != cols.cols()) throw std::invalid_argument("rbf_cross width mismatch");
  auto entry = [&](Eigen::Index i, Eigen::Index j) {
    return detail::rbf_value(rows, i, cols, j, gamma);
  };
  return rect_fill(rows.rows(), cols.rows(), entry);
}

Eigen::MatrixXd linear_cross(const Eigen::MatrixXd& rows, const Eigen::MatrixXd& cols) {
  if (rows.cols() != cols.cols()) throw std::invalid_argument("linear_cross width mismatch");
  auto entry = [&](Eigen::Index i, Eigen::Index j) {
    return detail::linear_value(rows, i, cols, j);
  };
  return rect_fill(rows.rows(), cols.rows(), entry);
}

}  // namespace qembed
