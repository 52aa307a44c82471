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

#include "qembed/training.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qembed/errors.hpp"
#include "qembed/qcore.hpp"

namespace qembed {

namespace {

void check_map(const EncoderNetwork& encoder, const FeatureMapSpec& map) {
  if (encoder.output_dim() != map.input_dim()) {
    throw std::invalid_argument("encoder output width " + std::to_string(encoder.output_dim()) +
                                " does not match feature map input " +
                                std::to_string(map.input_dim()));
  }
}

std::vector<int> unique_rows(std::span<const IndexPair> pairs) {
  std::vector<int> rows;
  for (const IndexPair& p : pairs) {
    rows.push_back(p.i);
    rows.push_back(p.j);
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

std::vector<int> all_rows(const LabeledData& data, std::span<const int> rows) {
  if (!rows.empty()) return {rows.begin(), rows.end()};
  std::vector<int> out(static_cast<std::size_t>(data.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
  return out;
}

// Sums per-row encoder gradients in row order.
GradientRecord backprop_rows(const EncoderNetwork& encoder, const LabeledData& data,
                             const std::vector<int>& rows,
                             const std::vector<Eigen::VectorXd>& upstream) {
  std::vector<GradientRecord> parts(rows.size());
#pragma omp parallel for schedule(static)
  for (std::size_t r = 0; r < rows.size(); ++r) {
    parts[r] = encoder.backward(data.x.row(rows[r]).transpose(), upstream[r]);
  }
  GradientRecord total = encoder.zero_gradient();
  for (const GradientRecord& g : parts) total += g;
  return total;
}

double pair_target(const LabeledData& data, const IndexPair& p) {
  return 0.5 * (1.0 + data.y[static_cast<std::size_t>(p.i)] * data.y[static_cast<std::size_t>(p.j)]);
}

}  // namespace

PairBatch::PairBatch(std::vector<IndexPair> pairs, int n_samples) : pairs_(std::move(pairs)) {
  std::set<std::pair<int, int>> seen;
  for (const IndexPair& p : pairs_) {
    if (p.i < 0 || p.j >= n_samples || p.i >= p.j) {
      throw std::invalid_argument("pair (" + std::to_string(p.i) + "," + std::to_string(p.j) +
                                  ") must satisfy 0 <= i < j < " + std::to_string(n_samples));
    }
    if (!seen.insert({p.i, p.j}).second) {
      throw std::invalid_argument("duplicate pair in batch");
    }
  }
}

PairBatch PairBatch::sample(std::span<const int> labels, int size, std::mt19937_64& rng) {
  std::vector<int> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (labels[i] > 0 ? pos : neg).push_back(static_cast<int>(i));
  }
  const auto np = static_cast<long long>(pos.size());
  const auto nn = static_cast<long long>(neg.size());
  const long long same_avail = np * (np - 1) / 2 + nn * (nn - 1) / 2;
  const long long cross_avail = np * nn;
  const long long want = std::min<long long>(size, same_avail + cross_avail);
  long long want_same = std::min<long long>(want / 2 + want % 2, same_avail);
  long long want_cross = std::min<long long>(want - want_same, cross_avail);
  want_same = std::min<long long>(want - want_cross, same_avail);

  std::set<std::pair<int, int>> chosen;
  std::vector<IndexPair> out;
  auto add = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    if (chosen.insert({a, b}).second) out.push_back({a, b});
  };
  const double w_pos = static_cast<double>(np * (np - 1) / 2);
  const double w_neg = static_cast<double>(nn * (nn - 1) / 2);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const std::size_t target_same = static_cast<std::size_t>(want_same);
  while (out.size() < target_same) {
    const bool from_pos = u01(rng) * (w_pos + w_neg) < w_pos;
    const auto& cls = from_pos ? pos : neg;
    std::uniform_int_distribution<std::size_t> pick(0, cls.size() - 1);
    const std::size_t a = pick(rng), b = pick(rng);
    if (a != b) add(cls[a], cls[b]);
  }
  const std::size_t target_total = target_same + static_cast<std::size_t>(want_cross);
  if (want_cross > 0) {
    std::uniform_int_distribution<std::size_t> pick_p(0, pos.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_n(0, neg.size() - 1);
    while (out.size() < target_total) add(pos[pick_p(rng)], neg[pick_n(rng)]);
  }
  return PairBatch(std::move(out), static_cast<int>(labels.size()));
}

double nqe_loss(const EncoderNetwork& encoder, const FeatureMapSpec& map,
                std::span<const IndexPair> pairs, const LabeledData& data) {
  check_map(encoder, map);
  if (pairs.empty()) throw std::invalid_argument("nqe_loss on an empty batch");
  const std::vector<int> rows = unique_rows(pairs);
  std::map<int, std::size_t> slot;
  Eigen::MatrixXd z(static_cast<Eigen::Index>(rows.size()), encoder.output_dim());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    slot[rows[r]] = r;
    z.row(static_cast<Eigen::Index>(r)) = encoder.forward(data.x.row(rows[r]).transpose());
  }
  const std::vector<StateVector> states = embed_rows(z, map);
  double acc = 0.0;
  for (const IndexPair& p : pairs) {
    const double f = fidelity(states[slot[p.i]], states[slot[p.j]]);
    const double r = f - pair_target(data, p);
    acc += r * r;
  }
  return acc / static_cast<double>(pairs.size());
}

LossGradient nqe_loss_and_gradient(const EncoderNetwork& encoder, const FeatureMapSpec& map,
                                   std::span<const IndexPair> pairs, const LabeledData& data,
                                   GradientMethod method) {
  check_map(encoder, map);
  if (pairs.empty()) throw std::invalid_argument("nqe_loss on an empty batch");
  const std::vector<int> rows = unique_rows(pairs);
  std::map<int, std::size_t> slot;
  std::vector<std::vector<double>> z(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    slot[rows[r]] = r;
    const Eigen::VectorXd out = encoder.forward(data.x.row(rows[r]).transpose());
    z[r].assign(out.data(), out.data() + out.size());
  }
  std::vector<FidelityGradient> fg(pairs.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    fg[k] = fidelity_gradient(z[slot.at(pairs[k].i)], z[slot.at(pairs[k].j)], map, method);
  }
  const double inv_b = 1.0 / static_cast<double>(pairs.size());
  std::vector<Eigen::VectorXd> upstream(rows.size(), Eigen::VectorXd::Zero(encoder.output_dim()));
  double loss = 0.0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const double r = fg[k].fidelity - pair_target(data, pairs[k]);
    loss += r * r;
    const double coeff = 2.0 * r * inv_b;
    Eigen::VectorXd& ui = upstream[slot[pairs[k].i]];
    Eigen::VectorXd& uj = upstream[slot[pairs[k].j]];
    for (Eigen::Index c = 0; c < ui.size(); ++c) {
      ui(c) += coeff * fg[k].d_left[c];
      uj(c) += coeff * fg[k].d_right[c];
    }
  }
  return {loss * inv_b, backprop_rows(encoder, data, rows, upstream)};
}

GradientRecord nqe_loss_gradient(const EncoderNetwork& encoder, const FeatureMapSpec& map,
                                 std::span<const IndexPair> pairs, const LabeledData& data,
                                 GradientMethod method) {
  return nqe_loss_and_gradient(encoder, map, pairs, data, method).grad;
}

double rbf_align_loss(const EncoderNetwork& encoder, const LabeledData& data,
                      std::span<const int> rows_in, double gamma) {
  const std::vector<int> rows = all_rows(data, rows_in);
  if (rows.size() < 2) throw std::invalid_argument("rbf_align_loss needs at least two samples");
  std::vector<Eigen::VectorXd> h(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) h[r] = encoder.forward(data.x.row(rows[r]).transpose());
  double acc = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      const double k = std::exp(-gamma * (h[i] - h[j]).squaredNorm());
      const double delta = data.y[rows[i]] == data.y[rows[j]] ? 1.0 : 0.0;
      acc += (k - delta) * (k - delta);
    }
  }
  const double m = static_cast<double>(rows.size() * (rows.size() - 1) / 2);
  return acc / m;
}

LossGradient rbf_align_loss_and_gradient(const EncoderNetwork& encoder, const LabeledData& data,
                                         std::span<const int> rows_in, double gamma) {
  const std::vector<int> rows = all_rows(data, rows_in);
  if (rows.size() < 2) throw std::invalid_argument("rbf_align_loss needs at least two samples");
  const std::size_t n = rows.size();
  std::vector<Eigen::VectorXd> h(n);
  for (std::size_t r = 0; r < n; ++r) h[r] = encoder.forward(data.x.row(rows[r]).transpose());
  const double m = static_cast<double>(n * (n - 1) / 2);
  std::vector<Eigen::VectorXd> upstream(n, Eigen::VectorXd::Zero(encoder.output_dim()));
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Eigen::VectorXd diff = h[i] - h[j];
      const double k = std::exp(-gamma * diff.squaredNorm());
      const double delta = data.y[rows[i]] == data.y[rows[j]] ? 1.0 : 0.0;
      loss += (k - delta) * (k - delta);
      // dL/dh_i = 2(k - delta)/M * k * (-2 gamma) (h_i - h_j)
      const double coeff = 2.0 * (k - delta) / m * k * (-2.0 * gamma);
      upstream[i] += coeff * diff;
      upstream[j] -= coeff * diff;
    }
  }
  return {loss / m, backprop_rows(encoder, data, rows, upstream)};
}

namespace {

std::vector<int> sample_rows(int n, int count, std::mt19937_64& rng) {
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  if (count >= n) return idx;
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(static_cast<std::size_t>(count));
  std::sort(idx.begin(), idx.end());
  return idx;
}

void check_finite(double loss, int epoch, const char* which) {
  if (!std::isfinite(loss)) {
    std::ostringstream msg;
    msg << "training diverged: " << which << " loss is " << loss << " at epoch " << epoch;
    throw NumericalError(msg.str());
  }
}

}  // namespace

TrainResult train_embedding(EmbeddingObjective objective, const EncoderNetwork& initial,
                            const std::optional<FeatureMapSpec>& map, const LabeledData& train,
                            const LabeledData& val, const TrainConfig& config,
                            const EmbeddingTrainOptions& options) {
  config.validate();
  if (objective == EmbeddingObjective::NQE) {
    if (!map) throw std::invalid_argument("NQE training needs a feature map");
    check_map(initial, *map);
  }
  for (const LabeledData* d : {&train, &val}) {
    if (d->count(1) == 0 || d->count(-1) == 0) {
      throw DataError("embedding training needs both classes in train and validation splits");
    }
  }

  std::mt19937_64 rng(config.seed);
  // Fixed evaluation sets so per-epoch losses are comparable.
  std::mt19937_64 eval_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::optional<PairBatch> train_eval, val_eval;
  std::vector<int> train_eval_rows;
  if (objective == EmbeddingObjective::NQE) {
    train_eval = PairBatch::sample(train.y, options.eval_pairs, eval_rng);
    val_eval = PairBatch::sample(val.y, options.eval_pairs, eval_rng);
  } else {
    train_eval_rows = sample_rows(static_cast<int>(train.size()), options.eval_samples, eval_rng);
  }

  EncoderNetwork net = initial;
  auto evaluate = [&](int epoch) {
    EpochLoss e{epoch, 0.0, 0.0};
    if (objective == EmbeddingObjective::NQE) {
      e.train_loss = nqe_loss(net, *map, train_eval->pairs(), train);
      e.val_loss = nqe_loss(net, *map, val_eval->pairs(), val);
    } else {
      e.train_loss = rbf_align_loss(net, train, train_eval_rows);
      e.val_loss = rbf_align_loss(net, val);
    }
    check_finite(e.train_loss, epoch, "training");
    check_finite(e.val_loss, epoch, "validation");
    return e;
  };

  TrainResult result{net, {}, 0, 0};
  EarlyStopping stopper(config.patience);
  result.history.rows.push_back(evaluate(0));
  stopper.observe(0, result.history.rows.back().val_loss);

  Eigen::VectorXd params = net.parameters();
  Adam adam(params.size(), config.learning_rate);
  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    for (int step = 0; step < config.steps_per_epoch; ++step) {
      LossGradient lg;
      if (objective == EmbeddingObjective::NQE) {
        const PairBatch batch = PairBatch::sample(train.y, config.batch_pairs, rng);
        lg = nqe_loss_and_gradient(net, *map, batch.pairs(), train, options.gradient);
      } else {
        const auto rows = sample_rows(static_cast<int>(train.size()),
                                      std::max(2, config.batch_pairs), rng);
        lg = rbf_align_loss_and_gradient(net, train, rows);
      }
      check_finite(lg.loss, epoch, "batch");
      adam.step(params, lg.grad.flat());
      net.set_parameters(params);
    }
    result.history.rows.push_back(evaluate(epoch));
    result.epochs_run = epoch;
    if (stopper.observe(epoch, result.history.rows.back().val_loss)) result.encoder = net;
    if (stopper.should_stop(epoch)) break;
  }
  result.best_epoch = stopper.best_epoch();
  return result;
}

double ensemble_trace_distance(const EncoderNetwork& encoder, const FeatureMapSpec& map,
                               const LabeledData& data, std::uint64_t seed, int cap_per_class) {
  check_map(encoder, map);
  std::vector<int> pos, neg;
  for (std::size_t i = 0; i < data.y.size(); ++i) {
    (data.y[i] > 0 ? pos : neg).push_back(static_cast<int>(i));
  }
  if (pos.empty() || neg.empty()) {
    throw DataError("ensemble trace distance needs both classes");
  }
  std::mt19937_64 rng(seed);
  auto cap = [&](std::vector<int>& rows) {
    if (static_cast<int>(rows.size()) > cap_per_class) {
      std::shuffle(rows.begin(), rows.end(), rng);
      rows.resize(static_cast<std::size_t>(cap_per_class));
      std::sort(rows.begin(), rows.end());
    }
  };
  cap(pos);
  cap(neg);
  auto mixture = [&](const std::vector<int>& rows) {
    const LabeledData part = data.subset(rows);
    return DensityMatrix::mixture(embed_rows(encoder.forward_rows(part.x), map));
  };
  return trace_distance(mixture(pos), mixture(neg));
}

}  // namespace qembed
