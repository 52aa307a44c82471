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

#include "qembed/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "qembed/encoder.hpp"
#include "qembed/errors.hpp"
#include "qembed/featuremap.hpp"
#include "qembed/kernels.hpp"
#include "qembed/metrics.hpp"
#include "qembed/qcnn.hpp"
#include "qembed/single_layer.hpp"
#include "qembed/svm.hpp"
#include "qembed/training.hpp"

namespace qembed {

namespace {

std::vector<int> sorted_take(std::vector<int> idx, std::size_t keep, std::mt19937_64& rng) {
  if (idx.size() > keep) {
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(keep);
    std::sort(idx.begin(), idx.end());
  }
  return idx;
}

// Ratio sampling on a subset of indices, used when sampling follows the split.
std::vector<int> ratio_indices(const std::vector<Sample>& samples, const std::vector<int>& idx,
                               ClassRatio ratio, std::uint64_t seed) {
  if (ratio == ClassRatio::AsIs) return idx;
  std::vector<int> act, inact;
  for (int i : idx) (samples[i].label > 0 ? act : inact).push_back(i);
  const std::size_t want = act.size() * (ratio == ClassRatio::OneToOne ? 1 : 6);
  if (inact.size() < want) {
    throw DataError("ratio " + to_string(ratio) + " needs " + std::to_string(want) +
                    " inactivators in a split, only " + std::to_string(inact.size()) +
                    " available");
  }
  std::mt19937_64 rng(seed);
  std::vector<int> out = act;
  const std::vector<int> kept = sorted_take(inact, want, rng);
  out.insert(out.end(), kept.begin(), kept.end());
  std::sort(out.begin(), out.end());
  return out;
}

LabeledData concat(const LabeledData& a, const LabeledData& b) {
  LabeledData out;
  out.x.resize(a.x.rows() + b.x.rows(), a.x.cols());
  out.x << a.x, b.x;
  out.y = a.y;
  out.y.insert(out.y.end(), b.y.begin(), b.y.end());
  return out;
}

double pooled_variance(const Eigen::MatrixXd& x) {
  const double mean = x.mean();
  return (x.array() - mean).square().mean();
}

std::string file_stem(const ExperimentConfig& cfg) {
  std::string s = row_label(cfg);
  for (char& c : s) {
    if (c == ' ') c = '_';
  }
  return s;
}

std::vector<int> encoder_dims(const ExperimentConfig& cfg, int output) {
  std::vector<int> dims{kDescriptorCount};
  dims.insert(dims.end(), cfg.encoder_hidden.begin(), cfg.encoder_hidden.end());
  dims.push_back(output);
  return dims;
}

// Per-seed execution context.
struct SeedContext {
  const ExperimentConfig& cfg;
  const PreparedData& data;
  std::uint64_t seed;
  std::filesystem::path artifact_dir;  // empty disables artifacts
  std::string stem;
  SeedResult result;
  std::vector<std::string> log;

  void note(const std::string& line) { log.push_back("[seed " + std::to_string(seed) + "] " + line); }

  bool artifacts() const { return !artifact_dir.empty(); }
  std::string artifact_name(const std::string& suffix) const {
    return stem + "_seed" + std::to_string(seed) + "_" + suffix;
  }
  void write_history(const LossHistory& h, const std::string& what) {
    if (!artifacts()) return;
    const std::string name = artifact_name(what + "_loss.csv");
    h.write_csv(artifact_dir / name);
    result.artifacts.push_back(name);
  }
  void write_encoder(const EncoderNetwork& e, const std::string& what) {
    if (!artifacts()) return;
    const std::string name = artifact_name(what + ".qee");
    e.save(artifact_dir / name);
    result.artifacts.push_back(name);
  }
  void write_gram_cache(const GramMatrix& g) {
    if (!artifacts()) return;
    const std::string name = artifact_name("gram.qeg");
    write_gram(artifact_dir / name, g);
    result.artifacts.push_back(name);
  }
  TrainConfig embed_config() const {
    TrainConfig tc = cfg.embed_train;
    tc.seed = seed;
    return tc;
  }
  TrainConfig classifier_config() const {
    TrainConfig tc = cfg.classifier_train;
    tc.seed = seed ^ 0x5bd1e995ULL;
    return tc;
  }
  void score(std::span<const int> predictions) {
    result.metrics = compute_metrics(data.test.y, predictions);
    result.ok = true;
    char buf[128];
    std::snprintf(buf, sizeof buf, "test accuracy %.4f, balanced accuracy %.4f",
                  result.metrics.accuracy, result.metrics.balanced_accuracy);
    note(buf);
  }
};

// ---- SVM rows -------------------------------------------------------------

struct SvmKernels {
  GramMatrix gram;
  Eigen::MatrixXd cross;  // test rows x fit rows
};

SvmKernels svm_kernels(const ExperimentConfig& cfg, const LabeledData& fit,
                       const LabeledData& test, std::map<std::string, double>& diagnostics) {
  if (is_quantum_svm(cfg.condition)) {
    const FeatureMapSpec spec = cfg.feature_map_spec();
    const AngleTransform transform = AngleTransform::fit(fit.x, spec.n_qubits);
    const auto fit_states = embed_rows(map_inputs(transform.angles(fit.x), spec.kind), spec);
    const auto test_states = embed_rows(map_inputs(transform.angles(test.x), spec.kind), spec);
    if (cfg.condition == Condition::SVM_PQK_ZZ || cfg.condition == Condition::SVM_PQK_XYZ) {
      const double gamma =
          pqk_gamma(pauli_expectations(fit_states), spec.n_qubits, cfg.pqk_variance);
      diagnostics["pqk_gamma"] = gamma;
      return {pqk_gram(fit_states, gamma), pqk_cross(test_states, fit_states, gamma)};
    }
    return {fidelity_gram(fit_states), fidelity_cross(test_states, fit_states)};
  }
  Eigen::MatrixXd xf = fit.x, xt = test.x;
  if (cfg.pca_dims > 0) {
    const PCA pca = PCA::fit(fit.x, cfg.pca_dims);
    xf = pca.transform(fit.x);
    xt = pca.transform(test.x);
  }
  if (cfg.condition == Condition::SVM_RBF) {
    const double var = pooled_variance(xf);
    if (!(var > 0.0)) throw NumericalError("zero feature variance for the RBF bandwidth");
    const double gamma = 1.0 / (static_cast<double>(xf.cols()) * var);
    diagnostics["rbf_gamma"] = gamma;
    return {rbf_gram(xf, gamma), rbf_cross(xt, xf, gamma)};
  }
  return {linear_gram(xf), linear_cross(xt, xf)};
}

void run_svm(SeedContext& ctx) {
  const ExperimentConfig& cfg = ctx.cfg;
  const LabeledData fit = concat(ctx.data.train, ctx.data.val);
  const SvmKernels k = svm_kernels(cfg, fit, ctx.data.test, ctx.result.diagnostics);
  ctx.result.diagnostics["gram_size"] = static_cast<double>(k.gram.size());
  ctx.result.diagnostics["gram_min_eigenvalue"] = k.gram.min_eigenvalue();
  ctx.write_gram_cache(k.gram);

  SVMOptions opt;
  opt.C = cfg.svm_c;
  opt.tolerance = cfg.svm_tolerance;
  const SVMModel model = svm_fit(k.gram, fit.y, opt);
  ctx.result.diagnostics["svm_support_vectors"] = static_cast<double>(model.support().size());
  ctx.result.diagnostics["svm_kkt_residual"] = model.kkt_residual();
  ctx.score(model.predict_rows(k.cross));
}

// ---- encoder conditions ---------------------------------------------------

EncoderNetwork train_nqe(SeedContext& ctx, const FeatureMapSpec& spec) {
  const ExperimentConfig& cfg = ctx.cfg;
  const EncoderNetwork init =
      EncoderNetwork::xavier(encoder_dims(cfg, spec.input_dim()), cfg.encoder_activation,
                             ctx.seed, cfg.encoder_output_scale);
  TraceDistances td;
  td.train_before = ensemble_trace_distance(init, spec, ctx.data.train, ctx.seed, cfg.td_cap);
  td.test_before = ensemble_trace_distance(init, spec, ctx.data.test, ctx.seed, cfg.td_cap);
  EmbeddingTrainOptions opt;
  opt.gradient = cfg.gradient;
  const TrainResult res = train_embedding(EmbeddingObjective::NQE, init, spec, ctx.data.train,
                                          ctx.data.val, ctx.embed_config(), opt);
  td.train_after = ensemble_trace_distance(res.encoder, spec, ctx.data.train, ctx.seed, cfg.td_cap);
  td.test_after = ensemble_trace_distance(res.encoder, spec, ctx.data.test, ctx.seed, cfg.td_cap);
  ctx.result.trace = td;
  ctx.result.diagnostics["nqe_best_epoch"] = res.best_epoch;
  ctx.result.diagnostics["nqe_epochs_run"] = res.epochs_run;
  ctx.result.diagnostics["nqe_initial_val_loss"] = res.history.rows.front().val_loss;
  ctx.result.diagnostics["nqe_best_val_loss"] = res.history.rows[res.best_epoch].val_loss;
  char buf[160];
  std::snprintf(buf, sizeof buf, "NQE trace distance train %.4f -> %.4f, test %.4f -> %.4f",
                td.train_before, td.train_after, td.test_before, td.test_after);
  ctx.note(buf);
  if (td.train_after < td.train_before - 1e-6) {
    ctx.note("NQE training lowered the training-split trace distance");
  }
  ctx.write_history(res.history, "nqe");
  ctx.write_encoder(res.encoder, "nqe_encoder");
  return res.encoder;
}

void run_qcnn(SeedContext& ctx) {
  const FeatureMapSpec spec = ctx.cfg.feature_map_spec();
  const EncoderNetwork enc = train_nqe(ctx, spec);
  auto states = [&](const LabeledData& d) { return embed_rows(enc.forward_rows(d.x), spec); };
  const auto tr = states(ctx.data.train), va = states(ctx.data.val), te = states(ctx.data.test);
  const QCNNTrainResult res = qcnn_train(QCNN::random(ctx.seed), tr, ctx.data.train.y, va,
                                         ctx.data.val.y, ctx.classifier_config());
  ctx.result.diagnostics["clf_best_epoch"] = res.best_epoch;
  ctx.result.diagnostics["clf_epochs_run"] = res.epochs_run;
  ctx.write_history(res.history, "qcnn");
  std::vector<int> pred(te.size());
  for (std::size_t i = 0; i < te.size(); ++i) pred[i] = res.model.forward(te[i]) >= 0.5 ? 1 : -1;
  ctx.score(pred);
}

void head_on_frozen(SeedContext& ctx, const EncoderNetwork& enc) {
  const Eigen::MatrixXd htr = enc.forward_rows(ctx.data.train.x);
  const Eigen::MatrixXd hva = enc.forward_rows(ctx.data.val.x);
  const Eigen::MatrixXd hte = enc.forward_rows(ctx.data.test.x);
  const SingleLayerResult res =
      single_layer_train(LogisticHead::zeros(enc.output_dim()), htr, ctx.data.train.y, hva,
                         ctx.data.val.y, ctx.classifier_config());
  ctx.result.diagnostics["clf_best_epoch"] = res.best_epoch;
  ctx.result.diagnostics["clf_epochs_run"] = res.epochs_run;
  ctx.write_history(res.history, "single_layer");
  ctx.score(res.head.predict_rows(hte));
}

EncoderNetwork rbf_finetune(SeedContext& ctx, const EncoderNetwork& init) {
  const TrainResult res = train_embedding(EmbeddingObjective::RBFAlign, init, std::nullopt,
                                          ctx.data.train, ctx.data.val, ctx.embed_config());
  ctx.result.diagnostics["rbf_best_epoch"] = res.best_epoch;
  ctx.result.diagnostics["rbf_epochs_run"] = res.epochs_run;
  ctx.result.diagnostics["rbf_initial_val_loss"] = res.history.rows.front().val_loss;
  ctx.result.diagnostics["rbf_best_val_loss"] = res.history.rows[res.best_epoch].val_loss;
  ctx.write_history(res.history, "rbf");
  ctx.write_encoder(res.encoder, "rbf_encoder");
  return res.encoder;
}

void run_rbf_single_layer(SeedContext& ctx) {
  const ExperimentConfig& cfg = ctx.cfg;
  const EncoderNetwork init =
      EncoderNetwork::xavier(encoder_dims(cfg, cfg.resolved_qubits()), cfg.encoder_activation,
                             ctx.seed, cfg.encoder_output_scale);
  head_on_frozen(ctx, rbf_finetune(ctx, init));
}

void run_pretrained(SeedContext& ctx, const std::optional<EncoderNetwork>& loaded) {
  const FeatureMapSpec spec = ctx.cfg.feature_map_spec();
  const EncoderNetwork nqe = loaded ? *loaded : train_nqe(ctx, spec);
  switch (ctx.cfg.condition) {
    case Condition::QPre1_FineTuneRBF:
      head_on_frozen(ctx, rbf_finetune(ctx, nqe));
      break;
    case Condition::QPre2_Frozen:
      head_on_frozen(ctx, nqe);
      break;
    default: {
      const JointResult res = joint_train(nqe, LogisticHead::zeros(nqe.output_dim()),
                                          ctx.data.train, ctx.data.val, ctx.classifier_config());
      ctx.result.diagnostics["clf_best_epoch"] = res.best_epoch;
      ctx.result.diagnostics["clf_epochs_run"] = res.epochs_run;
      ctx.write_history(res.history, "joint");
      ctx.write_encoder(res.encoder, "joint_encoder");
      ctx.score(res.head.predict_rows(res.encoder.forward_rows(ctx.data.test.x)));
    }
  }
}

void check_both_classes(const LabeledData& d, const std::string& which) {
  if (d.count(1) == 0 || d.count(-1) == 0) {
    throw DataError("the " + which + " split lacks one class (" + std::to_string(d.count(1)) +
                    " activators, " + std::to_string(d.count(-1)) + " inactivators)");
  }
}

}  // namespace

std::vector<Sample> select_samples(const std::vector<Sample>& all, const ExperimentConfig& cfg) {
  std::vector<int> act, inact;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!cfg.target.empty() && all[i].target_name != cfg.target) continue;
    (all[i].label > 0 ? act : inact).push_back(static_cast<int>(i));
  }
  if (act.empty() && inact.empty()) {
    throw DataError("no rows match target '" + cfg.target + "'");
  }
  std::mt19937_64 rng(cfg.split_seed);
  if (cfg.max_activators > 0) {
    act = sorted_take(act, static_cast<std::size_t>(cfg.max_activators), rng);
    if (cfg.class_ratio == ClassRatio::AsIs) {
      // Keep the total within the 1:6 budget of the capped activators.
      const std::size_t budget = 7 * static_cast<std::size_t>(cfg.max_activators);
      if (act.size() + inact.size() > budget) {
        inact = sorted_take(inact, budget - act.size(), rng);
      }
    }
  }
  std::vector<int> keep = act;
  keep.insert(keep.end(), inact.begin(), inact.end());
  std::sort(keep.begin(), keep.end());
  std::vector<Sample> out;
  out.reserve(keep.size());
  for (int i : keep) out.push_back(all[i]);
  if (!cfg.ratio_after_split) out = sample_ratio(out, cfg.class_ratio, cfg.split_seed + 1);
  return out;
}

PreparedData prepare_data(const std::vector<Sample>& all, const ExperimentConfig& cfg) {
  PreparedData out;
  out.selected = select_samples(all, cfg);
  const LabeledData full = to_labeled(out.selected);
  out.split = stratified_split(full.y, cfg.split, cfg.split_seed);
  if (cfg.ratio_after_split) {
    out.split.train = ratio_indices(out.selected, out.split.train, cfg.class_ratio, cfg.split_seed + 2);
    out.split.val = ratio_indices(out.selected, out.split.val, cfg.class_ratio, cfg.split_seed + 3);
    out.split.test = ratio_indices(out.selected, out.split.test, cfg.class_ratio, cfg.split_seed + 4);
  }
  LabeledData train = full.subset(out.split.train);
  LabeledData val = full.subset(out.split.val);
  LabeledData test = full.subset(out.split.test);
  check_both_classes(train, "training");
  check_both_classes(val, "validation");
  check_both_classes(test, "test");
  out.scaler = Standardizer::fit(train.x);
  train.x = out.scaler.transform(train.x);
  val.x = out.scaler.transform(val.x);
  test.x = out.scaler.transform(test.x);
  out.train = std::move(train);
  out.val = std::move(val);
  out.test = std::move(test);
  return out;
}

AngleTransform AngleTransform::fit(const Eigen::MatrixXd& fit_rows, int n_qubits) {
  PCA pca = PCA::fit(fit_rows, n_qubits);
  Standardizer scale = Standardizer::fit(pca.transform(fit_rows));
  return {std::move(pca), std::move(scale)};
}

Eigen::MatrixXd AngleTransform::angles(const Eigen::MatrixXd& x) const {
  return scale.transform(pca.transform(x));
}

Eigen::MatrixXd map_inputs(const Eigen::MatrixXd& angles, FeatureMapKind kind) {
  if (kind == FeatureMapKind::ZZ) return angles;
  const Eigen::Index n = angles.cols();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(angles.rows(), 2 * n);
  out.leftCols(n) = angles;
  for (Eigen::Index r = 0; r < angles.rows(); ++r) {
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      out(r, n + k) =
          0.5 * (std::numbers::pi - angles(r, k)) * (std::numbers::pi - angles(r, k + 1));
    }
  }
  return out;
}

std::vector<std::string> protocol_notes(const ExperimentConfig& cfg) {
  std::vector<std::string> notes;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "split: stratified train/validation/test %g/%g/%g drawn once with split_seed %llu;"
                " repetition seeds vary initialization only",
                cfg.split.train, cfg.split.val, cfg.split.test,
                static_cast<unsigned long long>(cfg.split_seed));
  notes.emplace_back(buf);
  notes.push_back("class ratio " + to_string(cfg.class_ratio) +
                  (cfg.ratio_after_split ? " applied within each split"
                                         : " applied before splitting"));
  notes.push_back(cfg.max_activators > 0
                      ? "desk-scale cap: at most " + std::to_string(cfg.max_activators) +
                            " activators per target"
                      : "no activator cap");
  notes.push_back("standardization, PCA and kernel bandwidths are fitted on training rows only");
  if (is_svm(cfg.condition)) {
    notes.push_back("SVM fitted on training plus validation rows and scored on test rows");
  } else {
    notes.push_back("validation rows drive early stopping; scores are on test rows");
  }
  return notes;
}

std::string row_label(const ExperimentConfig& cfg) {
  std::string label = to_string(cfg.condition);
  if (is_quantum_svm(cfg.condition)) return label + " q" + std::to_string(cfg.resolved_qubits());
  if (is_svm(cfg.condition)) {
    return label + (cfg.pca_dims > 0 ? " pca" + std::to_string(cfg.pca_dims) : " nopca");
  }
  if (is_pretrained_variant(cfg.condition)) label += " " + to_string(cfg.feature_map);
  return label;
}

RunReport run_condition(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  if (config.dataset.empty()) throw ConfigError("config key 'dataset': required");
  return run_condition(config, load_features(config.dataset), options);
}

RunReport run_condition(const ExperimentConfig& cfg, const std::vector<Sample>& samples,
                        const RunOptions& options) {
  cfg.validate();
  const PreparedData data = prepare_data(samples, cfg);

  std::optional<EncoderNetwork> loaded;
  if (is_pretrained_variant(cfg.condition) && !cfg.nqe_encoder.empty()) {
    loaded = EncoderNetwork::load(cfg.nqe_encoder);
    const int want = cfg.feature_map_spec().input_dim();
    if (loaded->input_dim() != kDescriptorCount || loaded->output_dim() != want) {
      throw ConfigError("encoder " + cfg.nqe_encoder + " maps " +
                        std::to_string(loaded->input_dim()) + " -> " +
                        std::to_string(loaded->output_dim()) + ", expected 39 -> " +
                        std::to_string(want));
    }
  }

  std::filesystem::path artifact_dir;
  if (cfg.write_artifacts && !cfg.output_dir.empty()) {
    artifact_dir = cfg.output_dir;
    std::filesystem::create_directories(artifact_dir);
  }

  const std::size_t n = cfg.seeds.size();
  std::vector<SeedResult> results(n);
  std::vector<std::vector<std::string>> logs(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t k = 0; k < n; ++k) {
    SeedContext ctx{cfg, data, cfg.seeds[k], artifact_dir, file_stem(cfg), {}, {}};
    ctx.result.seed = cfg.seeds[k];
    try {
      if (is_svm(cfg.condition)) run_svm(ctx);
      else if (uses_qcnn(cfg.condition)) run_qcnn(ctx);
      else if (cfg.condition == Condition::RBF_SingleLayer) run_rbf_single_layer(ctx);
      else run_pretrained(ctx, loaded);
    } catch (const std::exception& e) {
      ctx.result.ok = false;
      ctx.result.error = e.what();
      ctx.note(std::string("failed: ") + e.what());
    }
    results[k] = std::move(ctx.result);
    logs[k] = std::move(ctx.log);
  }
  if (options.log) {
    options.log(row_label(cfg) + ": " + std::to_string(data.selected.size()) + " samples, split " +
                std::to_string(data.train.size()) + "/" + std::to_string(data.val.size()) + "/" +
                std::to_string(data.test.size()));
    for (const auto& lines : logs) {
      for (const std::string& line : lines) options.log(line);
    }
  }

  RunReport report;
  report.library_version = QEMBED_VERSION;
  report.label = row_label(cfg);
  report.condition = to_string(cfg.condition);
  const bool classical_svm = is_svm(cfg.condition) && !is_quantum_svm(cfg.condition);
  report.n_qubits = classical_svm ? 0 : cfg.resolved_qubits();
  report.pca_dims = is_quantum_svm(cfg.condition) ? cfg.resolved_qubits() : cfg.pca_dims;
  report.fingerprint = cfg.fingerprint();
  for (auto& kv : cfg.entries()) {
    if (kv.first != "output_dir") report.config.push_back(kv);
  }
  report.protocol = protocol_notes(cfg);
  report.seeds = std::move(results);
  return report;
}

GramMatrix svm_training_gram(const ExperimentConfig& cfg, const PreparedData& data,
                             std::map<std::string, double>* diagnostics) {
  if (!is_svm(cfg.condition)) throw ConfigError("condition " + to_string(cfg.condition) +
                                                " does not use a fixed kernel");
  std::map<std::string, double> diag;
  SvmKernels k = svm_kernels(cfg, concat(data.train, data.val), data.test, diag);
  if (diagnostics) *diagnostics = diag;
  return std::move(k.gram);
}

std::vector<ExperimentConfig> covid_battery_configs(const ExperimentConfig& base) {
  std::vector<ExperimentConfig> rows;
  for (Condition c : {Condition::SVM_ZZ, Condition::SVM_PQK_ZZ, Condition::SVM_XYZ,
                      Condition::SVM_PQK_XYZ}) {
    for (int q : {4, 8}) {
      ExperimentConfig r = base;
      r.condition = c;
      r.n_qubits = q;
      r.pca_dims = 0;
      r.nqe_encoder.clear();
      rows.push_back(r);
    }
  }
  for (int pca : {4, 0}) {
    for (Condition c : {Condition::SVM_Linear, Condition::SVM_RBF}) {
      ExperimentConfig r = base;
      r.condition = c;
      r.n_qubits = 0;
      r.pca_dims = pca;
      r.nqe_encoder.clear();
      rows.push_back(r);
    }
  }
  return rows;
}

std::vector<ExperimentConfig> litpcba_battery_configs(const ExperimentConfig& base) {
  std::vector<ExperimentConfig> rows;
  auto add = [&](Condition c, FeatureMapKind map) {
    ExperimentConfig r = base;
    r.condition = c;
    r.feature_map = map;
    r.pca_dims = 0;
    r.nqe_encoder.clear();
    rows.push_back(r);
  };
  add(Condition::NQE_ZZ_QCNN, FeatureMapKind::ZZ);
  add(Condition::NQE_XYZ_QCNN, FeatureMapKind::XYZ);
  add(Condition::RBF_SingleLayer, FeatureMapKind::ZZ);
  for (FeatureMapKind map : {FeatureMapKind::ZZ, FeatureMapKind::XYZ}) {
    add(Condition::QPre1_FineTuneRBF, map);
    add(Condition::QPre2_Frozen, map);
    add(Condition::QPre3_Joint, map);
  }
  return rows;
}

BatteryReport run_battery(const std::string& name, const std::vector<ExperimentConfig>& rows,
                          const RunOptions& options) {
  if (rows.empty()) throw ConfigError("battery has no rows");
  for (const ExperimentConfig& r : rows) r.validate();
  const std::vector<Sample> samples = load_features(rows.front().dataset);
  BatteryReport out;
  out.name = name;
  for (const ExperimentConfig& r : rows) {
    if (r.dataset != rows.front().dataset) throw ConfigError("battery rows must share a dataset");
    out.rows.push_back(run_condition(r, samples, options));
  }
  return out;
}

int exit_code(const std::string& status) { return status == "complete" ? 0 : 1; }

}  // namespace qembed
