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


// Acceptance checks P1-P9. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.
//
// QEMBED_COVID_CSV, when set, points P7 at a real COVID-19 feature CSV;
// otherwise the checked-in synthetic fixture is used.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qembed/featuremap.hpp"
#include "qembed/io.hpp"
#include "qembed/kernels.hpp"
#include "qembed/metrics.hpp"
#include "qembed/pipeline.hpp"
#include "qembed/qcnn.hpp"
#include "qembed/single_layer.hpp"
#include "qembed/svm.hpp"
#include "qembed/training.hpp"
#include "../test_util.hpp"

namespace qembed {
namespace {

const std::filesystem::path kData = QEMBED_TEST_DATA;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// ------------------------------------------------------------------ P1

std::string gram_problem(const GramMatrix& g) {
  const Eigen::MatrixXd& m = g.entries();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) return fmt("asymmetry %.3g", asym);
  if (g.kind() != KernelKind::Linear) {
    const double diag = (m.diagonal().array() - 1.0).abs().maxCoeff();
    if (diag > 1e-10) return fmt("diagonal deviation %.3g", diag);
  }
  const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff();
  if (lmin < -1e-8) return fmt("min eigenvalue %.3g", lmin);
  return {};
}

Outcome p1_kernel_validity() {
  Outcome o;
  int checked = 0;
  double worst_eig = 1.0;
  struct Source {
    std::filesystem::path csv;
    std::string target;
    ClassRatio ratio;
  };
  const std::vector<Source> sources{{kData / "covid19_fixture.csv", "", ClassRatio::AsIs},
                                    {kData / "litpcba_fixture.csv", "GBA_SYNTH", ClassRatio::OneToOne},
                                    {kData / "litpcba_fixture.csv", "ESR1_SYNTH", ClassRatio::OneToSix}};
  for (const auto& src : sources) {
    ExperimentConfig base;
    base.dataset = src.csv.string();
    base.target = src.target;
    base.class_ratio = src.ratio;
    base.write_artifacts = false;
    const auto samples = load_features(src.csv);
    for (auto cfg : covid_battery_configs(base)) {
      const PreparedData data = prepare_data(samples, cfg);
      const GramMatrix g = svm_training_gram(cfg, data);
      ++checked;
      worst_eig = std::min(worst_eig, g.min_eigenvalue());
      const std::string problem = gram_problem(g);
      if (!problem.empty()) fail(o, row_label(cfg) + ": " + problem);
      const RunReport r = run_condition(cfg, samples);
      if (r.status() != "complete") fail(o, row_label(cfg) + " run " + r.status());
    }
  }
  if (o.pass) {
    o.detail = std::to_string(checked) + " training Gram matrices and their runs valid; min eigenvalue " +
               fmt("%.3g", worst_eig);
  }
  return o;
}

// ------------------------------------------------------------------ P2

Outcome p2_embedding_oracle() {
  Outcome o;
  std::mt19937_64 rng(2002);
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  double worst = 0.0;
  for (int layers : {1, 2, 3}) {
    for (int t = 0; t < 50; ++t) {
      std::vector<double> z(2), w(4);
      for (auto& v : z) v = u(rng);
      for (auto& v : w) v = u(rng);
      const auto a = embed_zz(z, FeatureMapSpec::zz(2, layers));
      const auto b = embed_xyz(w, FeatureMapSpec::xyz(2, layers));
      const auto ea = testing::oracle_zz(z, layers);
      const auto eb = testing::oracle_xyz(w, 2, layers);
      for (int i = 0; i < 4; ++i) {
        worst = std::max(worst, std::abs(a[i] - ea(i)));
        worst = std::max(worst, std::abs(b[i] - eb(i)));
      }
    }
  }
  if (worst > 1e-9) fail(o, fmt("max amplitude error %.3g", worst));
  else o.detail = "300 embeddings, max amplitude error " + fmt("%.3g", worst);
  return o;
}

// ------------------------------------------------------------------ P3

struct GradCheck {
  double worst = 0.0;
  int instances = 0;
  void compare(double analytic, double fd) { worst = std::max(worst, testing::rel_error(analytic, fd)); }
};

constexpr double kEps = 1e-5;

LabeledData gaussian_data(int n, int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  LabeledData d;
  d.x.resize(n, dim);
  for (int r = 0; r < n; ++r) {
    d.y.push_back(r % 2 ? 1 : -1);
    for (int c = 0; c < dim; ++c) d.x(r, c) = g(rng) + 0.3 * d.y.back();
  }
  return d;
}

void check_encoder_loss(GradCheck& gc, EncoderNetwork net, const Eigen::VectorXd& g,
                        const std::function<double(const EncoderNetwork&)>& loss) {
  const Eigen::VectorXd p = net.parameters();
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    Eigen::VectorXd pp = p, pm = p;
    pp(k) += kEps;
    pm(k) -= kEps;
    net.set_parameters(pp);
    const double fp = loss(net);
    net.set_parameters(pm);
    gc.compare(g(k), (fp - loss(net)) / (2 * kEps));
  }
  ++gc.instances;
}

Outcome p3_gradients() {
  Outcome o;
  std::map<std::string, GradCheck> checks;
  std::mt19937_64 rng(3003);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    // Encoder backward on the default architecture.
    {
      const auto net = EncoderNetwork::xavier({39, 64, 32, 4}, Activation::Tanh, 10 + t);
      Eigen::VectorXd x(39), up(4);
      for (auto& v : x) v = g(rng);
      for (auto& v : up) v = g(rng);
      check_encoder_loss(checks["encoder backward"], net, net.backward(x, up).flat(),
                         [&](const EncoderNetwork& e) { return up.dot(e.forward(x)); });
    }
    // NQE loss over a sampled pair batch, ZZ and XYZ maps.
    {
      const auto data = gaussian_data(8, 6, 100 + t);
      const auto map = t % 2 ? FeatureMapSpec::xyz(3, 2) : FeatureMapSpec::zz(4, 3);
      const auto net = EncoderNetwork::xavier({6, 5, map.input_dim()}, Activation::Tanh, 200 + t);
      const auto batch = PairBatch::sample(data.y, 8, rng);
      check_encoder_loss(checks["nqe_loss"], net,
                         nqe_loss_gradient(net, map, batch.pairs(), data).flat(),
                         [&](const EncoderNetwork& e) { return nqe_loss(e, map, batch.pairs(), data); });
    }
    // RBF alignment loss.
    {
      const auto data = gaussian_data(8, 6, 300 + t);
      const auto net = EncoderNetwork::xavier({6, 5, 4}, Activation::Tanh, 400 + t);
      check_encoder_loss(checks["rbf_align_loss"], net,
                         rbf_align_loss_and_gradient(net, data).grad.flat(),
                         [&](const EncoderNetwork& e) { return rbf_align_loss(e, data); });
    }
    // QCNN parameters.
    {
      const QCNN model = QCNN::random(500 + t);
      const auto psi = testing::random_state(8, rng);
      const auto grad = model.gradient(psi);
      std::vector<double> p(model.parameters().begin(), model.parameters().end());
      auto& gc = checks["qcnn params"];
      for (std::size_t k = 0; k < p.size(); ++k) {
        auto pp = p, pm = p;
        pp[k] += kEps;
        pm[k] -= kEps;
        gc.compare(grad.d_params[k], (QCNN(pp).forward(psi) - QCNN(pm).forward(psi)) / (2 * kEps));
      }
      ++gc.instances;
    }
    // Single-layer head.
    {
      const auto data = gaussian_data(9, 5, 600 + t);
      LogisticHead head = LogisticHead::zeros(5);
      Eigen::VectorXd p(6);
      for (auto& v : p) v = g(rng);
      head.set_parameters(p);
      const auto grad = bce_with_logits_gradient(head, data.x, data.y);
      auto& gc = checks["single layer"];
      for (Eigen::Index k = 0; k < p.size(); ++k) {
        Eigen::VectorXd pp = p, pm = p;
        pp(k) += kEps;
        pm(k) -= kEps;
        LogisticHead hp = head, hm = head;
        hp.set_parameters(pp);
        hm.set_parameters(pm);
        const double fd =
            (bce_with_logits(hp, data.x, data.y) - bce_with_logits(hm, data.x, data.y)) / (2 * kEps);
        gc.compare(k < 5 ? grad.d_weight(k) : grad.d_bias, fd);
      }
      ++gc.instances;
    }
  }
  std::string detail;
  for (const auto& [name, gc] : checks) {
    if (gc.worst > 1e-4 || gc.instances != 20) fail(o, name + fmt(" worst relative error %.3g", gc.worst));
    detail += (detail.empty() ? "" : ", ") + name + fmt(" %.1e", gc.worst);
  }
  if (o.pass) o.detail = "20 instances each; worst relative error: " + detail;
  return o;
}

// ------------------------------------------------------------------ P4

Outcome p4_pqk_dual() {
  Outcome o;
  std::mt19937_64 rng(4004);
  double worst = 0.0;
  for (int n : {4, 8}) {
    for (int t = 0; t < 100; ++t) {
      const auto a = testing::random_state(n, rng);
      const auto b = testing::random_state(n, rng);
      worst = std::max(worst, std::abs(pqk_exponent_frobenius(a, b) - pqk_exponent_pauli(a, b)));
    }
  }
  if (worst > 1e-10) fail(o, fmt("max exponent difference %.3g", worst));
  else o.detail = "200 state pairs, max exponent difference " + fmt("%.3g", worst);
  return o;
}

// ------------------------------------------------------------------ P5

Outcome p5_nqe_separability() {
  Outcome o;
  std::mt19937_64 rng(5005);
  std::normal_distribution<double> g;
  // Unit-covariance classes whose means are 3 apart in Euclidean distance.
  const double half_shift = 1.5 / std::sqrt(static_cast<double>(kDescriptorCount));
  std::vector<Sample> samples;
  for (int i = 0; i < 200; ++i) {
    Sample s;
    s.id = "g" + std::to_string(i);
    s.label = i % 2 ? 1 : -1;
    for (int f = 0; f < kDescriptorCount; ++f) s.features.push_back(g(rng) + half_shift * s.label);
    samples.push_back(std::move(s));
  }
  ExperimentConfig cfg;
  cfg.condition = Condition::NQE_ZZ_QCNN;
  cfg.n_qubits = 4;
  cfg.layers = 3;
  const PreparedData data = prepare_data(samples, cfg);
  const FeatureMapSpec spec = cfg.feature_map_spec();
  std::vector<int> dims{kDescriptorCount};
  dims.insert(dims.end(), cfg.encoder_hidden.begin(), cfg.encoder_hidden.end());
  dims.push_back(spec.input_dim());

  int good = 0;
  std::string detail;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto init = EncoderNetwork::xavier(dims, cfg.encoder_activation, seed,
                                             cfg.encoder_output_scale);
    TrainConfig tc = cfg.embed_train;
    tc.seed = seed;
    const double before = ensemble_trace_distance(init, spec, data.train, seed, cfg.td_cap);
    const auto trained = train_embedding(EmbeddingObjective::NQE, init, spec, data.train, data.val, tc);
    const double after = ensemble_trace_distance(trained.encoder, spec, data.train, seed, cfg.td_cap);
    const bool ok = after >= 10.0 * before && after >= 0.3;
    good += ok;
    detail += fmt(" %.4f->%.4f", before, after);
  }
  if (good < 4) fail(o, std::to_string(good) + "/5 seeds met the bar;" + detail);
  else o.detail = std::to_string(good) + "/5 seeds; train TD" + detail;
  return o;
}

// ------------------------------------------------------------------ P6

Outcome p6_svm() {
  Outcome o;
  double worst = 0.0;
  std::mt19937_64 rng(6006);
  std::normal_distribution<double> g;
  for (auto kind : {KernelKind::Linear, KernelKind::RBF, KernelKind::Fidelity, KernelKind::PQK}) {
    for (int t = 0; t < 5; ++t) {
      Eigen::MatrixXd x(10, 3);
      std::vector<int> y(10);
      for (int r = 0; r < 10; ++r) {
        y[r] = r % 2 ? 1 : -1;
        for (int c = 0; c < 3; ++c) x(r, c) = g(rng) + 0.4 * y[r];
      }
      const auto states = embed_rows(x, FeatureMapSpec::zz(3, 2));
      const GramMatrix gram = kind == KernelKind::Linear ? linear_gram(x)
                              : kind == KernelKind::RBF  ? rbf_gram(x, 0.4)
                              : kind == KernelKind::Fidelity ? fidelity_gram(states)
                                                             : pqk_gram(states, 0.7);
      SVMOptions opt;
      opt.C = t % 2 ? 1.0 : 10.0;
      const auto model = svm_fit(gram, y, opt);
      const auto oracle = testing::qp_oracle(gram.entries(), y, opt.C);
      worst = std::max(worst, std::abs(svm_dual_objective(gram.entries(), y, model.alpha()) -
                                       svm_dual_objective(gram.entries(), y, oracle)));
    }
  }
  if (worst > 1e-6) fail(o, fmt("dual objective gap %.3g", worst));

  Eigen::MatrixXd blobs(80, 2);
  std::vector<int> labels(80);
  std::normal_distribution<double> tight(0.0, 0.5);
  for (int i = 0; i < 80; ++i) {
    labels[i] = i < 40 ? 1 : -1;
    blobs(i, 0) = tight(rng) + 3.0 * labels[i];
    blobs(i, 1) = tight(rng) - 2.0 * labels[i];
  }
  const auto gram = rbf_gram(blobs, 0.5);
  const double acc = accuracy(labels, svm_fit(gram, labels).predict_rows(gram.entries()));
  if (acc != 1.0) fail(o, fmt("blob training accuracy %.4f", acc));
  if (o.pass) o.detail = "20 QP instances, max dual gap " + fmt("%.3g", worst) + "; blob training accuracy 1.0";
  return o;
}

// ------------------------------------------------------------------ P7

Outcome p7_covid_battery() {
  Outcome o;
  const char* env = std::getenv("QEMBED_COVID_CSV");
  const std::filesystem::path csv = env && *env ? std::filesystem::path(env) : kData / "covid19_fixture.csv";
  ExperimentConfig base;
  base.dataset = csv.string();
  base.write_artifacts = false;
  double pqk = -1.0, rbf = -1.0;
  for (const auto& cfg : covid_battery_configs(base)) {
    const std::string label = row_label(cfg);
    if (label != "SVM_PQK_ZZ q4" && label != "SVM_RBF nopca") continue;
    const auto summary = run_condition(cfg).summary();
    if (!summary) {
      fail(o, label + " produced no successful seed");
      return o;
    }
    (label == "SVM_RBF nopca" ? rbf : pqk) = summary->balanced_accuracy.mean;
  }
  const bool a = pqk > rbf;
  const bool b = std::abs(pqk - 0.83) <= 0.10;
  const std::string data_note = env && *env ? csv.filename().string() : "synthetic fixture";
  const std::string numbers = fmt("PQK-ZZ q4 %.4f vs RBF nopca %.4f", pqk, rbf) + " on " + data_note +
                              "; (b) within 0.10 of 0.83: " + (b ? "yes" : "no") + " (non-binding)";
  if (!a) fail(o, "(a) not met: " + numbers);
  else o.detail = numbers;
  return o;
}

// ------------------------------------------------------------------ P8

Outcome p8_determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "qembed_acceptance_p8";
  std::filesystem::remove_all(dir);
  std::vector<ExperimentConfig> configs;
  ExperimentConfig covid;
  covid.dataset = (kData / "covid19_fixture.csv").string();
  for (auto c : {Condition::SVM_PQK_ZZ, Condition::SVM_XYZ, Condition::SVM_RBF}) {
    covid.condition = c;
    configs.push_back(covid);
  }
  ExperimentConfig lit;
  lit.dataset = (kData / "litpcba_fixture.csv").string();
  lit.target = "GBA_SYNTH";
  lit.class_ratio = ClassRatio::OneToOne;
  lit.seeds = {0, 1};
  lit.embed_train.max_epochs = 4;
  lit.classifier_train.max_epochs = 3;
  for (auto c : {Condition::NQE_ZZ_QCNN, Condition::RBF_SingleLayer, Condition::QPre1_FineTuneRBF,
                 Condition::QPre3_Joint}) {
    lit.condition = c;
    configs.push_back(lit);
  }
  int compared = 0;
  for (auto cfg : configs) {
    std::string first;
    for (const char* run : {"a", "b"}) {
      cfg.output_dir = (dir / run).string();
      const RunReport r = run_condition(cfg);
      emit_report(r, cfg.output_dir, "report");
      const std::string bytes = io::read_file(dir / run / "report.json");
      if (first.empty()) first = bytes;
      else if (bytes != first) fail(o, row_label(cfg) + " reports differ between identical runs");
    }
    ++compared;
  }
  std::filesystem::remove_all(dir);
  if (o.pass) o.detail = std::to_string(compared) + " conditions, JSON reports byte-identical across repeated runs";
  return o;
}

// ------------------------------------------------------------------ P9

Outcome p9_metrics() {
  Outcome o;
  std::vector<int> truth(123, -1);
  std::fill(truth.begin(), truth.begin() + 34, 1);
  const double bal = balanced_accuracy(truth, std::vector<int>(123, -1));
  if (bal != 0.5) fail(o, fmt("all-negative balanced accuracy %.17g", bal));

  ExperimentConfig cfg;
  cfg.dataset = (kData / "litpcba_fixture.csv").string();
  cfg.target = "ESR1_SYNTH";
  cfg.condition = Condition::RBF_SingleLayer;
  cfg.class_ratio = ClassRatio::OneToSix;
  cfg.write_artifacts = false;
  cfg.embed_train.max_epochs = 5;
  cfg.classifier_train.max_epochs = 10;
  const RunReport report = RunReport::from_json(run_condition(cfg).to_json());
  const auto summary = report.summary();
  if (!summary || summary->seeds_ok != 5) {
    fail(o, "five-seed report incomplete");
    return o;
  }
  for (int which = 0; which < 2; ++which) {
    double sum = 0.0;
    std::vector<double> values;
    for (const auto& s : report.seeds) {
      values.push_back(which ? s.metrics.balanced_accuracy : s.metrics.accuracy);
      sum += values.back();
    }
    const double mean = sum / static_cast<double>(values.size());
    double sq = 0.0;
    for (double v : values) sq += (v - mean) * (v - mean);
    const double sd = std::sqrt(sq / static_cast<double>(values.size()));
    const MeanStd& got = which ? summary->balanced_accuracy : summary->accuracy;
    if (got.mean != mean || got.std != sd) fail(o, "aggregate does not recompute from per-seed values");
  }
  if (o.pass) {
    o.detail = "all-negative on 34/89 gives 0.5 exactly; 5-seed mean " +
               fmt("%.4f ± %.4f", summary->balanced_accuracy.mean, summary->balanced_accuracy.std) +
               " recomputes exactly";
  }
  return o;
}

}  // namespace
}  // namespace qembed

int main() {
  using namespace qembed;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"P1", p1_kernel_validity}, {"P2", p2_embedding_oracle}, {"P3", p3_gradients},
      {"P4", p4_pqk_dual},        {"P5", p5_nqe_separability}, {"P6", p6_svm},
      {"P7", p7_covid_battery},   {"P8", p8_determinism},      {"P9", p9_metrics}};
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = check();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s  %s  [%.1fs]\n", name, out.pass ? "PASS" : "FAIL", out.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !out.pass;
  }
  return failures == 0 ? 0 : 1;
}
