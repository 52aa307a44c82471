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


#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "qembed/errors.hpp"
#include "qembed/pipeline.hpp"
#include "qembed/single_layer.hpp"

namespace qembed {
namespace {

const std::filesystem::path kData = QEMBED_TEST_DATA;

std::string header() {
  std::string h = "id,label";
  for (auto name : descriptor_names()) h += "," + std::string(name);
  return h;
}

std::string row(const std::string& id, const std::string& label, int n_features, double v = 1.0) {
  std::string r = id + "," + label;
  for (int i = 0; i < n_features; ++i) r += "," + std::to_string(v + i);
  return r;
}

std::vector<Sample> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_features(in, "<test>");
}

// Two Gaussian classes in 39 dimensions, shifted apart on every feature.
std::vector<Sample> synthetic_samples(int actives, int inactives, double shift, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Sample> out;
  for (int i = 0; i < actives + inactives; ++i) {
    Sample s;
    s.id = "s" + std::to_string(i);
    s.label = i < actives ? 1 : -1;
    for (int f = 0; f < kDescriptorCount; ++f) s.features.push_back(g(rng) + shift * s.label);
    out.push_back(std::move(s));
  }
  return out;
}

TEST(LoadFeatures, ThreeRowFile) {
  const auto samples = load_features(kData / "tiny.csv");
  ASSERT_EQ(samples.size(), 3U);
  for (const auto& s : samples) EXPECT_EQ(s.features.size(), 39U);
}

TEST(LoadFeatures, LabelMapping) {
  const auto samples = parse(header() + "\n" + row("a", "1", 39) + "\n" + row("b", "0", 39) +
                             "\n" + row("c", "-1", 39) + "\n" + row("d", "+1", 39) + "\n");
  ASSERT_EQ(samples.size(), 4U);
  EXPECT_EQ(samples[0].label, 1);
  EXPECT_EQ(samples[1].label, -1);
  EXPECT_EQ(samples[2].label, -1);
  EXPECT_EQ(samples[3].label, 1);
}

TEST(LoadFeatures, ShortRowRejectedWithLineNumber) {
  try {
    parse(header() + "\n" + row("a", "1", 39) + "\n" + row("b", "0", 38) + "\n");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(LoadFeatures, RejectsMalformedCells) {
  std::string bad_number = row("a", "1", 39);
  bad_number.replace(bad_number.find(",1.000000"), 9, ",abc");
  EXPECT_THROW(parse(header() + "\n" + bad_number + "\n"), DataError);
  std::string missing = row("a", "1", 39);
  missing.replace(missing.find(",2.000000"), 9, ",");
  EXPECT_THROW(parse(header() + "\n" + missing + "\n"), DataError);
  EXPECT_THROW(parse(header() + "\n" + row("a", "yes", 39) + "\n"), DataError);
  EXPECT_THROW(parse("id,label,Num_C\n"), DataError);
  EXPECT_THROW(load_features(kData / "does_not_exist.csv"), DataError);
}

TEST(LoadFeatures, TargetColumn) {
  const auto samples = load_features(kData / "litpcba_fixture.csv");
  std::set<std::string> targets;
  for (const auto& s : samples) targets.insert(s.target_name);
  EXPECT_EQ(targets, (std::set<std::string>{"ESR1_SYNTH", "GBA_SYNTH"}));
}

TEST(SampleRatio, Counts) {
  const auto samples = synthetic_samples(100, 700, 0.0, 1);
  auto count = [](const std::vector<Sample>& v, int label) {
    return std::count_if(v.begin(), v.end(), [&](const Sample& s) { return s.label == label; });
  };
  const auto one = sample_ratio(samples, ClassRatio::OneToOne, 7);
  EXPECT_EQ(count(one, 1), 100);
  EXPECT_EQ(count(one, -1), 100);
  const auto six = sample_ratio(samples, ClassRatio::OneToSix, 7);
  EXPECT_EQ(count(six, 1), 100);
  EXPECT_EQ(count(six, -1), 600);
  EXPECT_EQ(sample_ratio(samples, ClassRatio::AsIs, 7).size(), 800U);
}

TEST(SampleRatio, DeterministicDistinctAndOrdered) {
  const auto samples = synthetic_samples(50, 400, 0.0, 2);
  const auto a = sample_ratio(samples, ClassRatio::OneToSix, 11);
  const auto b = sample_ratio(samples, ClassRatio::OneToSix, 11);
  const auto c = sample_ratio(samples, ClassRatio::OneToSix, 12);
  std::vector<std::string> ida, idb, idc;
  for (const auto& s : a) ida.push_back(s.id);
  for (const auto& s : b) idb.push_back(s.id);
  for (const auto& s : c) idc.push_back(s.id);
  EXPECT_EQ(ida, idb);
  EXPECT_NE(ida, idc);
  EXPECT_EQ(std::set<std::string>(ida.begin(), ida.end()).size(), ida.size());
  std::vector<int> order;
  for (const auto& id : ida) order.push_back(std::stoi(id.substr(1)));
  EXPECT_TRUE(std::is_sorted(order.begin(), order.end()));
}

TEST(SampleRatio, InsufficientInactivators) {
  EXPECT_THROW(sample_ratio(synthetic_samples(10, 30, 0.0, 3), ClassRatio::OneToSix, 1), DataError);
}

TEST(StratifiedSplit, PartitionsAndStratifies) {
  std::vector<int> labels(200, -1);
  std::fill(labels.begin(), labels.begin() + 40, 1);
  const auto s = stratified_split(labels, {}, 5);
  std::vector<int> all = s.train;
  all.insert(all.end(), s.val.begin(), s.val.end());
  all.insert(all.end(), s.test.begin(), s.test.end());
  std::sort(all.begin(), all.end());
  std::vector<int> expect(200);
  std::iota(expect.begin(), expect.end(), 0);
  EXPECT_EQ(all, expect);
  auto actives = [&](const std::vector<int>& idx) {
    return std::count_if(idx.begin(), idx.end(), [&](int i) { return labels[i] > 0; });
  };
  EXPECT_EQ(actives(s.train), 28);
  EXPECT_EQ(actives(s.val), 6);
  EXPECT_EQ(actives(s.test), 6);
  EXPECT_EQ(s.test.size(), 30U);
  EXPECT_TRUE(std::is_sorted(s.train.begin(), s.train.end()));
  EXPECT_THROW(stratified_split(labels, {0.5, 0.5, 0.5}, 5), ConfigError);
}

TEST(Standardizer, FitsTrainStatistics) {
  Eigen::MatrixXd x(4, 2);
  x << 1, 5, 2, 5, 3, 5, 4, 5;
  const auto s = Standardizer::fit(x);
  EXPECT_DOUBLE_EQ(s.mean()(0), 2.5);
  EXPECT_DOUBLE_EQ(s.scale()(1), 1.0);
  const Eigen::MatrixXd z = s.transform(x);
  EXPECT_NEAR(z.col(0).mean(), 0.0, 1e-15);
  EXPECT_EQ(z.col(1), Eigen::VectorXd::Zero(4));
}

TEST(SplitHygiene, TestOutlierLeavesTrainingStatisticsUnchanged) {
  auto samples = load_features(kData / "covid19_fixture.csv");
  ExperimentConfig cfg;
  cfg.condition = Condition::SVM_PQK_ZZ;
  const PreparedData before = prepare_data(samples, cfg);
  const std::string victim = before.selected[before.split.test.front()].id;
  for (auto& s : samples)
    if (s.id == victim) std::fill(s.features.begin(), s.features.end(), 1e9);
  const PreparedData after = prepare_data(samples, cfg);
  ASSERT_EQ(after.split.test, before.split.test);
  EXPECT_EQ(after.scaler.mean(), before.scaler.mean());
  EXPECT_EQ(after.scaler.scale(), before.scaler.scale());
  EXPECT_EQ(after.train.x, before.train.x);
  EXPECT_GT(after.test.x.cwiseAbs().maxCoeff(), 1e6);

  std::map<std::string, double> d_before, d_after;
  const auto g_before = svm_training_gram(cfg, before, &d_before);
  const auto g_after = svm_training_gram(cfg, after, &d_after);
  EXPECT_EQ(g_before.entries(), g_after.entries());
  EXPECT_EQ(d_before.at("pqk_gamma"), d_after.at("pqk_gamma"));
}

TEST(MapInputs, XyzChainTerms) {
  Eigen::MatrixXd a(1, 3);
  a << 0.5, 1.0, 2.0;
  const auto zz = map_inputs(a, FeatureMapKind::ZZ);
  EXPECT_EQ(zz, a);
  const auto xyz = map_inputs(a, FeatureMapKind::XYZ);
  ASSERT_EQ(xyz.cols(), 6);
  const double pi = std::numbers::pi;
  EXPECT_DOUBLE_EQ(xyz(0, 3), 0.5 * (pi - 0.5) * (pi - 1.0));
  EXPECT_DOUBLE_EQ(xyz(0, 4), 0.5 * (pi - 1.0) * (pi - 2.0));
  EXPECT_EQ(xyz(0, 5), 0.0);
}

TEST(Config, RoundTripAndFingerprint) {
  ExperimentConfig cfg;
  cfg.set("condition", "NQE_XYZ_QCNN");
  cfg.set("seeds", "0,3,9");
  cfg.set("embed_lr", "0.005");
  cfg.set("class_ratio", "1:6");
  cfg.set("encoder_hidden", "16,8");
  const auto back = parse_config(cfg.canonical());
  EXPECT_EQ(back.canonical(), cfg.canonical());
  EXPECT_EQ(back.fingerprint(), cfg.fingerprint());
  EXPECT_EQ(back.seeds, (std::vector<std::uint64_t>{0, 3, 9}));
  EXPECT_EQ(cfg.fingerprint().size(), 16U);

  ExperimentConfig moved = cfg;
  moved.output_dir = "/elsewhere";
  EXPECT_EQ(moved.fingerprint(), cfg.fingerprint());
  moved.svm_c = 2.0;
  EXPECT_NE(moved.fingerprint(), cfg.fingerprint());
  EXPECT_EQ(cfg.resolved_qubits(), 8);
  EXPECT_EQ(cfg.resolved_layers(), 2);
  ExperimentConfig svm;
  EXPECT_EQ(svm.resolved_qubits(), 4);
}

TEST(Config, ErrorsNameTheKey) {
  ExperimentConfig cfg;
  try {
    cfg.set("svm_c", "minus one");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("svm_c"), std::string::npos);
  }
  EXPECT_THROW(cfg.set("no_such_key", "1"), ConfigError);
  try {
    parse_config("# comment\nseeds = 0,1\nbogus line\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
  }
  cfg.svm_c = -1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  for (const auto& key : config_keys()) EXPECT_FALSE(key.description.empty()) << key.key;
}

RunReport sample_report() {
  RunReport r;
  r.library_version = "0.3.0";
  r.label = "SVM_PQK_ZZ q4";
  r.condition = "SVM_PQK_ZZ";
  r.n_qubits = 4;
  r.pca_dims = 4;
  r.fingerprint = "0123456789abcdef";
  r.config = {{"condition", "SVM_PQK_ZZ"}, {"svm_c", "1"}};
  r.protocol = {"split: stratified"};
  for (std::uint64_t s = 0; s < 5; ++s) {
    SeedResult sr;
    sr.seed = s;
    sr.ok = true;
    sr.metrics = {0.7 + 0.01 * s, 0.6 + 0.1 / 3 * s, 0.5, 0.1 * s + 0.07};
    sr.diagnostics["pqk_gamma"] = 1.0 / 3.0;
    if (s == 2) sr.trace = TraceDistances{0.001, 0.5444, 1.0 / 7.0, 0.25};
    r.seeds.push_back(sr);
  }
  return r;
}

TEST(Report, JsonRoundTripIsExact) {
  const RunReport r = sample_report();
  const RunReport back = RunReport::from_json(r.to_json());
  EXPECT_TRUE(back == r);
  EXPECT_EQ(back.to_json(), r.to_json());
  EXPECT_EQ(r.status(), "complete");
}

TEST(Report, SummaryRecomputesFromSeeds) {
  const RunReport r = sample_report();
  const auto summary = r.summary();
  ASSERT_TRUE(summary);
  std::vector<double> bal;
  for (const auto& s : r.seeds) bal.push_back(s.metrics.balanced_accuracy);
  const auto ms = mean_std(bal);
  EXPECT_EQ(summary->balanced_accuracy.mean, ms.mean);
  EXPECT_EQ(summary->balanced_accuracy.std, ms.std);
  EXPECT_EQ(summary->seeds_ok, 5);
}

TEST(Report, PartialIsMarkedEverywhere) {
  RunReport r = sample_report();
  r.seeds[3].ok = false;
  r.seeds[3].error = "numerical failure";
  EXPECT_EQ(r.status(), "partial");
  EXPECT_NE(r.to_json().find("\"partial\""), std::string::npos);
  EXPECT_NE(r.to_text().find("partial"), std::string::npos);
  EXPECT_EQ(r.summary()->seeds_ok, 4);
  for (auto& s : r.seeds) s.ok = false;
  EXPECT_EQ(r.status(), "failed");
  EXPECT_EQ(exit_code("complete"), 0);
  EXPECT_EQ(exit_code("partial"), 1);
  EXPECT_EQ(exit_code("failed"), 1);
}

TEST(Report, EmitWritesBothFilesAndRefusesEmpty) {
  const auto dir = std::filesystem::temp_directory_path() / "qembed_report_test";
  std::filesystem::remove_all(dir);
  RunReport r = sample_report();
  emit_report(r, dir, "run");
  EXPECT_TRUE(std::filesystem::exists(dir / "run.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "run.txt"));
  EXPECT_EQ(render_report_file(dir / "run.json"), r.to_text());
  r.seeds.clear();
  EXPECT_ANY_THROW(emit_report(r, dir, "empty"));
  EXPECT_FALSE(std::filesystem::exists(dir / "empty.json"));
  std::filesystem::remove_all(dir);
}

TEST(Report, TextTableLayout) {
  const std::string text = sample_report().to_text();
  EXPECT_NE(text.find("0123456789abcdef"), std::string::npos);
  EXPECT_NE(text.find(" ± "), std::string::npos);
  EXPECT_NE(text.find("Balanced accuracy"), std::string::npos);
}

TEST(Battery, RowLists) {
  ExperimentConfig base;
  const auto covid = covid_battery_configs(base);
  EXPECT_EQ(covid.size(), 12U);
  std::set<std::string> labels;
  for (const auto& c : covid) labels.insert(row_label(c));
  EXPECT_EQ(labels.size(), 12U);
  EXPECT_TRUE(labels.count("SVM_PQK_ZZ q4"));
  EXPECT_TRUE(labels.count("SVM_RBF nopca"));
  EXPECT_EQ(litpcba_battery_configs(base).size(), 9U);
}

TEST(RunCondition, DeterministicReports) {
  ExperimentConfig cfg;
  cfg.dataset = (kData / "covid19_fixture.csv").string();
  cfg.seeds = {0, 1, 2};
  cfg.write_artifacts = false;
  for (auto c : {Condition::SVM_PQK_ZZ, Condition::SVM_XYZ, Condition::SVM_RBF}) {
    cfg.condition = c;
    EXPECT_EQ(run_condition(cfg).to_json(), run_condition(cfg).to_json()) << to_string(c);
  }
}

TEST(RunCondition, ProtocolNotesAppearInReport) {
  ExperimentConfig cfg;
  cfg.dataset = (kData / "covid19_fixture.csv").string();
  cfg.seeds = {0};
  cfg.write_artifacts = false;
  const auto r = run_condition(cfg);
  EXPECT_EQ(r.protocol, protocol_notes(cfg));
  EXPECT_FALSE(r.protocol.empty());
  EXPECT_EQ(r.status(), "complete");
}

TEST(RunCondition, RbfSingleLayerSeparatesSyntheticData) {
  const auto samples = synthetic_samples(60, 60, 1.0, 4);
  ExperimentConfig cfg;
  cfg.condition = Condition::RBF_SingleLayer;
  cfg.seeds = {0, 1, 2};
  cfg.write_artifacts = false;
  cfg.encoder_hidden = {16};
  cfg.embed_train.max_epochs = 30;
  cfg.classifier_train.max_epochs = 60;
  const auto r = run_condition(cfg, samples);
  ASSERT_EQ(r.status(), "complete");
  for (const auto& s : r.seeds) EXPECT_GE(s.metrics.balanced_accuracy, 0.95) << "seed " << s.seed;
}

TEST(RunCondition, FrozenEncoderReducesToHeadOnFixedFeatures) {
  const auto samples = synthetic_samples(40, 80, 0.4, 5);
  const auto dir = std::filesystem::temp_directory_path() / "qembed_qpre2";
  std::filesystem::create_directories(dir);
  const auto enc = EncoderNetwork::xavier({39, 64, 32, 8}, Activation::Tanh, 77);
  enc.save(dir / "random.qee");

  ExperimentConfig cfg;
  cfg.condition = Condition::QPre2_Frozen;
  cfg.nqe_encoder = (dir / "random.qee").string();
  cfg.seeds = {0, 1};
  cfg.write_artifacts = false;
  cfg.classifier_train.max_epochs = 20;
  const auto r = run_condition(cfg, samples);
  ASSERT_EQ(r.status(), "complete");
  EXPECT_EQ(r.to_json(), run_condition(cfg, samples).to_json());

  const PreparedData data = prepare_data(samples, cfg);
  for (const auto& s : r.seeds) {
    TrainConfig tc = cfg.classifier_train;
    tc.seed = s.seed ^ 0x5bd1e995ULL;
    const auto head = single_layer_train(LogisticHead::zeros(8), enc.forward_rows(data.train.x),
                                         data.train.y, enc.forward_rows(data.val.x), data.val.y, tc)
                          .head;
    const auto m = compute_metrics(data.test.y, head.predict_rows(enc.forward_rows(data.test.x)));
    EXPECT_EQ(m.balanced_accuracy, s.metrics.balanced_accuracy);
    EXPECT_EQ(m.accuracy, s.metrics.accuracy);
  }
  std::filesystem::remove_all(dir);
}

TEST(RunCondition, MismatchedEncoderIsAConfigError) {
  const auto dir = std::filesystem::temp_directory_path() / "qembed_badenc";
  std::filesystem::create_directories(dir);
  EncoderNetwork::xavier({39, 4}, Activation::Tanh, 1).save(dir / "e.qee");
  ExperimentConfig cfg;
  cfg.condition = Condition::QPre2_Frozen;
  cfg.nqe_encoder = (dir / "e.qee").string();
  EXPECT_THROW(run_condition(cfg, synthetic_samples(20, 40, 0.5, 6)), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST(RunCondition, SingleClassSplitIsADataError) {
  ExperimentConfig cfg;
  EXPECT_THROW(run_condition(cfg, synthetic_samples(2, 40, 0.5, 7)), DataError);
}

}  // namespace
}  // namespace qembed
