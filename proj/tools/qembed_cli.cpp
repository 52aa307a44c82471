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

// qembed command-line front end.
//
// Exit codes: 0 success, 1 partial run or numerical failure, 2 config
// error, 3 data or I/O error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qembed/config.hpp"
#include "qembed/dataset.hpp"
#include "qembed/encoder.hpp"
#include "qembed/errors.hpp"
#include "qembed/kernels.hpp"
#include "qembed/pipeline.hpp"
#include "qembed/report.hpp"
#include "qembed/training.hpp"

namespace {

using namespace qembed;

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

// Options shared by every subcommand that builds an ExperimentConfig.
struct ConfigFlags {
  std::string config_file;
  std::vector<std::string> sets;
  std::string dataset, condition, seeds, out, target, ratio;
  int n_qubits = -1;

  void attach(CLI::App* app) {
    app->add_option("-c,--config", config_file, "key=value config file");
    app->add_option("-s,--set", sets, "override one key (key=value); repeatable");
    app->add_option("--dataset", dataset, "feature CSV path");
    app->add_option("--condition", condition, "experiment condition");
    app->add_option("--seeds", seeds, "comma-separated repetition seeds");
    app->add_option("--target", target, "target filter");
    app->add_option("--ratio", ratio, "class ratio: 1:1, 1:6 or asis");
    app->add_option("--qubits", n_qubits, "qubit count");
    app->add_option("-o,--out", out, "output directory");
  }

  ExperimentConfig build() const {
    ExperimentConfig cfg = config_file.empty() ? ExperimentConfig{} : load_config(config_file);
    auto put = [&](const char* key, const std::string& v) {
      if (!v.empty()) cfg.set(key, v);
    };
    put("dataset", dataset);
    put("condition", condition);
    put("seeds", seeds);
    put("target", target);
    put("class_ratio", ratio);
    put("output_dir", out);
    if (n_qubits >= 0) cfg.set("n_qubits", std::to_string(n_qubits));
    for (const std::string& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (cfg.output_dir.empty()) cfg.output_dir = ".";
    if (cfg.dataset.empty()) throw ConfigError("config key 'dataset': required");
    return cfg;
  }
};

void log_line(const std::string& line) { std::cerr << line << "\n"; }

std::string stem_of(const std::string& label) {
  std::string s = label;
  for (char& c : s) {
    if (c == ' ') c = '_';
  }
  return s;
}

int cmd_extract_check(const std::string& path) {
  const std::vector<Sample> samples = load_features(path);
  std::map<std::string, std::pair<int, int>> per_target;
  for (const Sample& s : samples) {
    auto& c = per_target[s.target_name.empty() ? "(none)" : s.target_name];
    (s.label > 0 ? c.first : c.second)++;
  }
  std::printf("%s: %zu rows, %d descriptors\n", path.c_str(), samples.size(), kDescriptorCount);
  for (const auto& [target, c] : per_target) {
    std::printf("  %-20s %6d activators %8d inactivators\n", target.c_str(), c.first, c.second);
  }
  return kExitOk;
}

int cmd_train_embed(const ConfigFlags& flags, const std::string& objective_name,
                    std::uint64_t seed) {
  ExperimentConfig cfg = flags.build();
  cfg.validate();
  const bool nqe = objective_name == "nqe";
  if (!nqe && objective_name != "rbf") {
    throw ConfigError("--objective must be nqe or rbf");
  }
  const PreparedData data = prepare_data(load_features(cfg.dataset), cfg);
  const FeatureMapSpec spec = cfg.feature_map_spec();
  std::vector<int> dims{kDescriptorCount};
  dims.insert(dims.end(), cfg.encoder_hidden.begin(), cfg.encoder_hidden.end());
  dims.push_back(nqe ? spec.input_dim() : cfg.resolved_qubits());
  const EncoderNetwork init =
      EncoderNetwork::xavier(dims, cfg.encoder_activation, seed, cfg.encoder_output_scale);
  TrainConfig tc = cfg.embed_train;
  tc.seed = seed;
  EmbeddingTrainOptions opt;
  opt.gradient = cfg.gradient;
  const TrainResult res =
      train_embedding(nqe ? EmbeddingObjective::NQE : EmbeddingObjective::RBFAlign, init,
                      nqe ? std::optional<FeatureMapSpec>(spec) : std::nullopt, data.train,
                      data.val, tc, opt);
  const std::filesystem::path dir = cfg.output_dir;
  std::filesystem::create_directories(dir);
  const std::string stem = std::string(nqe ? "nqe_" : "rbf_") + to_string(spec.kind) + "_seed" +
                           std::to_string(seed);
  res.encoder.save(dir / (stem + ".qee"));
  res.history.write_csv(dir / (stem + "_loss.csv"));
  std::printf("best epoch %d of %d, validation loss %.6f -> %.6f\n", res.best_epoch,
              res.epochs_run, res.history.rows.front().val_loss,
              res.history.rows[res.best_epoch].val_loss);
  if (nqe) {
    std::printf("trace distance (train) %.4f -> %.4f\n",
                ensemble_trace_distance(init, spec, data.train, seed, cfg.td_cap),
                ensemble_trace_distance(res.encoder, spec, data.train, seed, cfg.td_cap));
  }
  std::printf("wrote %s\n", (dir / (stem + ".qee")).string().c_str());
  return kExitOk;
}

int cmd_eval_kernel(const ConfigFlags& flags) {
  ExperimentConfig cfg = flags.build();
  cfg.validate();
  const PreparedData data = prepare_data(load_features(cfg.dataset), cfg);
  std::map<std::string, double> diag;
  const GramMatrix gram = svm_training_gram(cfg, data, &diag);
  const std::filesystem::path dir = cfg.output_dir;
  std::filesystem::create_directories(dir);
  const std::filesystem::path file = dir / (stem_of(row_label(cfg)) + "_gram.qeg");
  write_gram(file, gram);
  std::printf("%s: %lld x %lld %s Gram, min eigenvalue %.3e\n", row_label(cfg).c_str(),
              static_cast<long long>(gram.size()), static_cast<long long>(gram.size()),
              to_string(gram.kind()).c_str(), gram.min_eigenvalue());
  for (const auto& [k, v] : diag) std::printf("  %s = %.17g\n", k.c_str(), v);
  std::printf("wrote %s\n", file.string().c_str());
  return kExitOk;
}

int cmd_run(const ConfigFlags& flags) {
  const ExperimentConfig cfg = flags.build();
  const RunReport report = run_condition(cfg, RunOptions{log_line});
  const std::string stem = stem_of(report.label) + "_report";
  emit_report(report, cfg.output_dir, stem);
  std::cout << report.to_text();
  return exit_code(report.status()) == 0 ? kExitOk : kExitPartial;
}

int cmd_battery(const ConfigFlags& flags, const std::string& table) {
  const ExperimentConfig base = flags.build();
  std::vector<ExperimentConfig> rows;
  if (table == "covid") rows = covid_battery_configs(base);
  else if (table == "litpcba") rows = litpcba_battery_configs(base);
  else throw ConfigError("--table must be covid or litpcba");
  const BatteryReport report = run_battery(table, rows, RunOptions{log_line});
  emit_report(report, base.output_dir, table + "_battery");
  std::cout << report.to_text();
  return report.status() == "complete" ? kExitOk : kExitPartial;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qembed: quantum and classical embeddings for ligand-based virtual screening"};
  app.set_version_flag("--version", std::string(QEMBED_VERSION));
  app.require_subcommand(1);

  bool help_keys = false;
  app.add_flag("--help-keys", help_keys, "list config keys and exit");

  std::string csv;
  auto* extract = app.add_subcommand("extract-check", "validate a feature CSV");
  extract->add_option("csv", csv, "feature CSV")->required();

  ConfigFlags train_flags;
  std::string objective = "nqe";
  std::uint64_t train_seed = 0;
  auto* train = app.add_subcommand("train-embed", "train an NQE or RBF-alignment encoder");
  train_flags.attach(train);
  train->add_option("--objective", objective, "nqe or rbf");
  train->add_option("--seed", train_seed, "initialization seed");

  ConfigFlags kernel_flags;
  auto* kernel = app.add_subcommand("eval-kernel", "build and validate an SVM row's Gram matrix");
  kernel_flags.attach(kernel);

  ConfigFlags run_flags;
  auto* run = app.add_subcommand("run", "run one condition over its seeds");
  run_flags.attach(run);

  ConfigFlags battery_flags;
  std::string table = "covid";
  auto* battery = app.add_subcommand("battery", "run a table of conditions");
  battery_flags.attach(battery);
  battery->add_option("--table", table, "covid or litpcba");

  std::string report_path;
  auto* report = app.add_subcommand("report", "render a JSON report as a table");
  report->add_option("json", report_path, "report JSON")->required();

  // --help-keys works without a subcommand.
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--help-keys") {
      for (const auto& k : config_keys()) std::printf("%-22s %s\n", k.key.c_str(), k.description.c_str());
      return kExitOk;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*extract) return cmd_extract_check(csv);
    if (*train) return cmd_train_embed(train_flags, objective, train_seed);
    if (*kernel) return cmd_eval_kernel(kernel_flags);
    if (*run) return cmd_run(run_flags);
    if (*battery) return cmd_battery(battery_flags, table);
    if (*report) {
      std::cout << render_report_file(report_path);
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPartial;
  }
  return kExitOk;
}
