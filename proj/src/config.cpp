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

#include "qembed/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "qembed/errors.hpp"
#include "qembed/io.hpp"

namespace qembed {

namespace {

const std::vector<std::pair<Condition, std::string>>& condition_names() {
  static const std::vector<std::pair<Condition, std::string>> names = {
      {Condition::NQE_ZZ_QCNN, "NQE_ZZ_QCNN"},
      {Condition::NQE_XYZ_QCNN, "NQE_XYZ_QCNN"},
      {Condition::RBF_SingleLayer, "RBF_SingleLayer"},
      {Condition::QPre1_FineTuneRBF, "QPre1_FineTuneRBF"},
      {Condition::QPre2_Frozen, "QPre2_Frozen"},
      {Condition::QPre3_Joint, "QPre3_Joint"},
      {Condition::SVM_ZZ, "SVM_ZZ"},
      {Condition::SVM_PQK_ZZ, "SVM_PQK_ZZ"},
      {Condition::SVM_XYZ, "SVM_XYZ"},
      {Condition::SVM_PQK_XYZ, "SVM_PQK_XYZ"},
      {Condition::SVM_RBF, "SVM_RBF"},
      {Condition::SVM_Linear, "SVM_Linear"},
  };
  return names;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const std::string& why) {
  throw ConfigError("config key '" + key + "': cannot use '" + value + "' (" + why + ")");
}

long long to_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) bad(key, v, "expected an integer");
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) bad(key, v, "expected a non-negative integer");
  return out;
}

int to_int32(const std::string& key, const std::string& v) {
  const long long x = to_int(key, v);
  if (x < -2147483647LL || x > 2147483647LL) bad(key, v, "out of range");
  return static_cast<int>(x);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(out)) {
    bad(key, v, "expected a finite number");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad(key, v, "expected true or false");
}

std::string fmt(double v) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string fmt(bool v) { return v ? "true" : "false"; }

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::string variance_name(VarianceMode m) {
  return m == VarianceMode::Pooled ? "pooled" : "per_observable";
}

struct KeyHandler {
  std::string description;
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, const std::string&, const std::string&)> set;
};

void add_train_keys(std::map<std::string, KeyHandler>& m, const std::string& prefix,
                    TrainConfig ExperimentConfig::*member, const std::string& what) {
  m[prefix + "_lr"] = {"Adam learning rate for " + what,
                       [=](const ExperimentConfig& c) { return fmt((c.*member).learning_rate); },
                       [=](ExperimentConfig& c, const std::string& k, const std::string& v) {
                         (c.*member).learning_rate = to_double(k, v);
                       }};
  m[prefix + "_batch"] = {"minibatch size for " + what + " (pairs for NQE, samples otherwise)",
                          [=](const ExperimentConfig& c) {
                            return std::to_string((c.*member).batch_pairs);
                          },
                          [=](ExperimentConfig& c, const std::string& k, const std::string& v) {
                            (c.*member).batch_pairs = to_int32(k, v);
                          }};
  m[prefix + "_epochs"] = {"maximum epochs for " + what,
                           [=](const ExperimentConfig& c) {
                             return std::to_string((c.*member).max_epochs);
                           },
                           [=](ExperimentConfig& c, const std::string& k, const std::string& v) {
                             (c.*member).max_epochs = to_int32(k, v);
                           }};
  m[prefix + "_patience"] = {"early-stopping patience in epochs for " + what,
                             [=](const ExperimentConfig& c) {
                               return std::to_string((c.*member).patience);
                             },
                             [=](ExperimentConfig& c, const std::string& k, const std::string& v) {
                               (c.*member).patience = to_int32(k, v);
                             }};
  m[prefix + "_steps"] = {"optimizer steps per epoch for " + what,
                          [=](const ExperimentConfig& c) {
                            return std::to_string((c.*member).steps_per_epoch);
                          },
                          [=](ExperimentConfig& c, const std::string& k, const std::string& v) {
                            (c.*member).steps_per_epoch = to_int32(k, v);
                          }};
}

const std::map<std::string, KeyHandler>& handlers() {
  static const std::map<std::string, KeyHandler> table = [] {
    std::map<std::string, KeyHandler> m;
    using C = ExperimentConfig;
    using S = const std::string&;
    m["dataset"] = {"feature CSV path", [](const C& c) { return c.dataset; },
                    [](C& c, S, S v) { c.dataset = v; }};
    m["target"] = {"keep only rows whose target column equals this (empty keeps all)",
                   [](const C& c) { return c.target; }, [](C& c, S, S v) { c.target = v; }};
    m["condition"] = {"experiment condition", [](const C& c) { return to_string(c.condition); },
                      [](C& c, S k, S v) {
                        try {
                          c.condition = parse_condition(v);
                        } catch (const std::invalid_argument& e) {
                          bad(k, v, e.what());
                        }
                      }};
    m["class_ratio"] = {"activator:inactivator ratio: 1:1, 1:6 or asis",
                        [](const C& c) { return to_string(c.class_ratio); },
                        [](C& c, S k, S v) {
                          try {
                            c.class_ratio = parse_class_ratio(v);
                          } catch (const std::invalid_argument& e) {
                            bad(k, v, e.what());
                          }
                        }};
    m["ratio_after_split"] = {"apply the class ratio to each split instead of before splitting",
                              [](const C& c) { return fmt(c.ratio_after_split); },
                              [](C& c, S k, S v) { c.ratio_after_split = to_bool(k, v); }};
    m["n_qubits"] = {"qubit count (0: 8 for QCNN and encoder conditions, 4 for SVM rows)",
                     [](const C& c) { return std::to_string(c.n_qubits); },
                     [](C& c, S k, S v) { c.n_qubits = to_int32(k, v); }};
    m["layers"] = {"feature-map layers (0: 3 for ZZ, 2 for XYZ)",
                   [](const C& c) { return std::to_string(c.layers); },
                   [](C& c, S k, S v) { c.layers = to_int32(k, v); }};
    m["feature_map"] = {"feature map behind QPre* encoders: zz or xyz",
                        [](const C& c) { return to_string(c.feature_map); },
                        [](C& c, S k, S v) {
                          try {
                            c.feature_map = parse_feature_map_kind(v);
                          } catch (const std::invalid_argument& e) {
                            bad(k, v, e.what());
                          }
                        }};
    m["pca_dims"] = {"PCA width for classical SVM rows (0: no PCA)",
                     [](const C& c) { return std::to_string(c.pca_dims); },
                     [](C& c, S k, S v) { c.pca_dims = to_int32(k, v); }};
    m["seeds"] = {"comma-separated repetition seeds (initialization only)",
                  [](const C& c) { return join(c.seeds); },
                  [](C& c, S k, S v) {
                    c.seeds.clear();
                    if (trim(v).empty()) return;
                    for (const std::string& s : split_list(v)) c.seeds.push_back(to_u64(k, s));
                  }};
    m["split_seed"] = {"seed for ratio sampling, the activator cap and the split",
                       [](const C& c) { return std::to_string(c.split_seed); },
                       [](C& c, S k, S v) { c.split_seed = to_u64(k, v); }};
    m["train_fraction"] = {"training share of each class",
                           [](const C& c) { return fmt(c.split.train); },
                           [](C& c, S k, S v) { c.split.train = to_double(k, v); }};
    m["val_fraction"] = {"validation share of each class",
                         [](const C& c) { return fmt(c.split.val); },
                         [](C& c, S k, S v) { c.split.val = to_double(k, v); }};
    m["test_fraction"] = {"test share of each class", [](const C& c) { return fmt(c.split.test); },
                          [](C& c, S k, S v) { c.split.test = to_double(k, v); }};
    m["max_activators"] = {"cap on activators drawn per target (0: no cap)",
                           [](const C& c) { return std::to_string(c.max_activators); },
                           [](C& c, S k, S v) { c.max_activators = to_int32(k, v); }};
    m["svm_c"] = {"SVM box constraint", [](const C& c) { return fmt(c.svm_c); },
                  [](C& c, S k, S v) { c.svm_c = to_double(k, v); }};
    m["svm_tolerance"] = {"SVM KKT stopping tolerance",
                          [](const C& c) { return fmt(c.svm_tolerance); },
                          [](C& c, S k, S v) { c.svm_tolerance = to_double(k, v); }};
    m["pqk_variance"] = {"PQK bandwidth variance: pooled or per_observable",
                         [](const C& c) { return variance_name(c.pqk_variance); },
                         [](C& c, S k, S v) {
                           if (v == "pooled") c.pqk_variance = VarianceMode::Pooled;
                           else if (v == "per_observable") c.pqk_variance = VarianceMode::PerObservable;
                           else bad(k, v, "expected pooled or per_observable");
                         }};
    m["encoder_hidden"] = {"comma-separated hidden widths of the encoder",
                           [](const C& c) { return join(c.encoder_hidden); },
                           [](C& c, S k, S v) {
                             c.encoder_hidden.clear();
                             if (trim(v).empty()) return;
                             for (const std::string& s : split_list(v)) {
                               c.encoder_hidden.push_back(to_int32(k, s));
                             }
                           }};
    m["encoder_activation"] = {"encoder hidden activation: tanh or relu",
                               [](const C& c) { return to_string(c.encoder_activation); },
                               [](C& c, S k, S v) {
                                 try {
                                   c.encoder_activation = parse_activation(v);
                                 } catch (const std::invalid_argument& e) {
                                   bad(k, v, e.what());
                                 }
                               }};
    m["encoder_output_scale"] = {"multiplier on the encoder's initial output-layer weights",
                                 [](const C& c) { return fmt(c.encoder_output_scale); },
                                 [](C& c, S k, S v) { c.encoder_output_scale = to_double(k, v); }};
    add_train_keys(m, "embed", &C::embed_train, "embedding training");
    add_train_keys(m, "clf", &C::classifier_train, "classifier training");
    m["gradient"] = {"fidelity gradient: adjoint or finite_difference",
                     [](const C& c) {
                       return std::string(c.gradient == GradientMethod::Adjoint
                                              ? "adjoint"
                                              : "finite_difference");
                     },
                     [](C& c, S k, S v) {
                       if (v == "adjoint") c.gradient = GradientMethod::Adjoint;
                       else if (v == "finite_difference") c.gradient = GradientMethod::FiniteDifference;
                       else bad(k, v, "expected adjoint or finite_difference");
                     }};
    m["td_cap"] = {"samples per class used for ensemble trace distances",
                   [](const C& c) { return std::to_string(c.td_cap); },
                   [](C& c, S k, S v) { c.td_cap = to_int32(k, v); }};
    m["nqe_encoder"] = {"encoder weight file for QPre* (empty: train NQE in-run)",
                        [](const C& c) { return c.nqe_encoder; },
                        [](C& c, S, S v) { c.nqe_encoder = v; }};
    m["output_dir"] = {"directory for reports and artifacts",
                       [](const C& c) { return c.output_dir; },
                       [](C& c, S, S v) { c.output_dir = v; }};
    m["write_artifacts"] = {"write loss histories, encoders and Gram caches",
                            [](const C& c) { return fmt(c.write_artifacts); },
                            [](C& c, S k, S v) { c.write_artifacts = to_bool(k, v); }};
    return m;
  }();
  return table;
}

}  // namespace

std::string to_string(Condition c) {
  for (const auto& [k, name] : condition_names()) {
    if (k == c) return name;
  }
  return "unknown";
}

Condition parse_condition(const std::string& text) {
  for (const auto& [k, name] : condition_names()) {
    if (name == text) return k;
  }
  std::string known;
  for (const auto& [k, name] : condition_names()) known += (known.empty() ? "" : ", ") + name;
  throw std::invalid_argument("unknown condition '" + text + "'; expected one of " + known);
}

const std::vector<Condition>& all_conditions() {
  static const std::vector<Condition> all = [] {
    std::vector<Condition> v;
    for (const auto& [k, name] : condition_names()) v.push_back(k);
    return v;
  }();
  return all;
}

bool is_svm(Condition c) {
  switch (c) {
    case Condition::SVM_ZZ:
    case Condition::SVM_PQK_ZZ:
    case Condition::SVM_XYZ:
    case Condition::SVM_PQK_XYZ:
    case Condition::SVM_RBF:
    case Condition::SVM_Linear:
      return true;
    default:
      return false;
  }
}

bool is_quantum_svm(Condition c) {
  return is_svm(c) && c != Condition::SVM_RBF && c != Condition::SVM_Linear;
}

bool uses_qcnn(Condition c) {
  return c == Condition::NQE_ZZ_QCNN || c == Condition::NQE_XYZ_QCNN;
}

bool is_pretrained_variant(Condition c) {
  return c == Condition::QPre1_FineTuneRBF || c == Condition::QPre2_Frozen ||
         c == Condition::QPre3_Joint;
}

int ExperimentConfig::resolved_qubits() const {
  if (n_qubits > 0) return n_qubits;
  return is_svm(condition) ? 4 : 8;
}

FeatureMapSpec ExperimentConfig::feature_map_spec() const {
  FeatureMapKind kind = feature_map;
  switch (condition) {
    case Condition::NQE_ZZ_QCNN:
    case Condition::SVM_ZZ:
    case Condition::SVM_PQK_ZZ:
      kind = FeatureMapKind::ZZ;
      break;
    case Condition::NQE_XYZ_QCNN:
    case Condition::SVM_XYZ:
    case Condition::SVM_PQK_XYZ:
      kind = FeatureMapKind::XYZ;
      break;
    default:
      break;
  }
  FeatureMapSpec spec = kind == FeatureMapKind::ZZ ? FeatureMapSpec::zz(resolved_qubits())
                                                   : FeatureMapSpec::xyz(resolved_qubits());
  if (layers > 0) spec.layers = layers;
  return spec;
}

int ExperimentConfig::resolved_layers() const { return feature_map_spec().layers; }

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  const auto it = handlers().find(key);
  if (it == handlers().end()) throw ConfigError("unknown config key '" + key + "'");
  it->second.set(*this, key, trim(value));
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& key, const std::string& why) {
    throw ConfigError("config key '" + key + "': " + why);
  };
  if (seeds.empty()) fail("seeds", "at least one seed is required");
  {
    std::vector<std::uint64_t> s = seeds;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) fail("seeds", "duplicate seed");
  }
  if (n_qubits < 0 || n_qubits > 12) fail("n_qubits", "must be in [0, 12]");
  if (resolved_qubits() < 2) fail("n_qubits", "need at least 2 qubits");
  if (uses_qcnn(condition) && resolved_qubits() != 8) {
    fail("n_qubits", "QCNN conditions use exactly 8 qubits");
  }
  if (layers < 0) fail("layers", "must be >= 0");
  if (pca_dims < 0 || pca_dims > kDescriptorCount) fail("pca_dims", "must be in [0, 39]");
  if (is_quantum_svm(condition) && pca_dims != 0 && pca_dims != resolved_qubits()) {
    fail("pca_dims", "quantum SVM rows project to n_qubits dimensions");
  }
  if (!is_svm(condition) && pca_dims != 0) fail("pca_dims", "only SVM rows use PCA");
  for (double f : {split.train, split.val, split.test}) {
    if (!(f > 0.0 && f < 1.0)) fail("train_fraction", "split fractions must lie in (0, 1)");
  }
  if (std::abs(split.train + split.val + split.test - 1.0) > 1e-9) {
    fail("train_fraction", "split fractions must sum to 1");
  }
  if (max_activators < 0) fail("max_activators", "must be >= 0");
  if (!(svm_c > 0.0)) fail("svm_c", "must be positive");
  if (!(svm_tolerance > 0.0)) fail("svm_tolerance", "must be positive");
  for (int h : encoder_hidden) {
    if (h < 1) fail("encoder_hidden", "widths must be positive");
  }
  if (!(encoder_output_scale > 0.0)) fail("encoder_output_scale", "must be positive");
  try {
    embed_train.validate();
  } catch (const ConfigError& e) {
    fail("embed_*", e.what());
  }
  try {
    classifier_train.validate();
  } catch (const ConfigError& e) {
    fail("clf_*", e.what());
  }
  if (td_cap < 1) fail("td_cap", "must be positive");
  if (!nqe_encoder.empty() && !is_pretrained_variant(condition)) {
    fail("nqe_encoder", "only QPre* conditions take a pre-trained encoder");
  }
  feature_map_spec().validate();
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [key, h] : handlers()) out.emplace_back(key, h.get(*this));
  return out;
}

std::string ExperimentConfig::canonical() const {
  std::string out;
  for (const auto& [key, value] : entries()) {
    if (key == "output_dir") continue;
    out += key + "=" + value + "\n";
  }
  return out;
}

std::string ExperimentConfig::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const std::vector<ConfigKeyInfo>& config_keys() {
  static const std::vector<ConfigKeyInfo> keys = [] {
    std::vector<ConfigKeyInfo> v;
    for (const auto& [key, h] : handlers()) v.push_back({key, h.description});
    return v;
  }();
  return keys;
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected key = value");
    }
    try {
      cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text, path.string());
}

}  // namespace qembed
