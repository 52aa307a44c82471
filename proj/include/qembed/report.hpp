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

// Run reports: per-seed metrics, aggregates, and their JSON and text forms.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qembed/metrics.hpp"

namespace qembed {

struct TraceDistances {
  double train_before = 0.0;
  double train_after = 0.0;
  double test_before = 0.0;
  double test_after = 0.0;
  bool operator==(const TraceDistances&) const = default;
};

struct SeedResult {
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;  // set when !ok
  Metrics metrics;
  std::optional<TraceDistances> trace;
  std::vector<std::string> artifacts;  // file names relative to the output directory
  std::map<std::string, double> diagnostics;
  bool operator==(const SeedResult&) const;
};

struct RunSummary {
  MeanStd accuracy;
  MeanStd balanced_accuracy;
  int seeds_ok = 0;
  bool near_chance = false;
};

struct RunReport {
  std::string library_version;
  std::string label;  // row name, e.g. "SVM_PQK_ZZ q4"
  std::string condition;
  int n_qubits = 0;
  int pca_dims = 0;
  std::string fingerprint;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> protocol;
  std::vector<SeedResult> seeds;

  /// "complete", "partial" (some seeds failed) or "failed" (none succeeded).
  std::string status() const;
  /// Aggregates over successful seeds, in seed order.
  std::optional<RunSummary> summary() const;

  std::string to_json() const;
  static RunReport from_json(const std::string& text);
  std::string to_text() const;
  bool operator==(const RunReport&) const;
};

struct BatteryReport {
  std::string name;
  std::vector<RunReport> rows;

  std::string status() const;
  std::string to_json() const;
  static BatteryReport from_json(const std::string& text);
  std::string to_text() const;
};

/// Writes <stem>.json and <stem>.txt under `dir` atomically. Throws
/// std::invalid_argument for a report without seeds.
void emit_report(const RunReport& report, const std::filesystem::path& dir,
                 const std::string& stem);
void emit_report(const BatteryReport& report, const std::filesystem::path& dir,
                 const std::string& stem);

/// Reads either a run or a battery JSON record and renders its table.
std::string render_report_file(const std::filesystem::path& path);

}  // namespace qembed
