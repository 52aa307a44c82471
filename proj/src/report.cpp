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

#include "qembed/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qembed/errors.hpp"
#include "qembed/io.hpp"

namespace qembed {

namespace {

using nlohmann::ordered_json;

constexpr const char* kRunFormat = "qembed-run-report";
constexpr const char* kBatteryFormat = "qembed-battery-report";
constexpr int kFormatVersion = 1;

ordered_json metrics_json(const Metrics& m) {
  return {{"accuracy", m.accuracy},
          {"balanced_accuracy", m.balanced_accuracy},
          {"sensitivity", m.sensitivity},
          {"specificity", m.specificity}};
}

Metrics metrics_from(const ordered_json& j) {
  return {j.at("accuracy").get<double>(), j.at("balanced_accuracy").get<double>(),
          j.at("sensitivity").get<double>(), j.at("specificity").get<double>()};
}

ordered_json seed_json(const SeedResult& s) {
  ordered_json j;
  j["seed"] = s.seed;
  j["ok"] = s.ok;
  if (!s.ok) {
    j["error"] = s.error;
  } else {
    j["metrics"] = metrics_json(s.metrics);
    j["near_chance"] = near_chance(s.metrics.balanced_accuracy);
  }
  if (s.trace) {
    j["trace_distance"] = {{"train_before", s.trace->train_before},
                           {"train_after", s.trace->train_after},
                           {"test_before", s.trace->test_before},
                           {"test_after", s.trace->test_after}};
  }
  j["artifacts"] = s.artifacts;
  ordered_json diag = ordered_json::object();
  for (const auto& [k, v] : s.diagnostics) diag[k] = v;
  j["diagnostics"] = diag;
  return j;
}

SeedResult seed_from(const ordered_json& j) {
  SeedResult s;
  s.seed = j.at("seed").get<std::uint64_t>();
  s.ok = j.at("ok").get<bool>();
  if (!s.ok) s.error = j.at("error").get<std::string>();
  else s.metrics = metrics_from(j.at("metrics"));
  if (j.contains("trace_distance")) {
    const auto& t = j.at("trace_distance");
    s.trace = TraceDistances{t.at("train_before").get<double>(), t.at("train_after").get<double>(),
                             t.at("test_before").get<double>(), t.at("test_after").get<double>()};
  }
  s.artifacts = j.at("artifacts").get<std::vector<std::string>>();
  for (const auto& [k, v] : j.at("diagnostics").items()) s.diagnostics[k] = v.get<double>();
  return s;
}

ordered_json mean_std_json(const MeanStd& m) { return {{"mean", m.mean}, {"std", m.std}}; }

ordered_json run_json(const RunReport& r) {
  ordered_json j;
  j["format"] = kRunFormat;
  j["format_version"] = kFormatVersion;
  j["library_version"] = r.library_version;
  j["label"] = r.label;
  j["condition"] = r.condition;
  j["n_qubits"] = r.n_qubits;
  j["pca_dims"] = r.pca_dims;
  j["status"] = r.status();
  j["config_fingerprint"] = r.fingerprint;
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : r.config) cfg[k] = v;
  j["config"] = cfg;
  j["protocol"] = r.protocol;
  ordered_json seeds = ordered_json::array();
  for (const SeedResult& s : r.seeds) seeds.push_back(seed_json(s));
  j["seeds"] = seeds;
  if (const auto sum = r.summary()) {
    j["summary"] = {{"seeds_ok", sum->seeds_ok},
                    {"accuracy", mean_std_json(sum->accuracy)},
                    {"balanced_accuracy", mean_std_json(sum->balanced_accuracy)},
                    {"near_chance", sum->near_chance}};
  } else {
    j["summary"] = nullptr;
  }
  return j;
}

RunReport run_from(const ordered_json& j) {
  if (j.at("format").get<std::string>() != kRunFormat) {
    throw DataError("not a run report");
  }
  RunReport r;
  r.library_version = j.at("library_version").get<std::string>();
  r.label = j.at("label").get<std::string>();
  r.condition = j.at("condition").get<std::string>();
  r.n_qubits = j.at("n_qubits").get<int>();
  r.pca_dims = j.at("pca_dims").get<int>();
  r.fingerprint = j.at("config_fingerprint").get<std::string>();
  for (const auto& [k, v] : j.at("config").items()) r.config.emplace_back(k, v.get<std::string>());
  r.protocol = j.at("protocol").get<std::vector<std::string>>();
  for (const auto& s : j.at("seeds")) r.seeds.push_back(seed_from(s));
  return r;
}

ordered_json parse(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    throw DataError(std::string("malformed report JSON: ") + e.what());
  }
}

std::string cell(const MeanStd& m) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f ± %.2f", m.mean, m.std);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  // Column widths count code points so the +- sign lines up.
  std::size_t cps = 0;
  for (unsigned char c : s) cps += (c & 0xC0) != 0x80;
  return cps >= width ? s + " " : s + std::string(width - cps, ' ');
}

std::string table_header() {
  return pad("Condition", 24) + pad("Qubits", 8) + pad("PCA", 6) + pad("Accuracy", 16) +
         pad("Balanced accuracy", 20) + "Note\n";
}

std::string table_row(const RunReport& r) {
  std::string row = pad(r.label, 24) + pad(r.n_qubits ? std::to_string(r.n_qubits) : "-", 8) +
                    pad(r.pca_dims ? std::to_string(r.pca_dims) : "-", 6);
  const auto sum = r.summary();
  if (!sum) return row + pad("-", 16) + pad("-", 20) + "failed\n";
  row += pad(cell(sum->accuracy), 16) + pad(cell(sum->balanced_accuracy), 20);
  std::string note;
  if (sum->near_chance) note = "near chance";
  if (r.status() == "partial") note += std::string(note.empty() ? "" : "; ") + "partial";
  return row + note + "\n";
}

}  // namespace

bool SeedResult::operator==(const SeedResult& o) const {
  return seed == o.seed && ok == o.ok && error == o.error &&
         metrics.accuracy == o.metrics.accuracy &&
         metrics.balanced_accuracy == o.metrics.balanced_accuracy &&
         metrics.sensitivity == o.metrics.sensitivity &&
         metrics.specificity == o.metrics.specificity && trace == o.trace &&
         artifacts == o.artifacts && diagnostics == o.diagnostics;
}

std::string RunReport::status() const {
  int ok = 0;
  for (const SeedResult& s : seeds) ok += s.ok;
  if (ok == static_cast<int>(seeds.size()) && ok > 0) return "complete";
  return ok == 0 ? "failed" : "partial";
}

std::optional<RunSummary> RunReport::summary() const {
  std::vector<double> acc, bal;
  for (const SeedResult& s : seeds) {
    if (!s.ok) continue;
    acc.push_back(s.metrics.accuracy);
    bal.push_back(s.metrics.balanced_accuracy);
  }
  if (acc.empty()) return std::nullopt;
  RunSummary out{mean_std(acc), mean_std(bal), static_cast<int>(acc.size()), false};
  out.near_chance = near_chance(out.balanced_accuracy.mean);
  return out;
}

std::string RunReport::to_json() const { return run_json(*this).dump(2) + "\n"; }

RunReport RunReport::from_json(const std::string& text) {
  try {
    return run_from(parse(text));
  } catch (const ordered_json::exception& e) {
    throw DataError(std::string("malformed run report: ") + e.what());
  }
}

std::string RunReport::to_text() const {
  std::ostringstream out;
  out << "qembed " << library_version << " run report: " << label << "\n";
  out << "status: " << status() << "\n";
  out << "config fingerprint: " << fingerprint << "\n";
  for (const std::string& p : protocol) out << "protocol: " << p << "\n";
  out << "\n" << table_header() << table_row(*this) << "\n";
  out << "seed  accuracy  balanced  sensitivity  specificity\n";
  for (const SeedResult& s : seeds) {
    char buf[160];
    if (s.ok) {
      std::snprintf(buf, sizeof buf, "%-5llu %-9.4f %-9.4f %-12.4f %-12.4f%s\n",
                    static_cast<unsigned long long>(s.seed), s.metrics.accuracy,
                    s.metrics.balanced_accuracy, s.metrics.sensitivity, s.metrics.specificity,
                    near_chance(s.metrics.balanced_accuracy) ? " near chance" : "");
      out << buf;
    } else {
      std::snprintf(buf, sizeof buf, "%-5llu failed: ", static_cast<unsigned long long>(s.seed));
      out << buf << s.error << "\n";
    }
    if (s.trace) {
      std::snprintf(buf, sizeof buf,
                    "      trace distance train %.4f -> %.4f, test %.4f -> %.4f\n",
                    s.trace->train_before, s.trace->train_after, s.trace->test_before,
                    s.trace->test_after);
      out << buf;
    }
  }
  return out.str();
}

bool RunReport::operator==(const RunReport& o) const {
  return library_version == o.library_version && label == o.label && condition == o.condition &&
         n_qubits == o.n_qubits && pca_dims == o.pca_dims && fingerprint == o.fingerprint &&
         config == o.config && protocol == o.protocol && seeds == o.seeds;
}

std::string BatteryReport::status() const {
  bool any_failed = false, all_failed = !rows.empty();
  for (const RunReport& r : rows) {
    const std::string s = r.status();
    any_failed |= s != "complete";
    all_failed &= s == "failed";
  }
  if (all_failed) return "failed";
  return any_failed ? "partial" : "complete";
}

std::string BatteryReport::to_json() const {
  ordered_json j;
  j["format"] = kBatteryFormat;
  j["format_version"] = kFormatVersion;
  j["name"] = name;
  j["status"] = status();
  ordered_json rs = ordered_json::array();
  for (const RunReport& r : rows) rs.push_back(run_json(r));
  j["rows"] = rs;
  return j.dump(2) + "\n";
}

BatteryReport BatteryReport::from_json(const std::string& text) {
  const ordered_json j = parse(text);
  try {
    if (j.at("format").get<std::string>() != kBatteryFormat) {
      throw DataError("not a battery report");
    }
    BatteryReport b;
    b.name = j.at("name").get<std::string>();
    for (const auto& r : j.at("rows")) b.rows.push_back(run_from(r));
    return b;
  } catch (const ordered_json::exception& e) {
    throw DataError(std::string("malformed battery report: ") + e.what());
  }
}

std::string BatteryReport::to_text() const {
  std::ostringstream out;
  const std::string version = rows.empty() ? std::string(QEMBED_VERSION) : rows[0].library_version;
  out << "qembed " << version << " battery report: " << name << "\n";
  out << "status: " << status() << "\n";
  if (!rows.empty()) {
    for (const std::string& p : rows[0].protocol) out << "protocol: " << p << "\n";
  }
  out << "\n" << table_header();
  for (const RunReport& r : rows) out << table_row(r);
  out << "\nconfig fingerprints:\n";
  for (const RunReport& r : rows) out << "  " << pad(r.label, 24) << r.fingerprint << "\n";
  return out.str();
}

void emit_report(const RunReport& report, const std::filesystem::path& dir,
                 const std::string& stem) {
  if (report.seeds.empty()) throw std::invalid_argument("refusing to emit a report without seeds");
  std::filesystem::create_directories(dir);
  io::atomic_write(dir / (stem + ".json"), report.to_json());
  io::atomic_write(dir / (stem + ".txt"), report.to_text());
}

void emit_report(const BatteryReport& report, const std::filesystem::path& dir,
                 const std::string& stem) {
  if (report.rows.empty()) throw std::invalid_argument("refusing to emit an empty battery");
  for (const RunReport& r : report.rows) {
    if (r.seeds.empty()) throw std::invalid_argument("refusing to emit a report without seeds");
  }
  std::filesystem::create_directories(dir);
  io::atomic_write(dir / (stem + ".json"), report.to_json());
  io::atomic_write(dir / (stem + ".txt"), report.to_text());
}

std::string render_report_file(const std::filesystem::path& path) {
  const std::string text = io::read_file(path);
  const ordered_json j = parse(text);
  const std::string format = j.value("format", "");
  if (format == kRunFormat) return RunReport::from_json(text).to_text();
  if (format == kBatteryFormat) return BatteryReport::from_json(text).to_text();
  throw DataError(path.string() + " is not a qembed report");
}

}  // namespace qembed
