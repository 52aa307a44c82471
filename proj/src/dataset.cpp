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

#include "qembed/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "qembed/errors.hpp"

namespace qembed {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_number(const std::string& cell, int line_no, const std::string& column) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw DataError("line " + std::to_string(line_no) + ": column '" + column +
                    "' has non-numeric or missing value '" + cell + "'");
  }
  return v;
}

int parse_label(const std::string& cell, int line_no) {
  if (cell == "1" || cell == "+1") return 1;
  if (cell == "0" || cell == "-1") return -1;
  throw DataError("line " + std::to_string(line_no) + ": unknown label token '" + cell + "'");
}

}  // namespace

const std::array<std::string_view, kDescriptorCount>& descriptor_names() {
  static const std::array<std::string_view, kDescriptorCount> names = {
      "Num_C", "Num_N", "Num_O", "Num_P", "Num_S", "Num_F", "Num_Cl", "Num_Br", "Num_I",
      "Single_Bonds", "Double_Bonds", "NumStereoE", "Num_Aromatic_Atoms",
      "Aromatic_Proportion", "NumRotatableBonds", "Total_NH_OH", "Total_N_O",
      "NumHydrogenAcceptors", "NumHydrogenDonors", "NumofHeteroatoms", "MolLogP", "MolWt",
      "FpDensityMorgan1", "FpDensityMorgan2", "FpDensityMorgan3", "MaxAbsPartialCharge",
      "MinAbsPartialCharge", "NumValenceElectrons", "BertzCT", "BalabanJ", "Chi0", "Chi1",
      "Chi2n", "Chi3n", "HallKierAlpha", "Ipc", "Kappa1", "Kappa2", "Kappa3"};
  return names;
}

std::vector<Sample> parse_features(std::istream& in, const std::string& source) {
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    header = split_csv_line(line);
    break;
  }
  if (header.empty()) throw DataError(source + ": missing header row");
  const bool has_target = header.size() > 2 && header[2] == "target";
  const std::size_t first_feature = has_target ? 3 : 2;
  const std::size_t expected = first_feature + kDescriptorCount;
  if (header.size() != expected || header[0] != "id" || header[1] != "label") {
    throw DataError(source + ": header must be id,label[,target] followed by the " +
                    std::to_string(kDescriptorCount) + " descriptor columns");
  }
  for (int f = 0; f < kDescriptorCount; ++f) {
    if (header[first_feature + f] != descriptor_names()[f]) {
      throw DataError(source + ": column " + std::to_string(first_feature + f + 1) + " is '" +
                      header[first_feature + f] + "', expected '" +
                      std::string(descriptor_names()[f]) + "'");
    }
  }

  std::vector<Sample> samples;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (line.find_first_not_of(" \r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != expected) {
      throw DataError(source + ": line " + std::to_string(line_no) + " has " +
                      std::to_string(cells.size()) + " columns, expected " +
                      std::to_string(expected));
    }
    Sample s;
    s.id = cells[0];
    if (s.id.empty()) throw DataError(source + ": line " + std::to_string(line_no) + " has empty id");
    s.label = parse_label(cells[1], line_no);
    if (has_target) s.target_name = cells[2];
    s.features.reserve(kDescriptorCount);
    for (int f = 0; f < kDescriptorCount; ++f) {
      s.features.push_back(
          parse_number(cells[first_feature + f], line_no, std::string(descriptor_names()[f])));
    }
    samples.push_back(std::move(s));
  }
  return samples;
}

std::vector<Sample> load_features(const std::filesystem::path& csv) {
  std::ifstream in(csv);
  if (!in) throw DataError("cannot open feature file " + csv.string());
  return parse_features(in, csv.string());
}

int LabeledData::count(int label) const {
  return static_cast<int>(std::count(y.begin(), y.end(), label));
}

LabeledData LabeledData::subset(std::span<const int> rows) const {
  LabeledData out;
  out.x.resize(static_cast<Eigen::Index>(rows.size()), x.cols());
  out.y.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.x.row(static_cast<Eigen::Index>(r)) = x.row(rows[r]);
    out.y.push_back(y[static_cast<std::size_t>(rows[r])]);
  }
  return out;
}

LabeledData to_labeled(std::span<const Sample> samples) {
  LabeledData d;
  const Eigen::Index cols = samples.empty() ? 0 : static_cast<Eigen::Index>(samples[0].features.size());
  d.x.resize(static_cast<Eigen::Index>(samples.size()), cols);
  for (std::size_t r = 0; r < samples.size(); ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) d.x(static_cast<Eigen::Index>(r), c) = samples[r].features[c];
    d.y.push_back(samples[r].label);
  }
  return d;
}

Standardizer Standardizer::fit(const Eigen::MatrixXd& x) {
  if (x.rows() < 1) throw DataError("cannot standardize an empty matrix");
  Standardizer s;
  s.mean_ = x.colwise().mean();
  s.scale_ = ((x.rowwise() - s.mean_).array().square().colwise().mean()).sqrt();
  for (Eigen::Index c = 0; c < s.scale_.size(); ++c) {
    if (!(s.scale_(c) > 1e-12)) s.scale_(c) = 1.0;
  }
  return s;
}

Eigen::MatrixXd Standardizer::transform(const Eigen::MatrixXd& x) const {
  return (x.rowwise() - mean_).array().rowwise() / scale_.array();
}

std::string to_string(ClassRatio r) {
  switch (r) {
    case ClassRatio::OneToOne: return "1:1";
    case ClassRatio::OneToSix: return "1:6";
    case ClassRatio::AsIs: return "asis";
  }
  return "?";
}

ClassRatio parse_class_ratio(const std::string& text) {
  if (text == "1:1") return ClassRatio::OneToOne;
  if (text == "1:6") return ClassRatio::OneToSix;
  if (text == "asis" || text == "as-is" || text == "AsIs") return ClassRatio::AsIs;
  throw ConfigError("unknown class ratio '" + text + "'");
}

std::vector<Sample> sample_ratio(std::span<const Sample> samples, ClassRatio ratio,
                                 std::uint64_t seed) {
  if (ratio == ClassRatio::AsIs) return {samples.begin(), samples.end()};
  std::vector<std::size_t> act, inact;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    (samples[i].label > 0 ? act : inact).push_back(i);
  }
  const std::size_t factor = ratio == ClassRatio::OneToOne ? 1 : 6;
  const std::size_t want = act.size() * factor;
  if (inact.size() < want) {
    throw DataError("ratio " + to_string(ratio) + " needs " + std::to_string(want) +
                    " inactivators, only " + std::to_string(inact.size()) + " available");
  }
  std::mt19937_64 rng(seed);
  std::shuffle(inact.begin(), inact.end(), rng);
  inact.resize(want);
  std::vector<std::size_t> keep = act;
  keep.insert(keep.end(), inact.begin(), inact.end());
  std::sort(keep.begin(), keep.end());
  std::vector<Sample> out;
  out.reserve(keep.size());
  for (std::size_t i : keep) out.push_back(samples[i]);
  return out;
}

SplitIndices stratified_split(std::span<const int> labels, SplitFractions fractions,
                              std::uint64_t seed) {
  const double total = fractions.train + fractions.val + fractions.test;
  if (fractions.train <= 0 || fractions.val < 0 || fractions.test <= 0 ||
      std::abs(total - 1.0) > 1e-9) {
    throw ConfigError("split fractions must be positive and sum to 1");
  }
  SplitIndices out;
  std::mt19937_64 rng(seed);
  for (int cls : {1, -1}) {
    std::vector<int> idx;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == cls) idx.push_back(static_cast<int>(i));
    }
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto n = static_cast<double>(idx.size());
    auto n_train = static_cast<std::size_t>(std::llround(fractions.train * n));
    auto n_val = static_cast<std::size_t>(std::llround(fractions.val * n));
    n_train = std::min(n_train, idx.size());
    n_val = std::min(n_val, idx.size() - n_train);
    out.train.insert(out.train.end(), idx.begin(), idx.begin() + static_cast<long>(n_train));
    out.val.insert(out.val.end(), idx.begin() + static_cast<long>(n_train),
                   idx.begin() + static_cast<long>(n_train + n_val));
    out.test.insert(out.test.end(), idx.begin() + static_cast<long>(n_train + n_val), idx.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.val.begin(), out.val.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

}  // namespace qembed
