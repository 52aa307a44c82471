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

// Feature CSV loading, standardization, class-ratio sampling and splits.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qembed {

inline constexpr int kDescriptorCount = 39;

/// Column names in the order the feature CSV must carry them.
const std::array<std::string_view, kDescriptorCount>& descriptor_names();

struct Sample {
  std::string id;
  std::vector<double> features;
  int label = 0;  // +1 activator, -1 inactivator
  std::string target_name;
};

/// Header: id,label[,target],<39 descriptor names>. Lines starting with '#'
/// are comments. Labels "1"/"+1" map to +1, "0"/"-1" to -1. Any malformed row
/// raises DataError naming the line number.
std::vector<Sample> load_features(const std::filesystem::path& csv);
std::vector<Sample> parse_features(std::istream& in, const std::string& source);

/// Rows are samples; y in {-1, +1}.
struct LabeledData {
  Eigen::MatrixXd x;
  std::vector<int> y;

  Eigen::Index size() const { return x.rows(); }
  int count(int label) const;
  LabeledData subset(std::span<const int> rows) const;
};

LabeledData to_labeled(std::span<const Sample> samples);

/// Per-feature z-score; constant features keep scale 1.
class Standardizer {
 public:
  static Standardizer fit(const Eigen::MatrixXd& x);
  Eigen::MatrixXd transform(const Eigen::MatrixXd& x) const;
  const Eigen::RowVectorXd& mean() const { return mean_; }
  const Eigen::RowVectorXd& scale() const { return scale_; }

 private:
  Eigen::RowVectorXd mean_, scale_;
};

enum class ClassRatio { OneToOne, OneToSix, AsIs };

std::string to_string(ClassRatio r);
ClassRatio parse_class_ratio(const std::string& text);

/// Keeps every activator and draws inactivators uniformly without
/// replacement to reach the ratio. Output keeps the input order.
std::vector<Sample> sample_ratio(std::span<const Sample> samples, ClassRatio ratio,
                                 std::uint64_t seed);

struct SplitFractions {
  double train = 0.70;
  double val = 0.15;
  double test = 0.15;
};

struct SplitIndices {
  std::vector<int> train, val, test;
};

/// Stratified by label; each class is shuffled with `seed` and cut by the
/// fractions. Indices come back sorted.
SplitIndices stratified_split(std::span<const int> labels, SplitFractions fractions,
                              std::uint64_t seed);

}  // namespace qembed
