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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qembed/featuremap.hpp"
#include "../test_util.hpp"

namespace qembed {
namespace {

using testing::oracle_xyz;
using testing::oracle_zz;
constexpr double kPi = std::numbers::pi;

double max_amplitude_error(const StateVector& s, const Eigen::VectorXcd& expect) {
  double worst = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i)
    worst = std::max(worst, std::abs(s[i] - expect(static_cast<Eigen::Index>(i))));
  return worst;
}

TEST(ZZAngles, Examples) {
  EXPECT_EQ(zz_angles(std::vector{kPi, kPi}).pairs, std::vector<double>{0.0});
  EXPECT_NEAR(zz_angles(std::vector{0.0, 0.0}).pairs.at(0), 4.93480220054468, 1e-12);
  EXPECT_EQ(zz_angles(std::vector{kPi, 0.0}).pairs, std::vector<double>{0.0});
  EXPECT_EQ(zz_angles(std::vector{0.2, 0.5}).singles, (std::vector<double>{0.2, 0.5}));
}

TEST(EmbedZZ, SingleQubitZeroInputIsPlusState) {
  const auto s = embed_zz(std::vector{0.0}, FeatureMapSpec::zz(1, 1));
  EXPECT_NEAR(std::abs(s[0]), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(s[1]), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(inner_product(s, s)), 1.0, 1e-15);
}

TEST(EmbedZZ, TwoQubitFixedInputMatchesOracle) {
  const std::vector<double> z{0.3, 1.1};
  EXPECT_LT(max_amplitude_error(embed_zz(z, FeatureMapSpec::zz(2, 1)), oracle_zz(z, 1)), 1e-12);
}

TEST(EmbedZZ, MatchesOracleAcrossLayersAndSizes) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int n : {2, 3}) {
    for (int layers : {1, 2, 3}) {
      for (int t = 0; t < 10; ++t) {
        std::vector<double> z(n);
        for (auto& v : z) v = u(rng);
        const auto s = embed_zz(z, FeatureMapSpec::zz(n, layers));
        EXPECT_NEAR(s.norm(), 1.0, 1e-12);
        EXPECT_LT(max_amplitude_error(s, oracle_zz(z, layers)), 1e-9);
      }
    }
  }
}

TEST(EmbedZZ, AllPiRemovesPairTerms) {
  const std::vector<double> z(3, kPi);
  const auto s = embed_zz(z, FeatureMapSpec::zz(3, 2));
  // Pair-free circuit: single-qubit phases only, so a product of identical 1-qubit states.
  const auto one = embed_zz(std::vector{kPi}, FeatureMapSpec::zz(1, 2));
  for (std::size_t i = 0; i < s.dim(); ++i) {
    cplx prod = 1.0;
    for (int q = 0; q < 3; ++q) prod *= one[(i >> (2 - q)) & 1];
    EXPECT_NEAR(std::abs(s[i] - prod), 0.0, 1e-14);
  }
}

TEST(EmbedZZ, Deterministic) {
  const std::vector<double> z{0.4, -1.3, 2.2, 0.9};
  const auto a = embed_zz(z, FeatureMapSpec::zz(4));
  const auto b = embed_zz(z, FeatureMapSpec::zz(4));
  for (std::size_t i = 0; i < a.dim(); ++i) EXPECT_EQ(a[i], b[i]);
  EXPECT_NEAR(fidelity(a, b), 1.0, 1e-12);
}

TEST(EmbedXYZ, ZeroInputIsAllZeroState) {
  const auto s = embed_xyz(std::vector<double>(6, 0.0), FeatureMapSpec::xyz(3));
  EXPECT_NEAR(std::abs(s[0] - 1.0), 0.0, 1e-15);
  for (std::size_t i = 1; i < s.dim(); ++i) EXPECT_NEAR(std::abs(s[i]), 0.0, 1e-15);
}

TEST(EmbedXYZ, MatchesOracleAcrossLayersAndSizes) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int n : {2, 3}) {
    for (int layers : {1, 2, 3}) {
      for (int t = 0; t < 10; ++t) {
        std::vector<double> z(2 * n);
        for (auto& v : z) v = u(rng);
        const auto s = embed_xyz(z, FeatureMapSpec::xyz(n, layers));
        EXPECT_NEAR(s.norm(), 1.0, 1e-12);
        EXPECT_LT(max_amplitude_error(s, oracle_xyz(z, n, layers)), 1e-9);
      }
    }
  }
}

TEST(EmbedXYZ, LastInputEntryIsIgnored) {
  std::vector<double> z{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  const auto a = embed_xyz(z, FeatureMapSpec::xyz(3));
  z[5] = -2.0;
  const auto b = embed_xyz(z, FeatureMapSpec::xyz(3));
  for (std::size_t i = 0; i < a.dim(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(Embed, RejectsWrongWidthAndNonFinite) {
  EXPECT_THROW(embed_zz(std::vector{0.1, 0.2, 0.3}, FeatureMapSpec::zz(2)),
               std::invalid_argument);
  EXPECT_THROW(embed_xyz(std::vector{0.1, 0.2}, FeatureMapSpec::xyz(2)), std::invalid_argument);
  EXPECT_THROW(embed_zz(std::vector{0.1, std::nan("")}, FeatureMapSpec::zz(2)),
               std::invalid_argument);
}

TEST(Embed, LayerCountComposesSingleLayer) {
  // l layers applied to |0> equal the single-layer oracle matrix applied l times.
  const std::vector<double> z{0.7, -0.4};
  for (int layers : {2, 3}) {
    const auto s = embed_zz(z, FeatureMapSpec::zz(2, layers));
    Eigen::VectorXcd once = oracle_zz(z, 1);
    EXPECT_LT(max_amplitude_error(s, oracle_zz(z, layers)), 1e-12);
    EXPECT_GT((once - oracle_zz(z, layers)).norm(), 1e-3);
  }
}

TEST(FidelityGradient, AdjointMatchesFiniteDifference) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const auto& spec : {FeatureMapSpec::zz(3, 3), FeatureMapSpec::xyz(3, 2)}) {
    for (int t = 0; t < 10; ++t) {
      std::vector<double> a(spec.input_dim()), b(spec.input_dim());
      for (auto& v : a) v = u(rng);
      for (auto& v : b) v = u(rng);
      const auto adj = fidelity_gradient(a, b, spec, GradientMethod::Adjoint);
      EXPECT_NEAR(adj.fidelity, fidelity(embed(a, spec), embed(b, spec)), 1e-12);
      const double eps = 1e-5;
      for (std::size_t k = 0; k < a.size(); ++k) {
        auto ap = a, am = a;
        ap[k] += eps;
        am[k] -= eps;
        const double fd = (fidelity(embed(ap, spec), embed(b, spec)) -
                           fidelity(embed(am, spec), embed(b, spec))) /
                          (2 * eps);
        EXPECT_LT(testing::rel_error(adj.d_left[k], fd), 1e-4) << "left " << k;
        auto bp = b, bm = b;
        bp[k] += eps;
        bm[k] -= eps;
        const double fdr = (fidelity(embed(a, spec), embed(bp, spec)) -
                            fidelity(embed(a, spec), embed(bm, spec))) /
                           (2 * eps);
        EXPECT_LT(testing::rel_error(adj.d_right[k], fdr), 1e-4) << "right " << k;
      }
    }
  }
}

TEST(FeatureMapSpec, Validation) {
  EXPECT_EQ(FeatureMapSpec::zz(4).input_dim(), 4);
  EXPECT_EQ(FeatureMapSpec::xyz(4).input_dim(), 8);
  EXPECT_EQ(FeatureMapSpec::xyz(4).layers, 2);
  EXPECT_EQ(FeatureMapSpec::zz(4).layers, 3);
  EXPECT_EQ(FeatureMapSpec::zz(4).pairs().size(), 3U);
  FeatureMapSpec bad = FeatureMapSpec::zz(4);
  bad.layers = 0;
  EXPECT_ANY_THROW(bad.validate());
  EXPECT_EQ(parse_feature_map_kind(to_string(FeatureMapKind::XYZ)), FeatureMapKind::XYZ);
}

}  // namespace
}  // namespace qembed
