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

// OpenMP Gram builders against the serial reference.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "qembed/featuremap.hpp"
#include "qembed/kernels.hpp"
#include "qembed/serial/reference.hpp"

namespace {

using namespace qembed;

Eigen::MatrixXd random_angles(int rows, int cols, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = n(rng);
  return m;
}

std::vector<StateVector> states(int rows, int qubits) {
  return serial::embed_rows(random_angles(rows, qubits, 7), FeatureMapSpec::zz(qubits));
}

void BM_EmbedParallel(benchmark::State& st) {
  const auto a = random_angles(static_cast<int>(st.range(0)), 8, 1);
  for (auto _ : st) benchmark::DoNotOptimize(embed_rows(a, FeatureMapSpec::zz(8)));
}
void BM_EmbedSerial(benchmark::State& st) {
  const auto a = random_angles(static_cast<int>(st.range(0)), 8, 1);
  for (auto _ : st) benchmark::DoNotOptimize(serial::embed_rows(a, FeatureMapSpec::zz(8)));
}

void BM_FidelityParallel(benchmark::State& st) {
  const auto s = states(static_cast<int>(st.range(0)), 8);
  for (auto _ : st) benchmark::DoNotOptimize(fidelity_gram(s));
}
void BM_FidelitySerial(benchmark::State& st) {
  const auto s = states(static_cast<int>(st.range(0)), 8);
  for (auto _ : st) benchmark::DoNotOptimize(serial::fidelity_gram(s));
}

void BM_PqkParallel(benchmark::State& st) {
  const auto s = states(static_cast<int>(st.range(0)), 8);
  for (auto _ : st) benchmark::DoNotOptimize(pqk_gram(s, 0.1));
}
void BM_PqkSerial(benchmark::State& st) {
  const auto s = states(static_cast<int>(st.range(0)), 8);
  for (auto _ : st) benchmark::DoNotOptimize(serial::pqk_gram(s, 0.1));
}

void BM_RbfParallel(benchmark::State& st) {
  const auto x = random_angles(static_cast<int>(st.range(0)), 39, 3);
  for (auto _ : st) benchmark::DoNotOptimize(rbf_gram(x, 1.0 / 39));
}
void BM_RbfSerial(benchmark::State& st) {
  const auto x = random_angles(static_cast<int>(st.range(0)), 39, 3);
  for (auto _ : st) benchmark::DoNotOptimize(serial::rbf_gram(x, 1.0 / 39));
}

}  // namespace

BENCHMARK(BM_EmbedParallel)->Arg(256)->Arg(1024);
BENCHMARK(BM_EmbedSerial)->Arg(256)->Arg(1024);
BENCHMARK(BM_FidelityParallel)->Arg(128)->Arg(512);
BENCHMARK(BM_FidelitySerial)->Arg(128)->Arg(512);
BENCHMARK(BM_PqkParallel)->Arg(128)->Arg(512);
BENCHMARK(BM_PqkSerial)->Arg(128)->Arg(512);
BENCHMARK(BM_RbfParallel)->Arg(256)->Arg(1024);
BENCHMARK(BM_RbfSerial)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
