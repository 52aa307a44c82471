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

#include <fstream>
#include <sstream>

#include "qembed/io.hpp"
#include "qembed/kernels.hpp"

namespace qembed {

namespace io {

void atomic_write(const std::filesystem::path& path, std::string_view bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace io

namespace {
constexpr std::string_view kGramMagic = "QEGRAM01";
constexpr std::uint32_t kGramVersion = 1;
}  // namespace

void write_gram(const std::filesystem::path& path, const GramMatrix& gram) {
  io::BinaryWriter w;
  w.bytes(kGramMagic);
  w.put<std::uint32_t>(kGramVersion);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(gram.kind()));
  w.put<std::uint64_t>(static_cast<std::uint64_t>(gram.size()));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(gram.params().size()));
  for (const auto& [key, value] : gram.params()) {
    w.put<std::uint32_t>(static_cast<std::uint32_t>(key.size()));
    w.bytes(key);
    w.put<double>(value);
  }
  for (Eigen::Index i = 0; i < gram.size(); ++i) {
    for (Eigen::Index j = 0; j < gram.size(); ++j) w.put<double>(gram(i, j));
  }
  io::atomic_write(path, w.buffer());
}

GramMatrix read_gram(const std::filesystem::path& path) {
  io::BinaryReader r(io::read_file(path));
  if (r.bytes(kGramMagic.size()) != kGramMagic) throw DataError("not a Gram cache file");
  if (r.get<std::uint32_t>() != kGramVersion) throw DataError("unsupported Gram cache version");
  const auto kind_raw = r.get<std::uint32_t>();
  if (kind_raw > static_cast<std::uint32_t>(KernelKind::Linear)) {
    throw DataError("unknown kernel kind in Gram cache");
  }
  const auto n = static_cast<Eigen::Index>(r.get<std::uint64_t>());
  const auto n_params = r.get<std::uint32_t>();
  std::map<std::string, double> params;
  for (std::uint32_t p = 0; p < n_params; ++p) {
    const auto len = r.get<std::uint32_t>();
    std::string key = r.bytes(len);
    params[key] = r.get<double>();
  }
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) k(i, j) = r.get<double>();
  }
  if (!r.at_end()) throw DataError("trailing bytes in Gram cache");
  return GramMatrix(static_cast<KernelKind>(kind_raw), std::move(k), std::move(params));
}

}  // namespace qembed
