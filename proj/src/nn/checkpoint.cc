// Copyright 2026 The DRLR Authors
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

#include "drlr/nn/checkpoint.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace drlr::nn {
namespace {

constexpr char kMagic[5] = {'D', 'R', 'L', 'R', '1'};

template <typename T>
void WriteLe(std::ostream& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes, bytes + sizeof(T));
  }
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T ReadLe(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) {
    throw std::runtime_error("checkpoint: unexpected end of data");
  }
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes, bytes + sizeof(T));
  }
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void WriteParams(const MlpParams& params, std::ostream& out) {
  ValidateShapes(params);
  out.write(kMagic, sizeof(kMagic));
  WriteLe<std::uint8_t>(out, static_cast<std::uint8_t>(params.activation));
  WriteLe<std::uint32_t>(out,
                         static_cast<std::uint32_t>(params.layer_sizes.size()));
  for (int size : params.layer_sizes) {
    WriteLe<std::uint32_t>(out, static_cast<std::uint32_t>(size));
  }
  for (int k = 0; k < params.num_layers(); ++k) {
    const auto& w = params.weights[k];
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) WriteLe<double>(out, w(i, j));
    }
    for (Eigen::Index i = 0; i < params.biases[k].size(); ++i) {
      WriteLe<double>(out, params.biases[k](i));
    }
  }
}

MlpParams ReadParams(std::istream& in) {
  char magic[sizeof(kMagic)];
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("checkpoint: bad magic, expected DRLR1");
  }
  MlpParams params;
  const auto act = ReadLe<std::uint8_t>(in);
  if (act > 2) throw std::runtime_error("checkpoint: unknown activation");
  params.activation = static_cast<Activation>(act);
  const auto count = ReadLe<std::uint32_t>(in);
  if (count < 2 || count > 64) {
    throw std::runtime_error("checkpoint: implausible layer count");
  }
  for (std::uint32_t i = 0; i < count; ++i) {
    params.layer_sizes.push_back(static_cast<int>(ReadLe<std::uint32_t>(in)));
  }
  for (std::uint32_t k = 0; k + 1 < count; ++k) {
    const int rows = params.layer_sizes[k + 1];
    const int cols = params.layer_sizes[k];
    Eigen::MatrixXd w(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) w(i, j) = ReadLe<double>(in);
    }
    Eigen::VectorXd b(rows);
    for (int i = 0; i < rows; ++i) b(i) = ReadLe<double>(in);
    params.weights.push_back(std::move(w));
    params.biases.push_back(std::move(b));
  }
  ValidateShapes(params);
  return params;
}

void WriteCheckpoint(const std::string& path, const std::string& header,
                     const std::vector<const MlpParams*>& blocks) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << header << '\n';
  for (const MlpParams* p : blocks) WriteParams(*p, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string ReadCheckpoint(const std::string& path,
                           std::vector<MlpParams>* blocks) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string header;
  std::getline(in, header);
  blocks->clear();
  while (in.peek() != std::char_traits<char>::eof()) {
    blocks->push_back(ReadParams(in));
  }
  return header;
}

}  // namespace drlr::nn
