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

#ifndef DRLR_RNG_H_
#define DRLR_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Core>

namespace drlr {

using Rng = std::mt19937_64;

// Seed for the stream `name` under `master`. Streams with different names are
// decorrelated, so enabling one consumer never shifts another's draws.
std::uint64_t DeriveSeed(std::uint64_t master, std::string_view name);

// One master seed fans out into named, independent generators.
struct RngStreams {
  explicit RngStreams(std::uint64_t master);

  std::uint64_t master;
  Rng env;
  Rng exploration;
  Rng buffer;
  Rng init;
  Rng selector;
  Rng eval;
  Rng diag;
};

double StandardNormal(Rng& rng);
double Uniform(Rng& rng, double lo, double hi);
// Uniform index in [0, n).
std::size_t UniformIndex(Rng& rng, std::size_t n);
Eigen::MatrixXd StandardNormalMatrix(Rng& rng, Eigen::Index rows,
                                     Eigen::Index cols);

}  // namespace drlr

#endif  // DRLR_RNG_H_
