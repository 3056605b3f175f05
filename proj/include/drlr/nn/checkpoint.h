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

#ifndef DRLR_NN_CHECKPOINT_H_
#define DRLR_NN_CHECKPOINT_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "drlr/nn/mlp.h"

namespace drlr::nn {

// Binary parameter block, all integers and doubles little-endian:
//
//   char[5]   magic "DRLR1"
//   uint8     activation (0 relu, 1 tanh, 2 identity)
//   uint32    number of layer sizes L
//   uint32[L] layer sizes
//   for each layer k: float64 weights, row-major (sizes[k+1] x sizes[k]),
//                     then float64 biases (sizes[k+1])
//
// A checkpoint file is a sequence of such blocks preceded by a text header
// line (see WriteCheckpoint).
void WriteParams(const MlpParams& params, std::ostream& out);
MlpParams ReadParams(std::istream& in);

// Writes "<header>\n" followed by `blocks.size()` parameter blocks.
void WriteCheckpoint(const std::string& path, const std::string& header,
                     const std::vector<const MlpParams*>& blocks);
// Returns the header line and fills `blocks`.
std::string ReadCheckpoint(const std::string& path,
                           std::vector<MlpParams>* blocks);

}  // namespace drlr::nn

#endif  // DRLR_NN_CHECKPOINT_H_
