// Copyright 2026 The FedGAN Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Binary parameter checkpoints.
//
// Layout (all integers and floats little-endian):
//   bytes  0..15  magic "FEDGANLAB-PARAMS"
//   byte   16     format version (kCheckpointVersion)
//   u32           layer count
//   per layer:    u32 out, u32 in, u8 activation tag, f64 leaky slope
//   per layer:    out*in f64 weights (row-major), then out f64 biases
// Decoding rejects trailing bytes.

#ifndef FEDGAN_NN_CHECKPOINT_H_
#define FEDGAN_NN_CHECKPOINT_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "fedgan/nn/network.h"

namespace fedgan::nn {

inline constexpr std::string_view kCheckpointMagic = "FEDGANLAB-PARAMS";
inline constexpr uint8_t kCheckpointVersion = 1;

std::vector<uint8_t> EncodeParameters(const NetworkParameters& net);
absl::StatusOr<NetworkParameters> DecodeParameters(
    std::span<const uint8_t> bytes);

// Decodes a checkpoint that starts at `offset`, advancing it past the record.
absl::StatusOr<NetworkParameters> DecodeParametersAt(
    std::span<const uint8_t> bytes, size_t& offset);

absl::Status WriteCheckpoint(const NetworkParameters& net,
                             const std::string& path);
absl::StatusOr<NetworkParameters> ReadCheckpoint(const std::string& path);

}  // namespace fedgan::nn

#endif  // FEDGAN_NN_CHECKPOINT_H_
