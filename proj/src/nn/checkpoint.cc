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

#include "fedgan/nn/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "fedgan/util/status_macros.h"

namespace fedgan::nn {
namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint encoding assumes a little-endian host");
static_assert(kCheckpointMagic.size() == 16);

template <typename T>
void Put(std::vector<uint8_t>& out, T value) {
  uint8_t raw[sizeof(T)];
  std::memcpy(raw, &value, sizeof(T));
  out.insert(out.end(), raw, raw + sizeof(T));
}

class Reader {
 public:
  Reader(std::span<const uint8_t> bytes, size_t& offset)
      : bytes_(bytes), offset_(offset) {}

  template <typename T>
  absl::StatusOr<T> Get() {
    if (bytes_.size() - offset_ < sizeof(T)) {
      return absl::DataLossError(
          absl::StrCat("checkpoint truncated at byte ", offset_));
    }
    T value;
    std::memcpy(&value, bytes_.data() + offset_, sizeof(T));
    offset_ += sizeof(T);
    return value;
  }

  absl::Status Expect(std::string_view literal) {
    if (bytes_.size() - offset_ < literal.size() ||
        std::memcmp(bytes_.data() + offset_, literal.data(), literal.size()) !=
            0) {
      return absl::DataLossError("checkpoint magic mismatch");
    }
    offset_ += literal.size();
    return absl::OkStatus();
  }

 private:
  std::span<const uint8_t> bytes_;
  size_t& offset_;
};

}  // namespace

std::vector<uint8_t> EncodeParameters(const NetworkParameters& net) {
  std::vector<uint8_t> out(kCheckpointMagic.begin(), kCheckpointMagic.end());
  out.push_back(kCheckpointVersion);
  Put<uint32_t>(out, static_cast<uint32_t>(net.num_layers()));
  for (const Layer& layer : net.layers()) {
    Put<uint32_t>(out, static_cast<uint32_t>(layer.out_dim()));
    Put<uint32_t>(out, static_cast<uint32_t>(layer.in_dim()));
    Put<uint8_t>(out, static_cast<uint8_t>(layer.activation.kind));
    Put<double>(out, layer.activation.slope);
  }
  for (const Layer& layer : net.layers()) {
    for (int64_t r = 0; r < layer.weight.rows(); ++r) {
      for (int64_t c = 0; c < layer.weight.cols(); ++c) {
        Put<double>(out, layer.weight(r, c));
      }
    }
    for (int64_t r = 0; r < layer.bias.size(); ++r) Put<double>(out, layer.bias(r));
  }
  return out;
}

absl::StatusOr<NetworkParameters> DecodeParametersAt(
    std::span<const uint8_t> bytes, size_t& offset) {
  Reader reader(bytes, offset);
  RETURN_IF_ERROR(reader.Expect(kCheckpointMagic));
  ASSIGN_OR_RETURN(const uint8_t version, reader.Get<uint8_t>());
  if (version != kCheckpointVersion) {
    return absl::DataLossError(
        absl::StrCat("unsupported checkpoint version ", version));
  }
  ASSIGN_OR_RETURN(const uint32_t num_layers, reader.Get<uint32_t>());
  // Each layer header is 17 bytes; bound the count before allocating.
  if (num_layers == 0 || num_layers > (bytes.size() - offset) / 17) {
    return absl::DataLossError(
        absl::StrCat("implausible layer count ", num_layers));
  }
  std::vector<Layer> layers(num_layers);
  for (Layer& layer : layers) {
    ASSIGN_OR_RETURN(const uint32_t out, reader.Get<uint32_t>());
    ASSIGN_OR_RETURN(const uint32_t in, reader.Get<uint32_t>());
    ASSIGN_OR_RETURN(const uint8_t tag, reader.Get<uint8_t>());
    ASSIGN_OR_RETURN(const double slope, reader.Get<double>());
    if (tag > static_cast<uint8_t>(ActivationKind::kSoftmax)) {
      return absl::DataLossError(absl::StrCat("unknown activation tag ", tag));
    }
    const uint64_t entries = static_cast<uint64_t>(out) * (in + 1ULL);
    if (out == 0 || in == 0 || entries > (bytes.size() - offset) / 8) {
      return absl::DataLossError("layer shape exceeds checkpoint size");
    }
    layer.weight.resize(out, in);
    layer.bias.resize(out);
    layer.activation = {static_cast<ActivationKind>(tag), slope};
  }
  for (Layer& layer : layers) {
    for (int64_t r = 0; r < layer.weight.rows(); ++r) {
      for (int64_t c = 0; c < layer.weight.cols(); ++c) {
        ASSIGN_OR_RETURN(layer.weight(r, c), reader.Get<double>());
      }
    }
    for (int64_t r = 0; r < layer.bias.size(); ++r) {
      ASSIGN_OR_RETURN(layer.bias(r), reader.Get<double>());
    }
  }
  return NetworkParameters::Create(std::move(layers));
}

absl::StatusOr<NetworkParameters> DecodeParameters(
    std::span<const uint8_t> bytes) {
  size_t offset = 0;
  ASSIGN_OR_RETURN(NetworkParameters net, DecodeParametersAt(bytes, offset));
  if (offset != bytes.size()) {
    return absl::DataLossError(
        absl::StrCat("checkpoint has ", bytes.size() - offset,
                     " trailing bytes"));
  }
  return net;
}

absl::Status WriteCheckpoint(const NetworkParameters& net,
                             const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) return absl::UnavailableError(absl::StrCat("cannot open ", path));
  const std::vector<uint8_t> bytes = EncodeParameters(net);
  file.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
  if (!file) return absl::DataLossError(absl::StrCat("short write to ", path));
  return absl::OkStatus();
}

absl::StatusOr<NetworkParameters> ReadCheckpoint(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(file)),
                             std::istreambuf_iterator<char>());
  return DecodeParameters(bytes);
}

}  // namespace fedgan::nn
