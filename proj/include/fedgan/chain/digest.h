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

#ifndef FEDGAN_CHAIN_DIGEST_H_
#define FEDGAN_CHAIN_DIGEST_H_

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "fedgan/util/rng.h"

namespace fedgan::chain {

using Digest = std::array<uint8_t, 32>;

Digest Sha256(std::span<const uint8_t> bytes);
std::string ToHex(const Digest& digest);

// Simulated wallet keys. A signature is SHA-256 over the sender's secret key,
// the sender id and the payload; verification recomputes it. This stands in
// for an asymmetric scheme and has none of its security properties.
class KeyRegistry {
 public:
  // Registers `sender` with a key drawn from `rng`. Fails if already present.
  absl::Status Register(std::string_view sender, RngStream& rng);

  bool Contains(std::string_view sender) const;

  absl::StatusOr<Digest> Sign(std::string_view sender,
                              std::span<const uint8_t> payload) const;
  bool Verify(std::string_view sender, std::span<const uint8_t> payload,
              const Digest& signature) const;

 private:
  std::map<std::string, Digest, std::less<>> keys_;
};

}  // namespace fedgan::chain

#endif  // FEDGAN_CHAIN_DIGEST_H_
