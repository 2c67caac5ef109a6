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

#include "fedgan/chain/digest.h"

#include <openssl/evp.h>

#include <cstring>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace fedgan::chain {
namespace {

std::vector<uint8_t> SignatureInput(const Digest& key, std::string_view sender,
                                    std::span<const uint8_t> payload) {
  std::vector<uint8_t> buf(key.begin(), key.end());
  const uint32_t len = static_cast<uint32_t>(sender.size());
  uint8_t raw[4];
  std::memcpy(raw, &len, 4);
  buf.insert(buf.end(), raw, raw + 4);
  buf.insert(buf.end(), sender.begin(), sender.end());
  buf.insert(buf.end(), payload.begin(), payload.end());
  return buf;
}

}  // namespace

Digest Sha256(std::span<const uint8_t> bytes) {
  Digest out{};
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), out.data(), &len, EVP_sha256(),
             nullptr);
  return out;
}

std::string ToHex(const Digest& digest) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(digest.size() * 2);
  for (uint8_t b : digest) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 0xf]);
  }
  return out;
}

absl::Status KeyRegistry::Register(std::string_view sender, RngStream& rng) {
  if (Contains(sender)) {
    return absl::AlreadyExistsError(
        absl::StrCat("sender already registered: ", std::string(sender)));
  }
  Digest key{};
  for (size_t i = 0; i < key.size(); i += 8) {
    const uint64_t word = rng.NextU64();
    std::memcpy(key.data() + i, &word, 8);
  }
  keys_.emplace(std::string(sender), key);
  return absl::OkStatus();
}

bool KeyRegistry::Contains(std::string_view sender) const {
  return keys_.find(sender) != keys_.end();
}

absl::StatusOr<Digest> KeyRegistry::Sign(
    std::string_view sender, std::span<const uint8_t> payload) const {
  auto it = keys_.find(sender);
  if (it == keys_.end()) {
    return absl::NotFoundError(
        absl::StrCat("no key for sender ", std::string(sender)));
  }
  return Sha256(SignatureInput(it->second, sender, payload));
}

bool KeyRegistry::Verify(std::string_view sender,
                         std::span<const uint8_t> payload,
                         const Digest& signature) const {
  auto expected = Sign(sender, payload);
  return expected.ok() && *expected == signature;
}

}  // namespace fedgan::chain
