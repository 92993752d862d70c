/*
 * Copyright 2026 The shrq Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Symmetric primitives (SHA-256, AES-256-GCM) and base64, backed by OpenSSL.

#ifndef SHRQ_CRYPTO_H_
#define SHRQ_CRYPTO_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "shrq/bigint.h"

namespace shrq {

using Digest = std::array<uint8_t, 32>;
using AesKey = std::array<uint8_t, 32>;

inline constexpr std::string_view kHashId = "SHA-256";
inline constexpr size_t kGcmNonceBytes = 12;
inline constexpr size_t kGcmTagBytes = 16;

Digest Sha256(std::span<const uint8_t> data);

// Blob layout: nonce (12) || ciphertext || tag (16). `aad` is authenticated
// but not stored.
Bytes AesGcmSeal(const AesKey& key, std::span<const uint8_t> plaintext,
                 std::span<const uint8_t> aad, Random& rng);
// Throws Error(kDataIntegrity) when authentication fails.
Bytes AesGcmOpen(const AesKey& key, std::span<const uint8_t> blob,
                 std::span<const uint8_t> aad);

std::string Base64Encode(std::span<const uint8_t> data);
// Throws Error(kProtocol) on malformed input.
Bytes Base64Decode(std::string_view text);

}  // namespace shrq

#endif  // SHRQ_CRYPTO_H_
