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

#include "shrq/crypto.h"

#include <openssl/evp.h>
#include <openssl/sha.h>

#include <memory>

#include "shrq/errors.h"

namespace shrq {
namespace {

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

CipherCtx NewCipherCtx() {
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx) throw std::runtime_error("EVP_CIPHER_CTX_new failed");
  return ctx;
}

void Check(int rc, const char* what) {
  if (rc != 1) throw std::runtime_error(std::string("OpenSSL failure: ") + what);
}

}  // namespace

Digest Sha256(std::span<const uint8_t> data) {
  Digest out;
  SHA256(data.data(), data.size(), out.data());
  return out;
}

Bytes AesGcmSeal(const AesKey& key, std::span<const uint8_t> plaintext,
                 std::span<const uint8_t> aad, Random& rng) {
  Bytes blob = rng.RandomBytes(kGcmNonceBytes);
  blob.resize(kGcmNonceBytes + plaintext.size() + kGcmTagBytes);

  CipherCtx ctx = NewCipherCtx();
  Check(EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr,
                           nullptr),
        "EncryptInit");
  Check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, kGcmNonceBytes,
                            nullptr),
        "SET_IVLEN");
  Check(EVP_EncryptInit_ex(ctx.get(), nullptr, nullptr, key.data(), blob.data()),
        "EncryptInit key");
  int len = 0;
  if (!aad.empty()) {
    Check(EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(),
                            static_cast<int>(aad.size())),
          "aad");
  }
  uint8_t* ct = blob.data() + kGcmNonceBytes;
  int written = 0;
  if (!plaintext.empty()) {
    Check(EVP_EncryptUpdate(ctx.get(), ct, &len, plaintext.data(),
                            static_cast<int>(plaintext.size())),
          "EncryptUpdate");
    written = len;
  }
  Check(EVP_EncryptFinal_ex(ctx.get(), ct + written, &len), "EncryptFinal");
  Check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kGcmTagBytes,
                            blob.data() + kGcmNonceBytes + plaintext.size()),
        "GET_TAG");
  return blob;
}

Bytes AesGcmOpen(const AesKey& key, std::span<const uint8_t> blob,
                 std::span<const uint8_t> aad) {
  if (blob.size() < kGcmNonceBytes + kGcmTagBytes) {
    throw Error(ErrorCode::kDataIntegrity, "AES blob too short");
  }
  size_t ct_len = blob.size() - kGcmNonceBytes - kGcmTagBytes;
  Bytes plaintext(ct_len);

  CipherCtx ctx = NewCipherCtx();
  Check(EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr,
                           nullptr),
        "DecryptInit");
  Check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, kGcmNonceBytes,
                            nullptr),
        "SET_IVLEN");
  Check(EVP_DecryptInit_ex(ctx.get(), nullptr, nullptr, key.data(), blob.data()),
        "DecryptInit key");
  int len = 0;
  if (!aad.empty()) {
    Check(EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(),
                            static_cast<int>(aad.size())),
          "aad");
  }
  if (ct_len > 0) {
    Check(EVP_DecryptUpdate(ctx.get(), plaintext.data(), &len,
                            blob.data() + kGcmNonceBytes,
                            static_cast<int>(ct_len)),
          "DecryptUpdate");
  }
  Bytes tag(blob.end() - kGcmTagBytes, blob.end());
  Check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kGcmTagBytes,
                            tag.data()),
        "SET_TAG");
  uint8_t scratch[16];
  if (EVP_DecryptFinal_ex(ctx.get(), scratch, &len) != 1) {
    throw Error(ErrorCode::kDataIntegrity, "AES-GCM authentication failed");
  }
  return plaintext;
}

std::string Base64Encode(std::span<const uint8_t> data) {
  std::string out(4 * ((data.size() + 2) / 3), '\0');
  int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                          data.data(), static_cast<int>(data.size()));
  out.resize(static_cast<size_t>(n));
  return out;
}

Bytes Base64Decode(std::string_view text) {
  if (text.size() % 4 != 0) {
    throw Error(ErrorCode::kProtocol, "base64 length not a multiple of 4");
  }
  for (char c : text) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
              (c >= '0' && c <= '9') || c == '+' || c == '/' || c == '=';
    if (!ok) throw Error(ErrorCode::kProtocol, "invalid base64 character");
  }
  size_t padding = 0;
  if (!text.empty() && text.back() == '=') ++padding;
  if (text.size() > 1 && text[text.size() - 2] == '=') ++padding;
  Bytes out(3 * text.size() / 4);
  int n = EVP_DecodeBlock(out.data(),
                          reinterpret_cast<const unsigned char*>(text.data()),
                          static_cast<int>(text.size()));
  if (n < 0) throw Error(ErrorCode::kProtocol, "malformed base64");
  out.resize(static_cast<size_t>(n) - padding);
  return out;
}

}  // namespace shrq
