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

// Exponent-arithmetic backend. INSECURE BY CONSTRUCTION: every element is
// its own discrete log. Only reachable through an explicit backend choice.

#include "pairing_internal.h"
#include "shrq/errors.h"

namespace shrq::internal {
namespace {

class TransparentGroup final : public BilinearGroup {
 public:
  explicit TransparentGroup(const GroupDescriptor& descriptor)
      : BilinearGroup(descriptor), width_(ByteWidth(descriptor.order)) {}

  GElement Identity() const override { return TransparentG(0); }
  GTElement GtIdentity() const override { return TransparentGt(0); }

  GElement Mul(const GElement& a, const GElement& b) const override {
    return TransparentG(Mod(a.x + b.x, order()));
  }
  GElement Pow(const GElement& x, const mpz_class& k) const override {
    return TransparentG(Mod(x.x * k, order()));
  }
  GTElement Mul(const GTElement& a, const GTElement& b) const override {
    return TransparentGt(Mod(a.re + b.re, order()));
  }
  GTElement Pow(const GTElement& x, const mpz_class& k) const override {
    return TransparentGt(Mod(x.re * k, order()));
  }
  GTElement Pair(const GElement& x, const GElement& y) const override {
    return TransparentGt(Mod(x.x * y.x, order()));
  }

  GTElement PairProduct(std::span<const GElement> xs,
                        std::span<const GElement> ys) const override {
    if (xs.size() != ys.size()) {
      throw Error(ErrorCode::kProtocol, "pairing product length mismatch");
    }
    mpz_class acc = 0;
    for (size_t i = 0; i < xs.size(); ++i) acc += xs[i].x * ys[i].x;
    return TransparentGt(Mod(acc, order()));
  }

  GElement RandomElement(Random& rng) const override {
    return TransparentG(rng.Below(order()));
  }

  size_t EncodedSize() const override { return 1 + width_; }
  size_t EncodedGtSize() const override { return 1 + width_; }

  void Encode(const GElement& x, Bytes& out) const override {
    out.push_back(kTagTransparentG);
    AppendFixedWidth(x.x, width_, out);
  }
  void Encode(const GTElement& x, Bytes& out) const override {
    out.push_back(kTagTransparentGt);
    AppendFixedWidth(x.re, width_, out);
  }

  GElement DecodeG(std::span<const uint8_t> bytes) const override {
    return TransparentG(DecodeExponent(bytes, kTagTransparentG));
  }
  GTElement DecodeGt(std::span<const uint8_t> bytes) const override {
    return TransparentGt(DecodeExponent(bytes, kTagTransparentGt));
  }

 private:
  mpz_class DecodeExponent(std::span<const uint8_t> bytes, uint8_t tag) const {
    if (bytes.size() != 1 + width_ || bytes[0] != tag) {
      throw Error(ErrorCode::kProtocol, "bad transparent element encoding");
    }
    mpz_class e = ReadFixedWidth(bytes.subspan(1));
    if (e >= order()) {
      throw Error(ErrorCode::kProtocol, "transparent exponent out of range");
    }
    return e;
  }

  size_t width_;
};

}  // namespace

std::shared_ptr<const BilinearGroup> MakeTransparentGroup(
    const GroupDescriptor& descriptor) {
  return std::make_shared<TransparentGroup>(descriptor);
}

}  // namespace shrq::internal
