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

// Symmetric bilinear groups of composite order N = q1 * q2.
//
// Two interchangeable backends implement the same contract:
//
//  * kTransparent represents every element by its discrete log relative to a
//    fixed generator, so group operations are arithmetic mod N and the
//    pairing is multiplication of exponents. It is structurally exact and
//    completely insecure; it exists so that every higher layer can be checked
//    against exact exponent traces.
//
//  * kCurveA1 is the supersingular curve y^2 = x^3 + x over F_p with
//    p = l*N - 1, p = 3 (mod 4). G is the order-N subgroup of E(F_p), GT is
//    the order-N subgroup of F_{p^2}^*, and the pairing is the reduced Tate
//    pairing composed with the distortion map (x, y) -> (-x, i*y).
//
// All objects are immutable after construction and safe to share across
// threads.

#ifndef SHRQ_PAIRING_H_
#define SHRQ_PAIRING_H_

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>

#include "shrq/bigint.h"

namespace shrq {

enum class Backend { kTransparent, kCurveA1 };

std::string_view BackendName(Backend backend);
// Accepts "transparent", "curve" and "curveA1". Throws Error(kConfig).
Backend BackendFromName(std::string_view name);

// What any party (including the untrusted server) needs to compute in the
// group. Contains no factorization of N.
struct GroupDescriptor {
  Backend backend = Backend::kTransparent;
  mpz_class order;        // N
  mpz_class field_prime;  // p, curve backend only
  mpz_class cofactor;     // l with p + 1 = l * N, curve backend only

  bool operator==(const GroupDescriptor& other) const {
    return backend == other.backend && order == other.order &&
           field_prime == other.field_prime && cofactor == other.cofactor;
  }
};

struct GroupParams {
  int lambda = 0;  // bits per prime
  mpz_class q1;
  mpz_class q2;
  GroupDescriptor group;

  const mpz_class& n() const { return group.order; }
};

struct GroupGenOptions {
  uint64_t max_cofactor = 1'000'000;
  int max_attempts = 64;  // fresh prime pairs tried before giving up
};

// Samples two distinct `lambda`-bit primes and, for the curve backend, scans
// cofactors l = 1, 2, ... until p = l*N - 1 is a prime with p = 3 (mod 4).
// Requires lambda >= 8. Throws Error(kConfig) for bad arguments and
// Error(kSetup) when the parameter search is exhausted.
GroupParams GroupGen(int lambda, Backend backend, Random& rng,
                     const GroupGenOptions& options = {});

// Builds parameters around fixed primes (toy groups in tests, key-file
// reloads). Throws Error(kSetup) if no cofactor is found under the cap.
GroupParams GroupFromPrimes(const mpz_class& q1, const mpz_class& q2,
                            Backend backend,
                            const GroupGenOptions& options = {});

// Throws Error(kConfig) naming the first violated invariant.
void ValidateGroupParams(const GroupParams& params);

// Transparent: `x` is the exponent, y == 0. Curve: affine point or infinity.
struct GElement {
  mpz_class x;
  mpz_class y;
  bool infinity = false;

  bool operator==(const GElement& other) const {
    return infinity == other.infinity && x == other.x && y == other.y;
  }
};

// Transparent: `re` is the exponent, im == 0. Curve: re + im * i in F_{p^2}.
struct GTElement {
  mpz_class re;
  mpz_class im;

  bool operator==(const GTElement& other) const {
    return re == other.re && im == other.im;
  }
};

// Elements of the transparent backend with a given discrete log.
GElement TransparentG(const mpz_class& exponent);
GTElement TransparentGt(const mpz_class& exponent);

class BilinearGroup {
 public:
  virtual ~BilinearGroup() = default;

  const GroupDescriptor& descriptor() const { return descriptor_; }
  const mpz_class& order() const { return descriptor_.order; }
  Backend backend() const { return descriptor_.backend; }

  virtual GElement Identity() const = 0;
  virtual GTElement GtIdentity() const = 0;

  virtual GElement Mul(const GElement& a, const GElement& b) const = 0;
  // k may be negative; it is reduced mod N first.
  virtual GElement Pow(const GElement& x, const mpz_class& k) const = 0;
  virtual GTElement Mul(const GTElement& a, const GTElement& b) const = 0;
  virtual GTElement Pow(const GTElement& x, const mpz_class& k) const = 0;

  virtual GTElement Pair(const GElement& x, const GElement& y) const = 0;
  // prod_i Pair(xs[i], ys[i]). Spans must have equal length.
  virtual GTElement PairProduct(std::span<const GElement> xs,
                                std::span<const GElement> ys) const;

  // Uniform element of G (may be of deficient order).
  virtual GElement RandomElement(Random& rng) const = 0;

  bool IsIdentity(const GElement& x) const { return x == Identity(); }
  bool IsIdentity(const GTElement& x) const { return x == GtIdentity(); }

  // Canonical fixed-length encodings: injective, deterministic, and the
  // only form in which elements are hashed or put on the wire.
  virtual size_t EncodedSize() const = 0;
  virtual size_t EncodedGtSize() const = 0;
  virtual void Encode(const GElement& x, Bytes& out) const = 0;
  virtual void Encode(const GTElement& x, Bytes& out) const = 0;
  Bytes Encode(const GElement& x) const;
  Bytes Encode(const GTElement& x) const;
  // Reject anything that is not the encoding of a group element with
  // Error(kProtocol).
  virtual GElement DecodeG(std::span<const uint8_t> bytes) const = 0;
  virtual GTElement DecodeGt(std::span<const uint8_t> bytes) const = 0;

 protected:
  explicit BilinearGroup(GroupDescriptor descriptor)
      : descriptor_(std::move(descriptor)) {}

 private:
  GroupDescriptor descriptor_;
};

std::shared_ptr<const BilinearGroup> MakeGroup(const GroupDescriptor& descriptor);

// True iff x^{q1} and x^{q2} are both non-identity, i.e. x has order N.
bool HasFullOrder(const BilinearGroup& group, const GroupParams& params,
                  const GElement& x);

// Rejection-samples RandomElement until HasFullOrder holds.
GElement RandomGenerator(const BilinearGroup& group, const GroupParams& params,
                         Random& rng);

// Encoding tags (first byte of every canonical encoding).
inline constexpr uint8_t kTagTransparentG = 0x11;
inline constexpr uint8_t kTagTransparentGt = 0x12;
inline constexpr uint8_t kTagCurveG = 0x21;
inline constexpr uint8_t kTagCurveGt = 0x22;

}  // namespace shrq

#endif  // SHRQ_PAIRING_H_
