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

#include "shrq/pairing.h"

#include <string>

#include "pairing_internal.h"
#include "shrq/errors.h"

namespace shrq {
namespace {

mpz_class RandomPrime(int bits, Random& rng) {
  for (;;) {
    mpz_class candidate = rng.Bits(bits);
    if (IsProbablePrime(candidate)) return candidate;
  }
}

// Smallest l in [1, cap] with l*N - 1 prime and = 3 (mod 4); 0 if none.
mpz_class FindCofactor(const mpz_class& n, uint64_t cap) {
  for (uint64_t l = 1; l <= cap; ++l) {
    mpz_class p = n * l - 1;
    if (mpz_fdiv_ui(p.get_mpz_t(), 4) != 3) continue;
    if (IsProbablePrime(p)) return mpz_class(std::to_string(l));
  }
  return 0;
}

GroupParams Assemble(const mpz_class& q1, const mpz_class& q2, int lambda,
                     Backend backend, const mpz_class& cofactor) {
  GroupParams params;
  params.lambda = lambda;
  params.q1 = q1;
  params.q2 = q2;
  params.group.backend = backend;
  params.group.order = q1 * q2;
  if (backend == Backend::kCurveA1) {
    params.group.cofactor = cofactor;
    params.group.field_prime = cofactor * params.group.order - 1;
  }
  return params;
}

}  // namespace

std::string_view BackendName(Backend backend) {
  return backend == Backend::kTransparent ? "transparent" : "curve";
}

Backend BackendFromName(std::string_view name) {
  if (name == "transparent") return Backend::kTransparent;
  if (name == "curve" || name == "curveA1") return Backend::kCurveA1;
  throw Error(ErrorCode::kConfig, "unknown backend '" + std::string(name) + "'");
}

GroupParams GroupGen(int lambda, Backend backend, Random& rng,
                     const GroupGenOptions& options) {
  if (lambda < 8) {
    throw Error(ErrorCode::kConfig, "lambda must be at least 8 bits");
  }
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    mpz_class q1 = RandomPrime(lambda, rng);
    mpz_class q2 = RandomPrime(lambda, rng);
    if (q1 == q2) continue;
    mpz_class cofactor;
    if (backend == Backend::kCurveA1) {
      cofactor = FindCofactor(q1 * q2, options.max_cofactor);
      if (cofactor == 0) continue;
    }
    return Assemble(q1, q2, lambda, backend, cofactor);
  }
  throw Error(ErrorCode::kSetup, "group parameter search exhausted after " +
                                     std::to_string(options.max_attempts) +
                                     " attempts");
}

GroupParams GroupFromPrimes(const mpz_class& q1, const mpz_class& q2,
                            Backend backend, const GroupGenOptions& options) {
  mpz_class cofactor;
  if (backend == Backend::kCurveA1) {
    cofactor = FindCofactor(q1 * q2, options.max_cofactor);
    if (cofactor == 0) {
      throw Error(ErrorCode::kSetup, "no curve cofactor below " +
                                         std::to_string(options.max_cofactor) +
                                         " for N = " + ToDecimal(q1 * q2));
    }
  }
  int bits = static_cast<int>(mpz_sizeinbase(q1.get_mpz_t(), 2));
  GroupParams params = Assemble(q1, q2, bits, backend, cofactor);
  ValidateGroupParams(params);
  return params;
}

void ValidateGroupParams(const GroupParams& params) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kConfig, "invalid group parameters: " + what);
  };
  if (params.q1 == params.q2) fail("q1 == q2");
  if (!IsProbablePrime(params.q1)) fail("q1 is not prime");
  if (!IsProbablePrime(params.q2)) fail("q2 is not prime");
  if (params.n() != params.q1 * params.q2) fail("N != q1 * q2");
  if (params.group.backend == Backend::kCurveA1) {
    const mpz_class& p = params.group.field_prime;
    if (!IsProbablePrime(p)) fail("p is not prime");
    if (mpz_fdiv_ui(p.get_mpz_t(), 4) != 3) fail("p != 3 mod 4");
    if (p + 1 != params.group.cofactor * params.n()) fail("p + 1 != l * N");
  }
}

GElement TransparentG(const mpz_class& exponent) {
  return GElement{exponent, 0, false};
}

GTElement TransparentGt(const mpz_class& exponent) {
  return GTElement{exponent, 0};
}

GTElement BilinearGroup::PairProduct(std::span<const GElement> xs,
                                     std::span<const GElement> ys) const {
  if (xs.size() != ys.size()) {
    throw Error(ErrorCode::kProtocol, "pairing product length mismatch");
  }
  GTElement acc = GtIdentity();
  for (size_t i = 0; i < xs.size(); ++i) acc = Mul(acc, Pair(xs[i], ys[i]));
  return acc;
}

Bytes BilinearGroup::Encode(const GElement& x) const {
  Bytes out;
  out.reserve(EncodedSize());
  Encode(x, out);
  return out;
}

Bytes BilinearGroup::Encode(const GTElement& x) const {
  Bytes out;
  out.reserve(EncodedGtSize());
  Encode(x, out);
  return out;
}

std::shared_ptr<const BilinearGroup> MakeGroup(const GroupDescriptor& descriptor) {
  if (descriptor.order <= 1) {
    throw Error(ErrorCode::kConfig, "group order must exceed 1");
  }
  switch (descriptor.backend) {
    case Backend::kTransparent:
      return internal::MakeTransparentGroup(descriptor);
    case Backend::kCurveA1:
      return internal::MakeCurveA1Group(descriptor);
  }
  throw Error(ErrorCode::kConfig, "unknown backend");
}

bool HasFullOrder(const BilinearGroup& group, const GroupParams& params,
                  const GElement& x) {
  return !group.IsIdentity(group.Pow(x, params.q1)) &&
         !group.IsIdentity(group.Pow(x, params.q2));
}

GElement RandomGenerator(const BilinearGroup& group, const GroupParams& params,
                         Random& rng) {
  for (;;) {
    GElement x = group.RandomElement(rng);
    if (HasFullOrder(group, params, x)) return x;
  }
}

}  // namespace shrq
