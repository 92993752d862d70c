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

#include "shrq/ces.h"

#include <algorithm>
#include <string>

#include "shrq/errors.h"

namespace shrq {
namespace {

mpz_class Big(uint64_t x) { return mpz_class(std::to_string(x)); }

mpz_class Inverse(const mpz_class& x, const mpz_class& n) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t()) == 0) return 0;
  return r;
}

void RequireLength(const SecretKey& sk, const Component& c) {
  if (c.entries.size() != sk.length()) {
    throw Error(ErrorCode::kProtocol,
                "component has " + std::to_string(c.entries.size()) +
                    " entries, key expects " + std::to_string(sk.length()));
  }
}

}  // namespace

PublicParams MakePublicParams(const GroupDescriptor& descriptor) {
  PublicParams pp;
  pp.descriptor = descriptor;
  pp.group = MakeGroup(descriptor);
  return pp;
}

void CheckMargin(const mpz_class& q2, size_t d, uint64_t v, uint64_t x_max) {
  mpz_class bound = 2 * (Big(v) + Big(d) * Big(x_max) * Big(x_max));
  if (q2 <= bound) {
    throw Error(ErrorCode::kConfig,
                "correctness margin violated: need q2 > 2(v + d x_max^2) = " +
                    ToDecimal(bound) + ", q2 = " + ToDecimal(q2) +
                    "; raise lambda or lower v, d, x_max");
  }
  if (Big(v) + 1 > q2) {
    throw Error(ErrorCode::kConfig, "lookup bound violated: need v + 1 <= q2");
  }
}

std::pair<SecretKey, PublicParams> KeyGen(const CesConfig& config,
                                          Random& rng) {
  GroupParams params = GroupGen(config.lambda, config.backend, rng);
  return KeyGenWithParams(params, config, rng);
}

std::pair<SecretKey, PublicParams> KeyGenWithParams(const GroupParams& params,
                                                    const CesConfig& config,
                                                    Random& rng) {
  if (config.d == 0) throw Error(ErrorCode::kConfig, "d must be positive");
  if (params.group.backend != config.backend) {
    throw Error(ErrorCode::kConfig, "backend does not match group parameters");
  }
  CheckMargin(params.q2, config.d, config.v, config.x_max);

  SecretKey sk;
  sk.params = params;
  sk.layout = config.layout;
  sk.d = config.d;
  sk.v = config.v;
  sk.x_max = config.x_max;
  sk.group = MakeGroup(params.group);
  const BilinearGroup& grp = *sk.group;
  const mpz_class& n = params.n();

  sk.g = RandomGenerator(grp, params, rng);
  sk.u = RandomGenerator(grp, params, rng);
  sk.s = grp.Pow(sk.g, params.q1);
  sk.h = grp.Pow(sk.u, params.q2);

  const size_t len = sk.length();
  sk.a.resize(len);
  std::vector<mpz_class> b_prefix(len - 1);
  for (size_t i = 0; i + 1 < len; ++i) {
    sk.a[i] = rng.Below(n);
    b_prefix[i] = rng.Below(n);
  }
  do {
    sk.a[len - 1] = rng.Below(n);
  } while (Inverse(sk.a[len - 1], n) == 0);
  mpz_class multiplier = rng.Below(n);
  sk.b = b_prefix;
  sk.b.push_back(
      CompleteBlindingVector(sk.a, b_prefix, multiplier, params.q1, n));

  do {
    sk.alpha = rng.Below(n);
  } while (Mod(sk.alpha, params.q2) == 0);
  sk.beta = rng.Below(n);

  Bytes key = rng.RandomBytes(sk.aes_key.size());
  std::copy(key.begin(), key.end(), sk.aes_key.begin());

  return {sk, MakePublicParams(params.group)};
}

mpz_class CompleteBlindingVector(const std::vector<mpz_class>& a,
                                 const std::vector<mpz_class>& b_prefix,
                                 const mpz_class& multiplier,
                                 const mpz_class& q1, const mpz_class& n) {
  if (a.empty() || b_prefix.size() + 1 != a.size()) {
    throw Error(ErrorCode::kConfig, "blinding vector length mismatch");
  }
  mpz_class inv = Inverse(Mod(a.back(), n), n);
  if (inv == 0) {
    throw Error(ErrorCode::kConfig, "last entry of A is not invertible mod N");
  }
  mpz_class acc = multiplier * q1;
  for (size_t i = 0; i < b_prefix.size(); ++i) acc -= a[i] * b_prefix[i];
  return Mod(acc * inv, n);
}

void VerifySecretKey(const SecretKey& sk) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kKeyFile, "key consistency check failed: " + what);
  };
  try {
    ValidateGroupParams(sk.params);
  } catch (const Error& e) {
    fail(e.what());
  }
  if (!sk.group || !(sk.group->descriptor() == sk.params.group)) {
    fail("group descriptor mismatch");
  }
  const BilinearGroup& grp = *sk.group;
  if (!HasFullOrder(grp, sk.params, sk.g)) fail("g is not a generator");
  if (!HasFullOrder(grp, sk.params, sk.u)) fail("u is not a generator");
  if (!(grp.Pow(sk.g, sk.params.q1) == sk.s)) fail("s != g^q1");
  if (!(grp.Pow(sk.u, sk.params.q2) == sk.h)) fail("h != u^q2");
  if (sk.a.size() != sk.length() || sk.b.size() != sk.length()) {
    fail("A or B has the wrong length");
  }
  mpz_class dot = 0;
  for (size_t i = 0; i < sk.a.size(); ++i) dot += sk.a[i] * sk.b[i];
  if (Mod(Mod(dot, sk.n()), sk.params.q1) != 0) fail("A.B != 0 mod q1");
  if (Mod(sk.alpha, sk.params.q2) == 0) fail("alpha = 0 mod q2");
  try {
    CheckMargin(sk.params.q2, sk.d, sk.v, sk.x_max);
  } catch (const Error& e) {
    fail(e.what());
  }
}

EncryptedTuple EncryptTuple(const SecretKey& sk, uint64_t id,
                            const Component& c, Random& rng) {
  return EncryptTupleWith(sk, id, c, rng.Below(sk.n()));
}

EncryptedTuple EncryptTupleWith(const SecretKey& sk, uint64_t id,
                                const Component& c, const mpz_class& r_m) {
  RequireLength(sk, c);
  const BilinearGroup& grp = *sk.group;
  EncryptedTuple t;
  t.id = id;
  t.slots.reserve(c.entries.size());
  for (size_t i = 0; i < c.entries.size(); ++i) {
    t.slots.push_back(grp.Mul(grp.Pow(sk.s, c.entries[i]),
                              grp.Pow(sk.h, r_m * sk.a[i])));
  }
  return t;
}

EncryptedQuery EncryptQuery(const SecretKey& sk, const Component& c, int level,
                            Random& rng) {
  return EncryptQueryWith(sk, c, level, rng.Below(sk.n()));
}

EncryptedQuery EncryptQueryWith(const SecretKey& sk, const Component& c,
                                int level, const mpz_class& r_q) {
  RequireLength(sk, c);
  const BilinearGroup& grp = *sk.group;
  EncryptedQuery q;
  q.level = level;
  q.slots.reserve(c.entries.size());
  for (size_t i = 0; i < c.entries.size(); ++i) {
    mpz_class coeff = c.entries[i];
    if (i == c.const_slot) coeff += sk.beta;
    q.slots.push_back(grp.Mul(grp.Pow(sk.s, coeff * sk.alpha),
                              grp.Pow(sk.h, r_q * sk.b[i])));
  }
  return q;
}

GTElement Compute(const BilinearGroup& group, const EncryptedTuple& tuple,
                  const EncryptedQuery& query) {
  if (tuple.slots.size() != query.slots.size()) {
    throw Error(ErrorCode::kProtocol,
                "tuple has " + std::to_string(tuple.slots.size()) +
                    " slots, query has " + std::to_string(query.slots.size()));
  }
  return group.PairProduct(tuple.slots, query.slots);
}

GTElement ExpectedCompute(const SecretKey& sk, const mpz_class& dot) {
  const BilinearGroup& grp = *sk.group;
  return grp.Pow(grp.Pair(sk.s, sk.s), sk.alpha * (dot + sk.beta));
}

LookupTable::LookupTable(std::vector<Digest> digests, uint64_t v)
    : digests_(std::move(digests)), v_(v) {
  std::sort(digests_.begin(), digests_.end());
  if (std::adjacent_find(digests_.begin(), digests_.end()) != digests_.end()) {
    throw Error(ErrorCode::kProtocol, "duplicate digest in lookup table");
  }
}

bool LookupTable::Contains(const Digest& digest) const {
  return std::binary_search(digests_.begin(), digests_.end(), digest);
}

Bytes LookupTable::Serialize() const {
  Bytes out;
  out.reserve(8 + digests_.size() * 32);
  uint64_t count = digests_.size();
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<uint8_t>(count >> shift));
  }
  for (const Digest& d : digests_) out.insert(out.end(), d.begin(), d.end());
  return out;
}

LookupTable LookupTable::Parse(std::span<const uint8_t> bytes, uint64_t v) {
  if (bytes.size() < 8) throw Error(ErrorCode::kProtocol, "lookup table truncated");
  uint64_t count = 0;
  for (int i = 0; i < 8; ++i) count = (count << 8) | bytes[i];
  if ((bytes.size() - 8) % 32 != 0 || (bytes.size() - 8) / 32 != count) {
    throw Error(ErrorCode::kProtocol, "lookup table length does not match count");
  }
  std::vector<Digest> digests(count);
  for (uint64_t i = 0; i < count; ++i) {
    std::copy_n(bytes.begin() + 8 + i * 32, 32, digests[i].begin());
  }
  return LookupTable(std::move(digests), v);
}

Digest GtDigest(const BilinearGroup& group, const GTElement& t) {
  return Sha256(group.Encode(t));
}

LookupTable CreateLookupTable(const SecretKey& sk, uint64_t v) {
  const BilinearGroup& grp = *sk.group;
  GTElement base = grp.Pair(sk.s, sk.s);
  GTElement step = grp.Pow(base, sk.alpha);
  GTElement cur = grp.Pow(base, sk.alpha * sk.beta);
  std::vector<Digest> digests;
  digests.reserve(v + 1);
  for (uint64_t i = 0; i <= v; ++i) {
    digests.push_back(GtDigest(grp, cur));
    cur = grp.Mul(cur, step);
  }
  try {
    return LookupTable(std::move(digests), v);
  } catch (const Error&) {
    throw Error(ErrorCode::kSetup,
                "lookup table collision; target-group encoding is broken or "
                "v >= q2");
  }
}

bool LookupContains(const BilinearGroup& group, const LookupTable& table,
                    const GTElement& t) {
  return table.Contains(GtDigest(group, t));
}

BgnKey BgnKeyFromSecret(const SecretKey& sk) {
  return BgnKey{sk.group, sk.params, sk.g, sk.h};
}

GElement BgnEncrypt(const BgnKey& key, const mpz_class& m, Random& rng) {
  const BilinearGroup& grp = *key.group;
  return grp.Mul(grp.Pow(key.g, m), grp.Pow(key.h, rng.Below(key.params.n())));
}

GElement BgnAdd(const BgnKey& key, const GElement& c1, const GElement& c2) {
  return key.group->Mul(c1, c2);
}

GTElement BgnMul(const BgnKey& key, const GElement& c1, const GElement& c2) {
  return key.group->Pair(c1, c2);
}

uint64_t BgnDecrypt(const BgnKey& key, const GElement& c, uint64_t bound) {
  const BilinearGroup& grp = *key.group;
  GElement target = grp.Pow(c, key.params.q1);
  GElement base = grp.Pow(key.g, key.params.q1);
  GElement cur = grp.Identity();
  for (uint64_t i = 0; i <= bound; ++i) {
    if (cur == target) return i;
    cur = grp.Mul(cur, base);
  }
  throw Error(ErrorCode::kNotFound, "BGN plaintext outside [0, bound]");
}

uint64_t BgnDecryptGt(const BgnKey& key, const GTElement& c, uint64_t bound) {
  const BilinearGroup& grp = *key.group;
  GTElement target = grp.Pow(c, key.params.q1);
  GTElement base = grp.Pow(grp.Pair(key.g, key.g), key.params.q1);
  GTElement cur = grp.GtIdentity();
  for (uint64_t i = 0; i <= bound; ++i) {
    if (cur == target) return i;
    cur = grp.Mul(cur, base);
  }
  throw Error(ErrorCode::kNotFound, "BGN plaintext outside [0, bound]");
}

}  // namespace shrq
