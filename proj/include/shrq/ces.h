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

// Component encryption: slot-wise encryption of integer vectors such that a
// product of pairings reveals e(s,s)^{alpha (dot + beta)} and nothing else.
//
//   tuple slot i:  s^{m_i} h^{r_m A_i}
//   query slot i:  s^{q_i alpha} h^{r_q B_i}   (const slot: s^{(q_i+beta) alpha})
//
// s = g^{q1} has order q2 and h = u^{q2} has order q1, so e(s,h) = 1 and
// the blinding terms collapse to e(h,h)^{r_m r_q A.B} = 1 because A.B is a
// multiple of q1 mod N.

#ifndef SHRQ_CES_H_
#define SHRQ_CES_H_

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "shrq/bigint.h"
#include "shrq/crypto.h"
#include "shrq/geometry.h"
#include "shrq/pairing.h"

namespace shrq {

struct CesConfig {
  int lambda = 64;
  size_t d = 2;
  Layout layout = Layout::kShrq;
  uint64_t v = 400;
  uint64_t x_max = 100;
  Backend backend = Backend::kTransparent;
};

// What the server holds: no factorization, generators or vectors.
struct PublicParams {
  GroupDescriptor descriptor;
  std::string hash_id{kHashId};
  std::shared_ptr<const BilinearGroup> group;
};

PublicParams MakePublicParams(const GroupDescriptor& descriptor);

struct SecretKey {
  GroupParams params;
  GElement g, u;
  GElement s;  // g^{q1}
  GElement h;  // u^{q2}
  std::vector<mpz_class> a, b;
  mpz_class alpha;
  mpz_class beta;
  AesKey aes_key{};
  Layout layout = Layout::kShrq;
  size_t d = 0;
  uint64_t v = 0;
  uint64_t x_max = 0;
  std::shared_ptr<const BilinearGroup> group;

  size_t length() const { return ComponentLength(layout, d); }
  const mpz_class& n() const { return params.n(); }
};

// Throws Error(kConfig) unless q2 > 2 (v + d x_max^2) and v + 1 <= q2.
void CheckMargin(const mpz_class& q2, size_t d, uint64_t v, uint64_t x_max);

// Fresh group of `config.lambda` bits per prime.
std::pair<SecretKey, PublicParams> KeyGen(const CesConfig& config, Random& rng);

// Key over existing group parameters (toy groups, benchmarks).
std::pair<SecretKey, PublicParams> KeyGenWithParams(const GroupParams& params,
                                                    const CesConfig& config,
                                                    Random& rng);

// B_L = (multiplier q1 - sum_{i<L} A_i B_i) A_L^{-1} mod N, with b_prefix
// holding B_1..B_{L-1}. Throws Error(kConfig) if A_L is not invertible.
mpz_class CompleteBlindingVector(const std::vector<mpz_class>& a,
                                 const std::vector<mpz_class>& b_prefix,
                                 const mpz_class& multiplier,
                                 const mpz_class& q1, const mpz_class& n);

// Throws Error(kKeyFile) naming the first broken relation among
// s = g^{q1}, h = u^{q2}, A.B = 0 (mod q1), alpha != 0 (mod q2) and the
// margin.
void VerifySecretKey(const SecretKey& sk);

struct EncryptedTuple {
  uint64_t id = 0;
  std::vector<GElement> slots;
};

struct EncryptedQuery {
  std::vector<GElement> slots;
  int level = 0;
};

EncryptedTuple EncryptTuple(const SecretKey& sk, uint64_t id,
                            const Component& c, Random& rng);
// Fixed blinding scalar; r_m = 0 removes the blinding.
EncryptedTuple EncryptTupleWith(const SecretKey& sk, uint64_t id,
                                const Component& c, const mpz_class& r_m);

EncryptedQuery EncryptQuery(const SecretKey& sk, const Component& c, int level,
                            Random& rng);
EncryptedQuery EncryptQueryWith(const SecretKey& sk, const Component& c,
                                int level, const mpz_class& r_q);

// prod_i e(m'_i, q'_i). Throws Error(kProtocol) on length mismatch.
GTElement Compute(const BilinearGroup& group, const EncryptedTuple& tuple,
                  const EncryptedQuery& query);

// e(s,s)^{alpha (dot + beta)}, the value Compute must produce.
GTElement ExpectedCompute(const SecretKey& sk, const mpz_class& dot);

class LookupTable {
 public:
  LookupTable() = default;
  // Sorts; throws Error(kProtocol) on duplicates.
  LookupTable(std::vector<Digest> digests, uint64_t v);

  bool Contains(const Digest& digest) const;
  const std::vector<Digest>& digests() const { return digests_; }
  uint64_t v() const { return v_; }
  size_t size() const { return digests_.size(); }

  // 8-byte big-endian count followed by the sorted raw digests.
  Bytes Serialize() const;
  static LookupTable Parse(std::span<const uint8_t> bytes, uint64_t v);

 private:
  std::vector<Digest> digests_;
  uint64_t v_ = 0;
};

Digest GtDigest(const BilinearGroup& group, const GTElement& t);

// Digests of e(s,s)^{(i + beta) alpha}, i in [0, v]. Throws Error(kSetup)
// if two entries collide.
LookupTable CreateLookupTable(const SecretKey& sk, uint64_t v);

bool LookupContains(const BilinearGroup& group, const LookupTable& table,
                    const GTElement& t);

// Boneh-Goh-Nissim over the same group: C = g^m h^r. Decryption raises to
// q1 and searches m in [0, bound].
struct BgnKey {
  std::shared_ptr<const BilinearGroup> group;
  GroupParams params;
  GElement g;
  GElement h;  // order q1
};

BgnKey BgnKeyFromSecret(const SecretKey& sk);
GElement BgnEncrypt(const BgnKey& key, const mpz_class& m, Random& rng);
GElement BgnAdd(const BgnKey& key, const GElement& c1, const GElement& c2);
GTElement BgnMul(const BgnKey& key, const GElement& c1, const GElement& c2);
// Throw Error(kNotFound) if the plaintext is outside [0, bound].
uint64_t BgnDecrypt(const BgnKey& key, const GElement& c, uint64_t bound);
uint64_t BgnDecryptGt(const BgnKey& key, const GTElement& c, uint64_t bound);

}  // namespace shrq

#endif  // SHRQ_CES_H_
