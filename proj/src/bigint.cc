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

#include "shrq/bigint.h"

#include <openssl/rand.h>

#include <stdexcept>

namespace shrq {

size_t ByteWidth(const mpz_class& modulus) {
  mpz_class max = modulus - 1;
  if (max <= 0) return 1;
  return (mpz_sizeinbase(max.get_mpz_t(), 2) + 7) / 8;
}

void AppendFixedWidth(const mpz_class& x, size_t width, Bytes& out) {
  if (x < 0) throw std::invalid_argument("negative value in fixed-width codec");
  size_t count = 0;
  size_t needed = x == 0 ? 0 : (mpz_sizeinbase(x.get_mpz_t(), 2) + 7) / 8;
  if (needed > width) throw std::invalid_argument("value exceeds codec width");
  size_t start = out.size();
  out.resize(start + width, 0);
  if (needed > 0) {
    mpz_export(out.data() + start + (width - needed), &count, 1, 1, 1, 0,
               x.get_mpz_t());
  }
}

mpz_class ReadFixedWidth(std::span<const uint8_t> bytes) {
  mpz_class x;
  if (!bytes.empty()) {
    mpz_import(x.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  }
  return x;
}

std::string ToDecimal(const mpz_class& x) { return x.get_str(10); }

mpz_class FromDecimal(const std::string& s) {
  size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("empty decimal: '" + s + "'");
  for (size_t j = i; j < s.size(); ++j) {
    if (s[j] < '0' || s[j] > '9') {
      throw std::invalid_argument("not a decimal integer: '" + s + "'");
    }
  }
  return mpz_class(s[0] == '+' ? s.substr(1) : s, 10);
}

mpz_class Mod(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool IsProbablePrime(const mpz_class& x) {
  return mpz_probab_prime_p(x.get_mpz_t(), 40) > 0;
}

Random::Random() = default;

Random::Random(uint64_t seed) {
  seeded_.emplace(gmp_randinit_mt);
  seeded_->seed(mpz_class(std::to_string(seed)));
}

Bytes Random::Draw(size_t n) {
  Bytes out(n);
  if (seeded_) {
    for (auto& b : out) b = static_cast<uint8_t>(mpz_class(seeded_->get_z_bits(8)).get_ui());
  } else if (n > 0 && RAND_bytes(out.data(), static_cast<int>(n)) != 1) {
    throw std::runtime_error("OpenSSL RAND_bytes failed");
  }
  return out;
}

mpz_class Random::Below(const mpz_class& bound) {
  if (bound <= 0) throw std::invalid_argument("Random::Below needs bound > 0");
  if (seeded_) return seeded_->get_z_range(bound);
  // Rejection sampling on the minimal bit length.
  size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  size_t nbytes = (bits + 7) / 8;
  for (;;) {
    Bytes raw = Draw(nbytes);
    size_t excess = nbytes * 8 - bits;
    if (excess > 0) raw[0] &= static_cast<uint8_t>(0xff >> excess);
    mpz_class x = ReadFixedWidth(raw);
    if (x < bound) return x;
  }
}

int64_t Random::Between(int64_t lo, int64_t hi) {
  if (hi < lo) throw std::invalid_argument("Random::Between: empty range");
  mpz_class lo_z(std::to_string(lo));
  mpz_class span = mpz_class(std::to_string(hi)) - lo_z + 1;
  mpz_class v = Below(span) + lo_z;
  return std::stoll(v.get_str());
}

mpz_class Random::Bits(int bits) {
  if (bits < 2) throw std::invalid_argument("Random::Bits needs bits >= 2");
  mpz_class one = 1;
  mpz_class x = Below(one << bits);
  mpz_setbit(x.get_mpz_t(), bits - 1);
  mpz_setbit(x.get_mpz_t(), 0);
  return x;
}

Bytes Random::RandomBytes(size_t n) { return Draw(n); }

}  // namespace shrq
