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

// Thin helpers over GMP: fixed-width byte codecs, decimal strings, and a
// seedable random source.

#ifndef SHRQ_BIGINT_H_
#define SHRQ_BIGINT_H_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace shrq {

using Bytes = std::vector<uint8_t>;

// Number of bytes needed to hold values in [0, modulus).
size_t ByteWidth(const mpz_class& modulus);

// Big-endian, left-padded to exactly `width` bytes. Requires 0 <= x < 256^width.
void AppendFixedWidth(const mpz_class& x, size_t width, Bytes& out);
mpz_class ReadFixedWidth(std::span<const uint8_t> bytes);

std::string ToDecimal(const mpz_class& x);
// Throws std::invalid_argument on anything but an optionally signed decimal.
mpz_class FromDecimal(const std::string& s);

// Canonical residue in [0, m), also for negative x.
mpz_class Mod(const mpz_class& x, const mpz_class& m);

bool IsProbablePrime(const mpz_class& x);

// Random source for all protocol randomness. Default-constructed instances
// draw from the OpenSSL CSPRNG; an explicit seed switches to a deterministic
// Mersenne Twister for reproducible tests. Not thread-safe.
class Random {
 public:
  Random();
  explicit Random(uint64_t seed);

  // Uniform in [0, bound).
  mpz_class Below(const mpz_class& bound);
  // Uniform in [lo, hi].
  int64_t Between(int64_t lo, int64_t hi);
  // Uniform odd integer with exactly `bits` bits (top bit set).
  mpz_class Bits(int bits);
  Bytes RandomBytes(size_t n);

 private:
  Bytes Draw(size_t n);

  std::optional<gmp_randclass> seeded_;
};

}  // namespace shrq

#endif  // SHRQ_BIGINT_H_
