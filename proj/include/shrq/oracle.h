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

// Plaintext reference answers. Deliberately self-contained: nothing here
// calls into geometry, so the two can be checked against each other.
// All results are sorted, duplicate-free id lists.

#ifndef SHRQ_ORACLE_H_
#define SHRQ_ORACLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "shrq/dataset.h"
#include "shrq/geometry.h"

namespace shrq::oracle {

// dist^2 <= r^2 over `cols` (all columns if empty).
std::vector<uint64_t> Hrq(const Dataset& data, const SphereQuery& q,
                          std::span<const size_t> cols = {});

// Same predicate evaluated as 2 q.m + r^2 - |q|^2 - |m|^2 >= 0.
std::vector<uint64_t> HrqDotForm(const Dataset& data, const SphereQuery& q,
                                 std::span<const size_t> cols = {});

// lo <= m[col] <= hi.
std::vector<uint64_t> Range(const Dataset& data, const RangeQuery& rq);

// Points whose floor(x/f) image lies at squared distance in
// [max(0, r_hat^2 - v), r_hat^2] from floor(center/f).
std::vector<uint64_t> Annulus(const Dataset& data, const Point& center,
                              int64_t r_hat, uint64_t v, int64_t f,
                              std::span<const size_t> cols = {});

}  // namespace shrq::oracle

#endif  // SHRQ_ORACLE_H_
