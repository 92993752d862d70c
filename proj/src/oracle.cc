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

#include "shrq/oracle.h"

#include <algorithm>

namespace shrq::oracle {
namespace {

using Wide = __int128;

std::vector<size_t> Columns(std::span<const size_t> cols, size_t d) {
  if (!cols.empty()) return {cols.begin(), cols.end()};
  std::vector<size_t> all(d);
  for (size_t i = 0; i < d; ++i) all[i] = i;
  return all;
}

int64_t Floor(int64_t x, int64_t f) {
  int64_t q = x / f;
  return (x % f != 0 && x < 0) ? q - 1 : q;
}

std::vector<uint64_t> Finish(std::vector<uint64_t> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace

std::vector<uint64_t> Hrq(const Dataset& data, const SphereQuery& q,
                          std::span<const size_t> cols) {
  std::vector<uint64_t> ids;
  const Wide r2 = static_cast<Wide>(q.radius) * q.radius;
  for (const Record& rec : data) {
    Wide dist2 = 0;
    for (size_t c : Columns(cols, rec.coords.size())) {
      Wide diff = static_cast<Wide>(rec.coords[c]) - q.center[c];
      dist2 += diff * diff;
    }
    if (dist2 <= r2) ids.push_back(rec.id);
  }
  return Finish(std::move(ids));
}

std::vector<uint64_t> HrqDotForm(const Dataset& data, const SphereQuery& q,
                                 std::span<const size_t> cols) {
  std::vector<uint64_t> ids;
  for (const Record& rec : data) {
    Wide value = static_cast<Wide>(q.radius) * q.radius;
    for (size_t c : Columns(cols, rec.coords.size())) {
      Wide m = rec.coords[c];
      Wide x = q.center[c];
      value += 2 * m * x - m * m - x * x;
    }
    if (value >= 0) ids.push_back(rec.id);
  }
  return Finish(std::move(ids));
}

std::vector<uint64_t> Range(const Dataset& data, const RangeQuery& rq) {
  std::vector<uint64_t> ids;
  for (const Record& rec : data) {
    int64_t x = rec.coords[rq.col];
    if (rq.lo <= x && x <= rq.hi) ids.push_back(rec.id);
  }
  return Finish(std::move(ids));
}

std::vector<uint64_t> Annulus(const Dataset& data, const Point& center,
                              int64_t r_hat, uint64_t v, int64_t f,
                              std::span<const size_t> cols) {
  std::vector<uint64_t> ids;
  const Wide hi = static_cast<Wide>(r_hat) * r_hat;
  const Wide lo = std::max<Wide>(0, hi - static_cast<Wide>(v));
  for (const Record& rec : data) {
    Wide dist2 = 0;
    for (size_t c : Columns(cols, rec.coords.size())) {
      Wide diff = static_cast<Wide>(Floor(rec.coords[c], f)) - Floor(center[c], f);
      dist2 += diff * diff;
    }
    if (lo <= dist2 && dist2 <= hi) ids.push_back(rec.id);
  }
  return Finish(std::move(ids));
}

}  // namespace shrq::oracle
