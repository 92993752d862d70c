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

// Plaintext records and CSV ingestion (header "id,x1,...,xd").

#ifndef SHRQ_DATASET_H_
#define SHRQ_DATASET_H_

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "shrq/geometry.h"

namespace shrq {

struct Record {
  uint64_t id = 0;
  Point coords;

  bool operator==(const Record& other) const {
    return id == other.id && coords == other.coords;
  }
};

using Dataset = std::vector<Record>;

// Throws Error(kIngestion) naming the offending row (1-based, header = 1).
Dataset ParseCsv(std::istream& in);
Dataset LoadCsv(const std::string& path);
void WriteCsv(const Dataset& data, std::ostream& out);

// Adds `offset` to every coordinate, then checks 0 <= x <= x_max and the
// dimension. Throws Error(kIngestion) naming the record id.
void NormalizeDataset(Dataset& data, size_t d, uint64_t x_max, int64_t offset);

// Throws Error(kSetup) on the first repeated id.
void RequireUniqueIds(const Dataset& data);

}  // namespace shrq

#endif  // SHRQ_DATASET_H_
