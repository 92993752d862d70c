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

// Timing sweeps over dataset size and dimension (protocol t, in-process
// server), reported as CSV.

#ifndef SHRQ_BENCH_H_
#define SHRQ_BENCH_H_

#include <cstdint>
#include <ostream>
#include <vector>

#include "shrq/pairing.h"

namespace shrq {

struct BenchOptions {
  std::vector<size_t> points = {100};
  std::vector<size_t> dims = {2};
  size_t queries = 10;
  int repeats = 3;  // medians over repeats
  Backend backend = Backend::kCurveA1;
  int lambda = 32;
  uint64_t v = 400;
  uint64_t x_max = 100;
  uint64_t seed = 1;
};

struct BenchRow {
  size_t points = 0;
  size_t d = 0;
  double setup_ms = 0;     // encrypt + upload of the whole dataset
  double tuple_enc_us = 0; // one tuple encryption
  double query_ms = 0;     // one query, end to end
};

std::vector<BenchRow> RunBench(const BenchOptions& options);
void WriteBenchCsv(const std::vector<BenchRow>& rows, std::ostream& out);

// Spearman rank correlation with average ranks for ties.
double SpearmanRho(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace shrq

#endif  // SHRQ_BENCH_H_
