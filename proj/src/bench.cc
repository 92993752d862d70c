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

#include "shrq/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "shrq/ces.h"
#include "shrq/protocols.h"
#include "shrq/server.h"
#include "shrq/transport.h"

namespace shrq {
namespace {

using Clock = std::chrono::steady_clock;

double Millis(Clock::duration d) {
  return std::chrono::duration<double, std::milli>(d).count();
}

double Median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

std::vector<double> Ranks(const std::vector<double>& x) {
  std::vector<size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return x[a] < x[b]; });
  std::vector<double> rank(x.size());
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (size_t k = i; k <= j; ++k) rank[order[k]] = avg;
    i = j + 1;
  }
  return rank;
}

BenchRow RunOnce(size_t points, size_t d, const BenchOptions& options, Random& rng) {
  DeploymentConfig config;
  config.protocol = Protocol::kT;
  config.layout = Layout::kShrq;
  config.d = d;
  config.v = options.v;
  config.x_max = options.x_max;
  config.backend = options.backend;
  config.lambda = options.lambda;
  ValidateConfig(config);
  auto [sk, pp] = KeyGen(config.ces(), rng);

  const int64_t x_max = static_cast<int64_t>(options.x_max);
  Dataset data(points);
  for (size_t i = 0; i < points; ++i) {
    data[i].id = i + 1;
    data[i].coords.resize(d);
    for (int64_t& x : data[i].coords) x = rng.Between(0, x_max);
  }

  BenchRow row;
  row.points = points;
  row.d = d;

  auto t0 = Clock::now();
  for (const Record& r : data) {
    EncryptTuple(sk, r.id, MakeDataComponent(r.coords, config.layout), rng);
  }
  row.tuple_enc_us = 1000.0 * Millis(Clock::now() - t0) / static_cast<double>(points);

  CloudServer server;
  InProcessConnection conn(server);
  t0 = Clock::now();
  Setup(conn, config, sk, data, rng);
  row.setup_ms = Millis(Clock::now() - t0);

  QueryClient client(config, sk, conn, rng);
  const int64_t max_r = static_cast<int64_t>(std::sqrt(static_cast<double>(options.v)));
  std::vector<double> times;
  for (size_t q = 0; q < options.queries; ++q) {
    SphereQuery query;
    query.center.resize(d);
    for (int64_t& x : query.center) x = rng.Between(0, x_max);
    query.radius = rng.Between(0, max_r);
    t0 = Clock::now();
    client.QuerySphere(query);
    times.push_back(Millis(Clock::now() - t0));
  }
  row.query_ms = times.empty() ? 0 : Median(times);
  return row;
}

}  // namespace

std::vector<BenchRow> RunBench(const BenchOptions& options) {
  Random rng(options.seed);
  std::vector<BenchRow> rows;
  for (size_t d : options.dims) {
    for (size_t points : options.points) {
      std::vector<double> setup, tuple, query;
      for (int rep = 0; rep < std::max(1, options.repeats); ++rep) {
        BenchRow r = RunOnce(points, d, options, rng);
        setup.push_back(r.setup_ms);
        tuple.push_back(r.tuple_enc_us);
        query.push_back(r.query_ms);
      }
      rows.push_back(BenchRow{points, d, Median(setup), Median(tuple), Median(query)});
    }
  }
  return rows;
}

void WriteBenchCsv(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << "points,d,setup_ms,tuple_enc_us,query_ms\n";
  for (const BenchRow& r : rows) {
    out << r.points << "," << r.d << "," << r.setup_ms << "," << r.tuple_enc_us
        << "," << r.query_ms << "\n";
  }
}

double SpearmanRho(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return 0;
  std::vector<double> rx = Ranks(x);
  std::vector<double> ry = Ranks(y);
  double n = static_cast<double>(x.size());
  double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace shrq
