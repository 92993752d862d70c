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

// Data-owner setup and query-user flows for the three sphere protocols
//
//   kT  single store, r^2 <= v only
//   kC  stores at coarsity 2^e, one execution at the least sufficient e
//   kL  stores at coarsity b_c^e, one execution per planned layer
//
// and for range queries, which run as one-column sphere queries under the
// unified layout. All coordinates here are already offset into [0, x_max].

#ifndef SHRQ_PROTOCOLS_H_
#define SHRQ_PROTOCOLS_H_

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "shrq/ces.h"
#include "shrq/dataset.h"
#include "shrq/geometry.h"
#include "shrq/transport.h"
#include "shrq/wire.h"

namespace shrq {

enum class Protocol { kT, kC, kL };

std::string_view ProtocolName(Protocol protocol);  // "t", "c", "l"
Protocol ProtocolFromName(std::string_view name);  // Error(kConfig)

struct DeploymentConfig {
  Protocol protocol = Protocol::kT;
  Layout layout = Layout::kShrq;
  size_t d = 2;
  uint64_t v = 400;
  uint64_t x_max = 100;
  int e_max = 0;
  int64_t b_c = 0;  // kL only
  Backend backend = Backend::kTransparent;
  int lambda = 64;
  int64_t offset = 0;  // added to raw coordinates at ingestion and query

  int levels() const { return e_max + 1; }
  int64_t base() const;
  int64_t Coarsity(int level) const;
  CesConfig ces() const;
};

// Fills b_c for kL and checks T => e_max = 0, e_max in [0, 62]. Throws
// Error(kConfig).
void ValidateConfig(DeploymentConfig& config);

// AES-GCM blob for db-store: coordinates as 8-byte big-endian integers,
// authenticated together with the 8-byte big-endian id.
Bytes SealRecord(const SecretKey& sk, const Record& record, Random& rng);
// Throws Error(kDataIntegrity).
Point OpenRecord(const SecretKey& sk, uint64_t id, std::span<const uint8_t> blob,
                 size_t d);

// put_store followed by one put_tuple per level.
std::vector<wire::Json> RecordMessages(const DeploymentConfig& config,
                                       const SecretKey& sk, const Record& record,
                                       Random& rng);

// hello, put_lookup, then RecordMessages for every record. Throws
// Error(kSetup) on duplicate ids and Error(kIngestion) on out-of-domain
// coordinates.
std::vector<wire::Json> SetupMessages(const DeploymentConfig& config,
                                      const SecretKey& sk, const Dataset& data,
                                      Random& rng);

// Sends SetupMessages, requiring an ack for each.
void Setup(Connection& conn, const DeploymentConfig& config, const SecretKey& sk,
           const Dataset& data, Random& rng);

// One server round trip.
struct Execution {
  int level = 0;
  Point center;          // in the level's coarse space
  int64_t radius = 0;    // integer radius at that level
  size_t request_bytes = 0;
  std::vector<uint64_t> matched_ids;  // server answer, before validation
};

struct QueryTrace {
  std::vector<Execution> executions;
  std::vector<uint64_t> candidate_ids;  // union over executions
};

using ResultSet = std::vector<Record>;

// The execution plan a query will use, without talking to the server.
// Throws Error(kQueryUnsupported) exactly when the query would be rejected.
std::vector<Execution> PlanSphere(const DeploymentConfig& config,
                                  const SphereQuery& q,
                                  std::span<const size_t> cols = {});

class QueryClient {
 public:
  QueryClient(const DeploymentConfig& config, const SecretKey& sk,
              Connection& conn, Random& rng);

  ResultSet QuerySphere(const SphereQuery& q, QueryTrace* trace = nullptr);
  // Requires the unified layout.
  ResultSet QueryRange(const RangeQuery& rq, QueryTrace* trace = nullptr);

  void Insert(const Record& record);
  void Remove(uint64_t id);
  // Remove then Insert.
  void Update(const Record& record);

 private:
  void EnsureHello();
  ResultSet Run(const SphereQuery& sphere, std::span<const size_t> cols,
                const std::function<bool(const Point&)>& keep, QueryTrace* trace);

  DeploymentConfig config_;
  const SecretKey& sk_;
  Connection& conn_;
  Random& rng_;
  bool hello_sent_ = false;
};

}  // namespace shrq

#endif  // SHRQ_PROTOCOLS_H_
