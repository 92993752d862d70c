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

#include "shrq/protocols.h"

#include <algorithm>
#include <map>
#include <string>

#include "shrq/errors.h"

namespace shrq {
namespace {

mpz_class Big(int64_t x) {
  mpz_class r;
  mpz_set_si(r.get_mpz_t(), x);
  return r;
}

Bytes BigEndian64(uint64_t x) {
  Bytes out(8);
  for (int i = 7; i >= 0; --i, x >>= 8) out[i] = static_cast<uint8_t>(x);
  return out;
}

std::vector<size_t> ActiveColumns(std::span<const size_t> cols, size_t d) {
  if (!cols.empty()) return {cols.begin(), cols.end()};
  std::vector<size_t> all(d);
  for (size_t i = 0; i < d; ++i) all[i] = i;
  return all;
}

void CheckDomain(const DeploymentConfig& config, const Record& record) {
  Dataset one{record};
  NormalizeDataset(one, config.d, config.x_max, 0);
}

// Every in-domain dot r^2 - dist^2 must lie in (v - q2, q2), otherwise its
// residue mod q2 could land in [0, v] without the true value doing so.
void CheckDotWindow(const DeploymentConfig& config, const SecretKey& sk,
                    const Execution& exec, std::span<const size_t> cols) {
  const int64_t top = static_cast<int64_t>(config.x_max) / config.Coarsity(exec.level);
  mpz_class max_dist2 = 0;
  for (size_t c : ActiveColumns(cols, config.d)) {
    mpz_class lo = Big(exec.center[c]);
    mpz_class hi = Big(top) - lo;
    mpz_class far = abs(lo) > abs(hi) ? abs(lo) : abs(hi);
    max_dist2 += far * far;
  }
  mpz_class r2 = Big(exec.radius) * Big(exec.radius);
  const mpz_class& q2 = sk.params.q2;
  mpz_class v(std::to_string(config.v));
  if (r2 >= q2 || max_dist2 - r2 >= q2 - v) {
    throw Error(ErrorCode::kQueryUnsupported,
                "query exceeds the correctness margin of this key (radius " +
                    std::to_string(exec.radius) + " at level " +
                    std::to_string(exec.level) + ")");
  }
}

}  // namespace

std::string_view ProtocolName(Protocol protocol) {
  switch (protocol) {
    case Protocol::kT:
      return "t";
    case Protocol::kC:
      return "c";
    case Protocol::kL:
      return "l";
  }
  return "t";
}

Protocol ProtocolFromName(std::string_view name) {
  if (name == "t" || name == "T") return Protocol::kT;
  if (name == "c" || name == "C") return Protocol::kC;
  if (name == "l" || name == "L") return Protocol::kL;
  throw Error(ErrorCode::kConfig, "unknown protocol '" + std::string(name) + "'");
}

int64_t DeploymentConfig::base() const {
  return protocol == Protocol::kL ? b_c : 2;
}

int64_t DeploymentConfig::Coarsity(int level) const {
  int64_t f = 1;
  for (int i = 0; i < level; ++i) f *= base();
  return f;
}

CesConfig DeploymentConfig::ces() const {
  return CesConfig{lambda, d, layout, v, x_max, backend};
}

void ValidateConfig(DeploymentConfig& config) {
  if (config.d == 0) throw Error(ErrorCode::kConfig, "d must be positive");
  if (config.e_max < 0 || config.e_max > 62) {
    throw Error(ErrorCode::kConfig, "E_max must be in [0, 62]");
  }
  if (config.x_max > (uint64_t{1} << 31)) {
    throw Error(ErrorCode::kConfig, "x_max must be at most 2^31");
  }
  switch (config.protocol) {
    case Protocol::kT:
      if (config.e_max != 0) {
        throw Error(ErrorCode::kConfig, "protocol t requires E_max = 0");
      }
      config.b_c = 0;
      break;
    case Protocol::kC:
      config.b_c = 0;
      break;
    case Protocol::kL:
      config.b_c = CoarsityBase(config.v, config.d);
      break;
  }
  // Coarsities must fit comfortably in 64 bits.
  int64_t f = 1;
  for (int i = 0; i < config.e_max; ++i) {
    if (f > (int64_t{1} << 62) / config.base()) {
      throw Error(ErrorCode::kConfig, "base^E_max overflows 64 bits");
    }
    f *= config.base();
  }
}

Bytes SealRecord(const SecretKey& sk, const Record& record, Random& rng) {
  Bytes plaintext;
  plaintext.reserve(8 * record.coords.size());
  for (int64_t x : record.coords) {
    Bytes be = BigEndian64(static_cast<uint64_t>(x));
    plaintext.insert(plaintext.end(), be.begin(), be.end());
  }
  return AesGcmSeal(sk.aes_key, plaintext, BigEndian64(record.id), rng);
}

Point OpenRecord(const SecretKey& sk, uint64_t id, std::span<const uint8_t> blob,
                 size_t d) {
  Bytes plaintext = AesGcmOpen(sk.aes_key, blob, BigEndian64(id));
  if (plaintext.size() != 8 * d) {
    throw Error(ErrorCode::kDataIntegrity,
                "record " + std::to_string(id) + " has the wrong dimension");
  }
  Point p(d);
  for (size_t i = 0; i < d; ++i) {
    uint64_t x = 0;
    for (size_t j = 0; j < 8; ++j) x = (x << 8) | plaintext[8 * i + j];
    p[i] = static_cast<int64_t>(x);
  }
  return p;
}

std::vector<wire::Json> RecordMessages(const DeploymentConfig& config,
                                       const SecretKey& sk, const Record& record,
                                       Random& rng) {
  CheckDomain(config, record);
  std::vector<wire::Json> out;
  out.push_back(wire::PutStore(record.id, SealRecord(sk, record, rng)));
  for (int level = 0; level < config.levels(); ++level) {
    Point coarse = CoarseTransform(record.coords, config.Coarsity(level));
    EncryptedTuple t =
        EncryptTuple(sk, record.id, MakeDataComponent(coarse, config.layout), rng);
    out.push_back(wire::PutTuple(*sk.group, level, t));
  }
  return out;
}

std::vector<wire::Json> SetupMessages(const DeploymentConfig& config,
                                      const SecretKey& sk, const Dataset& data,
                                      Random& rng) {
  RequireUniqueIds(data);
  for (const Record& r : data) CheckDomain(config, r);
  std::vector<wire::Json> out;
  out.push_back(wire::Hello(sk.params.group, kHashId, config.levels()));
  out.push_back(wire::PutLookup(CreateLookupTable(sk, config.v)));
  for (const Record& r : data) {
    for (wire::Json& m : RecordMessages(config, sk, r, rng)) {
      out.push_back(std::move(m));
    }
  }
  return out;
}

void Setup(Connection& conn, const DeploymentConfig& config, const SecretKey& sk,
           const Dataset& data, Random& rng) {
  for (const wire::Json& m : SetupMessages(config, sk, data, rng)) {
    wire::ExpectAck(conn.Call(m));
  }
}

std::vector<Execution> PlanSphere(const DeploymentConfig& config,
                                  const SphereQuery& q,
                                  std::span<const size_t> cols) {
  if (q.center.size() != config.d) {
    throw Error(ErrorCode::kConfig,
                "query center has " + std::to_string(q.center.size()) +
                    " coordinates, deployment has d = " + std::to_string(config.d));
  }
  if (q.radius < 0) throw Error(ErrorCode::kConfig, "radius must be non-negative");
  const size_t dims = cols.empty() ? config.d : cols.size();

  std::vector<Execution> plan;
  auto add = [&](int level, int64_t radius) {
    Execution e;
    e.level = level;
    e.radius = radius;
    e.center = CoarseTransform(q.center, config.Coarsity(level));
    plan.push_back(std::move(e));
  };
  switch (config.protocol) {
    case Protocol::kT:
      SelectCoarsityExponent(q.radius, config.v, dims, 0);
      add(0, q.radius);
      break;
    case Protocol::kC: {
      int e = SelectCoarsityExponent(q.radius, config.v, dims, config.e_max, 2);
      add(e, e == 0 ? q.radius
                    : TransformedRadius(q.radius, config.Coarsity(e), dims));
      break;
    }
    case Protocol::kL:
      for (const Layer& layer :
           CoveringPlan(q.radius, config.v, dims, config.b_c, config.e_max).layers) {
        add(layer.index, layer.radius);
      }
      break;
  }
  return plan;
}

QueryClient::QueryClient(const DeploymentConfig& config, const SecretKey& sk,
                         Connection& conn, Random& rng)
    : config_(config), sk_(sk), conn_(conn), rng_(rng) {}

void QueryClient::EnsureHello() {
  if (hello_sent_) return;
  wire::ExpectAck(conn_.Call(wire::Hello(sk_.params.group, kHashId, config_.levels())));
  hello_sent_ = true;
}

ResultSet QueryClient::QuerySphere(const SphereQuery& q, QueryTrace* trace) {
  SphereQuery original = q;
  return Run(q, {}, [original](const Point& p) {
    return SquaredDistance(p, original.center) <=
           Big(original.radius) * Big(original.radius);
  }, trace);
}

ResultSet QueryClient::QueryRange(const RangeQuery& rq, QueryTrace* trace) {
  RangeReduction reduction = MakeRangeQueryComponent(rq, config_.d, config_.layout);
  const size_t cols[] = {rq.col};
  return Run(reduction.sphere, cols, [rq](const Point& p) {
    return rq.lo <= p[rq.col] && p[rq.col] <= rq.hi;
  }, trace);
}

ResultSet QueryClient::Run(const SphereQuery& sphere, std::span<const size_t> cols,
                           const std::function<bool(const Point&)>& keep,
                           QueryTrace* trace) {
  // Everything that can reject the query happens before any encryption.
  std::vector<Execution> plan = PlanSphere(config_, sphere, cols);
  for (const Execution& exec : plan) CheckDotWindow(config_, sk_, exec, cols);
  EnsureHello();

  std::map<uint64_t, Bytes> candidates;
  for (Execution& exec : plan) {
    Component c =
        MakeSphereQueryComponent(exec.center, Big(exec.radius), config_.layout, cols);
    EncryptedQuery eq = EncryptQuery(sk_, c, exec.level, rng_);
    std::vector<wire::Match> matches =
        wire::ExpectResult(conn_.Call(wire::Query(*sk_.group, eq)));
    exec.request_bytes = conn_.last_request_bytes();
    for (wire::Match& m : matches) {
      exec.matched_ids.push_back(m.id);
      candidates.emplace(m.id, std::move(m.blob));
    }
  }

  ResultSet out;
  for (const auto& [id, blob] : candidates) {
    Point p = OpenRecord(sk_, id, blob, config_.d);
    if (keep(p)) out.push_back(Record{id, std::move(p)});
  }
  if (trace != nullptr) {
    trace->executions = std::move(plan);
    trace->candidate_ids.clear();
    for (const auto& entry : candidates) trace->candidate_ids.push_back(entry.first);
  }
  return out;
}

void QueryClient::Insert(const Record& record) {
  std::vector<wire::Json> messages = RecordMessages(config_, sk_, record, rng_);
  EnsureHello();
  for (const wire::Json& m : messages) wire::ExpectAck(conn_.Call(m));
}

void QueryClient::Remove(uint64_t id) {
  EnsureHello();
  wire::ExpectAck(conn_.Call(wire::Delete(id)));
}

void QueryClient::Update(const Record& record) {
  CheckDomain(config_, record);
  Remove(record.id);
  Insert(record);
}

}  // namespace shrq
