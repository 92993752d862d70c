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

// The cloud server: holds public parameters, the lookup table, db-store and
// one db-query store per level, and answers wire messages.
//
// Durability: with a state directory, every accepted mutation is appended
// to log.jsonl and fsync'ed before it is applied and acknowledged. Every
// kSnapshotEvery mutations the full state is written to snapshot.json
// (atomically, via rename) and the log is truncated. Startup loads the
// snapshot and replays log entries with a higher sequence number.
//
// Thread safety: queries run under a shared lock, mutations under an
// exclusive one.

#ifndef SHRQ_SERVER_H_
#define SHRQ_SERVER_H_

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <thread>
#include <vector>

#include "shrq/ces.h"
#include "shrq/wire.h"

namespace shrq {

class CloudServer {
 public:
  static constexpr uint64_t kSnapshotEvery = 512;

  // Empty `state_dir` keeps everything in memory.
  explicit CloudServer(std::string state_dir = "");
  ~CloudServer();

  CloudServer(const CloudServer&) = delete;
  CloudServer& operator=(const CloudServer&) = delete;

  // Never throws for bad input; failures become error replies.
  wire::Json Handle(const wire::Json& request);
  std::string HandleLine(std::string_view line);

  // compute() evaluations since construction.
  uint64_t compute_calls() const { return compute_calls_.load(); }
  size_t level_size(int level) const;
  size_t store_size() const;

 private:
  wire::Json Dispatch(const wire::Json& msg, bool replay);
  wire::Json OnHello(const wire::Json& msg, bool replay);
  wire::Json OnPutLookup(const wire::Json& msg, bool replay);
  wire::Json OnPutStore(const wire::Json& msg, bool replay);
  wire::Json OnPutTuple(const wire::Json& msg, bool replay);
  wire::Json OnDelete(const wire::Json& msg, bool replay);
  wire::Json OnQuery(const wire::Json& msg) const;

  const BilinearGroup& RequireGroup() const;
  int RequireLevel(const wire::Json& msg) const;

  // Durability; callers hold the exclusive lock.
  void Persist(const wire::Json& msg);
  void WriteSnapshot();
  void Recover();
  std::vector<wire::Json> StateAsMessages() const;

  std::string state_dir_;
  int log_fd_ = -1;
  uint64_t seq_ = 0;
  uint64_t since_snapshot_ = 0;

  mutable std::shared_mutex mu_;
  std::optional<wire::Json> hello_;
  std::optional<PublicParams> params_;
  int levels_ = 0;
  std::optional<LookupTable> table_;
  std::map<uint64_t, Bytes> store_;
  std::vector<std::map<uint64_t, EncryptedTuple>> db_query_;

  mutable std::atomic<uint64_t> compute_calls_{0};
};

// Blocking TCP front end: one thread per connection, one request at a time
// per connection.
class TcpServer {
 public:
  // Port 0 picks a free port; see port().
  TcpServer(CloudServer& server, const std::string& host, uint16_t port);
  ~TcpServer();

  uint16_t port() const;
  // Accepts until Stop() is called.
  void Run();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// "host:port"; throws Error(kConfig).
std::pair<std::string, uint16_t> ParseAddress(const std::string& address);

}  // namespace shrq

#endif  // SHRQ_SERVER_H_
