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

// Client side of the request/reply channel.

#ifndef SHRQ_TRANSPORT_H_
#define SHRQ_TRANSPORT_H_

#include <cstdint>
#include <memory>
#include <string>

#include "shrq/server.h"
#include "shrq/wire.h"

namespace shrq {

class Connection {
 public:
  virtual ~Connection() = default;
  // Sends one request line and returns the parsed reply line.
  virtual wire::Json Call(const wire::Json& request) = 0;
  // Byte length of the last request line, newline excluded.
  size_t last_request_bytes() const { return last_request_bytes_; }

 protected:
  size_t last_request_bytes_ = 0;
};

// Goes through the same serialization as TCP, without a socket.
class InProcessConnection : public Connection {
 public:
  explicit InProcessConnection(CloudServer& server) : server_(server) {}
  wire::Json Call(const wire::Json& request) override;

 private:
  CloudServer& server_;
};

class TcpConnection : public Connection {
 public:
  // Throws Error(kUnreachable) if the connection cannot be made.
  TcpConnection(const std::string& host, uint16_t port);
  ~TcpConnection() override;
  // Throws Error(kUnreachable) if the connection drops.
  wire::Json Call(const wire::Json& request) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// "host:port" convenience.
std::unique_ptr<Connection> Connect(const std::string& address);

}  // namespace shrq

#endif  // SHRQ_TRANSPORT_H_
