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

#include "shrq/transport.h"

#include <boost/asio.hpp>
#include <istream>

#include "shrq/errors.h"

namespace shrq {

namespace asio = boost::asio;
using asio::ip::tcp;

wire::Json InProcessConnection::Call(const wire::Json& request) {
  std::string line = wire::Serialize(request);
  last_request_bytes_ = line.size();
  return wire::Parse(server_.HandleLine(line));
}

struct TcpConnection::Impl {
  asio::io_context io;
  tcp::socket socket{io};
  asio::streambuf buf;
  std::string where;
};

TcpConnection::TcpConnection(const std::string& host, uint16_t port)
    : impl_(std::make_unique<Impl>()) {
  impl_->where = host + ":" + std::to_string(port);
  boost::system::error_code ec;
  tcp::resolver resolver(impl_->io);
  auto endpoints = resolver.resolve(host, std::to_string(port), ec);
  if (!ec) asio::connect(impl_->socket, endpoints, ec);
  if (ec) {
    throw Error(ErrorCode::kUnreachable,
                "cannot reach server at " + impl_->where + ": " + ec.message());
  }
  impl_->socket.set_option(tcp::no_delay(true), ec);
}

TcpConnection::~TcpConnection() = default;

wire::Json TcpConnection::Call(const wire::Json& request) {
  std::string line = wire::Serialize(request);
  last_request_bytes_ = line.size();
  line.push_back('\n');
  boost::system::error_code ec;
  asio::write(impl_->socket, asio::buffer(line), ec);
  if (!ec) asio::read_until(impl_->socket, impl_->buf, '\n', ec);
  if (ec) {
    throw Error(ErrorCode::kUnreachable,
                "connection to " + impl_->where + " lost: " + ec.message());
  }
  std::istream in(&impl_->buf);
  std::string reply;
  std::getline(in, reply);
  return wire::Parse(reply);
}

std::unique_ptr<Connection> Connect(const std::string& address) {
  auto [host, port] = ParseAddress(address);
  return std::make_unique<TcpConnection>(host, port);
}

}  // namespace shrq
