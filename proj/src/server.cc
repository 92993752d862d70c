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

#include "shrq/server.h"

#include <fcntl.h>
#include <sys/socket.h>
#include <unistd.h>

#include <boost/asio.hpp>
#include <filesystem>
#include <fstream>
#include <list>
#include <sstream>

#include "shrq/crypto.h"
#include "shrq/errors.h"

namespace shrq {
namespace {

namespace fs = std::filesystem;
using wire::Json;

constexpr char kLogName[] = "log.jsonl";
constexpr char kSnapshotName[] = "snapshot.json";
constexpr int kMaxLevels = 64;
constexpr size_t kMaxLineBytes = 64u << 20;

void WriteAll(int fd, const std::string& data) {
  size_t off = 0;
  while (off < data.size()) {
    ssize_t n = ::write(fd, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::kDataIntegrity, "state write failed");
    }
    off += static_cast<size_t>(n);
  }
}

void SyncFd(int fd) {
  if (::fsync(fd) != 0) {
    throw Error(ErrorCode::kDataIntegrity, "fsync failed");
  }
}

void SyncDirectory(const std::string& dir) {
  int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (fd < 0) return;
  ::fsync(fd);
  ::close(fd);
}

bool IsMutation(const std::string& type) {
  return type == "hello" || type == "put_lookup" || type == "put_store" ||
         type == "put_tuple" || type == "delete";
}

}  // namespace

CloudServer::CloudServer(std::string state_dir)
    : state_dir_(std::move(state_dir)) {
  if (state_dir_.empty()) return;
  std::error_code ec;
  fs::create_directories(state_dir_, ec);
  if (ec) {
    throw Error(ErrorCode::kConfig,
                "cannot create state directory " + state_dir_ + ": " + ec.message());
  }
  Recover();
  std::string log_path = (fs::path(state_dir_) / kLogName).string();
  log_fd_ = ::open(log_path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0600);
  if (log_fd_ < 0) {
    throw Error(ErrorCode::kConfig, "cannot open " + log_path);
  }
}

CloudServer::~CloudServer() {
  if (log_fd_ >= 0) ::close(log_fd_);
}

size_t CloudServer::level_size(int level) const {
  std::shared_lock lock(mu_);
  if (level < 0 || level >= static_cast<int>(db_query_.size())) return 0;
  return db_query_[level].size();
}

size_t CloudServer::store_size() const {
  std::shared_lock lock(mu_);
  return store_.size();
}

std::string CloudServer::HandleLine(std::string_view line) {
  Json request;
  try {
    request = wire::Parse(line);
  } catch (const Error& e) {
    return wire::Serialize(wire::ErrorReply(e.code(), e.what()));
  }
  return wire::Serialize(Handle(request));
}

Json CloudServer::Handle(const Json& request) {
  try {
    std::string type = wire::StringField(request, "type");
    if (IsMutation(type)) {
      std::unique_lock lock(mu_);
      Json reply = Dispatch(request, /*replay=*/false);
      if (!state_dir_.empty() && since_snapshot_ >= kSnapshotEvery) {
        WriteSnapshot();
      }
      return reply;
    }
    if (type == "query") {
      std::shared_lock lock(mu_);
      return OnQuery(request);
    }
    return wire::ErrorReply(ErrorCode::kProtocol,
                            "unknown message type '" + type + "'");
  } catch (const Error& e) {
    return wire::ErrorReply(e.code(), e.what());
  } catch (const std::exception& e) {
    return wire::ErrorReply(ErrorCode::kProtocol, e.what());
  }
}

Json CloudServer::Dispatch(const Json& msg, bool replay) {
  std::string type = wire::StringField(msg, "type");
  if (type == "hello") return OnHello(msg, replay);
  if (type == "put_lookup") return OnPutLookup(msg, replay);
  if (type == "put_store") return OnPutStore(msg, replay);
  if (type == "put_tuple") return OnPutTuple(msg, replay);
  if (type == "delete") return OnDelete(msg, replay);
  throw Error(ErrorCode::kProtocol, "unknown message type '" + type + "'");
}

const BilinearGroup& CloudServer::RequireGroup() const {
  if (!params_) {
    throw Error(ErrorCode::kProtocol, "no parameters pinned; send hello first");
  }
  return *params_->group;
}

int CloudServer::RequireLevel(const Json& msg) const {
  int64_t level = wire::IntField(msg, "level");
  if (level < 0 || level >= levels_) {
    throw Error(ErrorCode::kProtocol,
                "unknown level " + std::to_string(level) + "; server has " +
                    std::to_string(levels_) + " levels");
  }
  return static_cast<int>(level);
}

Json CloudServer::OnHello(const Json& msg, bool replay) {
  GroupDescriptor descriptor = wire::DecodeDescriptor(wire::Field(msg, "group"));
  std::string n = wire::StringField(msg, "N");
  if (n != ToDecimal(descriptor.order)) {
    throw Error(ErrorCode::kProtocol, "N does not match the group descriptor");
  }
  std::string hash = wire::StringField(msg, "hash");
  if (hash != kHashId) {
    throw Error(ErrorCode::kProtocol, "unsupported hash '" + hash + "'");
  }
  int64_t levels = wire::IntField(msg, "levels");
  if (levels < 1 || levels > kMaxLevels) {
    throw Error(ErrorCode::kProtocol, "levels must be in [1, 64]");
  }
  if (params_) {
    if (!(params_->descriptor == descriptor) || levels != levels_) {
      throw Error(ErrorCode::kConflict,
                  "parameters differ from the ones pinned by the first hello");
    }
    return wire::Ack();
  }
  PublicParams params = MakePublicParams(descriptor);
  if (!replay) Persist(msg);
  params_ = std::move(params);
  levels_ = static_cast<int>(levels);
  db_query_.assign(levels_, {});
  Json pinned = msg;
  hello_ = std::move(pinned);
  return wire::Ack();
}

Json CloudServer::OnPutLookup(const Json& msg, bool replay) {
  RequireGroup();
  uint64_t v = wire::UintField(msg, "v");
  Bytes raw = Base64Decode(wire::StringField(msg, "digests"));
  if (raw.size() % 32 != 0) {
    throw Error(ErrorCode::kProtocol, "digest blob is not a multiple of 32 bytes");
  }
  if (raw.size() / 32 > v + 1) {
    throw Error(ErrorCode::kProtocol, "lookup table larger than v + 1");
  }
  std::vector<Digest> digests(raw.size() / 32);
  for (size_t i = 0; i < digests.size(); ++i) {
    std::copy_n(raw.begin() + i * 32, 32, digests[i].begin());
  }
  LookupTable table(std::move(digests), v);
  if (!replay) Persist(msg);
  table_ = std::move(table);
  return wire::Ack();
}

Json CloudServer::OnPutStore(const Json& msg, bool replay) {
  RequireGroup();
  uint64_t id = wire::UintField(msg, "id");
  Bytes blob = Base64Decode(wire::StringField(msg, "blob"));
  if (store_.count(id)) {
    throw Error(ErrorCode::kConflict, "record " + std::to_string(id) + " exists");
  }
  if (!replay) Persist(msg);
  store_.emplace(id, std::move(blob));
  return wire::Ack();
}

Json CloudServer::OnPutTuple(const Json& msg, bool replay) {
  const BilinearGroup& group = RequireGroup();
  int level = RequireLevel(msg);
  EncryptedTuple tuple;
  tuple.id = wire::UintField(msg, "id");
  tuple.slots = wire::DecodeSlots(group, wire::Field(msg, "slots"));
  if (!store_.count(tuple.id)) {
    throw Error(ErrorCode::kNotFound,
                "no db-store entry for record " + std::to_string(tuple.id));
  }
  auto& db = db_query_[level];
  if (db.count(tuple.id)) {
    throw Error(ErrorCode::kConflict, "record " + std::to_string(tuple.id) +
                                          " exists at level " +
                                          std::to_string(level));
  }
  if (!db.empty() && db.begin()->second.slots.size() != tuple.slots.size()) {
    throw Error(ErrorCode::kProtocol, "tuple length differs from the level's");
  }
  if (!replay) Persist(msg);
  db.emplace(tuple.id, std::move(tuple));
  return wire::Ack();
}

Json CloudServer::OnDelete(const Json& msg, bool replay) {
  RequireGroup();
  uint64_t id = wire::UintField(msg, "id");
  if (!store_.count(id)) {
    throw Error(ErrorCode::kNotFound, "record " + std::to_string(id) + " not found");
  }
  if (!replay) Persist(msg);
  store_.erase(id);
  for (auto& db : db_query_) db.erase(id);
  return wire::Ack();
}

Json CloudServer::OnQuery(const Json& msg) const {
  const BilinearGroup& group = RequireGroup();
  int level = RequireLevel(msg);
  EncryptedQuery query;
  query.level = level;
  query.slots = wire::DecodeSlots(group, wire::Field(msg, "slots"));
  if (!table_) throw Error(ErrorCode::kProtocol, "no lookup table uploaded");
  std::vector<wire::Match> matches;
  for (const auto& [id, tuple] : db_query_[level]) {
    compute_calls_.fetch_add(1);
    GTElement t = Compute(group, tuple, query);
    if (!LookupContains(group, *table_, t)) continue;
    auto it = store_.find(id);
    if (it == store_.end()) {
      throw Error(ErrorCode::kDataIntegrity,
                  "matched record " + std::to_string(id) + " has no db-store entry");
    }
    matches.push_back(wire::Match{id, it->second});
  }
  return wire::Result(matches);
}

void CloudServer::Persist(const Json& msg) {
  if (state_dir_.empty()) return;
  Json entry = {{"seq", seq_ + 1}, {"msg", msg}};
  WriteAll(log_fd_, entry.dump() + "\n");
  SyncFd(log_fd_);
  ++seq_;
  ++since_snapshot_;
}

std::vector<Json> CloudServer::StateAsMessages() const {
  std::vector<Json> out;
  if (!hello_) return out;
  out.push_back(*hello_);
  if (table_) out.push_back(wire::PutLookup(*table_));
  for (const auto& [id, blob] : store_) out.push_back(wire::PutStore(id, blob));
  for (int level = 0; level < levels_; ++level) {
    for (const auto& [id, tuple] : db_query_[level]) {
      out.push_back(wire::PutTuple(*params_->group, level, tuple));
    }
  }
  return out;
}

void CloudServer::WriteSnapshot() {
  Json snapshot = {{"seq", seq_}, {"messages", StateAsMessages()}};
  fs::path dir(state_dir_);
  std::string tmp = (dir / (std::string(kSnapshotName) + ".tmp")).string();
  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
  if (fd < 0) throw Error(ErrorCode::kDataIntegrity, "cannot write snapshot");
  try {
    WriteAll(fd, snapshot.dump());
    SyncFd(fd);
  } catch (...) {
    ::close(fd);
    throw;
  }
  ::close(fd);
  fs::rename(tmp, dir / kSnapshotName);
  SyncDirectory(state_dir_);
  // Entries up to seq_ are now in the snapshot; replay skips them anyway.
  if (::ftruncate(log_fd_, 0) != 0) {
    throw Error(ErrorCode::kDataIntegrity, "cannot truncate log");
  }
  SyncFd(log_fd_);
  since_snapshot_ = 0;
}

void CloudServer::Recover() {
  fs::path dir(state_dir_);
  auto replay = [this](const Json& msg) {
    try {
      Dispatch(msg, /*replay=*/true);
    } catch (const Error& e) {
      throw Error(ErrorCode::kDataIntegrity,
                  std::string("state replay failed: ") + e.what());
    }
  };
  if (fs::exists(dir / kSnapshotName)) {
    std::ifstream in(dir / kSnapshotName);
    std::stringstream buf;
    buf << in.rdbuf();
    Json snapshot = Json::parse(buf.str(), nullptr, false);
    if (snapshot.is_discarded() || !snapshot.is_object()) {
      throw Error(ErrorCode::kDataIntegrity, "corrupt snapshot");
    }
    for (const Json& msg : snapshot.at("messages")) replay(msg);
    seq_ = snapshot.at("seq").get<uint64_t>();
  }
  if (fs::exists(dir / kLogName)) {
    std::ifstream in(dir / kLogName);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      Json entry = Json::parse(line, nullptr, false);
      // A torn final line is an unacknowledged write.
      if (entry.is_discarded() || !entry.is_object()) break;
      uint64_t seq = entry.at("seq").get<uint64_t>();
      if (seq <= seq_) continue;
      replay(entry.at("msg"));
      seq_ = seq;
    }
  }
}

std::pair<std::string, uint16_t> ParseAddress(const std::string& address) {
  size_t colon = address.rfind(':');
  if (colon == std::string::npos || colon + 1 == address.size()) {
    throw Error(ErrorCode::kConfig, "address must be host:port, got '" + address + "'");
  }
  std::string host = address.substr(0, colon);
  unsigned long port = 0;
  try {
    size_t used = 0;
    port = std::stoul(address.substr(colon + 1), &used);
    if (used != address.size() - colon - 1) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw Error(ErrorCode::kConfig, "bad port in '" + address + "'");
  }
  if (port > 65535) throw Error(ErrorCode::kConfig, "port out of range");
  if (host.empty()) host = "127.0.0.1";
  return {host, static_cast<uint16_t>(port)};
}

namespace asio = boost::asio;
using asio::ip::tcp;

struct TcpServer::Impl {
  CloudServer& server;
  asio::io_context io;
  tcp::acceptor acceptor{io};
  std::atomic<bool> stopping{false};
  uint16_t port = 0;
  std::mutex mu;
  std::set<std::shared_ptr<tcp::socket>> sockets;
  std::list<std::thread> threads;

  explicit Impl(CloudServer& s) : server(s) {}

  void Serve(const std::shared_ptr<tcp::socket>& socket) {
    asio::streambuf buf(kMaxLineBytes);
    for (;;) {
      boost::system::error_code ec;
      asio::read_until(*socket, buf, '\n', ec);
      std::string reply;
      if (ec == asio::error::not_found) {
        reply = wire::Serialize(
            wire::ErrorReply(ErrorCode::kProtocol, "request line too long"));
        asio::write(*socket, asio::buffer(reply + "\n"), ec);
        break;
      }
      if (ec) break;
      std::istream in(&buf);
      std::string line;
      std::getline(in, line);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      reply = server.HandleLine(line);
      reply.push_back('\n');
      asio::write(*socket, asio::buffer(reply), ec);
      if (ec) break;
    }
    boost::system::error_code ignored;
    socket->close(ignored);
  }
};

TcpServer::TcpServer(CloudServer& server, const std::string& host, uint16_t port)
    : impl_(std::make_unique<Impl>(server)) {
  boost::system::error_code ec;
  auto address = asio::ip::make_address(host, ec);
  if (ec) {
    tcp::resolver resolver(impl_->io);
    auto results = resolver.resolve(host, std::to_string(port), ec);
    if (ec || results.empty()) {
      throw Error(ErrorCode::kConfig, "cannot resolve listen host " + host);
    }
    address = results.begin()->endpoint().address();
  }
  tcp::endpoint endpoint(address, port);
  impl_->acceptor.open(endpoint.protocol());
  impl_->acceptor.set_option(tcp::acceptor::reuse_address(true));
  impl_->acceptor.bind(endpoint, ec);
  if (ec) {
    throw Error(ErrorCode::kConfig, "cannot listen on " + host + ":" +
                                        std::to_string(port) + ": " + ec.message());
  }
  impl_->acceptor.listen();
  impl_->port = impl_->acceptor.local_endpoint().port();
}

TcpServer::~TcpServer() = default;

uint16_t TcpServer::port() const { return impl_->port; }

void TcpServer::Run() {
  while (!impl_->stopping.load()) {
    auto socket = std::make_shared<tcp::socket>(impl_->io);
    boost::system::error_code ec;
    impl_->acceptor.accept(*socket, ec);
    if (impl_->stopping.load()) break;
    if (ec) continue;
    std::lock_guard lock(impl_->mu);
    impl_->sockets.insert(socket);
    impl_->threads.emplace_back([this, socket] {
      impl_->Serve(socket);
      std::lock_guard inner(impl_->mu);
      impl_->sockets.erase(socket);
    });
  }
  boost::system::error_code ignored;
  impl_->acceptor.close(ignored);
  std::list<std::thread> threads;
  {
    std::lock_guard lock(impl_->mu);
    threads.swap(impl_->threads);
  }
  for (std::thread& t : threads) t.join();
}

void TcpServer::Stop() {
  if (impl_->stopping.exchange(true)) return;
  {
    std::lock_guard lock(impl_->mu);
    for (const auto& socket : impl_->sockets) {
      ::shutdown(socket->native_handle(), SHUT_RDWR);
    }
  }
  // Wake the blocking accept.
  boost::system::error_code ec;
  auto endpoint = impl_->acceptor.local_endpoint(ec);
  if (ec) return;
  if (endpoint.address().is_unspecified()) {
    endpoint.address(endpoint.protocol() == tcp::v6()
                         ? asio::ip::address(asio::ip::address_v6::loopback())
                         : asio::ip::address(asio::ip::address_v4::loopback()));
  }
  asio::io_context io;
  tcp::socket waker(io);
  waker.connect(endpoint, ec);
}

}  // namespace shrq
