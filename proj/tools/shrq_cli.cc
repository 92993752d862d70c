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

// Command-line front end for the data owner, query user and cloud server.
//
// Exit codes: 0 success, 1 usage or I/O failure, 2 query or layout not
// supported, 3 key file missing or inconsistent, 4 server unreachable.
// Failures print one JSON object {"error", "message"} to stderr.

#include <signal.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "shrq/bench.h"
#include "shrq/dataset.h"
#include "shrq/errors.h"
#include "shrq/keyfile.h"
#include "shrq/oracle.h"
#include "shrq/protocols.h"
#include "shrq/server.h"
#include "shrq/transport.h"

namespace shrq {
namespace {

constexpr char kDefaultServer[] = "127.0.0.1:7878";

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kQueryUnsupported:
    case ErrorCode::kUnsupportedLayout:
      return 2;
    case ErrorCode::kKeyFile:
      return 3;
    case ErrorCode::kUnreachable:
      return 4;
    default:
      return 1;
  }
}

void ReportError(std::string_view code, const std::string& message) {
  wire::Json j = {{"error", std::string(code)}, {"message", message}};
  std::cerr << j.dump() << "\n";
}

template <typename T>
std::vector<T> ParseList(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    T value{};
    std::istringstream cell(item);
    if (!(cell >> value) || !(cell >> std::ws).eof()) {
      throw Error(ErrorCode::kConfig,
                  std::string("bad ") + what + " entry '" + item + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) throw Error(ErrorCode::kConfig, std::string("empty ") + what);
  return out;
}

Point Shift(Point p, int64_t offset) {
  for (int64_t& x : p) x += offset;
  return p;
}

void PrintRecords(const ResultSet& records, int64_t offset) {
  for (const Record& r : records) {
    wire::Json j = {{"id", r.id}, {"coords", Shift(r.coords, -offset)}};
    std::cout << j.dump() << "\n";
  }
}

// Sphere or range arguments shared by `query` and `oracle`.
struct SphereArgs {
  std::string center;
  int64_t radius = 0;
};

struct RangeArgs {
  size_t col = 0;  // 1-based
  std::optional<int64_t> lo, hi, col_min, col_max;

  RangeQuery Resolve(size_t d) const {
    if (col < 1 || col > d) {
      throw Error(ErrorCode::kConfig, "--col must be in [1, " + std::to_string(d) + "]");
    }
    RangeQuery rq;
    rq.col = col - 1;
    if (lo) {
      rq.lo = *lo;
    } else if (col_min) {
      rq.lo = *col_min;
    } else {
      throw Error(ErrorCode::kConfig, "open lower bound needs --col-min");
    }
    if (hi) {
      rq.hi = *hi;
    } else if (col_max) {
      rq.hi = *col_max;
    } else {
      throw Error(ErrorCode::kConfig, "open upper bound needs --col-max");
    }
    return rq;
  }
};

void AddRangeOptions(CLI::App* cmd, RangeArgs& args) {
  cmd->add_option("--col", args.col, "Column, 1-based")->required();
  cmd->add_option("--lo", args.lo, "Lower bound (inclusive)");
  cmd->add_option("--hi", args.hi, "Upper bound (inclusive)");
  cmd->add_option("--col-min", args.col_min, "Column minimum, closes an open lower end");
  cmd->add_option("--col-max", args.col_max, "Column maximum, closes an open upper end");
}

struct Session {
  KeyFile key;
  std::unique_ptr<Connection> conn;
  Random rng;
  std::unique_ptr<QueryClient> client;

  Session(const std::string& key_path, const std::string& server)
      : key(LoadKeyFile(key_path)), conn(Connect(server)) {
    client = std::make_unique<QueryClient>(key.config, key.sk, *conn, rng);
  }

  int64_t offset() const { return key.config.offset; }
};

int RunServe(const std::string& listen, std::string state_dir) {
  if (state_dir.empty()) {
    if (const char* env = std::getenv("SHRQ_STATE_DIR")) state_dir = env;
  }
  // Signals go to a dedicated waiter thread.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  auto [host, port] = ParseAddress(listen);
  CloudServer server(state_dir);
  TcpServer tcp(server, host, port);
  std::cerr << "listening on " << host << ":" << tcp.port() << "\n";
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    tcp.Stop();
  });
  waiter.detach();
  tcp.Run();
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Secure hypersphere and range queries over encrypted points"};
  app.require_subcommand(1);
  std::string server = kDefaultServer;
  std::string key_path;

  // keygen
  KeyFile key_out;
  DeploymentConfig& cfg = key_out.config;
  cfg.backend = Backend::kCurveA1;
  std::string layout = "shrq", backend = "curve", protocol = "t", out_path;
  auto* keygen = app.add_subcommand("keygen", "Generate a secret key file");
  keygen->add_option("--lambda", cfg.lambda, "Bits per prime")->capture_default_str();
  keygen->add_option("--d", cfg.d, "Dimensions")->capture_default_str();
  keygen->add_option("--layout", layout, "shrq or unified")->capture_default_str();
  keygen->add_option("--v", cfg.v, "Lookup bound")->capture_default_str();
  keygen->add_option("--x-max", cfg.x_max, "Largest coordinate")->capture_default_str();
  keygen->add_option("--backend", backend, "transparent or curve")->capture_default_str();
  keygen->add_option("--protocol", protocol, "t, c or l")->capture_default_str();
  keygen->add_option("--emax", cfg.e_max, "Highest coarsity exponent")->capture_default_str();
  keygen->add_option("--offset", cfg.offset, "Added to every raw coordinate")
      ->capture_default_str();
  keygen->add_option("--out", out_path, "Key file to write")->required();

  // setup
  std::string data_path;
  auto* setup = app.add_subcommand("setup", "Encrypt a dataset and upload it");
  setup->add_option("--key", key_path)->required();
  setup->add_option("--data", data_path, "CSV with header id,x1,...,xd")->required();
  setup->add_option("--server", server)->capture_default_str();

  // serve
  std::string listen = kDefaultServer, state_dir;
  auto* serve = app.add_subcommand("serve", "Run the cloud server");
  serve->add_option("--listen", listen, "host:port")->capture_default_str();
  serve->add_option("--state", state_dir, "State directory (default $SHRQ_STATE_DIR)");

  // query
  SphereArgs sphere;
  RangeArgs range;
  auto* query = app.add_subcommand("query", "Run an encrypted query");
  query->require_subcommand(1);
  auto* qsphere = query->add_subcommand("sphere", "Hypersphere query");
  qsphere->add_option("--key", key_path)->required();
  qsphere->add_option("--center", sphere.center, "x1,x2,...")->required();
  qsphere->add_option("--radius", sphere.radius)->required();
  qsphere->add_option("--server", server)->capture_default_str();
  auto* qrange = query->add_subcommand("range", "Single-column range query");
  qrange->add_option("--key", key_path)->required();
  AddRangeOptions(qrange, range);
  qrange->add_option("--server", server)->capture_default_str();

  // insert / delete / update
  uint64_t id = 0;
  std::string point;
  auto* insert = app.add_subcommand("insert", "Insert one record");
  auto* update = app.add_subcommand("update", "Replace a record's coordinates");
  for (auto* cmd : {insert, update}) {
    cmd->add_option("--key", key_path)->required();
    cmd->add_option("--id", id)->required();
    cmd->add_option("--point", point, "x1,x2,...")->required();
    cmd->add_option("--server", server)->capture_default_str();
  }
  auto* del = app.add_subcommand("delete", "Delete one record");
  del->add_option("--key", key_path)->required();
  del->add_option("--id", id)->required();
  del->add_option("--server", server)->capture_default_str();

  // oracle
  SphereArgs o_sphere;
  RangeArgs o_range;
  auto* orc = app.add_subcommand("oracle", "Plaintext reference answer");
  orc->require_subcommand(1);
  auto* osphere = orc->add_subcommand("sphere", "Hypersphere query");
  osphere->add_option("--data", data_path)->required();
  osphere->add_option("--center", o_sphere.center)->required();
  osphere->add_option("--radius", o_sphere.radius)->required();
  auto* orange = orc->add_subcommand("range", "Single-column range query");
  orange->add_option("--data", data_path)->required();
  AddRangeOptions(orange, o_range);

  // bench
  BenchOptions bench;
  std::string bench_points = "100", bench_dims = "2", bench_backend = "curve";
  auto* bench_cmd = app.add_subcommand("bench", "Timing sweep as CSV");
  bench_cmd->add_option("--points", bench_points, "Comma-separated dataset sizes")
      ->capture_default_str();
  bench_cmd->add_option("--d", bench_dims, "Comma-separated dimensions")->capture_default_str();
  bench_cmd->add_option("--queries", bench.queries)->capture_default_str();
  bench_cmd->add_option("--repeats", bench.repeats)->capture_default_str();
  bench_cmd->add_option("--lambda", bench.lambda)->capture_default_str();
  bench_cmd->add_option("--backend", bench_backend)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*keygen) {
      cfg.layout = LayoutFromName(layout);
      cfg.backend = BackendFromName(backend);
      cfg.protocol = ProtocolFromName(protocol);
      ValidateConfig(cfg);
      Random rng;
      key_out.sk = KeyGen(cfg.ces(), rng).first;
      SaveKeyFile(key_out, out_path);
      return 0;
    }
    if (*setup) {
      KeyFile key = LoadKeyFile(key_path);
      Dataset data = LoadCsv(data_path);
      NormalizeDataset(data, key.config.d, key.config.x_max, key.config.offset);
      auto conn = Connect(server);
      Random rng;
      Setup(*conn, key.config, key.sk, data, rng);
      return 0;
    }
    if (*serve) return RunServe(listen, state_dir);
    if (*qsphere) {
      Session s(key_path, server);
      SphereQuery q{Shift(ParseList<int64_t>(sphere.center, "center"), s.offset()),
                    sphere.radius};
      PrintRecords(s.client->QuerySphere(q), s.offset());
      return 0;
    }
    if (*qrange) {
      Session s(key_path, server);
      RangeQuery rq = range.Resolve(s.key.config.d);
      rq.lo += s.offset();
      rq.hi += s.offset();
      PrintRecords(s.client->QueryRange(rq), s.offset());
      return 0;
    }
    if (*insert || *update) {
      Session s(key_path, server);
      Record r{id, ParseList<int64_t>(point, "point")};
      Dataset one{r};
      NormalizeDataset(one, s.key.config.d, s.key.config.x_max, s.offset());
      if (*insert) {
        s.client->Insert(one[0]);
      } else {
        s.client->Update(one[0]);
      }
      return 0;
    }
    if (*del) {
      Session s(key_path, server);
      s.client->Remove(id);
      return 0;
    }
    if (*osphere) {
      Dataset data = LoadCsv(data_path);
      SphereQuery q{ParseList<int64_t>(o_sphere.center, "center"), o_sphere.radius};
      if (!data.empty() && q.center.size() != data[0].coords.size()) {
        throw Error(ErrorCode::kConfig, "center dimension does not match the data");
      }
      ResultSet out;
      std::vector<uint64_t> ids = oracle::Hrq(data, q);
      for (const Record& r : data) {
        if (std::binary_search(ids.begin(), ids.end(), r.id)) out.push_back(r);
      }
      std::sort(out.begin(), out.end(), [](const Record& a, const Record& b) { return a.id < b.id; });
      PrintRecords(out, 0);
      return 0;
    }
    if (*orange) {
      Dataset data = LoadCsv(data_path);
      size_t d = data.empty() ? o_range.col : data[0].coords.size();
      RangeQuery rq = o_range.Resolve(d);
      std::vector<uint64_t> ids = oracle::Range(data, rq);
      ResultSet out;
      for (const Record& r : data) {
        if (std::binary_search(ids.begin(), ids.end(), r.id)) out.push_back(r);
      }
      std::sort(out.begin(), out.end(), [](const Record& a, const Record& b) { return a.id < b.id; });
      PrintRecords(out, 0);
      return 0;
    }
    if (*bench_cmd) {
      bench.points = ParseList<size_t>(bench_points, "points");
      bench.dims = ParseList<size_t>(bench_dims, "d");
      bench.backend = BackendFromName(bench_backend);
      WriteBenchCsv(RunBench(bench), std::cout);
      return 0;
    }
  } catch (const Error& e) {
    ReportError(ErrorCodeName(e.code()), e.what());
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    ReportError("internal", e.what());
    return 1;
  }
  return 1;
}

}  // namespace
}  // namespace shrq

int main(int argc, char** argv) { return shrq::Main(argc, argv); }
