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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "shrq/bench.h"
#include "shrq/ces.h"
#include "shrq/errors.h"
#include "shrq/geometry.h"
#include "shrq/oracle.h"
#include "shrq/pairing.h"
#include "shrq/protocols.h"
#include "shrq/server.h"
#include "shrq/transport.h"

namespace shrq {
namespace {

using Clock = std::chrono::steady_clock;

// Collects failures for one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok) {
      ++failures_;
      if (first_.empty()) first_ = what;
    }
  }
  void Note(const std::string& note) { notes_ += (notes_.empty() ? "" : "; ") + note; }
  bool ok() const { return failures_ == 0; }
  std::string Summary() const {
    std::string s = notes_;
    if (failures_ > 0) {
      s += (s.empty() ? "" : "; ") + std::to_string(failures_) + " failure(s), first: " + first_;
    }
    return s;
  }

 private:
  int failures_ = 0;
  std::string first_;
  std::string notes_;
};

std::vector<uint64_t> Ids(const ResultSet& rs) {
  std::vector<uint64_t> ids;
  for (const Record& r : rs) ids.push_back(r.id);
  return ids;
}

bool Includes(const std::vector<uint64_t>& big, const std::vector<uint64_t>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<uint64_t> Union(const std::vector<std::vector<uint64_t>>& sets) {
  std::set<uint64_t> all;
  for (const auto& s : sets) all.insert(s.begin(), s.end());
  return {all.begin(), all.end()};
}

Dataset RandomDataset(Random& rng, size_t n, size_t d, int64_t hi) {
  Dataset data;
  for (uint64_t id = 1; id <= n; ++id) {
    Point p(d);
    for (int64_t& x : p) x = rng.Between(0, hi);
    data.push_back(Record{id, p});
  }
  return data;
}

DeploymentConfig Config(Protocol protocol, int e_max, Layout layout, Backend backend,
                        int lambda, uint64_t v = 400) {
  DeploymentConfig c;
  c.protocol = protocol;
  c.e_max = e_max;
  c.layout = layout;
  c.d = 2;
  c.v = v;
  c.x_max = 100;
  c.backend = backend;
  c.lambda = lambda;
  ValidateConfig(c);
  return c;
}

// Key, in-memory server and client over an in-process connection.
class Deployment {
 public:
  Deployment(const DeploymentConfig& config, const Dataset& data, uint64_t seed)
      : config_(config), rng_(seed), conn_(server_) {
    sk_ = KeyGen(config_.ces(), rng_).first;
    Setup(conn_, config_, sk_, data, rng_);
    client_ = std::make_unique<QueryClient>(config_, sk_, conn_, rng_);
  }
  QueryClient& client() { return *client_; }
  const DeploymentConfig& config() const { return config_; }

 private:
  DeploymentConfig config_;
  Random rng_;
  CloudServer server_;
  InProcessConnection conn_;
  SecretKey sk_;
  std::unique_ptr<QueryClient> client_;
};

SphereQuery RandomSphere(Random& rng, int64_t max_r) {
  return {{rng.Between(0, 100), rng.Between(0, 100)}, rng.Between(0, max_r)};
}

// 1. Pairing laws on both backends.
void PairingLaws(Check& check) {
  for (Backend backend : {Backend::kTransparent, Backend::kCurveA1}) {
    const std::string name(BackendName(backend));
    Random rng(101);
    const auto start = Clock::now();
    GroupParams params = GroupGen(32, backend, rng);
    auto group = MakeGroup(params.group);
    const mpz_class& n = params.n();
    for (int trial = 0; trial < 100; ++trial) {
      GElement g = RandomGenerator(*group, params, rng);
      GElement u = RandomGenerator(*group, params, rng);
      mpz_class a = rng.Below(n), b = rng.Below(n);
      GTElement e_gu = group->Pair(g, u);
      check.Expect(group->Pair(group->Pow(g, a), group->Pow(u, b)) == group->Pow(e_gu, a * b),
                   name + " bilinearity");
      check.Expect(group->Pair(group->Mul(g, u), g) ==
                       group->Mul(group->Pair(g, g), group->Pair(u, g)),
                   name + " linearity in the first argument");
      check.Expect(group->IsIdentity(group->Pair(group->Pow(g, params.q1),
                                                 group->Pow(u, params.q2))),
                   name + " subgroup orthogonality");
      check.Expect(!group->IsIdentity(group->Pow(e_gu, params.q1)) &&
                       !group->IsIdentity(group->Pow(e_gu, params.q2)),
                   name + " non-degeneracy");
      check.Expect(group->IsIdentity(group->Pow(g, n)) && group->IsIdentity(group->Pow(e_gu, n)),
                   name + " order-N annihilation");
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const double limit = backend == Backend::kTransparent ? 10 : 300;
    check.Expect(secs < limit, name + " runtime " + std::to_string(secs) + " s");
    std::ostringstream note;
    note << name << " 100 trials " << std::fixed;
    note.precision(2);
    note << secs << " s";
    check.Note(note.str());
  }
}

// 2. Same SHRQ_T answers under both backends.
void BackendCrossValidation(Check& check) {
  Random data_rng(202);
  Dataset data = RandomDataset(data_rng, 20, 2, 100);
  std::vector<SphereQuery> queries;
  // Centered on data points so answers are non-empty.
  for (int q = 0; q < 10; ++q) queries.push_back({data[2 * q].coords, data_rng.Between(0, 10)});
  queries[9].radius = 10;
  std::vector<ResultSet> results[2];
  int i = 0;
  for (Backend backend : {Backend::kTransparent, Backend::kCurveA1}) {
    Deployment dep(Config(Protocol::kT, 0, Layout::kShrq, backend, 32, 100), data, 7);
    for (const SphereQuery& q : queries) results[i].push_back(dep.client().QuerySphere(q));
    ++i;
  }
  size_t matches = 0;
  for (size_t q = 0; q < queries.size(); ++q) {
    check.Expect(results[0][q] == results[1][q], "query " + std::to_string(q) + " differs");
    check.Expect(Ids(results[0][q]) == oracle::Hrq(data, queries[q]),
                 "query " + std::to_string(q) + " not oracle-exact");
    matches += results[0][q].size();
  }
  check.Note("10 queries, " + std::to_string(matches) + " matches total");
}

// 3. Compute equals the direct value and ignores blinding randomness.
void ComputeCorrectness(Check& check) {
  for (Backend backend : {Backend::kTransparent, Backend::kCurveA1}) {
    const std::string name(BackendName(backend));
    Random rng(303);
    CesConfig cfg;
    cfg.lambda = 32;
    cfg.d = 2;
    cfg.v = 400;
    cfg.x_max = 100;
    cfg.backend = backend;
    cfg.layout = backend == Backend::kCurveA1 ? Layout::kUnified : Layout::kShrq;
    SecretKey sk = KeyGen(cfg, rng).first;
    const BilinearGroup& group = *sk.group;
    for (int trial = 0; trial < 1000; ++trial) {
      Point m = {rng.Between(0, 100), rng.Between(0, 100)};
      Point c = {rng.Between(0, 100), rng.Between(0, 100)};
      Component dc = MakeDataComponent(m, cfg.layout);
      Component qc = MakeSphereQueryComponent(c, rng.Between(0, 20), cfg.layout);
      mpz_class dot = PlaintextDot(dc, qc);
      EncryptedTuple t = EncryptTuple(sk, trial, dc, rng);
      EncryptedQuery q = EncryptQuery(sk, qc, 0, rng);
      GTElement got = Compute(group, t, q);
      check.Expect(got == ExpectedCompute(sk, dot), name + " compute mismatch");
      if (trial % 10 == 0) {
        EncryptedTuple t2 = EncryptTuple(sk, trial, dc, rng);
        EncryptedQuery q2 = EncryptQuery(sk, qc, 0, rng);
        check.Expect(!(t2.slots == t.slots), name + " re-encryption repeated a tuple");
        check.Expect(Compute(group, t2, q2) == got, name + " blinding changed compute");
      }
    }
  }
  check.Note("1000 pairs per backend, 100 re-encryptions each");
}

// 4. SHRQ_T matches the oracle before and after validation.
void ProtocolTExact(Check& check) {
  Random rng(404);
  Dataset data = RandomDataset(rng, 200, 2, 100);
  const auto start = Clock::now();
  Deployment dep(Config(Protocol::kT, 0, Layout::kShrq, Backend::kTransparent, 40), data, 4);
  size_t fn = 0, fp = 0, matches = 0;
  for (int q = 0; q < 50; ++q) {
    SphereQuery query = RandomSphere(rng, 20);
    QueryTrace trace;
    ResultSet rs = dep.client().QuerySphere(query, &trace);
    std::vector<uint64_t> want = oracle::Hrq(data, query);
    const auto& cand = trace.candidate_ids;
    for (uint64_t id : want) fn += !std::binary_search(cand.begin(), cand.end(), id);
    for (uint64_t id : cand) fp += !std::binary_search(want.begin(), want.end(), id);
    check.Expect(Ids(rs) == want, "post-validation mismatch");
    matches += want.size();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  check.Expect(fn == 0, "false negatives " + std::to_string(fn));
  check.Expect(fp == 0, "false positives " + std::to_string(fp));
  check.Expect(secs < 60, "runtime " + std::to_string(secs) + " s");
  check.Note("50 queries, " + std::to_string(matches) + " matches, fn=" + std::to_string(fn) +
             " fp=" + std::to_string(fp));
}

// Least e with an integer radius inside the window, or -1.
int ScanExponent(int64_t r, uint64_t v, size_t d, int e_max) {
  for (int e = 0; e <= e_max; ++e) {
    const int64_t rh = e == 0 ? r : TransformedRadius(r, int64_t{1} << e, d);
    if (static_cast<uint64_t>(rh * rh) <= v) return e;
  }
  return -1;
}

// 5. SHRQ_C: superset before validation, exact after, minimal level.
void ProtocolC(Check& check) {
  Random rng(505);
  Dataset data = RandomDataset(rng, 200, 2, 100);
  Deployment dep(Config(Protocol::kC, 3, Layout::kShrq, Backend::kTransparent, 40), data, 5);
  std::vector<SphereQuery> queries;
  for (int q = 0; q < 50; ++q) queries.push_back(RandomSphere(rng, 160));
  for (int64_t r : {0, 20, 21, 40, 80, 148, 149, 160}) queries.push_back({{50, 50}, r});
  size_t fn = 0, answered = 0, rejected = 0;
  int64_t largest = -1;
  for (const SphereQuery& query : queries) {
    const int scan = ScanExponent(query.radius, 400, 2, 3);
    QueryTrace trace;
    ResultSet rs;
    try {
      rs = dep.client().QuerySphere(query, &trace);
    } catch (const Error& e) {
      ++rejected;
      check.Expect(e.code() == ErrorCode::kQueryUnsupported, e.what());
      // Also outside the real-valued rule r/2^e + sqrt(d) <= sqrt(v).
      check.Expect(scan < 0 && query.radius / 8.0 + std::sqrt(2.0) > 20.0,
                   "rejected r=" + std::to_string(query.radius) + " has a qualifying level");
      continue;
    }
    ++answered;
    largest = std::max(largest, query.radius);
    std::vector<uint64_t> want = oracle::Hrq(data, query);
    for (uint64_t id : want) {
      fn += !std::binary_search(trace.candidate_ids.begin(), trace.candidate_ids.end(), id);
    }
    check.Expect(Ids(rs) == want, "post-validation mismatch");
    check.Expect(trace.executions.size() == 1 && trace.executions[0].level == scan,
                 "level is not the minimal qualifying exponent");
  }
  check.Expect(fn == 0, "false negatives " + std::to_string(fn));
  check.Note(std::to_string(answered) + " answered (largest r=" + std::to_string(largest) +
             "), " + std::to_string(rejected) + " rejected with no qualifying e<=3, fn=" +
             std::to_string(fn));
}

// 6. SHRQ_L: literal plan trace for r=60, covering planner has no gaps.
void ProtocolL(Check& check) {
  LayerPlan literal = LayeredRadii(60, 400, 2, 5, 3);
  const bool trace_ok = literal.layers.size() == 2 && literal.layers[0].index == 0 &&
                        literal.layers[1].index == 1 && literal.layers[0].radius == 60 &&
                        literal.layers[1].radius == 10;
  check.Expect(trace_ok, "literal plan for r=60 is not layers (0,1) with r_hat (60,10)");

  Random rng(606);
  Dataset data = RandomDataset(rng, 200, 2, 100);
  Deployment dep(Config(Protocol::kL, 3, Layout::kShrq, Backend::kTransparent, 40), data, 6);
  std::vector<SphereQuery> queries;
  for (int q = 0; q < 60; ++q) queries.push_back(RandomSphere(rng, 200));
  for (int64_t r : {0, 20, 21, 60, 100, 150, 200}) queries.push_back({{50, 50}, r});
  size_t fn = 0, literal_fn = 0, literal_rejected = 0;
  for (const SphereQuery& query : queries) {
    QueryTrace trace;
    ResultSet rs = dep.client().QuerySphere(query, &trace);
    std::vector<uint64_t> want = oracle::Hrq(data, query);
    std::vector<std::vector<uint64_t>> annuli;
    for (const Execution& exec : trace.executions) {
      annuli.push_back(oracle::Annulus(data, query.center, exec.radius, 400,
                                       dep.config().Coarsity(exec.level)));
      check.Expect(exec.matched_ids == annuli.back(), "execution differs from its annulus");
    }
    std::vector<uint64_t> covered = Union(annuli);
    for (uint64_t id : want) fn += !std::binary_search(covered.begin(), covered.end(), id);
    check.Expect(Ids(rs) == want, "post-validation mismatch");

    // What the literal plan would have returned.
    try {
      LayerPlan plan = LayeredRadii(query.radius, 400, 2, 5, 3);
      std::vector<std::vector<uint64_t>> lit;
      for (const Layer& layer : plan.layers) {
        lit.push_back(oracle::Annulus(data, query.center, layer.radius, 400, layer.coarsity));
      }
      std::vector<uint64_t> lit_cover = Union(lit);
      for (uint64_t id : want) {
        literal_fn += !std::binary_search(lit_cover.begin(), lit_cover.end(), id);
      }
    } catch (const Error&) {
      ++literal_rejected;
    }
  }
  check.Expect(fn == 0, "covering false negatives " + std::to_string(fn));
  check.Note("6a literal r=60 plan " + std::string(trace_ok ? "ok" : "WRONG") +
             "; 6b covering planner " + std::to_string(queries.size()) +
             " queries fn=" + std::to_string(fn) + "; diagnostic: literal plan would miss " +
             std::to_string(literal_fn) + " point(s), rejects " +
             std::to_string(literal_rejected) + " queries");
}

// 7. Range queries are exact and look like sphere queries on the wire.
void RangeQueries(Check& check) {
  Random rng(707);
  Dataset data = RandomDataset(rng, 200, 2, 100);
  Deployment dep(Config(Protocol::kT, 0, Layout::kUnified, Backend::kTransparent, 40), data, 8);
  std::set<size_t> bytes;
  size_t odd = 0;
  for (int q = 0; q < 50; ++q) {
    int64_t width = rng.Between(0, 40);
    if (q % 2 == 1 && width % 2 == 0) width = std::max<int64_t>(1, width - 1);
    odd += width % 2;
    int64_t lo = rng.Between(0, 100 - width);
    RangeQuery rq{static_cast<size_t>(q % 2), lo, lo + width};
    QueryTrace trace;
    check.Expect(Ids(dep.client().QueryRange(rq, &trace)) == oracle::Range(data, rq),
                 "range [" + std::to_string(rq.lo) + "," + std::to_string(rq.hi) + "] mismatch");
    for (const Execution& e : trace.executions) bytes.insert(e.request_bytes);
  }
  // [25, inf) closed at the column maximum 60.
  Dataset narrow;
  for (Record r : data) {
    r.coords[0] = std::min<int64_t>(r.coords[0], 60);
    narrow.push_back(r);
  }
  Deployment open_dep(Config(Protocol::kT, 0, Layout::kUnified, Backend::kTransparent, 40),
                      narrow, 9);
  RangeQuery open{0, 25, 60};
  check.Expect(Ids(open_dep.client().QueryRange(open)) == oracle::Range(narrow, open),
               "open range [25,inf) mismatch");
  for (int q = 0; q < 10; ++q) {
    QueryTrace trace;
    dep.client().QuerySphere(RandomSphere(rng, 20), &trace);
    for (const Execution& e : trace.executions) bytes.insert(e.request_bytes);
  }
  check.Expect(bytes.size() == 1, std::to_string(bytes.size()) + " distinct request sizes");
  check.Note("50 ranges (" + std::to_string(odd) + " odd widths) + [25,inf)->[25,60]; " +
             "request bytes " + (bytes.size() == 1 ? std::to_string(*bytes.begin()) : "vary"));
}

// 8. dist/f - sqrt(d) <= dist_f <= dist/f + sqrt(d).
void CoarseDistanceBound(Check& check) {
  Random rng(808);
  const int64_t fs[] = {2, 3, 4, 8};
  for (int trial = 0; trial < 10000; ++trial) {
    const size_t d = 2 + trial % 2;
    const int64_t f = fs[rng.Between(0, 3)];
    Point p(d), q(d);
    for (size_t i = 0; i < d; ++i) {
      p[i] = rng.Between(0, 1000);
      q[i] = rng.Between(0, 1000);
    }
    const long double dist = std::sqrt(static_cast<long double>(SquaredDistance(p, q).get_d()));
    const long double dist_f = std::sqrt(static_cast<long double>(
        SquaredDistance(CoarseTransform(p, f), CoarseTransform(q, f)).get_d()));
    const long double slack = std::sqrt(static_cast<long double>(d));
    check.Expect(dist / f - slack <= dist_f + 1e-12L && dist_f <= dist / f + slack + 1e-12L,
                 "bound violated");
  }
  check.Note("10000 pairs, d in {2,3}, f in {2,3,4,8}");
}

// TCP server on a free port, run on its own thread.
class LiveServer {
 public:
  explicit LiveServer(const std::string& state_dir)
      : server_(state_dir), tcp_(server_, "127.0.0.1", 0), thread_([this] { tcp_.Run(); }) {}
  ~LiveServer() {
    tcp_.Stop();
    thread_.join();
  }
  std::string address() const { return "127.0.0.1:" + std::to_string(tcp_.port()); }
  const CloudServer& server() const { return server_; }

 private:
  CloudServer server_;
  TcpServer tcp_;
  std::thread thread_;
};

// 9. Updates over TCP with a restart halfway.
void DynamicUpdates(Check& check) {
  namespace fs = std::filesystem;
  char tmpl[] = "/tmp/shrq_accept_XXXXXX";
  const std::string dir = mkdtemp(tmpl);
  DeploymentConfig cfg = Config(Protocol::kT, 0, Layout::kUnified, Backend::kTransparent, 40);
  Random rng(909);
  SecretKey sk = KeyGen(cfg.ces(), rng).first;
  Dataset initial = RandomDataset(rng, 60, 2, 100);
  std::map<uint64_t, Point> live;
  for (const Record& r : initial) live[r.id] = r.coords;
  uint64_t next_id = 1000;

  auto oracle_data = [&] {
    Dataset data;
    for (const auto& [id, p] : live) data.push_back(Record{id, p});
    return data;
  };
  auto random_point = [&] { return Point{rng.Between(0, 100), rng.Between(0, 100)}; };
  size_t queries = 0;
  auto run_queries = [&](QueryClient& client, int n) {
    for (int i = 0; i < n; ++i, ++queries) {
      auto it = std::next(live.begin(), rng.Between(0, live.size() - 1));
      SphereQuery q{it->second, rng.Between(0, 20)};
      check.Expect(Ids(client.QuerySphere(q)) == oracle::Hrq(oracle_data(), q),
                   "sphere query mismatch");
      RangeQuery rq{static_cast<size_t>(i % 2), rng.Between(0, 60), 0};
      rq.hi = rq.lo + rng.Between(0, 40);
      check.Expect(Ids(client.QueryRange(rq)) == oracle::Range(oracle_data(), rq),
                   "range query mismatch");
    }
  };
  auto mutate = [&](QueryClient& client, int step) {
    const int kind = live.size() < 10 ? 0 : step % 3;
    if (kind == 0) {
      Record r{next_id++, random_point()};
      client.Insert(r);
      live[r.id] = r.coords;
    } else {
      auto it = std::next(live.begin(), rng.Between(0, live.size() - 1));
      if (kind == 1) {
        client.Remove(it->first);
        live.erase(it);
      } else {
        Record r{it->first, random_point()};
        client.Update(r);
        it->second = r.coords;
      }
    }
  };

  size_t store_after_restart = 0, level_after_restart = 0, live_at_restart = 0;
  {
    LiveServer s(dir);
    auto conn = Connect(s.address());
    Setup(*conn, cfg, sk, initial, rng);
    QueryClient client(cfg, sk, *conn, rng);
    for (int step = 0; step < 50; ++step) {
      mutate(client, step);
      if (step % 5 == 4) run_queries(client, 1);
    }
    live_at_restart = live.size();
  }
  {
    LiveServer s(dir);
    store_after_restart = s.server().store_size();
    level_after_restart = s.server().level_size(0);
    auto conn = Connect(s.address());
    QueryClient client(cfg, sk, *conn, rng);
    run_queries(client, 5);
    for (int step = 50; step < 100; ++step) {
      mutate(client, step);
      if (step % 5 == 4) run_queries(client, 1);
    }
  }
  {
    LiveServer s(dir);
    check.Expect(s.server().store_size() == live.size(), "records lost after final restart");
    auto conn = Connect(s.address());
    QueryClient client(cfg, sk, *conn, rng);
    run_queries(client, 5);
  }
  check.Expect(store_after_restart == live_at_restart && level_after_restart == live_at_restart,
               "acknowledged records lost across restart");
  fs::remove_all(dir);
  check.Note("100 mutations, " + std::to_string(queries) + " sphere+range query pairs, " +
             std::to_string(live_at_restart) + " records survived the mid-sequence restart");
}

// 10. Timing shapes: monotone in d and |D|.
void BenchShapes(Check& check) {
  auto column = [](const std::vector<BenchRow>& rows, double BenchRow::*field) {
    std::vector<double> out;
    for (const BenchRow& r : rows) out.push_back(r.*field);
    return out;
  };
  BenchOptions dims;
  dims.points = {60};
  dims.dims = {2, 4, 6, 8, 12, 16};
  dims.queries = 4;
  dims.repeats = 3;
  dims.backend = Backend::kCurveA1;
  dims.lambda = 32;
  std::vector<BenchRow> by_d = RunBench(dims);
  std::vector<double> d_axis;
  for (const BenchRow& r : by_d) d_axis.push_back(static_cast<double>(r.d));

  BenchOptions points = dims;
  points.points = {25, 50, 100, 200, 400, 800};
  points.dims = {2};
  std::vector<BenchRow> by_n = RunBench(points);
  std::vector<double> n_axis;
  for (const BenchRow& r : by_n) n_axis.push_back(static_cast<double>(r.points));

  struct Series {
    const char* name;
    double rho;
  };
  const Series series[] = {
      {"tuple_enc~d", SpearmanRho(d_axis, column(by_d, &BenchRow::tuple_enc_us))},
      {"query~d", SpearmanRho(d_axis, column(by_d, &BenchRow::query_ms))},
      {"setup~|D|", SpearmanRho(n_axis, column(by_n, &BenchRow::setup_ms))},
      {"query~|D|", SpearmanRho(n_axis, column(by_n, &BenchRow::query_ms))},
  };
  std::ostringstream note;
  note.precision(3);
  for (const Series& s : series) {
    check.Expect(s.rho > 0.9, std::string(s.name) + " rho " + std::to_string(s.rho));
    note << s.name << " rho=" << s.rho << " ";
  }
  std::string text = note.str();
  text.pop_back();
  check.Note(text);
}

struct Criterion {
  int number;
  const char* name;
  std::function<void(Check&)> run;
};

int Main() {
  const Criterion criteria[] = {
      {1, "pairing laws", PairingLaws},
      {2, "backend cross-validation", BackendCrossValidation},
      {3, "compute correctness", ComputeCorrectness},
      {4, "SHRQ_T oracle equivalence", ProtocolTExact},
      {5, "SHRQ_C superset and minimal level", ProtocolC},
      {6, "SHRQ_L layer coverage", ProtocolL},
      {7, "SRQ range queries", RangeQueries},
      {8, "coarse distance bound", CoarseDistanceBound},
      {9, "dynamic updates with restart", DynamicUpdates},
      {10, "bench shapes", BenchShapes},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Check check;
    const auto start = Clock::now();
    try {
      c.run(check);
    } catch (const std::exception& e) {
      check.Expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    failed += !check.ok();
    std::ostringstream line;
    line.precision(1);
    line << (check.ok() ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.name
         << " [" << std::fixed << secs << " s] " << check.Summary();
    std::cout << line.str() << std::endl;
  }
  return failed;
}

}  // namespace
}  // namespace shrq

int main() { return shrq::Main(); }
