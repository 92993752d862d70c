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

#include "shrq/oracle.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "shrq/geometry.h"

namespace shrq {
namespace {

Dataset Grid(int64_t side) {
  Dataset data;
  uint64_t id = 1;
  for (int64_t x = 0; x <= side; ++x) {
    for (int64_t y = 0; y <= side; ++y) data.push_back(Record{id++, {x, y}});
  }
  return data;
}

std::vector<uint64_t> AllIds(const Dataset& data) {
  std::vector<uint64_t> ids;
  for (const Record& r : data) ids.push_back(r.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

TEST(HrqOracleTest, TrivialCases) {
  Dataset data = {{7, {3, 4}}, {2, {10, 10}}, {5, {3, 4}}};
  EXPECT_EQ(oracle::Hrq(data, {{3, 4}, 0}), (std::vector<uint64_t>{5, 7}));
  EXPECT_EQ(oracle::Hrq(data, {{0, 0}, 100}), (std::vector<uint64_t>{2, 5, 7}));
  EXPECT_TRUE(oracle::Hrq(data, {{50, 50}, 3}).empty());
  const size_t cols[] = {0};
  EXPECT_EQ(oracle::Hrq(data, {{10, 0}, 0}, cols), (std::vector<uint64_t>{2}));
}

TEST(HrqOracleTest, DotFormAgreesOnGrid) {
  Dataset data = Grid(50);
  std::mt19937_64 gen(1);
  std::uniform_int_distribution<int64_t> coord(-10, 60), radius(0, 40);
  for (int q = 0; q < 50; ++q) {
    SphereQuery query{{coord(gen), coord(gen)}, radius(gen)};
    std::vector<uint64_t> direct = oracle::Hrq(data, query);
    EXPECT_EQ(direct, oracle::HrqDotForm(data, query));
    // Third form: the component dot product from geometry.
    Component qc = MakeSphereQueryComponent(query.center, query.radius, Layout::kShrq);
    std::vector<uint64_t> via_dot;
    for (const Record& r : data) {
      if (PlaintextDot(MakeDataComponent(r.coords, Layout::kShrq), qc) >= 0) {
        via_dot.push_back(r.id);
      }
    }
    EXPECT_EQ(direct, via_dot);
  }
}

TEST(RangeOracleTest, EqualityFullDomainAndSphereForm) {
  Dataset data = Grid(20);
  std::vector<uint64_t> eq = oracle::Range(data, {1, 7, 7});
  EXPECT_EQ(eq.size(), 21u);
  EXPECT_EQ(oracle::Range(data, {0, 0, 20}), AllIds(data));
  std::mt19937_64 gen(2);
  std::uniform_int_distribution<int64_t> coord(0, 20);
  for (int q = 0; q < 100; ++q) {
    int64_t a = coord(gen), b = coord(gen);
    RangeQuery rq{static_cast<size_t>(q % 2), std::min(a, b), std::max(a, b)};
    RangeReduction rr = MakeRangeQueryComponent(rq, 2, Layout::kUnified);
    const size_t cols[] = {rq.col};
    std::vector<uint64_t> sphere = oracle::Hrq(data, rr.sphere, cols);
    std::vector<uint64_t> range = oracle::Range(data, rq);
    // The sphere form may over-cover hi + 1 for odd widths, never less.
    EXPECT_TRUE(std::includes(sphere.begin(), sphere.end(), range.begin(), range.end()));
    std::set<uint64_t> extra;
    std::set_difference(sphere.begin(), sphere.end(), range.begin(), range.end(),
                        std::inserter(extra, extra.end()));
    for (uint64_t id : extra) EXPECT_EQ(data[id - 1].coords[rq.col], rq.hi + 1);
  }
}

TEST(AnnulusOracleTest, UnitCoarsityWithinSqrtVIsBall) {
  Dataset data = Grid(30);
  for (int64_t r = 0; r <= 20; ++r) {
    EXPECT_EQ(oracle::Annulus(data, {15, 15}, r, 400, 1), oracle::Hrq(data, {{15, 15}, r}));
  }
  Dataset far = {{1, {0, 0}}, {2, {1000, 1000}}};
  EXPECT_EQ(oracle::Annulus(far, {0, 0}, 5, 25, 1), (std::vector<uint64_t>{1}));
}

TEST(AnnulusOracleTest, CoveringLayerUnionContainsBall) {
  Dataset data = Grid(120);
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<int64_t> coord(0, 120), radius(0, 150);
  for (int q = 0; q < 20; ++q) {
    SphereQuery query{{coord(gen), coord(gen)}, radius(gen)};
    LayerPlan plan = CoveringPlan(query.radius, 400, 2, 5, 3);
    std::set<uint64_t> united;
    for (const Layer& layer : plan.layers) {
      for (uint64_t id : oracle::Annulus(data, query.center, layer.radius, 400, layer.coarsity)) {
        united.insert(id);
      }
    }
    for (uint64_t id : oracle::Hrq(data, query)) EXPECT_TRUE(united.count(id)) << id;
  }
}

}  // namespace
}  // namespace shrq
