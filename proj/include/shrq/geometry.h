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

// Plaintext geometry: data/query components whose dot product equals
// r^2 - dist^2, coarse transforms, coarsity selection and layer planning.
//
// Column indices are zero-based throughout.

#ifndef SHRQ_GEOMETRY_H_
#define SHRQ_GEOMETRY_H_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace shrq {

// kShrq:    data {m_1..m_d, 1, |m|^2},      length d + 2.
// kUnified: data {m_1..m_d, 1, m_1^2..m_d^2}, length 2d + 1.
enum class Layout { kShrq, kUnified };

std::string_view LayoutName(Layout layout);
// Throws Error(kConfig).
Layout LayoutFromName(std::string_view name);
size_t ComponentLength(Layout layout, size_t d);

using Point = std::vector<int64_t>;

struct SphereQuery {
  Point center;
  int64_t radius = 0;
};

// Closed range lo <= m[col] <= hi.
struct RangeQuery {
  size_t col = 0;
  int64_t lo = 0;
  int64_t hi = 0;
};

struct Component {
  std::vector<mpz_class> entries;
  size_t const_slot = 0;  // slot holding the data-side constant 1
};

Component MakeDataComponent(const Point& p, Layout layout);

// Query component for center/radius over `cols` (all columns if empty).
// A strict subset of columns needs the unified layout, otherwise
// Error(kUnsupportedLayout).
Component MakeSphereQueryComponent(const Point& center, const mpz_class& radius,
                                   Layout layout,
                                   std::span<const size_t> cols = {});

struct RangeReduction {
  Component component;
  // Center is zero outside `col`; the radius applies to `col` only.
  SphereQuery sphere;
};

// Even width: center (lo+hi)/2, R = (hi-lo)/2. Odd width: R = (hi-lo+1)/2,
// center lo+R, which also admits hi+1. Needs the unified layout.
RangeReduction MakeRangeQueryComponent(const RangeQuery& rq, size_t d,
                                       Layout layout);

mpz_class PlaintextDot(const Component& a, const Component& b);

// Squared distance over `cols` (all columns if empty).
mpz_class SquaredDistance(const Point& a, const Point& b,
                          std::span<const size_t> cols = {});

// floor(x / f) per coordinate, also for negative x.
Point CoarseTransform(const Point& p, int64_t f);

// floor(sqrt(v) / (2 sqrt(d) + 1)); Error(kConfig) if below 2.
int64_t CoarsityBase(uint64_t v, size_t d);

// Exact ceil(r / f + sqrt(d)) for integer r >= 0, f >= 1.
int64_t TransformedRadius(int64_t r, int64_t f, size_t d);

// 0 if r^2 <= v, else the least e in [1, e_max] whose transformed radius
// r_hat = ceil(r / base^e + sqrt(d)) satisfies r_hat^2 <= v. Throws
// Error(kQueryUnsupported) if none does.
int SelectCoarsityExponent(int64_t r, uint64_t v, size_t d, int e_max,
                           int64_t base = 2);

struct Layer {
  int index = 0;              // storage level
  int64_t coarsity = 1;       // base^index
  double planning_radius = 0; // radius in the original space
  int64_t radius = 0;         // integer radius used at that level
};

struct LayerPlan {
  std::vector<Layer> layers;
};

// Layered radius procedure as published: layer 0 at r, then
// r <- r - sqrt(v); while r > 0 { r += b_c^i sqrt(d); add (i, r);
// r -= b_c^i sqrt(v) }, with radius ceil(r_i / b_c^i) for i >= 1.
// This plan can miss points (see CoveringPlan). Throws
// Error(kQueryUnsupported) if more than e_max + 1 layers are needed.
LayerPlan LayeredRadii(double r, uint64_t v, size_t d, int64_t b_c, int e_max);

// Layer plan with no false negatives. Layer 0 runs at r and captures
// dist^2 in [r^2 - v, r^2], leaving the ball of radius U = sqrt(r^2 - v).
// Level i covers U with r_hat = ceil(U / f + sqrt(d)); it finishes the plan
// if r_hat^2 <= v and otherwise leaves U' = f (sqrt(r_hat^2 - v) + sqrt(d)).
// Levels that do not shrink U are skipped. Throws Error(kQueryUnsupported)
// if U is still open after level e_max.
LayerPlan CoveringPlan(int64_t r, uint64_t v, size_t d, int64_t b_c, int e_max);

}  // namespace shrq

#endif  // SHRQ_GEOMETRY_H_
