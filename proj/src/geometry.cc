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

#include "shrq/geometry.h"

#include <cmath>
#include <limits>
#include <string>

#include "shrq/errors.h"

namespace shrq {
namespace {

constexpr double kEpsilon = 1e-9;

mpz_class Big(int64_t x) {
  mpz_class r;
  mpz_set_si(r.get_mpz_t(), x);
  return r;
}

int64_t FloorDiv(int64_t x, int64_t f) {
  int64_t q = x / f;
  if ((x % f != 0) && ((x < 0) != (f < 0))) --q;
  return q;
}

// base^e, or Error(kQueryUnsupported) on overflow.
int64_t CheckedPower(int64_t base, int e) {
  int64_t f = 1;
  for (int i = 0; i < e; ++i) {
    if (f > std::numeric_limits<int64_t>::max() / base) {
      throw Error(ErrorCode::kQueryUnsupported, "coarsity overflows 64 bits");
    }
    f *= base;
  }
  return f;
}

std::vector<size_t> ResolveColumns(std::span<const size_t> cols, size_t d) {
  std::vector<size_t> out;
  if (cols.empty()) {
    for (size_t i = 0; i < d; ++i) out.push_back(i);
    return out;
  }
  std::vector<bool> seen(d, false);
  for (size_t c : cols) {
    if (c >= d) {
      throw Error(ErrorCode::kConfig, "column " + std::to_string(c) +
                                          " out of range for d = " +
                                          std::to_string(d));
    }
    if (seen[c]) {
      throw Error(ErrorCode::kConfig, "duplicate column " + std::to_string(c));
    }
    seen[c] = true;
    out.push_back(c);
  }
  return out;
}

std::string Unsupported(int64_t r, uint64_t v, int e_max) {
  std::string msg = "query radius " + std::to_string(r) + " is not supported: ";
  if (e_max == 0) return msg + "r > sqrt(v) with v = " + std::to_string(v);
  return msg + "no coarsity level up to E_max = " + std::to_string(e_max) +
         " brings the transformed radius within sqrt(v), v = " +
         std::to_string(v);
}

}  // namespace

std::string_view LayoutName(Layout layout) {
  return layout == Layout::kShrq ? "shrq" : "unified";
}

Layout LayoutFromName(std::string_view name) {
  if (name == "shrq") return Layout::kShrq;
  if (name == "unified") return Layout::kUnified;
  throw Error(ErrorCode::kConfig, "unknown layout '" + std::string(name) + "'");
}

size_t ComponentLength(Layout layout, size_t d) {
  return layout == Layout::kShrq ? d + 2 : 2 * d + 1;
}

Component MakeDataComponent(const Point& p, Layout layout) {
  const size_t d = p.size();
  Component c;
  c.const_slot = d;
  c.entries.reserve(ComponentLength(layout, d));
  for (int64_t x : p) c.entries.push_back(Big(x));
  c.entries.push_back(1);
  if (layout == Layout::kShrq) {
    mpz_class norm = 0;
    for (int64_t x : p) norm += Big(x) * Big(x);
    c.entries.push_back(norm);
  } else {
    for (int64_t x : p) c.entries.push_back(Big(x) * Big(x));
  }
  return c;
}

Component MakeSphereQueryComponent(const Point& center, const mpz_class& radius,
                                   Layout layout, std::span<const size_t> cols) {
  const size_t d = center.size();
  std::vector<size_t> active = ResolveColumns(cols, d);
  if (layout == Layout::kShrq && active.size() != d) {
    throw Error(ErrorCode::kUnsupportedLayout,
                "column subsets need the unified layout");
  }
  std::vector<bool> on(d, false);
  for (size_t c : active) on[c] = true;

  Component q;
  q.const_slot = d;
  q.entries.reserve(ComponentLength(layout, d));
  mpz_class constant = radius * radius;
  for (size_t i = 0; i < d; ++i) {
    q.entries.push_back(on[i] ? 2 * Big(center[i]) : mpz_class(0));
    if (on[i]) constant -= Big(center[i]) * Big(center[i]);
  }
  q.entries.push_back(constant);
  if (layout == Layout::kShrq) {
    q.entries.push_back(-1);
  } else {
    for (size_t i = 0; i < d; ++i) q.entries.push_back(on[i] ? -1 : 0);
  }
  return q;
}

RangeReduction MakeRangeQueryComponent(const RangeQuery& rq, size_t d,
                                       Layout layout) {
  if (layout != Layout::kUnified) {
    throw Error(ErrorCode::kUnsupportedLayout,
                "range queries need the unified layout");
  }
  if (rq.lo > rq.hi) {
    throw Error(ErrorCode::kConfig, "range lower bound exceeds upper bound");
  }
  if (rq.col >= d) {
    throw Error(ErrorCode::kConfig, "range column out of range");
  }
  const int64_t width = rq.hi - rq.lo;
  RangeReduction out;
  out.sphere.center.assign(d, 0);
  if (width % 2 == 0) {
    out.sphere.radius = width / 2;
    out.sphere.center[rq.col] = rq.lo + width / 2;
  } else {
    out.sphere.radius = (width + 1) / 2;
    out.sphere.center[rq.col] = rq.lo + out.sphere.radius;
  }
  const size_t col[] = {rq.col};
  out.component = MakeSphereQueryComponent(
      out.sphere.center, Big(out.sphere.radius), layout, col);
  return out;
}

mpz_class PlaintextDot(const Component& a, const Component& b) {
  if (a.entries.size() != b.entries.size()) {
    throw Error(ErrorCode::kProtocol, "component length mismatch");
  }
  mpz_class acc = 0;
  for (size_t i = 0; i < a.entries.size(); ++i) {
    acc += a.entries[i] * b.entries[i];
  }
  return acc;
}

mpz_class SquaredDistance(const Point& a, const Point& b,
                          std::span<const size_t> cols) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kConfig, "point dimension mismatch");
  }
  mpz_class acc = 0;
  for (size_t c : ResolveColumns(cols, a.size())) {
    mpz_class diff = Big(a[c]) - Big(b[c]);
    acc += diff * diff;
  }
  return acc;
}

Point CoarseTransform(const Point& p, int64_t f) {
  if (f < 1) throw Error(ErrorCode::kConfig, "coarsity must be positive");
  Point out(p.size());
  for (size_t i = 0; i < p.size(); ++i) out[i] = FloorDiv(p[i], f);
  return out;
}

int64_t CoarsityBase(uint64_t v, size_t d) {
  double raw = std::sqrt(static_cast<double>(v)) /
               (2.0 * std::sqrt(static_cast<double>(d)) + 1.0);
  int64_t b = static_cast<int64_t>(std::floor(raw + kEpsilon));
  if (b < 2) {
    throw Error(ErrorCode::kConfig,
                "coarsity base floor(sqrt(v)/(2 sqrt(d)+1)) = " +
                    std::to_string(b) + " is below 2 for v = " +
                    std::to_string(v) + ", d = " + std::to_string(d) +
                    "; the layered protocol is unsupported");
  }
  return b;
}

int64_t TransformedRadius(int64_t r, int64_t f, size_t d) {
  if (r < 0 || f < 1) {
    throw Error(ErrorCode::kConfig, "invalid radius or coarsity");
  }
  // Least k with k f - r >= f sqrt(d), i.e. (k f - r)^2 >= d f^2.
  mpz_class big_f = Big(f);
  mpz_class need = big_f * big_f * static_cast<unsigned long>(d);
  mpz_class k;
  mpz_cdiv_q(k.get_mpz_t(), Big(r).get_mpz_t(), big_f.get_mpz_t());
  for (;;) {
    mpz_class t = k * big_f - Big(r);
    if (t * t >= need) break;
    ++k;
  }
  if (!k.fits_slong_p()) {
    throw Error(ErrorCode::kQueryUnsupported, "transformed radius too large");
  }
  return k.get_si();
}

int SelectCoarsityExponent(int64_t r, uint64_t v, size_t d, int e_max,
                           int64_t base) {
  if (r < 0) throw Error(ErrorCode::kConfig, "radius must be non-negative");
  const mpz_class big_v(std::to_string(v));
  if (Big(r) * Big(r) <= big_v) return 0;
  for (int e = 1; e <= e_max; ++e) {
    int64_t r_hat = TransformedRadius(r, CheckedPower(base, e), d);
    if (Big(r_hat) * Big(r_hat) <= big_v) return e;
  }
  throw Error(ErrorCode::kQueryUnsupported, Unsupported(r, v, e_max));
}

LayerPlan LayeredRadii(double r, uint64_t v, size_t d, int64_t b_c, int e_max) {
  if (b_c < 2) throw Error(ErrorCode::kConfig, "coarsity base must be >= 2");
  const double sqrt_v = std::sqrt(static_cast<double>(v));
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  const double top = static_cast<double>(CheckedPower(b_c, e_max));
  if (r / top + sqrt_d > sqrt_v + kEpsilon) {
    throw Error(ErrorCode::kQueryUnsupported,
                "query radius is not supported: r / b_c^E_max + sqrt(d) > "
                "sqrt(v)");
  }
  LayerPlan plan;
  plan.layers.push_back(Layer{0, 1, r, static_cast<int64_t>(std::ceil(r))});
  double residual = r - sqrt_v;
  for (int i = 1; residual > kEpsilon; ++i) {
    if (i > e_max) {
      throw Error(ErrorCode::kQueryUnsupported,
                  "layer plan needs more than E_max levels");
    }
    const int64_t f = CheckedPower(b_c, i);
    residual += static_cast<double>(f) * sqrt_d;
    plan.layers.push_back(
        Layer{i, f, residual,
              static_cast<int64_t>(std::ceil(residual / static_cast<double>(f)))});
    residual -= static_cast<double>(f) * sqrt_v;
  }
  return plan;
}

LayerPlan CoveringPlan(int64_t r, uint64_t v, size_t d, int64_t b_c,
                       int e_max) {
  if (b_c < 2) throw Error(ErrorCode::kConfig, "coarsity base must be >= 2");
  if (r < 0) throw Error(ErrorCode::kConfig, "radius must be non-negative");
  const mpz_class big_v(std::to_string(v));
  LayerPlan plan;
  plan.layers.push_back(Layer{0, 1, static_cast<double>(r), r});
  if (Big(r) * Big(r) <= big_v) return plan;

  const double vd = static_cast<double>(v);
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  double uncovered = std::sqrt(static_cast<double>(r) * r - vd) + kEpsilon;
  for (int i = 1; i <= e_max; ++i) {
    const int64_t f = CheckedPower(b_c, i);
    const double fd = static_cast<double>(f);
    const int64_t r_hat =
        static_cast<int64_t>(std::ceil(uncovered / fd + sqrt_d + kEpsilon));
    const double r_hat_sq = static_cast<double>(r_hat) * r_hat;
    if (Big(r_hat) * Big(r_hat) <= big_v) {
      plan.layers.push_back(Layer{i, f, uncovered, r_hat});
      return plan;
    }
    double next = fd * (std::sqrt(r_hat_sq - vd) + sqrt_d) + kEpsilon;
    if (next < uncovered) {
      plan.layers.push_back(Layer{i, f, uncovered, r_hat});
      uncovered = next;
    }
  }
  throw Error(ErrorCode::kQueryUnsupported, Unsupported(r, v, e_max));
}

}  // namespace shrq
