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

// Supersingular curve E: y^2 = x^3 + x over F_p, p = 3 (mod 4), #E(F_p) = p+1.
//
// e(P, Q) = f_{N,P}(phi(Q))^((p^2-1)/N), phi(x, y) = (-x, i*y), i^2 = -1.
//
// Miller loop in Jacobian coordinates. Every line value is scaled by a
// nonzero F_p factor (2*Y*Z^3 for tangents, Z*H for chords) and vertical
// lines are dropped; both are F_p elements and vanish under the final
// exponentiation because p - 1 divides (p^2 - 1)/N.

#include <utility>

#include "pairing_internal.h"
#include "shrq/errors.h"

namespace shrq::internal {
namespace {

struct Fp2 {
  mpz_class a;  // real part
  mpz_class b;  // coefficient of i
};

struct Jacobian {
  mpz_class x, y, z;
  bool infinity = false;
};

class CurveA1Group final : public BilinearGroup {
 public:
  explicit CurveA1Group(const GroupDescriptor& descriptor)
      : BilinearGroup(descriptor),
        p_(descriptor.field_prime),
        cofactor_(descriptor.cofactor),
        sqrt_exponent_((descriptor.field_prime + 1) / 4),
        width_(ByteWidth(descriptor.field_prime)) {
    if (p_ + 1 != cofactor_ * order() || mpz_fdiv_ui(p_.get_mpz_t(), 4) != 3) {
      throw Error(ErrorCode::kConfig, "inconsistent curve descriptor");
    }
  }

  GElement Identity() const override { return GElement{0, 0, true}; }
  GTElement GtIdentity() const override { return GTElement{1, 0}; }

  GElement Mul(const GElement& a, const GElement& b) const override {
    if (a.infinity) return b;
    if (b.infinity) return a;
    if (a.x == b.x) {
      if (a.y == b.y) return AffineDouble(a);
      return Identity();
    }
    mpz_class lambda = Red((b.y - a.y) * Inv(b.x - a.x));
    mpz_class x3 = Red(lambda * lambda - a.x - b.x);
    mpz_class y3 = Red(lambda * (a.x - x3) - a.y);
    return GElement{x3, y3, false};
  }

  GElement Pow(const GElement& x, const mpz_class& k) const override {
    return ScalarMul(x, Mod(k, order()));
  }

  GTElement Mul(const GTElement& a, const GTElement& b) const override {
    Fp2 r = MulFp2({a.re, a.im}, {b.re, b.im});
    return GTElement{r.a, r.b};
  }

  GTElement Pow(const GTElement& x, const mpz_class& k) const override {
    Fp2 r = PowFp2({x.re, x.im}, Mod(k, order()));
    return GTElement{r.a, r.b};
  }

  GTElement Pair(const GElement& x, const GElement& y) const override {
    if (x.infinity || y.infinity) return GtIdentity();
    Fp2 r = FinalExponentiation(Miller(x, y));
    return GTElement{r.a, r.b};
  }

  GTElement PairProduct(std::span<const GElement> xs,
                        std::span<const GElement> ys) const override {
    if (xs.size() != ys.size()) {
      throw Error(ErrorCode::kProtocol, "pairing product length mismatch");
    }
    Fp2 acc{1, 0};
    for (size_t i = 0; i < xs.size(); ++i) {
      if (xs[i].infinity || ys[i].infinity) continue;
      acc = MulFp2(acc, Miller(xs[i], ys[i]));
    }
    Fp2 r = FinalExponentiation(acc);
    return GTElement{r.a, r.b};
  }

  GElement RandomElement(Random& rng) const override {
    for (;;) {
      mpz_class x = rng.Below(p_);
      mpz_class rhs = Red(x * x * x + x);
      if (rhs == 0) return Identity();  // 2-torsion, killed by the cofactor
      if (mpz_legendre(rhs.get_mpz_t(), p_.get_mpz_t()) != 1) continue;
      mpz_class y;
      mpz_powm(y.get_mpz_t(), rhs.get_mpz_t(), sqrt_exponent_.get_mpz_t(),
               p_.get_mpz_t());
      if (rng.Below(2) == 1) y = p_ - y;
      return ScalarMul(GElement{x, y, false}, cofactor_);
    }
  }

  size_t EncodedSize() const override { return 2 + 2 * width_; }
  size_t EncodedGtSize() const override { return 1 + 2 * width_; }

  void Encode(const GElement& x, Bytes& out) const override {
    out.push_back(kTagCurveG);
    out.push_back(x.infinity ? 1 : 0);
    AppendFixedWidth(x.infinity ? mpz_class(0) : x.x, width_, out);
    AppendFixedWidth(x.infinity ? mpz_class(0) : x.y, width_, out);
  }

  void Encode(const GTElement& x, Bytes& out) const override {
    out.push_back(kTagCurveGt);
    AppendFixedWidth(x.re, width_, out);
    AppendFixedWidth(x.im, width_, out);
  }

  GElement DecodeG(std::span<const uint8_t> bytes) const override {
    if (bytes.size() != EncodedSize() || bytes[0] != kTagCurveG ||
        bytes[1] > 1) {
      throw Error(ErrorCode::kProtocol, "bad curve point encoding");
    }
    mpz_class x = ReadFixedWidth(bytes.subspan(2, width_));
    mpz_class y = ReadFixedWidth(bytes.subspan(2 + width_, width_));
    if (bytes[1] == 1) {
      if (x != 0 || y != 0) {
        throw Error(ErrorCode::kProtocol, "non-canonical point at infinity");
      }
      return Identity();
    }
    if (x >= p_ || y >= p_) {
      throw Error(ErrorCode::kProtocol, "curve coordinate out of range");
    }
    GElement point{x, y, false};
    if (Red(y * y) != Red(x * x * x + x)) {
      throw Error(ErrorCode::kProtocol, "point is not on the curve");
    }
    if (!ScalarMul(point, order()).infinity) {
      throw Error(ErrorCode::kProtocol, "point is not in the order-N subgroup");
    }
    return point;
  }

  GTElement DecodeGt(std::span<const uint8_t> bytes) const override {
    if (bytes.size() != EncodedGtSize() || bytes[0] != kTagCurveGt) {
      throw Error(ErrorCode::kProtocol, "bad target group encoding");
    }
    Fp2 v{ReadFixedWidth(bytes.subspan(1, width_)),
          ReadFixedWidth(bytes.subspan(1 + width_, width_))};
    if (v.a >= p_ || v.b >= p_) {
      throw Error(ErrorCode::kProtocol, "F_p^2 coordinate out of range");
    }
    Fp2 check = PowFp2(v, order());
    if (check.a != 1 || check.b != 0) {
      throw Error(ErrorCode::kProtocol, "element order does not divide N");
    }
    return GTElement{v.a, v.b};
  }

 private:
  mpz_class Red(const mpz_class& v) const {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t());
    return r;
  }

  mpz_class Inv(const mpz_class& v) const {
    mpz_class r = Red(v);
    if (mpz_invert(r.get_mpz_t(), r.get_mpz_t(), p_.get_mpz_t()) == 0) {
      throw Error(ErrorCode::kProtocol, "inversion of zero in F_p");
    }
    return r;
  }

  Fp2 MulFp2(const Fp2& u, const Fp2& v) const {
    mpz_class ac = u.a * v.a;
    mpz_class bd = u.b * v.b;
    mpz_class cross = (u.a + u.b) * (v.a + v.b) - ac - bd;
    return Fp2{Red(ac - bd), Red(cross)};
  }

  Fp2 SqrFp2(const Fp2& u) const {
    return Fp2{Red((u.a + u.b) * (u.a - u.b)), Red(2 * u.a * u.b)};
  }

  // Raw exponent, no reduction mod N.
  Fp2 PowFp2(const Fp2& base, const mpz_class& e) const {
    Fp2 result{1, 0};
    if (e == 0) return result;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
      result = SqrFp2(result);
      if (mpz_tstbit(e.get_mpz_t(), i)) result = MulFp2(result, base);
    }
    return result;
  }

  GElement AffineDouble(const GElement& a) const {
    if (a.infinity || a.y == 0) return Identity();
    mpz_class lambda = Red((3 * a.x * a.x + 1) * Inv(2 * a.y));
    mpz_class x3 = Red(lambda * lambda - 2 * a.x);
    mpz_class y3 = Red(lambda * (a.x - x3) - a.y);
    return GElement{x3, y3, false};
  }

  void DoubleInPlace(Jacobian& t) const {
    if (t.infinity) return;
    if (t.y == 0) {
      t.infinity = true;
      return;
    }
    mpz_class xx = Red(t.x * t.x);
    mpz_class yy = Red(t.y * t.y);
    mpz_class zz = Red(t.z * t.z);
    mpz_class s = Red(4 * t.x * yy);
    mpz_class m = Red(3 * xx + zz * zz);
    mpz_class x3 = Red(m * m - 2 * s);
    mpz_class y3 = Red(m * (s - x3) - 8 * yy * yy);
    t.z = Red(2 * t.y * t.z);
    t.x = std::move(x3);
    t.y = std::move(y3);
  }

  // t += p for affine, non-infinity p.
  void AddAffineInPlace(Jacobian& t, const GElement& p) const {
    if (t.infinity) {
      t = Jacobian{p.x, p.y, 1, false};
      return;
    }
    mpz_class zz = Red(t.z * t.z);
    mpz_class h = Red(p.x * zz - t.x);
    mpz_class r = Red(p.y * zz * t.z - t.y);
    if (h == 0) {
      if (r == 0) {
        DoubleInPlace(t);
      } else {
        t.infinity = true;
      }
      return;
    }
    mpz_class hh = Red(h * h);
    mpz_class hhh = Red(h * hh);
    mpz_class v = Red(t.x * hh);
    mpz_class x3 = Red(r * r - hhh - 2 * v);
    mpz_class y3 = Red(r * (v - x3) - t.y * hhh);
    t.z = Red(t.z * h);
    t.x = std::move(x3);
    t.y = std::move(y3);
  }

  GElement ToAffine(const Jacobian& t) const {
    if (t.infinity) return Identity();
    mpz_class zinv = Inv(t.z);
    mpz_class zinv2 = Red(zinv * zinv);
    return GElement{Red(t.x * zinv2), Red(t.y * zinv2 * zinv), false};
  }

  // Raw scalar, no reduction mod N.
  GElement ScalarMul(const GElement& p, const mpz_class& k) const {
    if (p.infinity || k == 0) return Identity();
    Jacobian t;
    t.infinity = true;
    size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
      DoubleInPlace(t);
      if (mpz_tstbit(k.get_mpz_t(), i)) AddAffineInPlace(t, p);
    }
    return ToAffine(t);
  }

  // Tangent at t evaluated at phi(q), scaled by 2*Y*Z^3. Needs t.y != 0.
  Fp2 TangentLine(const Jacobian& t, const GElement& q) const {
    mpz_class zz = Red(t.z * t.z);
    mpz_class m = Red(3 * t.x * t.x + zz * zz);
    return Fp2{Red(m * (zz * q.x + t.x) - 2 * t.y * t.y),
               Red(2 * t.y * t.z * zz * q.y)};
  }

  // f_{N,P} evaluated at phi(Q), up to F_p factors.
  Fp2 Miller(const GElement& p, const GElement& q) const {
    const mpz_class& n = order();
    Fp2 f{1, 0};
    Jacobian t{p.x, p.y, 1, false};
    size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (size_t i = bits - 1; i-- > 0;) {
      f = SqrFp2(f);
      if (!t.infinity && t.y != 0) f = MulFp2(f, TangentLine(t, q));
      DoubleInPlace(t);
      if (mpz_tstbit(n.get_mpz_t(), i)) {
        if (t.infinity) {
          t = Jacobian{p.x, p.y, 1, false};
          continue;
        }
        mpz_class zz = Red(t.z * t.z);
        mpz_class h = Red(p.x * zz - t.x);
        mpz_class r = Red(p.y * zz * t.z - t.y);
        if (h != 0) {
          mpz_class zh = Red(t.z * h);
          Fp2 line{Red(r * (q.x + p.x) - zh * p.y), Red(zh * q.y)};
          f = MulFp2(f, line);
        } else if (r == 0) {
          // t == p, possible when p has order below N.
          f = MulFp2(f, TangentLine(t, q));
        }
        AddAffineInPlace(t, p);
      }
    }
    return f;
  }

  // f^((p^2 - 1)/N) = (conj(f)^2 / |f|^2)^l.
  Fp2 FinalExponentiation(const Fp2& f) const {
    mpz_class norm = Red(f.a * f.a + f.b * f.b);
    mpz_class norm_inv = Inv(norm);
    Fp2 conj_sq = SqrFp2(Fp2{f.a, Red(-f.b)});
    Fp2 unitary{Red(conj_sq.a * norm_inv), Red(conj_sq.b * norm_inv)};
    return PowFp2(unitary, cofactor_);
  }

  mpz_class p_;
  mpz_class cofactor_;
  mpz_class sqrt_exponent_;
  size_t width_;
};

}  // namespace

std::shared_ptr<const BilinearGroup> MakeCurveA1Group(
    const GroupDescriptor& descriptor) {
  return std::make_shared<CurveA1Group>(descriptor);
}

}  // namespace shrq::internal
