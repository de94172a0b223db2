// Copyright 2026 The thetazero Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "thetazero/projline.h"

#include <algorithm>

#include "thetazero/errors.h"

namespace tz {

// ---- Laurent ----

void LaurentOps::Normalize(T& x) {
  size_t first = 0;
  while (first < x.c.size() && x.c[first].a.v == 0 && x.c[first].b.v == 0) ++first;
  if (first == x.c.size()) {
    x = T{};
    return;
  }
  while (x.c.back().a.v == 0 && x.c.back().b.v == 0) x.c.pop_back();
  if (first > 0) {
    x.c.erase(x.c.begin(), x.c.begin() + static_cast<long>(first));
    x.low += static_cast<int>(first);
  }
}

Laurent LaurentOps::from_poly(const Poly& p) const {
  T x{0, p.c};
  Normalize(x);
  return x;
}

Laurent LaurentOps::monomial(Fq2 c, int k) const {
  T x{k, {c}};
  Normalize(x);
  return x;
}

Fq2 LaurentOps::coeff(const T& x, int k) const {
  if (x.is_zero() || k < x.low || k > x.high()) return F_->zero2();
  return x.c[k - x.low];
}

Laurent LaurentOps::add(const T& x, const T& y) const {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const int lo = std::min(x.low, y.low), hi = std::max(x.high(), y.high());
  T r{lo, std::vector<Fq2>(hi - lo + 1, F_->zero2())};
  for (size_t i = 0; i < x.c.size(); ++i) r.c[x.low - lo + i] = x.c[i];
  for (size_t i = 0; i < y.c.size(); ++i) {
    Fq2& s = r.c[y.low - lo + i];
    s = F_->add(s, y.c[i]);
  }
  Normalize(r);
  return r;
}

Laurent LaurentOps::neg(const T& x) const {
  T r = x;
  for (auto& c : r.c) c = F_->neg(c);
  return r;
}

Laurent LaurentOps::mul(const T& x, const T& y) const {
  if (x.is_zero() || y.is_zero()) return T{};
  T r{x.low + y.low, std::vector<Fq2>(x.c.size() + y.c.size() - 1, F_->zero2())};
  for (size_t i = 0; i < x.c.size(); ++i)
    for (size_t j = 0; j < y.c.size(); ++j)
      r.c[i + j] = F_->add(r.c[i + j], F_->mul(x.c[i], y.c[j]));
  Normalize(r);
  return r;
}

Laurent LaurentOps::scale(const T& x, Fq2 c) const {
  T r = x;
  for (auto& a : r.c) a = F_->mul(a, c);
  Normalize(r);
  return r;
}

Laurent LaurentOps::sigma(const T& x) const {
  T r = x;
  for (auto& a : r.c) a = F_->sigma(a);
  return r;
}

Laurent LaurentOps::truncate(const T& x, int lo, int hi) const {
  if (hi < lo || x.is_zero()) return T{};
  const int a = std::max(lo, x.low), b = std::min(hi, x.high());
  if (b < a) return T{};
  T r{a, std::vector<Fq2>(x.c.begin() + (a - x.low), x.c.begin() + (b - x.low + 1))};
  Normalize(r);
  return r;
}

Laurent LaurentOps::expand_at_infinity(const RatFunc& x, int min_exp) const {
  Poly quo, rem;
  R_->divmod(x.num, x.den, &quo, &rem);
  T out = from_poly(quo);
  const int dd = x.den.deg();
  const Fq2 li = F_->inv(R_->lead(x.den));
  // rem / den = sum_{e <= -1} c_e t^e.
  for (int e = -1; e >= min_exp; --e) {
    Fq2 c = F_->zero2();
    if (!rem.is_zero() && rem.deg() == dd - 1) c = F_->mul(R_->lead(rem), li);
    if (c != F_->zero2()) out = add(out, monomial(c, e));
    rem = R_->shift(rem, 1);
    if (c != F_->zero2()) rem = R_->sub(rem, R_->scale(x.den, c));
  }
  return out;
}

Fq2 LaurentOps::trace_residue(const Mat<T>& a, const Mat<T>& b) const {
  Require(a.cols == b.rows && a.rows == b.cols, ErrorCode::kInvalidArgument,
          "trace_residue shape");
  Fq2 acc = F_->zero2();
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) {
      const T& x = a(i, j);
      const T& y = b(j, i);
      if (x.is_zero() || y.is_zero()) continue;
      for (size_t k = 0; k < x.c.size(); ++k)
        acc = F_->add(acc, F_->mul(x.c[k], coeff(y, -1 - (x.low + static_cast<int>(k)))));
    }
  return acc;
}

// ---- bundles and maps ----

int SplitBundle::degree2() const {
  int s = 0;
  for (int d : twists) s += d;
  return s;
}

SplitBundle SplitBundle::dual() const {
  SplitBundle r = *this;
  for (int& d : r.twists) d = -d;
  return r;
}

SplitBundle SplitBundle::twist(int k) const {
  SplitBundle r = *this;
  for (int& d : r.twists) d += k;
  return r;
}

SplitBundle DirectSum(const SplitBundle& a, const SplitBundle& b) {
  SplitBundle r = a;
  r.twists.insert(r.twists.end(), b.twists.begin(), b.twists.end());
  return r;
}

void CheckSheafMap(const SheafMap& f) {
  Require(f.m.rows == f.tgt.rank() && f.m.cols == f.src.rank(),
          ErrorCode::kInvalidArgument, "sheaf map shape does not match bundles");
  for (int j = 0; j < f.m.rows; ++j)
    for (int i = 0; i < f.m.cols; ++i) {
      const int d = f.tgt.twists[j] - f.src.twists[i];
      Require(f.m(j, i).is_zero() || f.m(j, i).deg() <= d, ErrorCode::kInvalidArgument,
              "sheaf map entry (" + std::to_string(j) + "," + std::to_string(i) +
                  ") exceeds its form degree " + std::to_string(d));
    }
}

SheafMap Compose(const PolyRing& R, const SheafMap& g, const SheafMap& f) {
  Require(g.src == f.tgt, ErrorCode::kInvalidArgument, "compose: bundle mismatch");
  return SheafMap{f.src, g.tgt, MatMul(R, g.m, f.m)};
}

SheafMap SigmaTwist(const PolyRing& R, const SheafMap& f) {
  return SheafMap{f.src, f.tgt, PolyMatSigma(R, f.m)};
}

SheafMap SigmaDual(const PolyRing& R, const SheafMap& f) {
  return SheafMap{f.tgt.dual(), f.src.dual(), Transpose(PolyMatSigma(R, f.m))};
}

SheafMap ZeroMap(const SplitBundle& src, const SplitBundle& tgt) {
  return SheafMap{src, tgt, PolyMat(tgt.rank(), src.rank(), Poly{})};
}

SheafMap IdentityMap(const PolyRing& R, const SplitBundle& e) {
  return SheafMap{e, e, PolyIdentity(R, e.rank())};
}

// ---- Ext classes ----

ExtClass SigmaTwist(const PolyRing& R, const ExtClass& e) {
  LaurentOps L(R);
  ExtClass r = e;
  for (auto& x : r.c.a) x = L.sigma(x);
  return r;
}

ExtClass ReduceCocycle(const PolyRing& R, const SplitBundle& src,
                       const SplitBundle& tgt, const Mat<Laurent>& c) {
  Require(c.rows == tgt.rank() && c.cols == src.rank(), ErrorCode::kInvalidArgument,
          "cocycle shape does not match bundles");
  LaurentOps L(R);
  ExtClass e{src, tgt, c};
  for (int j = 0; j < c.rows; ++j)
    for (int i = 0; i < c.cols; ++i) {
      const int d = tgt.twists[j] - src.twists[i];
      e.c(j, i) = L.truncate(c(j, i), d + 1, -1);
    }
  return e;
}

Mat<Laurent> ToLaurent(const PolyRing& R, const PolyMat& m) {
  LaurentOps L(R);
  Mat<Laurent> r(m.rows, m.cols, Laurent{});
  for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = L.from_poly(m.a[i]);
  return r;
}

namespace {

// The matrix of f on the chart {x != 0} in the coordinate u = 1/t.
PolyMat ChartX(const PolyRing& R, const SheafMap& f) {
  PolyMat r(f.m.rows, f.m.cols, Poly{});
  for (int j = 0; j < f.m.rows; ++j)
    for (int i = 0; i < f.m.cols; ++i) {
      const int d = f.tgt.twists[j] - f.src.twists[i];
      if (d >= 0) r(j, i) = R.reverse(f.m(j, i), d);
    }
  return r;
}

bool UnitSmith(const PolyRing& R, const PolyMat& m) {
  const auto s = SmithNormalForm(R, m);
  for (const auto& d : s.diagonal())
    if (d.deg() != 0) return false;
  return true;
}

// Right inverse of a matrix with unit Smith form and at most as many rows as
// columns.
PolyMat RightInverse(const PolyRing& R, const PolyMat& m) {
  const auto s = SmithNormalForm(R, m);
  for (const auto& d : s.diagonal())
    Require(d.deg() == 0, ErrorCode::kNotSaturated, "map is not surjective on a chart");
  const auto diag = s.diagonal();
  PolyMat wk(m.cols, m.rows, Poly{});
  for (int i = 0; i < m.cols; ++i)
    for (int j = 0; j < m.rows; ++j)
      wk(i, j) = R.scale(s.W(i, j), R.field().inv(diag[j].c[0]));
  PolyMat out = MatMul(R, wk, s.U);
  if (!(MatMul(R, m, out) == PolyIdentity(R, m.rows)))
    throw InvariantError("right inverse check failed");
  return out;
}

}  // namespace

ExtClass ComposeExtMap(const PolyRing& R, const ExtClass& e, const SheafMap& f) {
  Require(e.src == f.tgt, ErrorCode::kInvalidArgument, "ext o map: bundle mismatch");
  return ReduceCocycle(R, f.src, e.tgt, MatMul(LaurentOps(R), e.c, ToLaurent(R, f.m)));
}

ExtClass ComposeMapExt(const PolyRing& R, const SheafMap& g, const ExtClass& e) {
  Require(g.src == e.tgt, ErrorCode::kInvalidArgument, "map o ext: bundle mismatch");
  return ReduceCocycle(R, e.src, g.tgt, MatMul(LaurentOps(R), ToLaurent(R, g.m), e.c));
}

ExtClass Connecting(const PolyRing& R, const ExtClass& e, const SheafMap& phi) {
  return ComposeExtMap(R, e, phi);
}

// ---- Hom / Ext spaces ----

HomSpace::HomSpace(const PolyRing& R, SplitBundle a, SplitBundle b)
    : R_(&R), a_(std::move(a)), b_(std::move(b)) {
  for (int j = 0; j < b_.rank(); ++j)
    for (int i = 0; i < a_.rank(); ++i) dim2_ += H0Dim(b_.twists[j] - a_.twists[i]);
}

std::vector<SheafMap> HomSpace::Basis2() const {
  std::vector<SheafMap> out;
  const Fq2 one = R_->field().one2();
  for (int j = 0; j < b_.rank(); ++j)
    for (int i = 0; i < a_.rank(); ++i)
      for (int k = 0; k < H0Dim(b_.twists[j] - a_.twists[i]); ++k) {
        SheafMap f = ZeroMap(a_, b_);
        f.m(j, i) = R_->monomial(one, k);
        out.push_back(f);
      }
  return out;
}

std::vector<Fq> HomSpace::Coords(const SheafMap& f) const {
  Require(f.src == a_ && f.tgt == b_, ErrorCode::kInvalidArgument,
          "hom coordinates: bundle mismatch");
  std::vector<Fq> v;
  v.reserve(dimq());
  for (int j = 0; j < b_.rank(); ++j)
    for (int i = 0; i < a_.rank(); ++i)
      for (int k = 0; k < H0Dim(b_.twists[j] - a_.twists[i]); ++k) {
        const Fq2 c = R_->coeff(f.m(j, i), k);
        v.push_back(c.a);
        v.push_back(c.b);
      }
  return v;
}

SheafMap HomSpace::FromCoords(const std::vector<Fq>& v) const {
  Require(static_cast<int>(v.size()) == dimq(), ErrorCode::kInvalidArgument,
          "hom coordinates: wrong length");
  SheafMap f = ZeroMap(a_, b_);
  size_t pos = 0;
  for (int j = 0; j < b_.rank(); ++j)
    for (int i = 0; i < a_.rank(); ++i) {
      std::vector<Fq2> c;
      for (int k = 0; k < H0Dim(b_.twists[j] - a_.twists[i]); ++k, pos += 2)
        c.push_back(Fq2{v[pos], v[pos + 1]});
      f.m(j, i) = R_->from_coeffs(std::move(c));
    }
  return f;
}

Ext1Space::Ext1Space(const PolyRing& R, SplitBundle a, SplitBundle b)
    : R_(&R), a_(std::move(a)), b_(std::move(b)) {
  for (int j = 0; j < b_.rank(); ++j)
    for (int i = 0; i < a_.rank(); ++i) dim2_ += H1Dim(b_.twists[j] - a_.twists[i]);
}

std::vector<ExtClass> Ext1Space::Basis2() const {
  std::vector<ExtClass> out;
  LaurentOps L(*R_);
  const Fq2 one = R_->field().one2();
  for (int j = 0; j < b_.rank(); ++j)
    for (int i = 0; i < a_.rank(); ++i) {
      const int d = b_.twists[j] - a_.twists[i];
      for (int k = d + 1; k <= -1; ++k) {
        ExtClass e{a_, b_, Mat<Laurent>(b_.rank(), a_.rank(), Laurent{})};
        e.c(j, i) = L.monomial(one, k);
        out.push_back(e);
      }
    }
  return out;
}

std::vector<Fq> Ext1Space::Coords(const ExtClass& e) const {
  Require(e.src == a_ && e.tgt == b_, ErrorCode::kInvalidArgument,
          "ext coordinates: bundle mismatch");
  LaurentOps L(*R_);
  std::vector<Fq> v;
  v.reserve(dimq());
  for (int j = 0; j < b_.rank(); ++j)
    for (int i = 0; i < a_.rank(); ++i) {
      const int d = b_.twists[j] - a_.twists[i];
      for (int k = d + 1; k <= -1; ++k) {
        const Fq2 c = L.coeff(e.c(j, i), k);
        v.push_back(c.a);
        v.push_back(c.b);
      }
    }
  return v;
}

ExtClass Ext1Space::FromCoords(const std::vector<Fq>& v) const {
  Require(static_cast<int>(v.size()) == dimq(), ErrorCode::kInvalidArgument,
          "ext coordinates: wrong length");
  LaurentOps L(*R_);
  ExtClass e{a_, b_, Mat<Laurent>(b_.rank(), a_.rank(), Laurent{})};
  size_t pos = 0;
  for (int j = 0; j < b_.rank(); ++j)
    for (int i = 0; i < a_.rank(); ++i) {
      const int d = b_.twists[j] - a_.twists[i];
      Laurent x;
      for (int k = d + 1; k <= -1; ++k, pos += 2)
        x = L.add(x, L.monomial(Fq2{v[pos], v[pos + 1]}, k));
      e.c(j, i) = x;
    }
  return e;
}

// ---- duality ----

Fq SerrePairing(const PolyRing& R, const SheafMap& phi, const ExtClass& xi) {
  Require(xi.src == phi.tgt && xi.tgt == phi.src.twist(-2),
          ErrorCode::kInvalidArgument, "Serre pairing: twist mismatch");
  LaurentOps L(R);
  return R.field().trace(L.trace_residue(xi.c, ToLaurent(R, phi.m)));
}

Fq TraceToH1Omega(const PolyRing& R, const ExtClass& xi) {
  Require(xi.src == xi.tgt.twist(2), ErrorCode::kInvalidArgument,
          "trace to H^1(omega): expected Ext^1(F(2), F)");
  LaurentOps L(R);
  Fq2 acc = R.field().zero2();
  for (int i = 0; i < xi.c.rows; ++i)
    acc = R.field().add(acc, L.coeff(xi.c(i, i), -1));
  return R.field().trace(acc);
}

// ---- sequences ----

bool IsSaturated(const PolyRing& R, const SheafMap& f) {
  CheckSheafMap(f);
  if (f.m.rows == 0 || f.m.cols == 0) return true;
  return UnitSmith(R, f.m) && UnitSmith(R, ChartX(R, f));
}

ChartSplitting SplitSurjection(const PolyRing& R, const SheafMap& p) {
  CheckSheafMap(p);
  Require(p.m.rows <= p.m.cols, ErrorCode::kInvalidArgument,
          "surjection must not increase rank");
  LaurentOps L(R);
  ChartSplitting out;
  out.sy = ToLaurent(R, RightInverse(R, p.m));
  const PolyMat sxu = RightInverse(R, ChartX(R, p));
  out.sx = Mat<Laurent>(sxu.rows, sxu.cols, Laurent{});
  for (int i = 0; i < sxu.rows; ++i)
    for (int j = 0; j < sxu.cols; ++j) {
      const int shift = p.src.twists[i] - p.tgt.twists[j];
      const Poly& s = sxu(i, j);
      Laurent x;
      for (int k = 0; k <= s.deg(); ++k) x = L.add(x, L.monomial(s.c[k], shift - k));
      out.sx(i, j) = x;
    }
  return out;
}

PolyMat RightInverseY(const PolyRing& R, const SheafMap& p) {
  return RightInverse(R, p.m);
}

PolyMat LeftInverseY(const PolyRing& R, const SheafMap& i) {
  return Transpose(RightInverse(R, Transpose(i.m)));
}

ExtClass ExtClassOfSequence(const PolyRing& R, const SheafMap& i, const SheafMap& p) {
  CheckSheafMap(i);
  CheckSheafMap(p);
  Require(i.tgt == p.src, ErrorCode::kInvalidArgument, "sequence: bundle mismatch");
  Require(i.src.rank() + p.tgt.rank() == i.tgt.rank(), ErrorCode::kInvalidArgument,
          "sequence: ranks do not add up");
  Require(IsZeroMat(R, Compose(R, p, i).m), ErrorCode::kInvalidArgument,
          "sequence: p o i is not zero");
  Require(IsSaturated(R, i), ErrorCode::kNotSaturated,
          "sequence: inclusion is not a subbundle");
  Require(IsSaturated(R, p), ErrorCode::kNotSaturated,
          "sequence: quotient map is not surjective");
  LaurentOps L(R);
  const ChartSplitting s = SplitSurjection(R, p);
  Mat<Laurent> diff = s.sx;
  for (size_t k = 0; k < diff.a.size(); ++k) diff.a[k] = L.sub(s.sx.a[k], s.sy.a[k]);
  const Mat<Laurent> c = MatMul(L, ToLaurent(R, LeftInverseY(R, i)), diff);
  // Sanity: i c = diff exactly, since diff lands in ker p = im i.
  if (!(MatMul(L, ToLaurent(R, i.m), c) == diff))
    throw InvariantError("chart splitting difference is not in the subbundle");
  return ReduceCocycle(R, p.tgt, i.src, c);
}

}  // namespace tz
