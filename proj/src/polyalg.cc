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

#include "thetazero/polyalg.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thetazero/errors.h"

namespace tz {
namespace {

void Trim(Poly& x) {
  while (!x.c.empty() && x.c.back().a.v == 0 && x.c.back().b.v == 0)
    x.c.pop_back();
}

}  // namespace

// ---- PolyRing ----

Poly PolyRing::constant(Fq2 x) const {
  Poly p{{x}};
  Trim(p);
  return p;
}

Poly PolyRing::monomial(Fq2 x, int k) const {
  Require(k >= 0, ErrorCode::kInvalidArgument, "negative monomial degree");
  Poly p;
  p.c.assign(k + 1, field_->zero2());
  p.c[k] = x;
  Trim(p);
  return p;
}

Poly PolyRing::from_coeffs(std::vector<Fq2> c) const {
  Poly p{std::move(c)};
  Trim(p);
  return p;
}

Fq2 PolyRing::coeff(const Poly& x, int k) const {
  if (k < 0 || k > x.deg()) return field_->zero2();
  return x.c[k];
}

Fq2 PolyRing::lead(const Poly& x) const {
  return x.is_zero() ? field_->zero2() : x.c.back();
}

Poly PolyRing::add(const Poly& x, const Poly& y) const {
  Poly r;
  r.c.resize(std::max(x.c.size(), y.c.size()), field_->zero2());
  for (size_t i = 0; i < r.c.size(); ++i)
    r.c[i] = field_->add(i < x.c.size() ? x.c[i] : field_->zero2(),
                         i < y.c.size() ? y.c[i] : field_->zero2());
  Trim(r);
  return r;
}

Poly PolyRing::sub(const Poly& x, const Poly& y) const { return add(x, neg(y)); }

Poly PolyRing::neg(const Poly& x) const {
  Poly r = x;
  for (auto& c : r.c) c = field_->neg(c);
  return r;
}

Poly PolyRing::mul(const Poly& x, const Poly& y) const {
  if (x.is_zero() || y.is_zero()) return Poly{};
  Poly r;
  r.c.assign(x.c.size() + y.c.size() - 1, field_->zero2());
  for (size_t i = 0; i < x.c.size(); ++i) {
    if (x.c[i] == field_->zero2()) continue;
    for (size_t j = 0; j < y.c.size(); ++j)
      r.c[i + j] = field_->add(r.c[i + j], field_->mul(x.c[i], y.c[j]));
  }
  Trim(r);
  return r;
}

Poly PolyRing::scale(const Poly& x, Fq2 c) const {
  Poly r = x;
  for (auto& a : r.c) a = field_->mul(a, c);
  Trim(r);
  return r;
}

Poly PolyRing::shift(const Poly& x, int k) const {
  Require(k >= 0, ErrorCode::kInvalidArgument, "negative shift");
  if (x.is_zero()) return x;
  Poly r;
  r.c.assign(k, field_->zero2());
  r.c.insert(r.c.end(), x.c.begin(), x.c.end());
  return r;
}

void PolyRing::divmod(const Poly& x, const Poly& y, Poly* quo, Poly* rem) const {
  Require(!y.is_zero(), ErrorCode::kInvalidArgument, "polynomial division by zero");
  Poly r = x;
  Poly q;
  const int dy = y.deg();
  if (r.deg() >= dy) q.c.assign(r.deg() - dy + 1, field_->zero2());
  const Fq2 inv_lead = field_->inv(y.c.back());
  while (r.deg() >= dy) {
    const int shift_by = r.deg() - dy;
    const Fq2 c = field_->mul(r.c.back(), inv_lead);
    q.c[shift_by] = c;
    for (int i = 0; i <= dy; ++i)
      r.c[shift_by + i] = field_->sub(r.c[shift_by + i], field_->mul(c, y.c[i]));
    Trim(r);
  }
  Trim(q);
  if (quo) *quo = std::move(q);
  if (rem) *rem = std::move(r);
}

Poly PolyRing::div(const Poly& x, const Poly& y) const {
  Poly q;
  divmod(x, y, &q, nullptr);
  return q;
}

Poly PolyRing::mod(const Poly& x, const Poly& y) const {
  Poly r;
  divmod(x, y, nullptr, &r);
  return r;
}

bool PolyRing::divides(const Poly& d, const Poly& x) const {
  if (d.is_zero()) return x.is_zero();
  return mod(x, d).is_zero();
}

Poly PolyRing::monic(const Poly& x) const {
  if (x.is_zero()) return x;
  return scale(x, field_->inv(x.c.back()));
}

Poly PolyRing::gcd(Poly x, Poly y) const {
  while (!y.is_zero()) {
    Poly r = mod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

Poly PolyRing::pow(const Poly& x, int e) const {
  Poly r = one(), b = x;
  for (; e > 0; e >>= 1, b = mul(b, b))
    if (e & 1) r = mul(r, b);
  return r;
}

Fq2 PolyRing::eval(const Poly& x, Fq2 at) const {
  Fq2 r = field_->zero2();
  for (int i = x.deg(); i >= 0; --i) r = field_->add(field_->mul(r, at), x.c[i]);
  return r;
}

Poly PolyRing::sigma(const Poly& x) const {
  Poly r = x;
  for (auto& c : r.c) c = field_->sigma(c);
  return r;
}

Poly PolyRing::reverse(const Poly& x, int d) const {
  Require(d >= x.deg(), ErrorCode::kInvalidArgument, "reverse degree too small");
  if (x.is_zero()) return x;
  Poly r;
  r.c.assign(d + 1, field_->zero2());
  for (int i = 0; i <= x.deg(); ++i) r.c[d - i] = x.c[i];
  Trim(r);
  return r;
}

Poly PolyRing::random(std::mt19937_64& rng, int max_deg) const {
  const int q2 = field_->q() * field_->q();
  Poly r;
  for (int i = 0; i <= max_deg; ++i)
    r.c.push_back(field_->element2(static_cast<int>(rng() % q2)));
  Trim(r);
  return r;
}

std::string PolyRing::to_string(const Poly& x) const {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = x.deg(); i >= 0; --i) {
    const Fq2 c = x.c[i];
    if (c == field_->zero2()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c.a.v << "," << c.b.v << ")";
    if (i > 0) os << "t^" << i;
  }
  return os.str();
}

PolyMat PolyMatSigma(const PolyRing& R, const PolyMat& m) {
  PolyMat r = m;
  for (auto& x : r.a) x = R.sigma(x);
  return r;
}

Poly PolyDet(const PolyRing& R, const PolyMat& m) {
  Require(m.rows == m.cols, ErrorCode::kInvalidArgument, "det of non-square");
  const int n = m.rows;
  if (n == 0) return R.one();
  if (n == 1) return m(0, 0);
  Poly det;
  for (int j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    PolyMat minor(n - 1, n - 1, Poly{});
    for (int r = 1; r < n; ++r)
      for (int c = 0, cc = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    Poly term = R.mul(m(0, j), PolyDet(R, minor));
    det = (j % 2 == 0) ? R.add(det, term) : R.sub(det, term);
  }
  return det;
}

PolyMat PolyIdentity(const PolyRing& R, int n) { return Identity(R, n); }

// ---- RatOps ----

RatFunc RatOps::make(const Poly& num, const Poly& den) const {
  Require(!den.is_zero(), ErrorCode::kInvalidArgument, "zero denominator");
  if (num.is_zero()) return zero();
  const Poly g = R_->gcd(num, den);
  Poly n = R_->div(num, g), d = R_->div(den, g);
  const Fq2 li = R_->field().inv(R_->lead(d));
  return RatFunc{R_->scale(n, li), R_->scale(d, li)};
}

RatFunc RatOps::add(const T& x, const T& y) const {
  if (x.den == y.den) return make(R_->add(x.num, y.num), x.den);
  return make(R_->add(R_->mul(x.num, y.den), R_->mul(y.num, x.den)),
              R_->mul(x.den, y.den));
}

RatFunc RatOps::sub(const T& x, const T& y) const { return add(x, neg(y)); }

RatFunc RatOps::mul(const T& x, const T& y) const {
  if (x.num.is_zero() || y.num.is_zero()) return zero();
  return make(R_->mul(x.num, y.num), R_->mul(x.den, y.den));
}

RatFunc RatOps::inv(const T& x) const {
  Require(!x.num.is_zero(), ErrorCode::kInvalidArgument, "inverse of zero in K'");
  return make(x.den, x.num);
}

RatFunc RatOps::frac(const T& x) const {
  return RatFunc{R_->mod(x.num, x.den), x.den};
}

Fq2 RatOps::coeff_at_infinity(const T& x, int k) const {
  Require(k < 0, ErrorCode::kInvalidArgument, "coefficient index must be negative");
  const Field& F = R_->field();
  // Long division of num by den continued into negative powers.
  Poly r = R_->mod(x.num, x.den);
  const int dd = x.den.deg();
  const Fq2 li = F.inv(R_->lead(x.den));
  for (int e = -1; e >= k; --e) {
    // r / den has leading term at t^{deg r - dd}; the working remainder is
    // scaled by t^{-e-1} so that its target power is e.
    const int target = r.deg() - dd;
    Fq2 c = F.zero2();
    if (!r.is_zero() && target == -1) c = F.mul(R_->lead(r), li);
    if (e == k) return c;
    r = R_->shift(r, 1);
    if (c != F.zero2()) r = R_->sub(r, R_->scale(x.den, c));
  }
  return F.zero2();
}

Mat<RatFunc> ToRat(const RatOps& K, const PolyMat& m) {
  Mat<RatFunc> r(m.rows, m.cols, K.zero());
  for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = K.from_poly(m.a[i]);
  return r;
}

// ---- Smith normal form ----

std::vector<Poly> SmithForm::diagonal() const {
  std::vector<Poly> d;
  for (int i = 0; i < std::min(D.rows, D.cols); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

class SmithWorker {
 public:
  SmithWorker(const PolyRing& R, const PolyMat& M)
      : R_(R), A(M), U(PolyIdentity(R, M.rows)), Uinv(U),
        W(PolyIdentity(R, M.cols)), Winv(W) {}

  // row i += c * row s
  void RowAdd(int i, int s, const Poly& c) {
    for (int j = 0; j < A.cols; ++j) A(i, j) = R_.add(A(i, j), R_.mul(c, A(s, j)));
    for (int j = 0; j < U.cols; ++j) U(i, j) = R_.add(U(i, j), R_.mul(c, U(s, j)));
    for (int r = 0; r < Uinv.rows; ++r)
      Uinv(r, s) = R_.sub(Uinv(r, s), R_.mul(Uinv(r, i), c));
  }
  // col j += c * col s
  void ColAdd(int j, int s, const Poly& c) {
    for (int i = 0; i < A.rows; ++i) A(i, j) = R_.add(A(i, j), R_.mul(c, A(i, s)));
    for (int i = 0; i < W.rows; ++i) W(i, j) = R_.add(W(i, j), R_.mul(c, W(i, s)));
    for (int k = 0; k < Winv.cols; ++k)
      Winv(s, k) = R_.sub(Winv(s, k), R_.mul(c, Winv(j, k)));
  }
  void RowSwap(int i, int s) {
    if (i == s) return;
    for (int j = 0; j < A.cols; ++j) std::swap(A(i, j), A(s, j));
    for (int j = 0; j < U.cols; ++j) std::swap(U(i, j), U(s, j));
    for (int r = 0; r < Uinv.rows; ++r) std::swap(Uinv(r, i), Uinv(r, s));
  }
  void ColSwap(int j, int s) {
    if (j == s) return;
    for (int i = 0; i < A.rows; ++i) std::swap(A(i, j), A(i, s));
    for (int i = 0; i < W.rows; ++i) std::swap(W(i, j), W(i, s));
    for (int k = 0; k < Winv.cols; ++k) std::swap(Winv(j, k), Winv(s, k));
  }
  void RowScale(int i, Fq2 u) {
    const Field& F = R_.field();
    const Fq2 ui = F.inv(u);
    for (int j = 0; j < A.cols; ++j) A(i, j) = R_.scale(A(i, j), u);
    for (int j = 0; j < U.cols; ++j) U(i, j) = R_.scale(U(i, j), u);
    for (int r = 0; r < Uinv.rows; ++r) Uinv(r, i) = R_.scale(Uinv(r, i), ui);
  }

  const PolyRing& R_;
  PolyMat A, U, Uinv, W, Winv;
};

}  // namespace

SmithForm SmithNormalForm(const PolyRing& R, const PolyMat& M,
                          PivotStrategy strategy) {
  SmithWorker w(R, M);
  PolyMat& A = w.A;
  const int n = std::min(A.rows, A.cols);
  for (int s = 0; s < n; ++s) {
    // Initial pivot.
    int pi = -1, pj = -1;
    for (int j = s; j < A.cols; ++j)
      for (int i = s; i < A.rows; ++i) {
        if (A(i, j).is_zero()) continue;
        const bool better =
            pi < 0 || (strategy == PivotStrategy::kMinDegree &&
                       A(i, j).deg() < A(pi, pj).deg());
        if (better) {
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    w.RowSwap(pi, s);
    w.ColSwap(pj, s);
    for (;;) {
      bool clean = true;
      for (int i = s + 1; i < A.rows; ++i) {
        if (A(i, s).is_zero()) continue;
        Poly quo, rem;
        R.divmod(A(i, s), A(s, s), &quo, &rem);
        w.RowAdd(i, s, R.neg(quo));
        if (!rem.is_zero()) clean = false;
      }
      for (int j = s + 1; j < A.cols; ++j) {
        if (A(s, j).is_zero()) continue;
        Poly quo, rem;
        R.divmod(A(s, j), A(s, s), &quo, &rem);
        w.ColAdd(j, s, R.neg(quo));
        if (!rem.is_zero()) clean = false;
      }
      if (!clean) {
        // Move the lowest-degree remainder in row/column s to the pivot.
        int bi = s, bj = s;
        for (int i = s + 1; i < A.rows; ++i)
          if (!A(i, s).is_zero() && A(i, s).deg() < A(bi, bj).deg()) {
            bi = i;
            bj = s;
          }
        for (int j = s + 1; j < A.cols; ++j)
          if (!A(s, j).is_zero() && A(s, j).deg() < A(bi, bj).deg()) {
            bi = s;
            bj = j;
          }
        w.RowSwap(bi, s);
        w.ColSwap(bj, s);
        continue;
      }
      // Divisibility of the remaining block.
      int bad = -1;
      for (int i = s + 1; i < A.rows && bad < 0; ++i)
        for (int j = s + 1; j < A.cols; ++j)
          if (!R.divides(A(s, s), A(i, j))) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      w.RowAdd(s, bad, R.one());
    }
    w.RowScale(s, R.field().inv(R.lead(A(s, s))));
  }
  SmithForm out{w.U, w.Uinv, w.W, w.Winv, w.A};
  // U M W = D, U Uinv = 1, W Winv = 1.
  const PolyMat check = MatMul(R, MatMul(R, out.U, M), out.W);
  if (!(check == out.D) || !(MatMul(R, out.U, out.Uinv) == PolyIdentity(R, M.rows)) ||
      !(MatMul(R, out.W, out.Winv) == PolyIdentity(R, M.cols)))
    throw InvariantError("Smith normal form verification failed");
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j)
      if (i != j && !A(i, j).is_zero())
        throw InvariantError("Smith form not diagonal");
  for (int i = 0; i + 1 < n; ++i)
    if (!R.divides(A(i, i), A(i + 1, i + 1)))
      throw InvariantError("Smith form divisibility chain broken");
  return out;
}

// ---- Factorization ----

std::vector<PrimaryFactor> Factor(const PolyRing& R, const Poly& f0, double bound) {
  Require(!f0.is_zero(), ErrorCode::kInvalidArgument, "factor of zero");
  const Field& F = R.field();
  const int Q = F.q() * F.q();
  Poly f = R.monic(f0);
  std::vector<PrimaryFactor> out;
  for (int k = 1; f.deg() > 0; ++k) {
    if (f.deg() < 2 * k) {
      out.push_back({f, 1});
      break;
    }
    const double count = std::pow(static_cast<double>(Q), k);
    if (count > bound) throw SizeBoundError("trial factorization", count);
    std::vector<Fq2> c(k + 1, F.zero2());
    c[k] = F.one2();
    for (long long idx = 0; idx < static_cast<long long>(count) && f.deg() >= k; ++idx) {
      long long r = idx;
      for (int i = 0; i < k; ++i, r /= Q) c[i] = F.element2(static_cast<int>(r % Q));
      Poly g = R.from_coeffs(c);
      int e = 0;
      for (;;) {
        Poly quo, rem;
        R.divmod(f, g, &quo, &rem);
        if (!rem.is_zero()) break;
        f = quo;
        ++e;
      }
      if (e > 0) out.push_back({g, e});
    }
  }
  // Merge the trailing factor if it repeats an earlier one.
  std::vector<PrimaryFactor> merged;
  for (auto& pf : out) {
    bool found = false;
    for (auto& m : merged)
      if (m.pi == pf.pi) {
        m.exponent += pf.exponent;
        found = true;
      }
    if (!found) merged.push_back(pf);
  }
  return merged;
}

// ---- TorsionModule ----

TorsionModule::TorsionModule(const PolyRing& R, const PolyMat& M,
                             PivotStrategy strategy)
    : R_(&R), M_(M), k_(M.rows) {
  Require(M.rows == M.cols, ErrorCode::kInvalidArgument,
          "torsion presentation must be square");
  SmithForm s = SmithNormalForm(R, M, strategy);
  d_ = s.diagonal();
  for (const auto& d : d_)
    Require(!d.is_zero(), ErrorCode::kNotTransverse,
            "presentation matrix is singular (cokernel not torsion)");
  U_ = s.U;
  Uinv_ = s.Uinv;
  for (const auto& d : d_) dim2_ += d.deg();
}

std::vector<PrimaryFactor> TorsionModule::primary_factors() const {
  std::vector<PrimaryFactor> out;
  for (const auto& d : d_)
    if (d.deg() > 0)
      for (auto& pf : Factor(*R_, d)) out.push_back(pf);
  return out;
}

double TorsionModule::cardinality() const {
  return std::pow(static_cast<double>(R_->field().q()), dimq());
}

TorsionModule::Element TorsionModule::Reduce(const std::vector<Poly>& x) const {
  Require(static_cast<int>(x.size()) == k_, ErrorCode::kInvalidArgument,
          "torsion reduce: wrong length");
  Element e(k_);
  for (int i = 0; i < k_; ++i) {
    Poly acc;
    for (int j = 0; j < k_; ++j) acc = R_->add(acc, R_->mul(U_(i, j), x[j]));
    e[i] = R_->mod(acc, d_[i]);
  }
  return e;
}

std::vector<Poly> TorsionModule::Lift(const Element& e) const {
  std::vector<Poly> x(k_);
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j) x[i] = R_->add(x[i], R_->mul(Uinv_(i, j), e[j]));
  return x;
}

TorsionModule::Element TorsionModule::Add(const Element& x, const Element& y) const {
  Element r(k_);
  for (int i = 0; i < k_; ++i) r[i] = R_->add(x[i], y[i]);
  return r;
}

TorsionModule::Element TorsionModule::Sub(const Element& x, const Element& y) const {
  Element r(k_);
  for (int i = 0; i < k_; ++i) r[i] = R_->sub(x[i], y[i]);
  return r;
}

TorsionModule::Element TorsionModule::Scale(const Element& x, const Poly& c) const {
  Element r(k_);
  for (int i = 0; i < k_; ++i) r[i] = R_->mod(R_->mul(x[i], c), d_[i]);
  return r;
}

bool TorsionModule::IsZero(const Element& x) const {
  for (const auto& p : x)
    if (!p.is_zero()) return false;
  return true;
}

std::vector<Fq> TorsionModule::Coords(const Element& e) const {
  std::vector<Fq> v;
  v.reserve(dimq());
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < d_[i].deg(); ++j) {
      const Fq2 c = R_->coeff(e[i], j);
      v.push_back(c.a);
      v.push_back(c.b);
    }
  return v;
}

TorsionModule::Element TorsionModule::FromCoords(const std::vector<Fq>& v) const {
  Require(static_cast<int>(v.size()) == dimq(), ErrorCode::kInvalidArgument,
          "torsion coordinates: wrong length");
  Element e(k_);
  size_t pos = 0;
  for (int i = 0; i < k_; ++i) {
    std::vector<Fq2> c;
    for (int j = 0; j < d_[i].deg(); ++j, pos += 2) c.push_back(Fq2{v[pos], v[pos + 1]});
    e[i] = R_->from_coeffs(c);
  }
  return e;
}

void TorsionModule::Enumerate(const std::function<void(const Element&)>& fn,
                              double bound) const {
  const double card = cardinality();
  if (card > bound) throw SizeBoundError("torsion module enumeration", card);
  const int q = R_->field().q();
  const int n = dimq();
  std::vector<Fq> v(n, Fq{0});
  const long long total = static_cast<long long>(card);
  for (long long idx = 0; idx < total; ++idx) {
    long long r = idx;
    for (int i = 0; i < n; ++i, r /= q) v[i] = Fq{static_cast<std::uint16_t>(r % q)};
    fn(FromCoords(v));
  }
}

// ---- TorsionDuality ----

TorsionDuality::TorsionDuality(const PolyRing& R, const PolyMat& M)
    : R_(&R), q_(R, M), qd_(R, Transpose(M)) {
  RatOps K(R);
  auto inv = Inverse(K, ToRat(K, M));
  Require(inv.has_value(), ErrorCode::kNotTransverse, "singular presentation");
  minv_ = *inv;
}

RatFunc TorsionDuality::Pair(const TorsionModule::Element& x,
                             const TorsionModule::Element& y) const {
  RatOps K(*R_);
  const auto lx = q_.Lift(x);
  const auto ly = qd_.Lift(y);
  RatFunc acc = K.zero();
  for (int i = 0; i < minv_.rows; ++i)
    for (int j = 0; j < minv_.cols; ++j) {
      if (ly[i].is_zero() || lx[j].is_zero()) continue;
      acc = K.add(acc, K.mul(K.from_poly(R_->mul(ly[i], lx[j])), minv_(i, j)));
    }
  return K.frac(acc);
}

}  // namespace tz
