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

#include "thetazero/fourier.h"

#include <cmath>
#include <random>

namespace tz {

FiniteVS::FiniteVS(FieldPtr field, int r, double bound)
    : field_(std::move(field)), r_(r) {
  Require(r >= 0, ErrorCode::kInvalidArgument, "negative dimension");
  const double card = std::pow(field_->q(), r);
  if (card > bound) throw SizeBoundError("function table on F_q^r", card);
  size_ = static_cast<std::size_t>(card);
}

std::vector<Fq> FiniteVS::Point(std::size_t idx) const {
  std::vector<Fq> v(r_);
  for (int i = 0; i < r_; ++i, idx /= field_->q())
    v[i] = field_->element(static_cast<int>(idx % field_->q()));
  return v;
}

std::size_t FiniteVS::Index(const std::vector<Fq>& v) const {
  std::size_t idx = 0;
  for (int i = r_ - 1; i >= 0; --i) idx = idx * field_->q() + v[i].v;
  return idx;
}

std::size_t FiniteVS::Negate(std::size_t idx) const {
  auto v = Point(idx);
  for (auto& x : v) x = field_->neg(x);
  return Index(v);
}

Fq FiniteVS::Pairing(const std::vector<Fq>& v, const std::vector<Fq>& w) const {
  Fq s = field_->zero();
  for (int i = 0; i < r_; ++i) s = field_->add(s, field_->mul(v[i], w[i]));
  return s;
}

FiniteFn ConstantFn(const Character& psi, const FiniteVS& V, std::int64_t c) {
  return FiniteFn(V.size(), psi.Int(c));
}

FiniteFn DeltaFn(const Character& psi, const FiniteVS& V) {
  FiniteFn d(V.size(), psi.Zero());
  d[0] = psi.One();
  return d;
}

FiniteFn QuadraticCharacterFn(const Character& psi, const QuadSpace& Q) {
  const FiniteVS V(Q.field(), Q.dim());
  FiniteFn out(V.size());
  for (std::size_t i = 0; i < V.size(); ++i) out[i] = psi(Q.Eval(V.Point(i)));
  return out;
}

FiniteFn FromCounts(const Character& psi, const std::vector<std::int64_t>& c) {
  FiniteFn out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = psi.Int(c[i]);
  return out;
}

FiniteFn Ft(const Character& psi, const FiniteVS& V, const FiniteFn& phi) {
  Require(phi.size() == V.size(), ErrorCode::kInvalidArgument,
          "function table has the wrong size");
  const Field& f = V.field();
  const int q = f.q();
  std::vector<CharValue> kernel(q * q);
  for (int x = 0; x < q; ++x)
    for (int w = 0; w < q; ++w)
      kernel[x * q + w] = psi(f.mul(f.element(x), f.element(w)));
  FiniteFn cur = phi;
  std::size_t stride = 1;
  for (int k = 0; k < V.dim(); ++k, stride *= q) {
    FiniteFn next(V.size(), psi.Zero());
    for (std::size_t base = 0; base < V.size(); ++base) {
      if ((base / stride) % q != 0) continue;
      for (int w = 0; w < q; ++w) {
        CharValue acc = psi.Zero();
        for (int x = 0; x < q; ++x) {
          const CharValue& v = cur[base + x * stride];
          if (!v.IsZero()) acc += v * kernel[x * q + w];
        }
        next[base + w * stride] = acc;
      }
    }
    cur = std::move(next);
  }
  if (V.dim() % 2)
    for (auto& v : cur) v = -v;
  return cur;
}

FiniteFn NegatePull(const FiniteVS& V, const FiniteFn& phi) {
  FiniteFn out(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) out[i] = phi[V.Negate(i)];
  return out;
}

namespace {

std::vector<std::size_t> MapIndices(const FiniteVS& src, const FiniteVS& tgt,
                                    const Mat<Fq>& f) {
  Require(f.rows == tgt.dim() && f.cols == src.dim(),
          ErrorCode::kInvalidArgument, "linear map has the wrong shape");
  std::vector<std::size_t> img(src.size());
  for (std::size_t i = 0; i < src.size(); ++i)
    img[i] = tgt.Index(Apply(src.field(), f, src.Point(i)));
  return img;
}

CharValue QPow(const Character& psi, int e) { return psi.SqrtQPow(2 * e); }

CharValue Sign(const Character& psi, int e) {
  return psi.Int(e % 2 ? -1 : 1);
}

}  // namespace

FiniteFn PushForward(const FiniteVS& src, const FiniteVS& tgt, const Mat<Fq>& f,
                     const FiniteFn& phi) {
  const auto img = MapIndices(src, tgt, f);
  FiniteFn out(tgt.size(), phi.empty() ? CharValue() : phi[0] - phi[0]);
  for (std::size_t i = 0; i < src.size(); ++i) out[img[i]] += phi[i];
  return out;
}

FiniteFn PullBack(const FiniteVS& src, const FiniteVS& tgt, const Mat<Fq>& f,
                  const FiniteFn& phi) {
  const auto img = MapIndices(src, tgt, f);
  FiniteFn out(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) out[i] = phi[img[i]];
  return out;
}

CharValue SumProduct(const Character& psi, const FiniteFn& a, const FiniteFn& b) {
  Require(a.size() == b.size(), ErrorCode::kInvalidArgument,
          "tables of different sizes");
  CharValue s = psi.Zero();
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

FiniteFn Scale(const FiniteFn& phi, const CharValue& c) {
  FiniteFn out = phi;
  for (auto& v : out) v = v * c;
  return out;
}

bool CheckInvolutivity(const Character& psi, const FiniteVS& V,
                       const FiniteFn& phi) {
  return Ft(psi, V, Ft(psi, V, phi)) ==
         Scale(NegatePull(V, phi), QPow(psi, V.dim()));
}

bool CheckPlancherel(const Character& psi, const FiniteVS& V,
                     const FiniteFn& phi1, const FiniteFn& phi2) {
  const CharValue lhs = QPow(psi, V.dim()) * SumProduct(psi, phi1, phi2);
  const CharValue rhs =
      SumProduct(psi, Ft(psi, V, NegatePull(V, phi1)), Ft(psi, V, phi2));
  return lhs == rhs;
}

bool CheckGaussian(const Character& psi, const QuadSpace& Q) {
  Require(Q.Nondegenerate(), ErrorCode::kInvalidArgument,
          "Gaussian transform needs a nondegenerate form");
  const Field& f = *Q.field();
  const FiniteVS V(Q.field(), Q.dim());
  const FiniteFn lhs = Ft(psi, V, QuadraticCharacterFn(psi, Q));
  const GaussData g = GaussSum(psi, Q);
  const QuadSpace dual = Q.Dual();
  // -1/4 = -(2^-1)^2.
  const Fq c = f.neg(f.mul(f.half(), f.half()));
  const CharValue pre = Sign(psi, V.dim()) * g.G;
  for (std::size_t i = 0; i < V.size(); ++i)
    if (lhs[i] != pre * psi(f.mul(c, dual.Eval(V.Point(i))))) return false;
  return true;
}

bool CheckPush(const Character& psi, const FiniteVS& src, const FiniteVS& tgt,
               const Mat<Fq>& f, const FiniteFn& phi_src) {
  const FiniteFn lhs = Ft(psi, tgt, PushForward(src, tgt, f, phi_src));
  const FiniteFn rhs = Scale(PullBack(tgt, src, Transpose(f), Ft(psi, src, phi_src)),
                             Sign(psi, tgt.dim() - src.dim()));
  return lhs == rhs;
}

bool CheckPull(const Character& psi, const FiniteVS& src, const FiniteVS& tgt,
               const Mat<Fq>& f, const FiniteFn& phi_tgt) {
  const int d = src.dim() - tgt.dim();
  FiniteFn lhs = Ft(psi, src, PullBack(src, tgt, f, phi_tgt));
  FiniteFn rhs = Scale(PushForward(tgt, src, Transpose(f), Ft(psi, tgt, phi_tgt)),
                       Sign(psi, d));
  if (d >= 0) rhs = Scale(rhs, QPow(psi, d));
  else lhs = Scale(lhs, QPow(psi, -d));
  return lhs == rhs;
}

// ---------------------------------------------------------------------------

RelFn ArithFt(const Character& psi, const RelVS& Y, const RelFn& alpha) {
  Require(static_cast<int>(alpha.size()) == Y.base_size(),
          ErrorCode::kInvalidArgument, "relative function has the wrong base");
  RelFn out(alpha.size());
  for (int t = 0; t < Y.base_size(); ++t) {
    const FiniteVS V = Y.Fiber(t);
    // Histogram of psi exponents per output point.
    std::vector<CharValue> acc(V.size(), psi.Zero());
    for (std::size_t w = 0; w < V.size(); ++w) {
      const auto wv = V.Point(w);
      for (std::size_t v = 0; v < V.size(); ++v) {
        if (alpha[t][v].IsZero()) continue;
        acc[w] += alpha[t][v] * psi(V.Pairing(V.Point(v), wv));
      }
      if (Y.dims[t] % 2) acc[w] = -acc[w];
    }
    out[t] = std::move(acc);
  }
  return out;
}

std::vector<CharValue> PiPush(const Character& psi, const RelFn& alpha) {
  std::vector<CharValue> out;
  for (const auto& fib : alpha) {
    CharValue s = psi.Zero();
    for (const auto& v : fib) s += v;
    out.push_back(s);
  }
  return out;
}

RelFn RelPush(const RelVS& src, const RelVS& tgt, const RelMap& f,
              const RelFn& alpha) {
  RelFn out(alpha.size());
  for (int t = 0; t < src.base_size(); ++t)
    out[t] = PushForward(src.Fiber(t), tgt.Fiber(t), f[t], alpha[t]);
  return out;
}

RelFn RelPull(const RelVS& src, const RelVS& tgt, const RelMap& f,
              const RelFn& alpha) {
  RelFn out(alpha.size());
  for (int t = 0; t < src.base_size(); ++t)
    out[t] = PullBack(src.Fiber(t), tgt.Fiber(t), f[t], alpha[t]);
  return out;
}

RelMap RelTranspose(const RelMap& f) {
  RelMap out;
  for (const auto& m : f) out.push_back(Transpose(m));
  return out;
}

RelVS BasePullSpace(const RelVS& Y, const std::vector<int>& h) {
  RelVS out{Y.field, {}};
  for (int t : h) out.dims.push_back(Y.dims[t]);
  return out;
}

RelFn BasePush(const Character& psi, const RelVS& Y, const std::vector<int>& h,
               const RelFn& alpha_prime) {
  RelFn out(Y.base_size());
  for (int t = 0; t < Y.base_size(); ++t)
    out[t] = FiniteFn(Y.Fiber(t).size(), psi.Zero());
  for (std::size_t tp = 0; tp < h.size(); ++tp)
    for (std::size_t i = 0; i < alpha_prime[tp].size(); ++i)
      out[h[tp]][i] += alpha_prime[tp][i];
  return out;
}

RelFn BasePull(const RelVS& Y, const std::vector<int>& h, const RelFn& alpha) {
  (void)Y;
  RelFn out;
  for (int t : h) out.push_back(alpha[t]);
  return out;
}

bool CheckArithInvolutivity(const Character& psi, const RelVS& Y,
                            const RelFn& alpha) {
  const RelFn twice = ArithFt(psi, Y, ArithFt(psi, Y, alpha));
  for (int t = 0; t < Y.base_size(); ++t)
    if (twice[t] != Scale(NegatePull(Y.Fiber(t), alpha[t]), QPow(psi, Y.dims[t])))
      return false;
  return true;
}

bool CheckArithPlancherel(const Character& psi, const RelVS& Y,
                          const RelFn& alpha1, const RelFn& beta2) {
  const RelFn fb = ArithFt(psi, Y, beta2);
  const RelFn fa = ArithFt(psi, Y, alpha1);
  for (int t = 0; t < Y.base_size(); ++t)
    if (SumProduct(psi, alpha1[t], fb[t]) != SumProduct(psi, fa[t], beta2[t]))
      return false;
  return true;
}

bool CheckArithPush(const Character& psi, const RelVS& src, const RelVS& tgt,
                    const RelMap& f, const RelFn& alpha) {
  const RelFn lhs = ArithFt(psi, tgt, RelPush(src, tgt, f, alpha));
  const RelFn rhs = RelPull(tgt, src, RelTranspose(f), ArithFt(psi, src, alpha));
  for (int t = 0; t < src.base_size(); ++t)
    if (lhs[t] != Scale(rhs[t], Sign(psi, tgt.dims[t] - src.dims[t])))
      return false;
  return true;
}

bool CheckArithPull(const Character& psi, const RelVS& src, const RelVS& tgt,
                    const RelMap& f, const RelFn& alpha) {
  const RelFn lhs = ArithFt(psi, src, RelPull(src, tgt, f, alpha));
  const RelFn rhs = RelPush(tgt, src, RelTranspose(f), ArithFt(psi, tgt, alpha));
  for (int t = 0; t < src.base_size(); ++t) {
    const int d = src.dims[t] - tgt.dims[t];
    FiniteFn l = lhs[t];
    FiniteFn r = Scale(rhs[t], Sign(psi, d));
    if (d >= 0) r = Scale(r, QPow(psi, d));
    else l = Scale(l, QPow(psi, -d));
    if (l != r) return false;
  }
  return true;
}

bool CheckBaseChangePush(const Character& psi, const RelVS& Y,
                         const std::vector<int>& h, const RelFn& alpha_prime) {
  const RelVS Yp = BasePullSpace(Y, h);
  return ArithFt(psi, Y, BasePush(psi, Y, h, alpha_prime)) ==
         BasePush(psi, Y, h, ArithFt(psi, Yp, alpha_prime));
}

bool CheckBaseChangePull(const Character& psi, const RelVS& Y,
                         const std::vector<int>& h, const RelFn& alpha) {
  const RelVS Yp = BasePullSpace(Y, h);
  return ArithFt(psi, Yp, BasePull(Y, h, alpha)) ==
         BasePull(Y, h, ArithFt(psi, Y, alpha));
}

// ---------------------------------------------------------------------------

namespace {

FiniteFn RandomFn(const Character& psi, const FiniteVS& V, std::mt19937_64& rng) {
  const int p = V.field().p();
  FiniteFn out(V.size());
  for (auto& v : out)
    v = psi.Int(static_cast<int>(rng() % 7) - 3) +
        CharValue::Zeta(p, V.field().q(), rng() % p) *
            static_cast<std::int64_t>(rng() % 3);
  return out;
}

Mat<Fq> RandomMat(const Field& f, int rows, int cols, std::mt19937_64& rng) {
  Mat<Fq> m(rows, cols, f.zero());
  for (auto& x : m.a) x = f.element(rng() % f.q());
  return m;
}

RelVS RandomRelVS(const FieldPtr& f, int base, int dmax, std::mt19937_64& rng) {
  RelVS y{f, {}};
  for (int t = 0; t < base; ++t) y.dims.push_back(rng() % (dmax + 1));
  return y;
}

RelFn RandomRelFn(const Character& psi, const RelVS& Y, std::mt19937_64& rng) {
  RelFn a;
  for (int t = 0; t < Y.base_size(); ++t) a.push_back(RandomFn(psi, Y.Fiber(t), rng));
  return a;
}

}  // namespace

std::vector<SelfTestLine> FourierSelfTest(const Character& psi, int r_max,
                                          int trials, std::uint64_t seed) {
  const FieldPtr& fp = psi.field();
  const Field& f = *fp;
  // Validate sizes before any work: the largest table has q^{r_max} points
  // and the arithmetic suite runs a quadratic-time transform on it.
  FiniteVS(fp, r_max, 1e5);
  std::mt19937_64 rng(seed);
  std::vector<SelfTestLine> out = {
      {"ft_example_constant"}, {"ft_example_delta"}, {"involutivity"},
      {"plancherel"},          {"gaussian"},         {"push"},
      {"pull"},                {"arith_matches_ft"}, {"arith_involutivity"},
      {"arith_plancherel"},    {"arith_push"},       {"arith_pull"},
      {"base_change_push"},    {"base_change_pull"}};
  auto record = [&](int i, bool ok) {
    out[i].trials++;
    out[i].passed += ok;
  };
  for (int trial = 0; trial < trials; ++trial) {
    const int r = static_cast<int>(rng() % (r_max + 1));
    const FiniteVS V(fp, r);
    record(0, Ft(psi, V, ConstantFn(psi, V, 1)) ==
                  Scale(DeltaFn(psi, V), Sign(psi, r) * QPow(psi, r)));
    record(1, Ft(psi, V, DeltaFn(psi, V)) == ConstantFn(psi, V, r % 2 ? -1 : 1));
    const FiniteFn a = RandomFn(psi, V, rng), b = RandomFn(psi, V, rng);
    record(2, CheckInvolutivity(psi, V, a));
    record(3, CheckPlancherel(psi, V, a, b));
    if (r > 0) {
      Mat<Fq> g;
      do {
        const Mat<Fq> x = RandomMat(f, r, r, rng);
        g = MatAdd(FqOps{&f}, x, Transpose(x));
      } while (Rank(FqOps{&f}, g) < r);
      record(4, CheckGaussian(psi, QuadSpace(fp, g)));
    }
    const int rp = static_cast<int>(rng() % (r_max + 1));
    const FiniteVS W(fp, rp);
    const Mat<Fq> m = RandomMat(f, r, rp, rng);
    record(5, CheckPush(psi, W, V, m, RandomFn(psi, W, rng)));
    record(6, CheckPull(psi, W, V, m, a));
    const RelVS one{fp, {r}};
    record(7, ArithFt(psi, one, {a})[0] == Ft(psi, V, a));
    const RelVS Y = RandomRelVS(fp, 1 + rng() % 5, std::min(r_max, 3), rng);
    const RelFn al = RandomRelFn(psi, Y, rng);
    record(8, CheckArithInvolutivity(psi, Y, al));
    record(9, CheckArithPlancherel(psi, Y, al, RandomRelFn(psi, Y, rng)));
    const RelVS Yp = RandomRelVS(fp, Y.base_size(), std::min(r_max, 3), rng);
    RelMap fm;
    for (int t = 0; t < Y.base_size(); ++t)
      fm.push_back(RandomMat(f, Y.dims[t], Yp.dims[t], rng));
    record(10, CheckArithPush(psi, Yp, Y, fm, RandomRelFn(psi, Yp, rng)));
    record(11, CheckArithPull(psi, Yp, Y, fm, al));
    std::vector<int> h(1 + rng() % 5);
    for (auto& x : h) x = static_cast<int>(rng() % Y.base_size());
    record(12, CheckBaseChangePush(psi, Y, h, RandomRelFn(psi, BasePullSpace(Y, h), rng)));
    record(13, CheckBaseChangePull(psi, Y, h, al));
  }
  return out;
}

}  // namespace tz
