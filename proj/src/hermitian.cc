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

#include "thetazero/hermitian.h"

#include <algorithm>
#include <map>

namespace tz {

namespace {

PolyMat ConjT(const PolyRing& R, const PolyMat& m) {
  return Transpose(PolyMatSigma(R, m));
}

PolyMat Neg(const PolyRing& R, PolyMat m) {
  for (auto& x : m.a) x = R.neg(x);
  return m;
}

PolyMat Adjugate(const PolyRing& R, const PolyMat& m) {
  const int n = m.rows;
  PolyMat adj(n, n, Poly{});
  if (n == 1) {
    adj(0, 0) = R.one();
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      PolyMat minor(n - 1, n - 1, Poly{});
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      Poly d = PolyDet(R, minor);
      adj(i, j) = (i + j) % 2 ? R.neg(d) : d;
    }
  return adj;
}

Poly Dot(const PolyRing& R, const std::vector<Poly>& a,
         const std::vector<Poly>& b) {
  Poly s;
  for (size_t i = 0; i < a.size(); ++i) s = R.add(s, R.mul(a[i], b[i]));
  return s;
}

std::vector<Poly> MatVec(const PolyRing& R, const PolyMat& m,
                         const std::vector<Poly>& v) {
  std::vector<Poly> out(m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (!m(i, j).is_zero() && !v[j].is_zero())
        out[i] = R.add(out[i], R.mul(m(i, j), v[j]));
  return out;
}

std::vector<Poly> SigmaVec(const PolyRing& R, std::vector<Poly> v) {
  for (auto& x : v) x = R.sigma(x);
  return v;
}

Mat<RatFunc> RatConjT(const RatOps& K, const Mat<RatFunc>& m) {
  Mat<RatFunc> t = Transpose(m);
  for (auto& x : t.a) x = K.sigma(x);
  return t;
}

Mat<RatFunc> HStack(const Mat<RatFunc>& a, const Mat<RatFunc>& b) {
  Mat<RatFunc> r(a.rows, a.cols + b.cols, RatFunc{});
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) r(i, j) = a(i, j);
    for (int j = 0; j < b.cols; ++j) r(i, a.cols + j) = b(i, j);
  }
  return r;
}

// Column matrix of polynomials spanning the same K'-space as c.
PolyMat ClearColumns(const RatOps& K, const Mat<RatFunc>& c) {
  const PolyRing& R = K.ring();
  PolyMat out(c.rows, c.cols, Poly{});
  for (int j = 0; j < c.cols; ++j) {
    Poly l = R.one();
    for (int i = 0; i < c.rows; ++i) {
      const Poly& d = c(i, j).den;
      l = R.div(R.mul(l, d), R.gcd(l, d));
    }
    for (int i = 0; i < c.rows; ++i)
      out(i, j) = R.mul(c(i, j).num, R.div(l, c(i, j).den));
  }
  return out;
}

}  // namespace

void CheckHermBundle(const PolyRing& R, const HermBundle& F) {
  const int n = F.F.rank();
  Require(n > 0, ErrorCode::kInvalidArgument, "Hermitian bundle of rank 0");
  Require(F.h.rows == n && F.h.cols == n, ErrorCode::kInvalidArgument,
          "Hermitian form has the wrong shape");
  CheckSheafMap(SheafMap{F.F, F.F.dual().twist(-2), F.h});
  Require(F.F.degree2() == -n, ErrorCode::kInvalidArgument,
          "Hermitian bundle must have degree -rank over F_{q^2}");
  Require(ConjT(R, F.h) == F.h, ErrorCode::kInvalidArgument,
          "Hermitian form is not Hermitian");
  Require(PolyDet(R, F.h).deg() == 0, ErrorCode::kInvalidArgument,
          "Hermitian form is not an isomorphism");
}

void CheckSkewHermBundle(const PolyRing& R, const SkewHermBundle& G) {
  const int r = G.G.rank();
  Require(r > 0 && r % 2 == 0, ErrorCode::kInvalidArgument,
          "skew-Hermitian bundle must have positive even rank");
  Require(G.h.rows == r && G.h.cols == r, ErrorCode::kInvalidArgument,
          "skew-Hermitian form has the wrong shape");
  CheckSheafMap(SheafMap{G.G, G.G.dual(), G.h});
  Require(G.G.degree2() == 0, ErrorCode::kInvalidArgument,
          "skew-Hermitian bundle must have degree 0");
  Require(ConjT(R, G.h) == Neg(R, G.h), ErrorCode::kInvalidArgument,
          "skew-Hermitian form is not skew-Hermitian");
  Require(PolyDet(R, G.h).deg() == 0, ErrorCode::kInvalidArgument,
          "skew-Hermitian form is not an isomorphism");
}

PolyMat FormMatrix(const PolyRing& R, const SkewHermBundle& G, const PolyMat& a,
                   const PolyMat& b) {
  return MatMul(R, MatMul(R, ConjT(R, b), G.h), a);
}

SheafMap QuotientMap(const PolyRing& R, const SkewHermBundle& G,
                     const Lagrangian& E) {
  return SheafMap{G.G, E.E.dual(), MatMul(R, ConjT(R, E.J), G.h)};
}

SheafMap InclusionMap(const Lagrangian& E, const SkewHermBundle& G) {
  return SheafMap{E.E, G.G, E.J};
}

PolyMat B12(const PolyRing& R, const SkewHermBundle& G, const Lagrangian& e1,
            const Lagrangian& e2) {
  return FormMatrix(R, G, e1.J, e2.J);
}

bool IsLagrangian(const PolyRing& R, const SkewHermBundle& G,
                  const Lagrangian& E) {
  Require(2 * E.E.rank() == G.G.rank() && E.J.rows == G.G.rank() &&
              E.J.cols == E.E.rank(),
          ErrorCode::kInvalidArgument, "Lagrangian has the wrong rank");
  CheckSheafMap(InclusionMap(E, G));
  if (!IsSaturated(R, InclusionMap(E, G)))
    throw Error(ErrorCode::kNotSaturated, "inclusion is not a subbundle");
  return IsZeroMat(R, FormMatrix(R, G, E.J, E.J));
}

void RequireLagrangian(const PolyRing& R, const SkewHermBundle& G,
                       const Lagrangian& E, const std::string& name) {
  if (!IsLagrangian(R, G, E))
    throw Error(ErrorCode::kNotLagrangian, name + " is not isotropic");
}

bool IsTransverse(const PolyRing& R, const SkewHermBundle& G,
                  const Lagrangian& e1, const Lagrangian& e2) {
  return !PolyDet(R, B12(R, G, e1, e2)).is_zero();
}

Lagrangian Saturate(const PolyRing& R, const SplitBundle& G,
                    const Mat<RatFunc>& c) {
  const RatOps K(R);
  const Field& f = R.field();
  const int n = G.rank();
  const int k = Rank(K, c);
  Require(c.rows == n && k == c.cols, ErrorCode::kInvalidArgument,
          "saturate: columns must be independent");
  // Rows a with a c = 0 cut out the subspace.
  const PolyMat ann = Transpose(ClearColumns(K, Kernel(K, Transpose(c))));
  const int gmax = *std::max_element(G.twists.begin(), G.twists.end());
  int gmin = *std::min_element(G.twists.begin(), G.twists.end());
  int maxdeg = 0;
  for (const auto& x : ann.a) maxdeg = std::max(maxdeg, x.deg());

  Lagrangian out;
  out.J = PolyMat(n, 0, Poly{});
  std::vector<std::vector<Poly>> gens;
  std::vector<int> gen_tw;
  const Fq2Ops ops{&f};
  const int limit = gmax - gmin + 2 * maxdeg + 8 * n + 8;
  for (int tw = -gmax; static_cast<int>(gens.size()) < k; ++tw) {
    Require(tw <= limit, ErrorCode::kInvariantViolated,
            "saturate: generators not found");
    // Unknowns: coefficient j of entry i, 0 <= j <= g_i + tw.
    std::vector<int> off(n + 1, 0);
    for (int i = 0; i < n; ++i)
      off[i + 1] = off[i] + std::max(0, G.twists[i] + tw + 1);
    const int nu = off[n];
    if (nu == 0) continue;
    int eq_deg = 0;
    for (int i = 0; i < n; ++i) eq_deg = std::max(eq_deg, G.twists[i] + tw);
    eq_deg += maxdeg;
    Mat<Fq2> eqs(ann.rows * (eq_deg + 1), nu, f.zero2());
    for (int r = 0; r < ann.rows; ++r)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < off[i + 1] - off[i]; ++j)
          for (int d = 0; d <= ann(r, i).deg(); ++d)
            eqs(r * (eq_deg + 1) + d + j, off[i] + j) = ann(r, i).c[d];
    const Mat<Fq2> ker = Kernel(ops, eqs);
    auto to_vec = [&](const std::vector<Poly>& z) {
      std::vector<Fq2> v(nu, f.zero2());
      for (int i = 0; i < n; ++i)
        for (int j = 0; j <= z[i].deg(); ++j) v[off[i] + j] = z[i].c[j];
      return v;
    };
    // Span of the multiples of earlier generators.
    std::vector<std::vector<Fq2>> span;
    for (size_t g = 0; g < gens.size(); ++g)
      for (int j = 0; j <= tw - gen_tw[g]; ++j) {
        std::vector<Poly> z = gens[g];
        for (auto& x : z) x = R.shift(x, j);
        span.push_back(to_vec(z));
      }
    auto rank_of = [&](const std::vector<std::vector<Fq2>>& rows) {
      Mat<Fq2> m(static_cast<int>(rows.size()), nu, f.zero2());
      for (size_t r = 0; r < rows.size(); ++r)
        for (int j = 0; j < nu; ++j) m(static_cast<int>(r), j) = rows[r][j];
      return Rank(ops, m);
    };
    int cur = rank_of(span);
    for (int col = 0; col < ker.cols && static_cast<int>(gens.size()) < k;
         ++col) {
      std::vector<Fq2> v(nu);
      for (int j = 0; j < nu; ++j) v[j] = ker(j, col);
      span.push_back(v);
      const int nr = rank_of(span);
      if (nr == cur) {
        span.pop_back();
        continue;
      }
      cur = nr;
      std::vector<Poly> z(n);
      for (int i = 0; i < n; ++i)
        z[i] = R.from_coeffs(
            std::vector<Fq2>(v.begin() + off[i], v.begin() + off[i + 1]));
      gens.push_back(z);
      gen_tw.push_back(tw);
    }
  }
  out.E.twists.clear();
  out.J = PolyMat(n, k, Poly{});
  for (int g = 0; g < k; ++g) {
    out.E.twists.push_back(-gen_tw[g]);
    for (int i = 0; i < n; ++i) out.J(i, g) = gens[g][i];
  }
  if (!IsSaturated(R, SheafMap{out.E, G, out.J}))
    throw InvariantError("saturate: result is not a subbundle");
  return out;
}

Lagrangian CompleteTransverse(const PolyRing& R, const SkewHermBundle& G,
                              const Lagrangian& e1, const Lagrangian& e2) {
  CheckSkewHermBundle(R, G);
  RequireLagrangian(R, G, e1, "E1");
  RequireLagrangian(R, G, e2, "E2");
  const Field& f = R.field();
  const RatOps K(R);
  const int m = e1.E.rank();
  const Mat<RatFunc> H = ToRat(K, G.h);
  const Mat<RatFunc> j1 = ToRat(K, e1.J);
  const Mat<RatFunc> j2 = ToRat(K, e2.J);
  // <a, b> as a matrix: sigma(B)^T H A.
  auto form = [&](const Mat<RatFunc>& a, const Mat<RatFunc>& b) {
    return MatMul(K, MatMul(K, RatConjT(K, b), H), a);
  };
  // I = L1 n L2.
  Mat<RatFunc> mj2 = j2;
  for (auto& x : mj2.a) x = K.neg(x);
  const Mat<RatFunc> ker = Kernel(K, HStack(j1, mj2));
  Mat<RatFunc> u(m, ker.cols, K.zero());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < ker.cols; ++j) u(i, j) = ker(i, j);
  const Mat<RatFunc> I = MatMul(K, j1, u);
  const int k = I.cols;

  Mat<RatFunc> W(2 * m, 0, K.zero());
  if (k > 0) {
    // A complement of I^perp, normalized so that <w_a, i_b> = delta_ab.
    const Mat<RatFunc> ip = MatMul(K, RatConjT(K, I), H);
    std::vector<int> chosen;
    for (int c = 0; c < 2 * m && static_cast<int>(chosen.size()) < k; ++c) {
      std::vector<int> trial = chosen;
      trial.push_back(c);
      Mat<RatFunc> sub(k, static_cast<int>(trial.size()), K.zero());
      for (int i = 0; i < k; ++i)
        for (size_t j = 0; j < trial.size(); ++j) sub(i, j) = ip(i, trial[j]);
      if (Rank(K, sub) == static_cast<int>(trial.size())) chosen = trial;
    }
    W = Mat<RatFunc>(2 * m, k, K.zero());
    for (int j = 0; j < k; ++j) W(chosen[j], j) = K.one();
    W = MatMul(K, W, *Inverse(K, MatMul(K, ip, W)));
    // w'_a = w_a + sum_c x_ca i_c with x_ba = N_ab / 2.
    Mat<RatFunc> x = form(W, W);
    const RatFunc half = K.from_poly(R.constant(f.embed(f.half())));
    for (auto& v : x.a) v = K.mul(v, half);
    W = MatAdd(K, W, MatMul(K, I, x));
    if (!IsZeroMat(K, form(W, W)))
      throw InvariantError("complete_transverse: complement not isotropic");
  }
  // L_i' = L_i n W^perp.
  auto restrict = [&](const Mat<RatFunc>& j) {
    if (k == 0) return j;
    return MatMul(K, j, Kernel(K, form(j, W)));
  };
  const Mat<RatFunc> e = restrict(j1);
  const Mat<RatFunc> f0 = restrict(j2);
  Require(e.cols == m - k && f0.cols == m - k, ErrorCode::kInvariantViolated,
          "complete_transverse: wrong reduced dimension");
  Mat<RatFunc> cols = W;
  if (m - k > 0) {
    // f = f0 Y with <e_a, f_b> = delta_ab; then e + f is isotropic.
    const Mat<RatFunc> y = RatConjT(K, *Inverse(K, form(e, f0)));
    const Mat<RatFunc> fb = MatMul(K, f0, y);
    cols = HStack(W, MatAdd(K, e, fb));
  }
  Lagrangian L = Saturate(R, G.G, cols);
  if (!IsLagrangian(R, G, L))
    throw InvariantError("complete_transverse: result is not Lagrangian");
  if (!IsTransverse(R, G, e1, L) || !IsTransverse(R, G, L, e2))
    throw InvariantError("complete_transverse: result is not transverse");
  return L;
}

SkewHermBundle Hyperbolic(const PolyRing& R, const SplitBundle& e) {
  const int m = e.rank();
  SkewHermBundle G{DirectSum(e, e.dual()), PolyMat(2 * m, 2 * m, Poly{})};
  for (int i = 0; i < m; ++i) {
    G.h(i, m + i) = R.one();
    G.h(m + i, i) = R.neg(R.one());
  }
  return G;
}

Lagrangian HyperbolicFirst(const PolyRing& R, const SplitBundle& e) {
  const int m = e.rank();
  Lagrangian L{e, PolyMat(2 * m, m, Poly{})};
  for (int i = 0; i < m; ++i) L.J(i, i) = R.one();
  return L;
}

Lagrangian HyperbolicSecond(const PolyRing& R, const SplitBundle& e) {
  const int m = e.rank();
  Lagrangian L{e.dual(), PolyMat(2 * m, m, Poly{})};
  for (int i = 0; i < m; ++i) L.J(m + i, i) = R.one();
  return L;
}

Lagrangian GraphLagrangian(const PolyRing& R, const SplitBundle& e,
                           const PolyMat& u) {
  const int m = e.rank();
  CheckSheafMap(SheafMap{e, e.dual(), u});
  Lagrangian L = HyperbolicFirst(R, e);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) L.J(m + i, j) = u(i, j);
  return L;
}

bool IsHermitianMatrix(const PolyRing& R, const PolyMat& u) {
  return ConjT(R, u) == u;
}

PolyMat RandomHermitian(const PolyRing& R, std::mt19937_64& rng,
                        const Mat<int>& deg) {
  const Field& f = R.field();
  const int n = deg.rows;
  PolyMat u(n, n, Poly{});
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (deg(i, j) < 0) continue;
      if (i == j) {
        std::vector<Fq2> c(deg(i, i) + 1);
        for (auto& x : c) x = f.embed(f.element(rng() % f.q()));
        u(i, i) = R.from_coeffs(c);
      } else {
        u(i, j) = R.random(rng, deg(i, j));
        u(j, i) = R.sigma(u(i, j));
      }
    }
  return u;
}

HermBundle RandomHermBundle(const PolyRing& R, std::mt19937_64& rng, int n) {
  Require(n == 1 || n == 2, ErrorCode::kInvalidArgument,
          "random Hermitian bundles have rank 1 or 2");
  const Field& f = R.field();
  for (;;) {
    HermBundle F;
    if (n == 2 && rng() % 2) {
      F.F.twists = {0, -2};
      Mat<int> deg(2, 2, -1);
      deg(1, 1) = 2;
      F.h = RandomHermitian(R, rng, deg);
      F.h(0, 1) = R.constant(f.element2(1 + rng() % (f.q() * f.q() - 1)));
      F.h(1, 0) = R.sigma(F.h(0, 1));
    } else {
      F.F.twists.assign(n, -1);
      F.h = RandomHermitian(R, rng, Mat<int>(n, n, 0));
    }
    if (PolyDet(R, F.h).deg() == 0) return F;
  }
}

namespace {

// A saturated line [A; B] in O(a) + O(-a) with F_q-coefficients and twist d.
PolyMat RandomLine(const PolyRing& R, std::mt19937_64& rng, int a, int d) {
  const Field& f = R.field();
  auto form = [&](int deg) {
    std::vector<Fq2> c(std::max(deg + 1, 0));
    for (auto& x : c) x = f.embed(f.element(rng() % f.q()));
    return R.from_coeffs(c);
  };
  for (;;) {
    PolyMat l(2, 1, Poly{});
    l(0, 0) = form(a - d);
    l(1, 0) = form(-a - d);
    if (IsSaturated(R, SheafMap{{{d}}, {{a, -a}}, l})) return l;
  }
}

PolyMat RandomUnitary(const PolyRing& R, std::mt19937_64& rng,
                      const SplitBundle& e) {
  const int m = e.rank();
  PolyMat u = PolyIdentity(R, 2 * m);
  for (int step = 0; step < 3; ++step) {
    Mat<int> deg(m, m, 0);
    const bool upper = rng() % 2;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        deg(i, j) = upper ? e.twists[i] + e.twists[j]
                          : -e.twists[i] - e.twists[j];
    const PolyMat s = RandomHermitian(R, rng, deg);
    PolyMat x = PolyIdentity(R, 2 * m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (upper) x(i, m + j) = s(i, j);
        else x(m + i, j) = s(i, j);
      }
    u = MatMul(R, x, u);
  }
  return u;
}

}  // namespace

TransversePair RandomTransversePair(const PolyRing& R, std::mt19937_64& rng,
                                    const SplitBundle& e, int max_len) {
  const int m = e.rank();
  const SkewHermBundle G = Hyperbolic(R, e);
  auto lagrangian = [&]() {
    Lagrangian L{SplitBundle{}, PolyMat(2 * m, m, Poly{})};
    for (int i = 0; i < m; ++i) {
      const int a = e.twists[i];
      const int top = std::min(a, -a);
      const int d = top - static_cast<int>(rng() % (max_len + 1));
      const PolyMat l = RandomLine(R, rng, a, std::min(d, 0));
      L.E.twists.push_back(std::min(d, 0));
      L.J(i, i) = l(0, 0);
      L.J(m + i, i) = l(1, 0);
    }
    L.J = MatMul(R, RandomUnitary(R, rng, e), L.J);
    return L;
  };
  for (;;) {
    TransversePair p{G, lagrangian(), lagrangian()};
    const Poly det = PolyDet(R, B12(R, G, p.E1, p.E2));
    if (det.is_zero()) continue;
    if (det.deg() != -p.E1.E.degree2() - p.E2.E.degree2()) continue;
    return p;
  }
}

// ---------------------------------------------------------------------------

QData::QData(const PolyRing& R, const SkewHermBundle& G, const Lagrangian& e1,
             const Lagrangian& e2)
    : R_(&R),
      m_([&] {
        CheckSkewHermBundle(R, G);
        RequireLagrangian(R, G, e1, "E1");
        RequireLagrangian(R, G, e2, "E2");
        if (!IsTransverse(R, G, e1, e2))
          throw Error(ErrorCode::kNotTransverse, "E1 and E2 are not transverse");
        const PolyMat p2 = QuotientMap(R, G, e2).m;
        const PolyMat p1 = QuotientMap(R, G, e1).m;
        PolyMat m(p1.cols, p1.cols, Poly{});
        for (int i = 0; i < p2.rows; ++i)
          for (int j = 0; j < p2.cols; ++j) {
            m(i, j) = p2(i, j);
            m(p2.rows + i, j) = p1(i, j);
          }
        return m;
      }()),
      b12_(B12(R, G, e1, e2)),
      b21_(B12(R, G, e2, e1)),
      p1_(QuotientMap(R, G, e1).m),
      p2_(QuotientMap(R, G, e2).m),
      q_(R, m_),
      q1_(R, b21_),
      q2_(R, b12_),
      sq_(R, PolyMatSigma(R, m_)) {
  const int expected = -e1.E.degree2() - e2.E.degree2();
  if (q_.dim2() != expected)
    throw Error(ErrorCode::kInvalidArgument,
                "Q has support at t = infinity; change coordinates");
  p1s2_ = MatMul(R, p1_, RightInverseY(R, QuotientMap(R, G, e2)));
  p2s1_ = MatMul(R, p2_, RightInverseY(R, QuotientMap(R, G, e1)));
  adj12_ = Adjugate(R, b12_);
  adj21_ = Adjugate(R, b21_);
  det12_ = PolyDet(R, b12_);
  det21_ = PolyDet(R, b21_);

  std::map<std::vector<Fq2>, QPoint> pts;
  for (const auto& pf : q_.primary_factors()) {
    QPoint& p = pts[pf.pi.c];
    p.pi = pf.pi;
    p.length += pf.exponent;
    p.deg2 = pf.pi.deg();
    p.inert = R.sigma(pf.pi) == pf.pi;
  }
  for (auto& [key, p] : pts) points_.push_back(p);
}

QData::Element QData::Iota1(const Element& x1) const {
  const auto b = q1_.Lift(x1);
  std::vector<Poly> v(b.size() * 2);
  std::copy(b.begin(), b.end(), v.begin() + b.size());
  return q_.Reduce(v);
}

QData::Element QData::Iota2(const Element& x2) const {
  const auto a = q2_.Lift(x2);
  std::vector<Poly> v(a.size() * 2);
  std::copy(a.begin(), a.end(), v.begin());
  return q_.Reduce(v);
}

QData::Element QData::Iota1Inv(const Element& x) const {
  const auto v = q_.Lift(x);
  const size_t m = v.size() / 2;
  const std::vector<Poly> a(v.begin(), v.begin() + m), b(v.begin() + m, v.end());
  const auto c = MatVec(*R_, p1s2_, a);
  std::vector<Poly> r(m);
  for (size_t i = 0; i < m; ++i) r[i] = R_->sub(b[i], c[i]);
  return q1_.Reduce(r);
}

QData::Element QData::Iota2Inv(const Element& x) const {
  const auto v = q_.Lift(x);
  const size_t m = v.size() / 2;
  const std::vector<Poly> a(v.begin(), v.begin() + m), b(v.begin() + m, v.end());
  const auto c = MatVec(*R_, p2s1_, b);
  std::vector<Poly> r(m);
  for (size_t i = 0; i < m; ++i) r[i] = R_->sub(a[i], c[i]);
  return q2_.Reduce(r);
}

QData::Element QData::ToQ(const Element& sx) const {
  return q_.Reduce(SigmaVec(*R_, sq_.Lift(sx)));
}

QData::Element QData::ToSigmaQ(const Element& x) const {
  return sq_.Reduce(SigmaVec(*R_, q_.Lift(x)));
}

RatFunc QData::Proper(const Poly& num, const Poly& den) const {
  const RatOps K(*R_);
  return K.frac(K.make(num, den));
}

RatFunc QData::Gamma12(const Element& x1, const Element& y2) const {
  // sigma(b12^-1 y2)^T x1 = -sigma(y2)^T b21^-1 x1.
  const auto x = q1_.Lift(x1);
  const auto y = SigmaVec(*R_, q2_.Lift(y2));
  return Proper(R_->neg(Dot(*R_, y, MatVec(*R_, adj21_, x))), det21_);
}

RatFunc QData::Gamma21(const Element& x2, const Element& y1) const {
  const auto x = q2_.Lift(x2);
  const auto y = SigmaVec(*R_, q1_.Lift(y1));
  return Proper(R_->neg(Dot(*R_, y, MatVec(*R_, adj12_, x))), det12_);
}

RatFunc QData::C12(const Element& s, const Element& sp) const {
  return Gamma12(Iota1Inv(s), Iota2Inv(sp));
}

RatFunc QData::C21(const Element& s, const Element& sp) const {
  return Gamma21(Iota2Inv(s), Iota1Inv(sp));
}

Fq QData::Residue(const RatFunc& r) const {
  const RatOps K(*R_);
  const Field& f = R_->field();
  // Sum of the finite residues of r dt.
  return f.trace(K.coeff_at_infinity(r, -1));
}

int QData::DegreeDQ() const {
  // An inert point of degree e lies over a point of degree e; a conjugate
  // pair of split points of degree e lies over one point of degree 2e.
  int d = 0;
  for (const auto& p : points_) d += p.length * p.deg2;
  return d;
}

int QData::EtaDQ() const { return DegreeDQ() % 2 ? -1 : 1; }

void QData::VerifyBijections(double enum_bound) const {
  const Field& f = R_->field();
  if (q1_.dim2() != q_.dim2() || q2_.dim2() != q_.dim2())
    throw InvariantError("Lemma on iota: dimensions of Q1, Q2, Q differ");
  const int d = q_.dimq();
  auto check = [&](const TorsionModule& src, auto fwd, auto inv,
                   const std::string& name) {
    const Mat<Fq> mf = MatrixOf(f, d, d, [&](const std::vector<Fq>& v) {
      return q_.Coords(fwd(src.FromCoords(v)));
    });
    if (Rank(FqOps{&f}, mf) != d)
      throw InvariantError("Lemma on iota: " + name + " is not injective");
    for (int j = 0; j < d; ++j) {
      std::vector<Fq> e(d, f.zero());
      e[j] = f.one();
      const Element x = src.FromCoords(e);
      if (src.Coords(inv(fwd(x))) != e)
        throw InvariantError("Lemma on iota: " + name + " inverse mismatch");
      const Element y = q_.FromCoords(e);
      if (q_.Coords(fwd(inv(y))) != e)
        throw InvariantError("Lemma on iota: " + name + " inverse mismatch");
    }
    if (q_.cardinality() <= enum_bound) {
      std::map<std::vector<Fq>, int> seen;
      src.Enumerate([&](const Element& x) {
        if (++seen[q_.Coords(fwd(x))] > 1)
          throw InvariantError("Lemma on iota: " + name + " not injective");
        if (src.Coords(inv(fwd(x))) != src.Coords(x))
          throw InvariantError("Lemma on iota: " + name + " inverse mismatch");
      });
      if (static_cast<double>(seen.size()) != q_.cardinality())
        throw InvariantError("Lemma on iota: " + name + " not surjective");
    }
  };
  check(q1_, [&](const Element& x) { return Iota1(x); },
        [&](const Element& x) { return Iota1Inv(x); }, "iota1");
  check(q2_, [&](const Element& x) { return Iota2(x); },
        [&](const Element& x) { return Iota2Inv(x); }, "iota2");
}

void QData::VerifyBetaDuality(double enum_bound) const {
  const PolyRing& R = *R_;
  const RatOps K(R);
  // sigma(b12)^T = -b21 and hence sigma(Gamma21)^T = -Gamma12 as matrices.
  if (!(ConjT(R, b12_) == Neg(R, b21_)))
    throw InvariantError("Lemma on beta duality: sigma(b12)^T != -b21");
  const Mat<RatFunc> g12 = *Inverse(K, ToRat(K, Neg(R, b21_)));
  const Mat<RatFunc> g21 = *Inverse(K, ToRat(K, Neg(R, b12_)));
  Mat<RatFunc> lhs = RatConjT(K, g21);
  for (auto& x : lhs.a) x = K.neg(x);
  if (!(lhs == g12))
    throw InvariantError("Lemma on beta duality: matrix identity fails");
  auto pair_check = [&](const Element& x1, const Element& y2) {
    if (!K.is_zero(K.add(Gamma12(x1, y2), K.sigma(Gamma21(y2, x1)))))
      throw InvariantError("Lemma on beta duality: element identity fails");
  };
  const Field& f = R.field();
  auto basis = [&](const TorsionModule& t) {
    std::vector<Element> b;
    for (int j = 0; j < t.dimq(); ++j) {
      std::vector<Fq> e(t.dimq(), f.zero());
      e[j] = f.one();
      b.push_back(t.FromCoords(e));
    }
    return b;
  };
  const auto b1 = basis(q1_), b2 = basis(q2_);
  for (const auto& x : b1)
    for (const auto& y : b2) pair_check(x, y);
  if (q_.cardinality() <= enum_bound)
    q1_.Enumerate([&](const Element& x) {
      for (const auto& y : b2) pair_check(x, y);
    });
}

void QData::VerifyHermitian(double enum_bound) const {
  const RatOps K(*R_);
  const Field& f = R_->field();
  std::vector<Element> basis;
  for (int j = 0; j < q_.dimq(); ++j) {
    std::vector<Fq> e(q_.dimq(), f.zero());
    e[j] = f.one();
    basis.push_back(q_.FromCoords(e));
  }
  auto check = [&](const Element& s, const Element& sp) {
    const RatFunc c12 = C12(s, sp);
    if (!K.is_zero(K.add(c12, C21(s, sp))))
      throw InvariantError("Lemma on h12 = -h21 fails");
    if (!(c12 == K.sigma(C12(sp, s))))
      throw InvariantError("h12 is not Hermitian");
  };
  for (const auto& s : basis)
    for (const auto& sp : basis) check(s, sp);
  if (q_.cardinality() <= enum_bound)
    q_.Enumerate([&](const Element& s) {
      for (const auto& sp : basis) check(s, sp);
    });
}

void QData::VerifyDivisor() const {
  int total = 0;
  for (const auto& p : points_) {
    total += p.length * p.deg2;
    if (p.inert) {
      if (p.deg2 % 2 == 0)
        throw InvariantError("D_Q: sigma-stable point of even degree");
      continue;
    }
    const Poly conj = R_->sigma(p.pi);
    bool found = false;
    for (const auto& o : points_)
      if (o.pi == conj) found = o.length == p.length;
    if (!found) throw InvariantError("D_Q: support is not sigma-stable");
  }
  if (total != q_.dim2()) throw InvariantError("D_Q: degree mismatch");
}

void QData::VerifyAll(double enum_bound) const {
  VerifyBijections(enum_bound);
  VerifyBetaDuality(enum_bound);
  VerifyHermitian(enum_bound);
  VerifyDivisor();
}

}  // namespace tz
