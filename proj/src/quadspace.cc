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

#include "thetazero/quadspace.h"

#include <cmath>

namespace tz {

namespace {

// Calls fn on every vector of F_q^r, coordinate 0 varying fastest.
void ForEachVector(const Field& f, int r,
                   const std::function<void(const std::vector<Fq>&)>& fn) {
  std::vector<Fq> v(r, f.zero());
  std::vector<int> idx(r, 0);
  for (;;) {
    fn(v);
    int i = 0;
    while (i < r) {
      if (++idx[i] < f.q()) {
        v[i] = f.element(idx[i]);
        break;
      }
      idx[i] = 0;
      v[i] = f.zero();
      ++i;
    }
    if (i == r) return;
  }
}

}  // namespace

QuadSpace::QuadSpace(FieldPtr field, Mat<Fq> gram)
    : field_(std::move(field)), gram_(std::move(gram)) {
  Require(gram_.rows == gram_.cols, ErrorCode::kInvalidArgument,
          "Gram matrix must be square");
  Require(Transpose(gram_) == gram_, ErrorCode::kInvalidArgument,
          "Gram matrix must be symmetric");
}

QuadSpace QuadSpace::FromFunction(
    FieldPtr field, int r, const std::function<Fq(const std::vector<Fq>&)>& q,
    double check_bound) {
  const Field& f = *field;
  Mat<Fq> a(r, r, f.zero());
  std::vector<Fq> e(r, f.zero());
  std::vector<Fq> diag(r);
  for (int i = 0; i < r; ++i) {
    e[i] = f.one();
    diag[i] = q(e);
    a(i, i) = diag[i];
    e[i] = f.zero();
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      e[i] = e[j] = f.one();
      const Fq s = f.sub(f.sub(q(e), diag[i]), diag[j]);
      a(i, j) = a(j, i) = f.mul(s, f.half());
      e[i] = e[j] = f.zero();
    }
  QuadSpace out(field, a);
  auto check = [&](const std::vector<Fq>& v) {
    if (q(v) != out.Eval(v))
      throw InvariantError("quadratic form is not quadratic");
  };
  if (std::pow(f.q(), r) <= check_bound) {
    ForEachVector(f, r, check);
  } else {
    // q(c e_i + d e_j) on a spanning family.
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        e[i] = f.from_int(2);
        e[j] = f.add(e[j], f.one());
        check(e);
        e[i] = e[j] = f.zero();
      }
  }
  return out;
}

Fq QuadSpace::Eval(const std::vector<Fq>& v) const { return Bilinear(v, v); }

Fq QuadSpace::Bilinear(const std::vector<Fq>& v, const std::vector<Fq>& w) const {
  const Field& f = *field_;
  Fq s = f.zero();
  for (int i = 0; i < dim(); ++i) {
    if (!v[i].v) continue;
    Fq row = f.zero();
    for (int j = 0; j < dim(); ++j)
      if (w[j].v) row = f.add(row, f.mul(gram_(i, j), w[j]));
    s = f.add(s, f.mul(v[i], row));
  }
  return s;
}

bool QuadSpace::Nondegenerate() const {
  return Rank(FqOps{field_.get()}, gram_) == dim();
}

QuadSpace QuadSpace::Scaled(Fq c) const {
  Mat<Fq> g = gram_;
  for (auto& x : g.a) x = field_->mul(x, c);
  return QuadSpace(field_, g);
}

QuadSpace QuadSpace::Dual() const {
  const auto inv = Inverse(FqOps{field_.get()}, gram_);
  Require(inv.has_value(), ErrorCode::kInvalidArgument,
          "dual of a degenerate form");
  return QuadSpace(field_, *inv);
}

QuadSpace OrthogonalSum(const QuadSpace& a, const QuadSpace& b) {
  const Field& f = *a.field();
  const int r = a.dim() + b.dim();
  Mat<Fq> g(r, r, f.zero());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) g(i, j) = a.gram()(i, j);
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      g(a.dim() + i, a.dim() + j) = b.gram()(i, j);
  return QuadSpace(a.field(), g);
}

QuadSpace HyperbolicPlane(FieldPtr f) {
  Mat<Fq> g(2, 2, f->zero());
  g(0, 1) = g(1, 0) = f->half();
  return QuadSpace(f, g);
}

QuadSpace NormForm(FieldPtr f) {
  Mat<Fq> g(2, 2, f->zero());
  g(0, 0) = f->one();
  g(1, 1) = f->neg(f->nu());
  return QuadSpace(f, g);
}

QuadSpace DiagonalForm(FieldPtr f, const std::vector<Fq>& d) {
  const int r = static_cast<int>(d.size());
  Mat<Fq> g(r, r, f->zero());
  for (int i = 0; i < r; ++i) g(i, i) = d[i];
  return QuadSpace(f, g);
}

namespace {

std::vector<Fq2> ToExtension(const std::vector<Fq>& v) {
  std::vector<Fq2> x(v.size() / 2);
  for (size_t i = 0; i < x.size(); ++i) x[i] = Fq2{v[2 * i], v[2 * i + 1]};
  return x;
}

}  // namespace

QuadSpace HermitianForm(FieldPtr f, const Mat<Fq2>& s) {
  const Field& F = *f;
  const int k = s.rows;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      Require(F.sigma(s(i, j)) == s(j, i), ErrorCode::kInvalidArgument,
              "matrix is not Hermitian");
  return QuadSpace::FromFunction(f, 2 * k, [&](const std::vector<Fq>& v) {
    const auto x = ToExtension(v);
    Fq2 acc = F.zero2();
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        acc = F.add(acc, F.mul(F.sigma(x[i]), F.mul(s(i, j), x[j])));
    Require(acc.b.v == 0, ErrorCode::kInvariantViolated,
            "Hermitian form value not in F_q");
    return acc.a;
  });
}

QuadSpace TraceForm(FieldPtr f, const Mat<Fq2>& s) {
  const Field& F = *f;
  const int k = s.rows;
  return QuadSpace::FromFunction(f, 2 * k, [&](const std::vector<Fq>& v) {
    const auto x = ToExtension(v);
    Fq2 acc = F.zero2();
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        acc = F.add(acc, F.mul(x[i], F.mul(s(i, j), x[j])));
    return F.trace(acc);
  });
}

GaussData GaussSum(const Character& psi, const QuadSpace& V, double bound) {
  const Field& f = *V.field();
  const double card = std::pow(f.q(), V.dim());
  if (card > bound) throw SizeBoundError("Gauss sum enumeration", card);
  PsiSum sum(psi);
  ForEachVector(f, V.dim(), [&](const std::vector<Fq>& v) { sum.Add(V.Eval(v)); });
  GaussData g{sum.Value(), V.dim(), false, CharValue()};
  g.has_gamma = g.G.DivSqrtQPow(g.dim, &g.gamma);
  return g;
}

GaussData GaussSumOverExtension(const Character& psi, const Mat<Fq2>& s,
                                double bound) {
  const Field& f = *psi.field();
  const int k = s.rows;
  const double card = std::pow(f.q(), 2 * k);
  if (card > bound) throw SizeBoundError("Gauss sum enumeration", card);
  PsiSum sum(psi);
  ForEachVector(f, 2 * k, [&](const std::vector<Fq>& v) {
    const auto x = ToExtension(v);
    Fq2 acc = f.zero2();
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        acc = f.add(acc, f.mul(x[i], f.mul(s(i, j), x[j])));
    sum.Add(f.trace(acc));
  });
  // sqrt(q^2)^k = q^k = s^{2k}.
  GaussData g{sum.Value(), 2 * k, false, CharValue()};
  g.has_gamma = g.G.DivSqrtQPow(g.dim, &g.gamma);
  return g;
}

bool GaussData::GammaIs(const CharValue& v) const {
  return G == v * CharValue::SqrtQPow(v.p(), v.q(), dim);
}

int GammaSign(const GaussData& g) {
  std::int64_t v = 0;
  if (!g.has_gamma || !g.gamma.IsInteger(&v)) return 0;
  return v == 1 || v == -1 ? static_cast<int>(v) : 0;
}

std::vector<Fq> HomToTorsion::Coords(const Point& s) const {
  std::vector<Fq> out;
  for (const auto& x : s) {
    const auto c = q_->SigmaQ().Coords(x);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

HomToTorsion::Point HomToTorsion::FromCoords(const std::vector<Fq>& v) const {
  const int d = q_->SigmaQ().dimq();
  Point s(n_);
  for (int j = 0; j < n_; ++j)
    s[j] = q_->SigmaQ().FromCoords(
        std::vector<Fq>(v.begin() + j * d, v.begin() + (j + 1) * d));
  return s;
}

Fq InducedForm(const HermBundle& F, const QData& q, Side side,
               const HomToTorsion::Point& s) {
  const PolyRing& R = q.ring();
  const RatOps K(R);
  const int n = F.F.rank();
  Require(static_cast<int>(s.size()) == n, ErrorCode::kInvalidArgument,
          "element of V has the wrong length");
  std::vector<TorsionModule::Element> w(n);
  for (int j = 0; j < n; ++j) w[j] = q.ToQ(s[j]);
  RatFunc acc = K.zero();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (F.h(j, i).is_zero()) continue;
      const RatFunc c = side == Side::k12 ? q.C12(w[j], w[i]) : q.C21(w[j], w[i]);
      acc = K.add(acc, K.mul(K.from_poly(F.h(j, i)), c));
    }
  return q.Residue(acc);
}

QuadSpace InducedQuadraticSpace(const HermBundle& F, const QData& q, Side side) {
  const HomToTorsion V(q, F.F.rank());
  return QuadSpace::FromFunction(
      q.ring().field_ptr(), V.dimq(),
      [&](const std::vector<Fq>& v) {
        return InducedForm(F, q, side, V.FromCoords(v));
      },
      0);
}

}  // namespace tz
