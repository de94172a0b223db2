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

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "thetazero/errors.h"
#include "thetazero/polyalg.h"

namespace tz {
namespace {

class PolyalgTest : public ::testing::Test {
 protected:
  PolyalgTest() : F(Field::Make(3, 1)), R(F) {}
  Poly T(int k) const { return R.monomial(F->one2(), k); }
  Poly C(int a, int b = 0) const {
    return R.constant(Fq2{F->from_int(a), F->from_int(b)});
  }
  PolyMat Make(int r, int c, std::vector<Poly> v) const {
    PolyMat m(r, c, Poly{});
    m.a = std::move(v);
    return m;
  }
  PolyMat RandomMat(std::mt19937_64& rng, int n, int deg) const {
    PolyMat m(n, n, Poly{});
    for (auto& x : m.a) x = R.random(rng, deg);
    return m;
  }
  FieldPtr F;
  PolyRing R;
};

TEST_F(PolyalgTest, DivisionAndGcd) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    Poly a = R.random(rng, 5), b = R.random(rng, 3);
    if (b.is_zero()) continue;
    Poly q, r;
    R.divmod(a, b, &q, &r);
    EXPECT_EQ(R.add(R.mul(q, b), r), a);
    EXPECT_LT(r.deg(), b.deg());
    Poly g = R.gcd(a, b);
    EXPECT_TRUE(R.divides(g, a));
    EXPECT_TRUE(R.divides(g, b));
  }
}

TEST_F(PolyalgTest, SmithExamples) {
  {
    auto s = SmithNormalForm(R, Make(2, 2, {T(2), Poly{}, Poly{}, T(1)}));
    EXPECT_EQ(s.diagonal(), (std::vector<Poly>{T(1), T(2)}));
  }
  {
    auto s = SmithNormalForm(R, Make(2, 2, {T(1), C(1), Poly{}, T(1)}));
    EXPECT_EQ(s.diagonal(), (std::vector<Poly>{C(1), T(2)}));
  }
  {
    auto s = SmithNormalForm(R, PolyIdentity(R, 3));
    EXPECT_EQ(s.diagonal(), (std::vector<Poly>{C(1), C(1), C(1)}));
  }
}

TEST_F(PolyalgTest, SmithPivotIndependence) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    PolyMat m = RandomMat(rng, 3, 2);
    auto a = SmithNormalForm(R, m, PivotStrategy::kMinDegree);
    auto b = SmithNormalForm(R, m, PivotStrategy::kFirstNonzero);
    EXPECT_EQ(a.diagonal(), b.diagonal());
    // Product of invariant factors is the monic determinant.
    Poly prod = R.one();
    for (auto& d : a.diagonal()) prod = R.mul(prod, d);
    EXPECT_EQ(prod, R.monic(PolyDet(R, m)));
  }
}

TEST_F(PolyalgTest, CokernelDimensionIsDegDet) {
  std::mt19937_64 rng(3);
  int tested = 0;
  while (tested < 40) {
    PolyMat m = RandomMat(rng, 2 + tested % 2, 1);
    Poly det = PolyDet(R, m);
    if (det.is_zero()) {
      EXPECT_THROW(TorsionModule(R, m), Error);
      continue;
    }
    TorsionModule Q(R, m);
    EXPECT_EQ(Q.dim2(), det.deg());
    ++tested;
  }
}

TEST_F(PolyalgTest, CokernelExamples) {
  TorsionModule q1(R, Make(1, 1, {T(1)}));
  EXPECT_EQ(q1.dim2(), 1);
  TorsionModule q2(R, Make(2, 2, {T(1), C(1), Poly{}, T(1)}));
  EXPECT_EQ(q2.dim2(), 2);
  ASSERT_EQ(q2.primary_factors().size(), 1u);
  EXPECT_EQ(q2.primary_factors()[0].exponent, 2);
  TorsionModule q0(R, Make(2, 2, {C(1), C(2), Poly{}, C(1)}));
  EXPECT_EQ(q0.dim2(), 0);
  int count = 0;
  q0.Enumerate([&](const TorsionModule::Element&) { ++count; });
  EXPECT_EQ(count, 1);
}

TEST_F(PolyalgTest, EnumerationCounts) {
  TorsionModule q(R, Make(2, 2, {T(1), Poly{}, Poly{}, T(2)}));
  int count = 0;
  std::set<std::vector<Fq>> seen;
  q.Enumerate([&](const TorsionModule::Element& e) {
    ++count;
    seen.insert(q.Coords(e));
    EXPECT_EQ(q.Reduce(q.Lift(e)), e);
  });
  EXPECT_EQ(count, 729);
  EXPECT_EQ(seen.size(), 729u);
  EXPECT_THROW(q.Enumerate([](const TorsionModule::Element&) {}, 100), SizeBoundError);
}

TEST_F(PolyalgTest, ReduceIsCanonical) {
  std::mt19937_64 rng(4);
  PolyMat m = Make(2, 2, {R.add(T(2), C(1)), T(1), C(2), R.add(T(1), C(1))});
  TorsionModule q(R, m);
  for (int i = 0; i < 100; ++i) {
    std::vector<Poly> x = {R.random(rng, 4), R.random(rng, 4)};
    std::vector<Poly> y = {R.random(rng, 2), R.random(rng, 2)};
    // x + M y reduces like x.
    std::vector<Poly> z = x;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) z[r] = R.add(z[r], R.mul(m(r, c), y[c]));
    EXPECT_EQ(q.Reduce(x), q.Reduce(z));
  }
}

TEST_F(PolyalgTest, DualityIsPerfect) {
  // F_9[t]/(t^2) and its dual: all 81 x 81 pairs.
  PolyMat m = Make(1, 1, {T(2)});
  TorsionDuality d(R, m);
  RatOps K(R);
  std::vector<TorsionModule::Element> xs, ys;
  d.module().Enumerate([&](const auto& e) { xs.push_back(e); });
  d.dual().Enumerate([&](const auto& e) { ys.push_back(e); });
  ASSERT_EQ(xs.size(), 81u);
  for (const auto& x : xs) {
    bool all_zero = true;
    for (const auto& y : ys)
      if (!K.is_zero(d.Pair(x, y))) all_zero = false;
    EXPECT_EQ(all_zero, d.module().IsZero(x));
  }
  for (const auto& y : ys) {
    bool all_zero = true;
    for (const auto& x : xs)
      if (!K.is_zero(d.Pair(x, y))) all_zero = false;
    EXPECT_EQ(all_zero, d.dual().IsZero(y));
  }
}

TEST_F(PolyalgTest, DoubleDual) {
  // x -> (y -> <x, y>) is injective, and Q, Q** have equal size.
  PolyMat m = Make(2, 2, {R.add(T(2), C(1)), T(1), C(2), R.add(T(1), C(1))});
  TorsionDuality d(R, m);
  TorsionDuality dd(R, Transpose(m));
  EXPECT_EQ(dd.dual().invariant_factors(), d.module().invariant_factors());
  RatOps K(R);
  std::vector<TorsionModule::Element> ys;
  d.dual().Enumerate([&](const auto& e) { ys.push_back(e); });
  std::set<std::vector<std::vector<Fq2>>> images;
  d.module().Enumerate([&](const auto& x) {
    std::vector<std::vector<Fq2>> img;
    for (const auto& y : ys) {
      RatFunc r = d.Pair(x, y);
      img.push_back(r.num.c);
      img.push_back(r.den.c);
    }
    images.insert(img);
  });
  EXPECT_EQ(images.size(), static_cast<size_t>(d.module().cardinality()));
}

TEST_F(PolyalgTest, FactorAndResidues) {
  // (t^2 + 1) = (t - alpha)(t + alpha) over F_9.
  Poly f = R.add(T(2), C(1));
  auto fac = Factor(R, f);
  EXPECT_EQ(fac.size(), 2u);
  RatOps K(R);
  // 1/(t - a) = t^{-1} + a t^{-2} + ...
  const Fq2 a = F->alpha();
  RatFunc x = K.make(R.one(), R.sub(T(1), R.constant(a)));
  EXPECT_EQ(K.coeff_at_infinity(x, -1), F->one2());
  EXPECT_EQ(K.coeff_at_infinity(x, -2), a);
  EXPECT_EQ(K.coeff_at_infinity(x, -3), F->mul(a, a));
}

}  // namespace
}  // namespace tz
