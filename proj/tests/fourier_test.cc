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

#include <gtest/gtest.h>

#include "thetazero/fourier.h"

namespace tz {
namespace {

// Direct double sum with zeta^{Tr(c <v, w>)} built from the field tables.
FiniteFn NaiveFt(const FiniteVS& V, Fq c, const FiniteFn& phi) {
  const Field& f = V.field();
  FiniteFn out(V.size(), CharValue(f.p(), f.q()));
  for (std::size_t w = 0; w < V.size(); ++w) {
    for (std::size_t v = 0; v < V.size(); ++v) {
      Fq dot = f.zero();
      const auto a = V.Point(v), b = V.Point(w);
      for (int i = 0; i < V.dim(); ++i) dot = f.add(dot, f.mul(a[i], b[i]));
      out[w] += phi[v] * CharValue::Zeta(f.p(), f.q(),
                                         f.trace_to_prime(f.mul(c, dot)));
    }
    if (V.dim() % 2) out[w] = -out[w];
  }
  return out;
}

FiniteFn RandomFn(const Character& psi, const FiniteVS& V, std::mt19937_64& rng) {
  FiniteFn out(V.size());
  for (auto& v : out)
    v = psi.Int(static_cast<int>(rng() % 9) - 4) +
        CharValue::Zeta(V.field().p(), V.field().q(), rng() % V.field().p());
  return out;
}

Mat<Fq> RandomMat(const Field& f, int rows, int cols, std::mt19937_64& rng) {
  Mat<Fq> m(rows, cols, f.zero());
  for (auto& x : m.a) x = f.element(rng() % f.q());
  return m;
}

class FourierTest : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(FourierTest, ExamplesAndOracle) {
  const auto [q, c] = GetParam();
  auto F = Field::Make(q, 1);
  const Character psi(F, F->element(c));
  for (int r = 0; r <= 3; ++r) {
    const FiniteVS V(F, r);
    const CharValue qr = psi.SqrtQPow(2 * r);
    const CharValue sign = psi.Int(r % 2 ? -1 : 1);
    EXPECT_EQ(Ft(psi, V, ConstantFn(psi, V, 1)), Scale(DeltaFn(psi, V), sign * qr));
    EXPECT_EQ(Ft(psi, V, DeltaFn(psi, V)), ConstantFn(psi, V, r % 2 ? -1 : 1));
    std::mt19937_64 rng(r + 10 * q + c);
    for (int trial = 0; trial < 5; ++trial) {
      const FiniteFn phi = RandomFn(psi, V, rng);
      EXPECT_EQ(Ft(psi, V, phi), NaiveFt(V, F->element(c), phi));
    }
  }
}

TEST_P(FourierTest, ExhaustiveSmallDims) {
  const auto [q, c] = GetParam();
  auto F = Field::Make(q, 1);
  const Character psi(F, F->element(c));
  for (int r = 0; r <= 1; ++r) {
    const FiniteVS V(F, r);
    // Every function with values in {-1, 0, 1}.
    std::size_t total = 1;
    for (std::size_t i = 0; i < V.size(); ++i) total *= 3;
    const FiniteVS W(F, 1);
    std::mt19937_64 mrng(3);
    const Mat<Fq> inc = RandomMat(*F, 1, r, mrng);
    for (std::size_t code = 0; code < total; ++code) {
      FiniteFn phi(V.size());
      std::size_t x = code;
      for (auto& v : phi) {
        v = psi.Int(static_cast<int>(x % 3) - 1);
        x /= 3;
      }
      EXPECT_TRUE(CheckInvolutivity(psi, V, phi));
      EXPECT_TRUE(CheckPlancherel(psi, V, phi, DeltaFn(psi, V)));
      EXPECT_TRUE(CheckPlancherel(psi, V, phi, phi));
      EXPECT_TRUE(CheckPush(psi, V, W, inc, phi));
      EXPECT_TRUE(CheckPull(psi, W, V, Transpose(inc), phi));
    }
    if (r == 1)
      for (int a = 1; a < q; ++a)
        EXPECT_TRUE(CheckGaussian(psi, DiagonalForm(F, {F->element(a)})));
  }
}

TEST_P(FourierTest, RandomDims2And3) {
  const auto [q, c] = GetParam();
  auto F = Field::Make(q, 1);
  const Character psi(F, F->element(c));
  std::mt19937_64 rng(q * 100 + c);
  const int max_r = q == 3 ? 3 : 2;
  for (int trial = 0; trial < 50; ++trial) {
    const int r = 2 + trial % (max_r - 1);
    const FiniteVS V(F, r);
    const FiniteFn a = RandomFn(psi, V, rng), b = RandomFn(psi, V, rng);
    EXPECT_TRUE(CheckInvolutivity(psi, V, a));
    EXPECT_TRUE(CheckPlancherel(psi, V, a, b));
    const int rp = static_cast<int>(rng() % (max_r + 1));
    const FiniteVS W(F, rp);
    const Mat<Fq> m = RandomMat(*F, r, rp, rng);
    EXPECT_TRUE(CheckPush(psi, W, V, m, RandomFn(psi, W, rng)));
    EXPECT_TRUE(CheckPull(psi, W, V, m, a));
    Mat<Fq> g;
    do {
      const Mat<Fq> x = RandomMat(*F, r, r, rng);
      g = MatAdd(FqOps{F.get()}, x, Transpose(x));
    } while (Rank(FqOps{F.get()}, g) < r);
    EXPECT_TRUE(CheckGaussian(psi, QuadSpace(F, g)));
    // h and 2h both satisfy the identity.
    EXPECT_TRUE(CheckGaussian(psi, QuadSpace(F, g).Scaled(F->from_int(2))));
  }
  EXPECT_TRUE(CheckGaussian(psi, HyperbolicPlane(F)));
}

TEST_P(FourierTest, FailsOnWrongSign) {
  // The checks are not vacuous: a sign error in the transform is caught.
  const auto [q, c] = GetParam();
  auto F = Field::Make(q, 1);
  const Character psi(F, F->element(c));
  const FiniteVS V(F, 1);
  const FiniteVS Z(F, 0);
  Mat<Fq> zero(1, 0, F->zero());
  std::mt19937_64 rng(1);
  const FiniteFn a = RandomFn(psi, Z, rng);
  // f = 0: f_! phi' = phi'(0) delta, so FT is the constant -phi'(0).
  EXPECT_TRUE(CheckPush(psi, Z, V, zero, a));
  EXPECT_EQ(Ft(psi, V, PushForward(Z, V, zero, a)), FiniteFn(V.size(), -a[0]));
}

INSTANTIATE_TEST_SUITE_P(Chars, FourierTest,
                         ::testing::Values(std::pair{3, 1}, std::pair{3, 2},
                                           std::pair{5, 1}, std::pair{5, 3}));

TEST(ArithFourierTest, Identities) {
  auto F = Field::Make(3, 1);
  for (int c = 1; c <= 2; ++c) {
    const Character psi(F, F->element(c));
    std::mt19937_64 rng(40 + c);
    for (int trial = 0; trial < 20; ++trial) {
      RelVS Y{F, {}};
      const int base = 1 + static_cast<int>(rng() % 5);
      for (int t = 0; t < base; ++t) Y.dims.push_back(rng() % 4);
      RelFn a, b;
      for (int t = 0; t < base; ++t) {
        a.push_back(RandomFn(psi, Y.Fiber(t), rng));
        b.push_back(RandomFn(psi, Y.Fiber(t), rng));
      }
      // Agrees with the fiberwise separable transform.
      const RelFn fa = ArithFt(psi, Y, a);
      for (int t = 0; t < base; ++t) EXPECT_EQ(fa[t], Ft(psi, Y.Fiber(t), a[t]));
      EXPECT_TRUE(CheckArithInvolutivity(psi, Y, a));
      EXPECT_TRUE(CheckArithPlancherel(psi, Y, a, b));
      RelVS Yp{F, {}};
      RelMap f;
      for (int t = 0; t < base; ++t) {
        Yp.dims.push_back(rng() % 4);
        f.push_back(RandomMat(*F, Y.dims[t], Yp.dims[t], rng));
      }
      RelFn ap;
      for (int t = 0; t < base; ++t) ap.push_back(RandomFn(psi, Yp.Fiber(t), rng));
      EXPECT_TRUE(CheckArithPush(psi, Yp, Y, f, ap));
      EXPECT_TRUE(CheckArithPull(psi, Yp, Y, f, a));
      std::vector<int> h(1 + rng() % 5);
      for (auto& x : h) x = static_cast<int>(rng() % base);
      const RelVS Yh = BasePullSpace(Y, h);
      RelFn ah;
      for (int t = 0; t < Yh.base_size(); ++t) ah.push_back(RandomFn(psi, Yh.Fiber(t), rng));
      EXPECT_TRUE(CheckBaseChangePush(psi, Y, h, ah));
      EXPECT_TRUE(CheckBaseChangePull(psi, Y, h, a));
    }
  }
}

TEST(ArithFourierTest, DisjointUnionRestricts) {
  auto F = Field::Make(3, 1);
  const Character psi(F);
  std::mt19937_64 rng(8);
  RelVS Y{F, {1, 2, 0}};
  RelFn a;
  for (int t = 0; t < 3; ++t) a.push_back(RandomFn(psi, Y.Fiber(t), rng));
  const RelFn whole = ArithFt(psi, Y, a);
  for (int t = 0; t < 3; ++t)
    EXPECT_EQ(whole[t], ArithFt(psi, RelVS{F, {Y.dims[t]}}, {a[t]})[0]);
}

TEST(FourierSelfTest, AllPass) {
  auto F = Field::Make(3, 1);
  for (const auto& line : FourierSelfTest(Character(F), 2, 20, 0)) {
    EXPECT_EQ(line.passed, line.trials) << line.identity;
  }
  EXPECT_THROW(FourierSelfTest(Character(F), 20, 1, 0), SizeBoundError);
}

}  // namespace
}  // namespace tz
