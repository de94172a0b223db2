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

// Acceptance run: one line per criterion with its status and runtime.
// A criterion that exceeds its time limit is reported as failed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "thetazero/fourier.h"
#include "thetazero/theta.h"

namespace tz {
namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void Fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

// Runs fn, catching library errors as failures.
Outcome Run(const std::function<void(Outcome&)>& fn) {
  Outcome o;
  try {
    fn(o);
  } catch (const std::exception& e) {
    o.Fail(std::string("exception: ") + e.what());
  }
  return o;
}

CharValue RandomValue(const Character& psi, std::mt19937_64& rng) {
  const int p = psi.field()->p(), q = psi.field()->q();
  CharValue v = psi.Zero();
  for (int k = 0; k < 2; ++k)
    v += CharValue::Zeta(p, q, rng() % p) * (static_cast<std::int64_t>(rng() % 7) - 3);
  if (rng() % 3 == 0) v += psi.SqrtQPow(1) * (static_cast<std::int64_t>(rng() % 3) - 1);
  return v;
}

FiniteFn RandomFn(const Character& psi, const FiniteVS& V, std::mt19937_64& rng) {
  FiniteFn phi(V.size());
  for (auto& x : phi) x = RandomValue(psi, rng);
  return phi;
}

Mat<Fq> RandomMat(const Field& f, int rows, int cols, std::mt19937_64& rng) {
  Mat<Fq> m(rows, cols, f.zero());
  for (auto& x : m.a) x = f.element(rng() % f.q());
  return m;
}

Mat<Fq> RandomInvertible(const Field& f, int n, std::mt19937_64& rng) {
  for (;;) {
    Mat<Fq> m = RandomMat(f, n, n, rng);
    if (Rank(FqOps{&f}, m) == n) return m;
  }
}

QuadSpace Congruent(const QuadSpace& V, std::mt19937_64& rng) {
  const Field& f = *V.field();
  const FqOps ops{&f};
  const Mat<Fq> P = RandomInvertible(f, V.dim(), rng);
  return QuadSpace(V.field(), MatMul(ops, Transpose(P), MatMul(ops, V.gram(), P)));
}

// Criterion 1.
void GaussAnchors(Outcome& o) {
  for (int q : {3, 5, 7}) {
    const FieldPtr f = Field::Make(q, 1);
    const Character psi(f);
    if (!GaussSum(psi, HyperbolicPlane(f)).GammaIs(psi.Int(1)))
      o.Fail("gamma(H+) != 1 at q = " + std::to_string(q));
    if (!GaussSum(psi, NormForm(f)).GammaIs(psi.Int(-1)))
      o.Fail("gamma(norm) != -1 at q = " + std::to_string(q));
  }
  o.detail = "q = 3, 5, 7";
}

// Criterion 2.
void WittSuite(Outcome& o) {
  const FieldPtr f = Field::Make(3, 1);
  const Character psi(f);
  std::mt19937_64 rng(2);
  const std::vector<QuadSpace> forms = {
      HyperbolicPlane(f), NormForm(f), DiagonalForm(f, {f->one()}),
      DiagonalForm(f, {f->nu()}), DiagonalForm(f, {f->one(), f->one()}),
      OrthogonalSum(NormForm(f), DiagonalForm(f, {f->one()}))};
  int checks = 0;
  for (const auto& a : forms)
    for (const auto& b : forms) {
      if (a.dim() + b.dim() > 4) continue;
      ++checks;
      if (GaussSum(psi, OrthogonalSum(a, b)).G != GaussSum(psi, a).G * GaussSum(psi, b).G)
        o.Fail("additivity");
    }
  const QuadSpace h = HyperbolicPlane(f);
  for (const QuadSpace& s :
       {h, OrthogonalSum(h, h), DiagonalForm(f, {f->one(), f->neg(f->one())})})
    for (int trial = 0; trial < 5; ++trial, ++checks)
      if (!GaussSum(psi, Congruent(s, rng)).GammaIs(psi.One())) o.Fail("split form");
  for (int k = 1; k <= 2; ++k)
    for (int trial = 0; trial < 10; ++trial) {
      Mat<Fq2> s(k, k, f->zero2());
      for (int i = 0; i < k; ++i) {
        s(i, i) = f->embed(f->element(rng() % 3));
        for (int j = i + 1; j < k; ++j) {
          s(i, j) = f->element2(rng() % 9);
          s(j, i) = f->sigma(s(i, j));
        }
      }
      const QuadSpace herm = HermitianForm(f, s);
      if (!herm.Nondegenerate()) continue;
      ++checks;
      if (!GaussSum(psi, herm).GammaIs(psi.Int(k % 2 ? -1 : 1))) o.Fail("Hermitian form");
    }
  for (int k = 1; k <= 2; ++k)
    for (int trial = 0; trial < 10; ++trial, ++checks) {
      Mat<Fq2> s(k, k, f->zero2());
      for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) s(i, j) = s(j, i) = f->element2(rng() % 9);
      const GaussData ext = GaussSumOverExtension(psi, s);
      const GaussData base = GaussSum(psi, TraceForm(f, s));
      if (ext.G != base.G || ext.dim != base.dim) o.Fail("field change");
    }
  if (o.ok) o.detail = std::to_string(checks) + " checks, q = 3";
}

// Criterion 3.
void FiniteFt(const Character& psi, Outcome& o) {
  const FieldPtr f = psi.field();
  std::mt19937_64 rng(f->q() * 31 + psi.scale().v);
  int checks = 0;
  auto check = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok) o.Fail(what + " at q = " + std::to_string(f->q()));
  };
  // Every {-1, 0, 1}-valued function on dims 0 and 1; these span all functions.
  for (int r = 0; r <= 1; ++r) {
    const FiniteVS V(f, r), W(f, 1);
    const Mat<Fq> inc = RandomMat(*f, 1, r, rng);
    std::size_t total = 1;
    for (std::size_t i = 0; i < V.size(); ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      FiniteFn phi(V.size());
      std::size_t x = code;
      for (auto& v : phi) {
        v = psi.Int(static_cast<int>(x % 3) - 1);
        x /= 3;
      }
      check(CheckInvolutivity(psi, V, phi), "involutivity");
      check(CheckPlancherel(psi, V, phi, phi), "Plancherel");
      check(CheckPlancherel(psi, V, phi, DeltaFn(psi, V)), "Plancherel");
      check(CheckPush(psi, V, W, inc, phi), "push");
      check(CheckPull(psi, W, V, Transpose(inc), phi), "pull");
    }
    if (r == 1)
      for (int a = 1; a < f->q(); ++a)
        check(CheckGaussian(psi, DiagonalForm(f, {f->element(a)})), "Gaussian");
  }
  for (int r = 2; r <= 3; ++r)
    for (int trial = 0; trial < 50; ++trial) {
      const FiniteVS V(f, r);
      const FiniteFn a = RandomFn(psi, V, rng), b = RandomFn(psi, V, rng);
      check(CheckInvolutivity(psi, V, a), "involutivity");
      check(CheckPlancherel(psi, V, a, b), "Plancherel");
      const int rp = static_cast<int>(rng() % 4);
      const FiniteVS W(f, rp);
      const Mat<Fq> m = RandomMat(*f, r, rp, rng);
      check(CheckPush(psi, W, V, m, RandomFn(psi, W, rng)), "push");
      check(CheckPull(psi, W, V, m, a), "pull");
      if (trial % 5 == 0) {
        Mat<Fq> g;
        do {
          const Mat<Fq> x = RandomMat(*f, r, r, rng);
          g = MatAdd(FqOps{f.get()}, x, Transpose(x));
        } while (Rank(FqOps{f.get()}, g) < r);
        check(CheckGaussian(psi, QuadSpace(f, g)), "Gaussian");
      }
    }
  if (o.ok) o.detail = std::to_string(checks) + " checks";
}

// Criterion 4.
void ArithmeticFt(Outcome& o) {
  const FieldPtr f = Field::Make(3, 1);
  const Character psi(f);
  std::mt19937_64 rng(44);
  int checks = 0;
  auto check = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok) o.Fail(what);
  };
  for (int trial = 0; trial < 40; ++trial) {
    RelVS Y{f, {}}, Yp{f, {}};
    const int base = 1 + static_cast<int>(rng() % 5);
    RelFn a, b, ap;
    RelMap m;
    for (int t = 0; t < base; ++t) {
      Y.dims.push_back(rng() % 4);
      Yp.dims.push_back(rng() % 4);
      a.push_back(RandomFn(psi, Y.Fiber(t), rng));
      b.push_back(RandomFn(psi, Y.Fiber(t), rng));
      ap.push_back(RandomFn(psi, Yp.Fiber(t), rng));
      m.push_back(RandomMat(*f, Y.dims[t], Yp.dims[t], rng));
    }
    check(CheckArithPlancherel(psi, Y, a, b), "Plancherel");
    check(CheckArithInvolutivity(psi, Y, a), "involutivity");
    check(CheckArithPush(psi, Yp, Y, m, ap), "functoriality (push)");
    check(CheckArithPull(psi, Yp, Y, m, a), "functoriality (pull)");
    std::vector<int> h(1 + rng() % 5);
    for (auto& x : h) x = static_cast<int>(rng() % base);
    const RelVS Yh = BasePullSpace(Y, h);
    RelFn ah;
    for (int t = 0; t < Yh.base_size(); ++t) ah.push_back(RandomFn(psi, Yh.Fiber(t), rng));
    check(CheckBaseChangePush(psi, Y, h, ah), "base change (push)");
    check(CheckBaseChangePull(psi, Y, h, a), "base change (pull)");
  }
  if (o.ok) o.detail = std::to_string(checks) + " checks, |T| <= 5, fiber dim <= 3";
}

std::vector<ThetaInstance> Instances(const PolyRing& R, std::uint64_t seed,
                                     int count, double bound) {
  std::mt19937_64 rng(seed);
  std::vector<ThetaInstance> out;
  for (int i = 0; i < count; ++i) {
    const int m = i % 4 == 3 ? 2 : 1;
    const int n = m == 2 ? 2 : 1 + i % 2;
    out.push_back(RandomInstance(R, rng, m, n, bound));
  }
  return out;
}

bool PerfectPairing12(const QData& q) {
  const Field& f = q.ring().field();
  const TorsionModule &q1 = q.Q1(), &q2 = q.Q2();
  if (q1.dimq() != q2.dimq()) return false;
  const int d = q1.dimq();
  auto unit = [&](const TorsionModule& M, int i) {
    std::vector<Fq> v(d, f.zero());
    v[i] = f.one();
    return M.FromCoords(v);
  };
  Mat<Fq> g(d, d, f.zero());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = q.Residue(q.Gamma12(unit(q1, i), unit(q2, j)));
  return Rank(FqOps{&f}, g) == d;
}

// Criterion 5.
void Structural(const Character& psi, Outcome& o) {
  const PolyRing R(psi.field());
  int nontrivial = 0, count = 0;
  for (const ThetaInstance& inst : Instances(R, 505, 48, 1e5)) {
    const QData q(R, inst.G, inst.E1, inst.E2);
    if (q.Q().cardinality() > 1e4 || count == 36) continue;
    ++count;
    nontrivial += q.Q().dim2() > 0;
    try {
      q.VerifyAll(1e4);
    } catch (const InvariantError& e) {
      o.Fail(e.what());
    }
    if (!PerfectPairing12(q)) o.Fail("<,>12 is not perfect");
    const int n = inst.F.F.rank();
    const HomToTorsion V(q, n);
    if (std::pow(q.ring().field().q(), V.dimq()) > 1e5) continue;
    const QuadSpace v12 = InducedQuadraticSpace(inst.F, q, Side::k12);
    const QuadSpace v21 = InducedQuadraticSpace(inst.F, q, Side::k21);
    if (v12.gram() != v21.Scaled(psi.field()->neg(psi.field()->one())).gram())
      o.Fail("q12 != -q21");
    const int eta_n = n % 2 ? q.EtaDQ() : 1;
    if (!GaussSum(psi, v12, 1e5).GammaIs(psi.Int(eta_n))) o.Fail("gamma != eta(D_Q)^n");
  }
  if (count < 30) o.Fail("only " + std::to_string(count) + " instances");
  if (o.ok)
    o.detail = std::to_string(count) + " instances, " + std::to_string(nontrivial) +
               " with Q != 0";
}

// Criteria 6, 7 and 8 share their instances.
std::vector<ThetaInstance> PipelineInstances(const PolyRing& R) {
  return Instances(R, 606, 12, 1e4);
}

void RouteIndependence(Outcome& o) {
  const PolyRing R(Field::Make(3, 1));
  std::int64_t total = 0;
  int count = 0;
  for (const ThetaInstance& inst : PipelineInstances(R)) {
    const ThetaPipeline P(R, inst);
    try {
      total += P.VerifyPairingIdentity(1, 1e4);
      total += P.VerifyPairingIdentity(2, 1e4);
    } catch (const InvariantError& e) {
      o.Fail(e.what());
    }
    count += P.dim_v() > 0;
  }
  if (o.ok)
    o.detail = std::to_string(total) + " t checked on 12 instances (" +
               std::to_string(count) + " with V != 0), both Lagrangians";
}

void FiveTerm(Outcome& o) {
  const PolyRing R(Field::Make(3, 1));
  std::vector<std::string> seen(4);
  for (const ThetaInstance& inst : PipelineInstances(R)) {
    const ThetaPipeline P(R, inst);
    try {
      P.VerifyExact(1);
      P.VerifyExact(2);
      const DualityResult d = P.VerifyDuality();
      for (bool b : d.perfect)
        if (!b) o.Fail("a duality pairing is not perfect");
      for (int i = 0; i < 4; ++i) {
        const char* c = d.signs[i] > 0 ? "+" : d.signs[i] < 0 ? "-" : "";
        if (*c && seen[i].find(c) == std::string::npos) seen[i] += c;
      }
    } catch (const InvariantError& e) {
      o.Fail(e.what());
    }
  }
  std::string signs;
  for (const auto& x : seen) signs += " " + (x.empty() ? std::string("0") : x);
  if (o.ok) o.detail = "12 instances, realized signs" + signs;
}

void Pushforward(Outcome& o) {
  const PolyRing R(Field::Make(3, 1));
  for (const ThetaInstance& inst : PipelineInstances(R)) {
    const ThetaPipeline P(R, inst);
    try {
      P.VerifyPushforward(1, 1e6);
      P.VerifyPushforward(2, 1e6);
    } catch (const InvariantError& e) {
      o.Fail(e.what());
    }
  }
  if (o.ok) o.detail = "12 instances, both rows";
}

// Criterion 9.
void Modularity(const Character& psi, Outcome& o) {
  const PolyRing R(psi.field());
  std::mt19937_64 rng(909);
  int equal = 0, total = 0, replayed = 0;
  double worst = 0;
  auto one = [&](const ThetaInstance& inst) {
    const auto t0 = std::chrono::steady_clock::now();
    const ModularityReport rep = ModularityCheck(psi, R, inst);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    worst = std::max(worst, secs);
    ++total;
    replayed += rep.replayed;
    if (rep.equal) ++equal;
    if (!rep.equal) o.Fail("Z1 != Z2 on instance " + std::to_string(total));
    if (const StepResult* s = rep.FirstFailure()) o.Fail(s->name + ": " + s->detail);
    if (secs > 60) o.Fail("instance over 60 s");
  };
  for (int i = 0; i < 20; ++i) one(RandomInstance(R, rng, 1, 1 + i % 2, 1e5));
  for (int i = 0; i < 3; ++i) one(RandomInstance(R, rng, 2, 2, 1e5));
  int transitive = 0;
  for (int i = 0; i < 8; ++i) {
    const ThetaInstance inst = RandomInstance(R, rng, i < 6 ? 1 : 2, i < 6 ? 1 + i % 2 : 2, 1e5);
    const TransitivityReport t = TransitivityCheck(psi, R, inst, 1e6);
    if (!IsTransverse(R, inst.G, inst.E1, t.L) || !IsTransverse(R, inst.G, inst.E2, t.L))
      o.Fail("complete_transverse output is not transverse");
    if (!t.ok) o.Fail("transitivity fails");
    transitive += t.ok;
  }
  if (o.ok) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d/%d equal (%d replayed), %d/8 transitive, slowest %.2f s", equal,
                  total, replayed, transitive, worst);
    o.detail = buf;
  }
}

// Criterion 10.
void PsiUniformity(Outcome& o) {
  const FieldPtr f = Field::Make(3, 1);
  std::string d;
  for (int c = 1; c <= 2; ++c) {
    const Character psi(f, f->element(c));
    const Outcome a = Run([&](Outcome& x) { FiniteFt(psi, x); });
    const Outcome b = Run([&](Outcome& x) { Structural(psi, x); });
    const Outcome m = Run([&](Outcome& x) { Modularity(psi, x); });
    for (const Outcome* x : {&a, &b, &m})
      if (!x->ok) o.Fail("psi_" + std::to_string(c) + ": " + x->detail);
    d += (c > 1 ? ", " : "") + std::string("psi_") + std::to_string(c) + " " +
         (a.ok ? "P" : "F") + (b.ok ? "P" : "F") + (m.ok ? "P" : "F");
  }
  if (o.ok) o.detail = "criteria 3/5/9: " + d;
}

}  // namespace
}  // namespace tz

int main() {
  using namespace tz;
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<void(Outcome&)> fn;
  };
  const FieldPtr f3 = Field::Make(3, 1), f5 = Field::Make(5, 1);
  const std::vector<Criterion> all = {
      {1, "Gauss-sum anchors", 1, GaussAnchors},
      {2, "Witt suite", 5, WittSuite},
      {3, "finite Fourier identities", 10,
       [&](Outcome& o) {
         FiniteFt(Character(f3), o);
         if (o.ok) {
           const std::string d = o.detail;
           FiniteFt(Character(f5), o);
           if (o.ok) o.detail = "q = 3: " + d + "; q = 5: " + o.detail;
         }
       }},
      {4, "arithmetic Fourier identities", 10, ArithmeticFt},
      {5, "structural identities of Q", 60,
       [&](Outcome& o) { Structural(Character(f3), o); }},
      {6, "extension pairing by two routes", 60, RouteIndependence},
      {7, "five-term exactness and duality", 30, FiveTerm},
      {8, "pushforward identity", 60, Pushforward},
      {9, "modularity at r = 0", 60 * 40,
       [&](Outcome& o) { Modularity(Character(f3), o); }},
      {10, "psi-uniformity", 1e9, PsiUniformity},
  };
  int failed = 0;
  for (const Criterion& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = Run(c.fn);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit) o.Fail("over the time limit");
    failed += !o.ok;
    std::printf("criterion %2d %s  %-34s %8.2f s  %s\n", c.id, o.ok ? "PASS" : "FAIL",
                c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed ? 1 : 0;
}
