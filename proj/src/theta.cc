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

#include "thetazero/theta.h"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "thetazero/fourier.h"

namespace tz {

namespace {

double Card(int q, int dimq) { return std::pow(static_cast<double>(q), dimq); }

int HomDim2(const SplitBundle& a, const SplitBundle& b) {
  int d = 0;
  for (int j : b.twists)
    for (int i : a.twists) d += H0Dim(j - i);
  return d;
}

int ExtDim2(const SplitBundle& a, const SplitBundle& b) {
  int d = 0;
  for (int j : b.twists)
    for (int i : a.twists) d += H1Dim(j - i);
  return d;
}

// Calls fn on every coordinate vector of F_q^dim.
void ForEachVector(const Field& f, int dim, double bound, const std::string& what,
                   const std::function<void(const std::vector<Fq>&)>& fn) {
  const double card = Card(f.q(), dim);
  if (card > bound) throw SizeBoundError(what, card);
  std::vector<Fq> v(dim, f.zero());
  for (;;) {
    fn(v);
    int k = 0;
    while (k < dim) {
      const int next = v[k].v + 1;
      if (next < f.q()) {
        v[k] = f.element(next);
        break;
      }
      v[k] = f.zero();
      ++k;
    }
    if (k == dim) return;
  }
}

Mat<Laurent> LMatMul(const LaurentOps& L, const Mat<Laurent>& a,
                     const Mat<Laurent>& b) {
  Mat<Laurent> out(a.rows, b.cols, Laurent{});
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols; ++j)
        out(i, j) = L.add(out(i, j), L.mul(a(i, k), b(k, j)));
    }
  return out;
}

Mat<Laurent> LMatSigma(const LaurentOps& L, Mat<Laurent> a) {
  for (auto& x : a.a) x = L.sigma(x);
  return a;
}

// Phi in Hom(F^*, s^*A), Xi in Ext^1(F^*, A^*):
// Tr of the t^-1 coefficient of tr(sigma(Xi) h_F Phi^T).
Fq HermSerre(const PolyRing& R, const HermBundle& F, const SheafMap& phi,
             const ExtClass& xi) {
  const LaurentOps L(R);
  const Mat<Laurent> x =
      LMatMul(L, LMatSigma(L, xi.c), ToLaurent(R, F.h));
  return R.field().trace(L.trace_residue(x, Transpose(ToLaurent(R, phi.m))));
}

bool VecIsZero(const std::vector<Fq>& v) {
  for (Fq x : v)
    if (x.v) return false;
  return true;
}

std::vector<std::size_t> ImageIndices(const FiniteVS& src, const FiniteVS& tgt,
                                      const Mat<Fq>& f) {
  std::vector<std::size_t> out(src.size());
  for (std::size_t i = 0; i < src.size(); ++i)
    out[i] = tgt.Index(Apply(src.field(), f, src.Point(i)));
  return out;
}

Mat<Fq> Neg(const Field& f, Mat<Fq> m) {
  for (auto& x : m.a) x = f.neg(x);
  return m;
}

Mat<Fq> ScaleMat(const Field& f, Mat<Fq> m, Fq c) {
  for (auto& x : m.a) x = f.mul(x, c);
  return m;
}

// a s^ea == b s^eb.
bool EqualScaled(const Character& psi, const CharValue& a, int ea,
                 const CharValue& b, int eb) {
  const int lo = std::min(ea, eb);
  return a * psi.SqrtQPow(ea - lo) == b * psi.SqrtQPow(eb - lo);
}

}  // namespace

double InstanceSizes::Max() const {
  return std::max({hom1, hom2, v, ext1, ext2});
}

InstanceSizes EstimateSizes(const ThetaInstance& inst) {
  const int q = inst.field->q();
  const int n = inst.F.F.rank();
  const SplitBundle fd = inst.F.F.dual();
  InstanceSizes s;
  s.hom1 = Card(q, 2 * HomDim2(inst.E1.E, inst.F.F));
  s.hom2 = Card(q, 2 * HomDim2(inst.E2.E, inst.F.F));
  s.v = Card(q, 2 * n * (-inst.E1.E.degree2() - inst.E2.E.degree2()));
  s.ext1 = Card(q, 2 * ExtDim2(fd, inst.E2.E));
  s.ext2 = Card(q, 2 * ExtDim2(fd, inst.E1.E));
  return s;
}

void ValidateInstance(const PolyRing& R, const ThetaInstance& inst,
                      double bound) {
  Require(inst.field != nullptr, ErrorCode::kInvalidArgument, "missing field");
  CheckSkewHermBundle(R, inst.G);
  RequireLagrangian(R, inst.G, inst.E1, "E1");
  RequireLagrangian(R, inst.G, inst.E2, "E2");
  if (!IsTransverse(R, inst.G, inst.E1, inst.E2))
    throw Error(ErrorCode::kNotTransverse, "E1 and E2 are not transverse");
  CheckHermBundle(R, inst.F);
  Require(inst.F.F.rank() >= inst.E1.E.rank(), ErrorCode::kInvalidArgument,
          "rank F must be at least rank E");
  const InstanceSizes s = EstimateSizes(inst);
  if (s.hom1 > bound) throw SizeBoundError("Hom(E1, F) exceeds the bound", s.hom1);
  if (s.hom2 > bound) throw SizeBoundError("Hom(E2, F) exceeds the bound", s.hom2);
}

ThetaInstance RandomInstance(const PolyRing& R, std::mt19937_64& rng, int m,
                             int n, double bound, int max_len) {
  Require(m >= 1 && m <= 2 && n >= m && n <= 2, ErrorCode::kInvalidArgument,
          "random instances need 1 <= m <= n <= 2");
  for (int attempt = 0; attempt < 10000; ++attempt) {
    SplitBundle e;
    for (int i = 0; i < m; ++i) e.twists.push_back(static_cast<int>(rng() % 2));
    const TransversePair p = RandomTransversePair(R, rng, e, max_len);
    ThetaInstance inst{R.field_ptr(), p.G, p.E1, p.E2, RandomHermBundle(R, rng, n)};
    if (EstimateSizes(inst).Max() <= bound) return inst;
  }
  throw SizeBoundError("no random instance within the bound", bound);
}

SheafMap AOfT(const PolyRing& R, const HermBundle& F, const SheafMap& t) {
  Require(t.tgt == F.F, ErrorCode::kInvalidArgument, "a(t): t must map to F");
  const PolyMat st = Transpose(PolyMatSigma(R, t.m));
  return SheafMap{t.src, t.src.dual().twist(-2), MatMul(R, MatMul(R, st, F.h), t.m)};
}

ExtClass ExtensionClass(const PolyRing& R, const SkewHermBundle& G,
                        const Lagrangian& E) {
  return ExtClassOfSequence(R, InclusionMap(E, G), QuotientMap(R, G, E));
}

Fq ExtensionPairing(const PolyRing& R, const ExtClass& e, const SheafMap& a) {
  Require(a.tgt == e.src.twist(-2) && a.src == e.tgt, ErrorCode::kInvalidArgument,
          "extension pairing: shape mismatch");
  const LaurentOps L(R);
  return R.field().trace(L.trace_residue(ToLaurent(R, a.m), e.c));
}

CharValue ThetaValue::Value() const {
  CharValue v = sum * static_cast<std::int64_t>(sign);
  if (half_exponent >= 0) return v * CharValue::SqrtQPow(sum.p(), sum.q(), half_exponent);
  CharValue out;
  if (!v.DivSqrtQPow(-half_exponent, &out))
    throw Error(ErrorCode::kInvalidArgument, "theta value is not integral");
  return out;
}

bool ThetaValue::Equals(const ThetaValue& o) const {
  const int lo = std::min(half_exponent, o.half_exponent);
  const int p = sum.p(), q = sum.q();
  return sum * static_cast<std::int64_t>(sign) *
             CharValue::SqrtQPow(p, q, half_exponent - lo) ==
         o.sum * static_cast<std::int64_t>(o.sign) *
             CharValue::SqrtQPow(p, q, o.half_exponent - lo);
}

std::string ThetaValue::ToString() const {
  std::ostringstream os;
  os << (sign < 0 ? "-" : "") << "s^" << half_exponent << " * (" << sum.ToString()
     << ")";
  return os.str();
}

int ChiDet(const Lagrangian& E, int n) { return Chi(E.E.degree2(), n); }

int HalfExponent(const Lagrangian& E, int n) {
  // n (deg_q E - deg omega_X) with deg_q E = 2 deg E and deg omega_X = -2.
  return n * (E.E.degq() + 2);
}

ThetaValue ThetaSeries(const Character& psi, const PolyRing& R,
                       const SkewHermBundle& G, const Lagrangian& E,
                       const HermBundle& F, double bound) {
  const ExtClass e = ExtensionClass(R, G, E);
  const HomSpace H(R, E.E, F.F);
  PsiSum acc(psi);
  ThetaValue z;
  ForEachVector(R.field(), H.dimq(), bound, "Hom(E, F) enumeration",
                [&](const std::vector<Fq>& v) {
                  acc.Add(ExtensionPairing(R, e, AOfT(R, F, H.FromCoords(v))));
                  ++z.terms;
                });
  z.sum = acc.Value();
  z.sign = ChiDet(E, F.F.rank());
  z.half_exponent = HalfExponent(E, F.F.rank());
  return z;
}

// ---------------------------------------------------------------------------

ThetaPipeline::ThetaPipeline(const PolyRing& R, const ThetaInstance& inst)
    : R_(&R), inst_(inst) {
  q_ = std::make_unique<QData>(R, inst.G, inst.E1, inst.E2);
  v_ = std::make_unique<HomToTorsion>(*q_, inst.F.F.rank());
  row1_ = BuildRow(1);
  row2_ = BuildRow(2);
}

HomToTorsion::Point ThetaPipeline::SOfT(const SheafMap& t, int side) const {
  const int m = inst_.E1.E.rank(), n = inst_.F.F.rank();
  Require(t.m.rows == n && t.m.cols == m, ErrorCode::kInvalidArgument,
          "s(t): t has the wrong shape");
  HomToTorsion::Point s(n);
  for (int j = 0; j < n; ++j) {
    std::vector<Poly> x(2 * m);
    for (int i = 0; i < m; ++i) x[side == 1 ? m + i : i] = t.m(j, i);
    s[j] = q_->SigmaQ().Reduce(x);
  }
  return s;
}

int ThetaPipeline::HomDim(int side) const {
  const Lagrangian& other = side == 1 ? inst_.E2 : inst_.E1;
  return 2 * HomDim2(inst_.F.F.dual(), other.E);
}

int ThetaPipeline::ExtDim(int side) const {
  const Lagrangian& other = side == 1 ? inst_.E2 : inst_.E1;
  return 2 * ExtDim2(inst_.F.F.dual(), other.E);
}

Mat<Fq> ThetaPipeline::ConnectingMatrix(int side) const {
  const PolyRing& R = *R_;
  const RatOps K(R);
  const LaurentOps L(R);
  const Field& f = R.field();
  const int m = inst_.E1.E.rank(), n = inst_.F.F.rank();
  const SplitBundle fd = inst_.F.F.dual();
  const Lagrangian& other = side == 1 ? inst_.E2 : inst_.E1;
  const PolyMat& b = side == 1 ? q_->b21() : q_->b12();
  const TorsionModule& qi = side == 1 ? q_->Q1() : q_->Q2();
  const auto inv = Inverse(K, ToRat(K, PolyMatSigma(R, b)));
  Require(inv.has_value(), ErrorCode::kInvariantViolated,
          "cross pairing is not generically invertible");
  const Ext1Space X(R, fd, other.E);
  return MatrixOf(f, v_->dimq(), X.dimq(), [&](const std::vector<Fq>& v) {
    const HomToTorsion::Point s = v_->FromCoords(v);
    ExtClass cls{fd, other.E, Mat<Laurent>(m, n, Laurent{})};
    for (int j = 0; j < n; ++j) {
      const auto w = q_->ToQ(s[j]);
      const auto x = side == 1 ? q_->Iota1Inv(w) : q_->Iota2Inv(w);
      std::vector<Poly> y = qi.Lift(x);
      for (auto& p : y) p = R.sigma(p);
      for (int k = 0; k < m; ++k) {
        RatFunc r = K.zero();
        for (int l = 0; l < m; ++l)
          r = K.add(r, K.mul((*inv)(k, l), K.from_poly(y[l])));
        const int d = other.E.twists[k] + inst_.F.F.twists[j];
        cls.c(k, j) = L.neg(L.truncate(L.expand_at_infinity(r, d + 1), d + 1, -1));
      }
    }
    return X.Coords(cls);
  });
}

FiveTermRow ThetaPipeline::BuildRow(int side) const {
  const PolyRing& R = *R_;
  const Field& f = R.field();
  const int m = inst_.E1.E.rank(), n = inst_.F.F.rank();
  const SplitBundle fd = inst_.F.F.dual();
  const Lagrangian& self = side == 1 ? inst_.E1 : inst_.E2;
  const Lagrangian& other = side == 1 ? inst_.E2 : inst_.E1;
  const SheafMap sb{other.E, self.E.dual(),
                    PolyMatSigma(R, side == 1 ? q_->b21() : q_->b12())};
  const HomSpace h_a(R, fd, other.E), h_b(R, fd, self.E.dual());
  const Ext1Space x_a(R, fd, other.E), x_b(R, fd, self.E.dual());

  FiveTermRow row;
  row.side = side;
  row.dims = {h_a.dimq(), h_b.dimq(), v_->dimq(), x_a.dimq(), x_b.dimq()};
  row.maps.push_back(MatrixOf(f, h_a.dimq(), h_b.dimq(), [&](const auto& v) {
    const SheafMap phi = h_a.FromCoords(v);
    return h_b.Coords(SheafMap{fd, self.E.dual(), MatMul(R, sb.m, phi.m)});
  }));
  row.maps.push_back(MatrixOf(f, h_b.dimq(), v_->dimq(), [&](const auto& v) {
    const SheafMap tp = h_b.FromCoords(v);
    HomToTorsion::Point s(n);
    for (int j = 0; j < n; ++j) {
      std::vector<Poly> x(2 * m);
      for (int i = 0; i < m; ++i) x[side == 1 ? m + i : i] = tp.m(i, j);
      s[j] = q_->SigmaQ().Reduce(x);
    }
    return v_->Coords(s);
  }));
  row.maps.push_back(ConnectingMatrix(side));
  row.maps.push_back(MatrixOf(f, x_a.dimq(), x_b.dimq(), [&](const auto& v) {
    return x_b.Coords(ComposeMapExt(R, sb, x_a.FromCoords(v)));
  }));
  const FqOps ops{&f};
  for (const auto& mp : row.maps) row.ranks.push_back(Rank(ops, mp));
  return row;
}

void ThetaPipeline::VerifyExact(int side) const {
  const FiveTermRow& row = Row(side);
  const FqOps ops{&R_->field()};
  const std::string tag = "row " + std::to_string(side) + ": ";
  for (int i = 0; i + 1 < 4; ++i)
    if (!IsZeroMat(ops, MatMul(ops, row.maps[i + 1], row.maps[i])))
      throw InvariantError(tag + "composite of maps " + std::to_string(i + 1) +
                           " and " + std::to_string(i + 2) + " is nonzero");
  if (row.ranks[0] != row.dims[0])
    throw InvariantError(tag + "first map is not injective");
  for (int i = 0; i + 1 < 4; ++i)
    if (row.ranks[i] + row.ranks[i + 1] != row.dims[i + 1])
      throw InvariantError(tag + "not exact at term " + std::to_string(i + 2));
  if (row.ranks[3] != row.dims[4])
    throw InvariantError(tag + "last map is not surjective");
}

Mat<Fq> ThetaPipeline::Pairing(int k) const {
  Require(k >= 1 && k <= 5, ErrorCode::kInvalidArgument, "pairing index 1..5");
  const PolyRing& R = *R_;
  const Field& f = R.field();
  const SplitBundle fd = inst_.F.F.dual();
  const SplitBundle& e1 = inst_.E1.E;
  const SplitBundle& e2 = inst_.E2.E;
  if (k == 3) {
    const QuadSpace v12 = InducedQuadraticSpace(inst_.F, *q_, Side::k12);
    return v12.gram();
  }
  // Hom(F^*, s^*A) against Ext^1(F^*, A^*); hom_first when the Hom space is
  // the row-one side.
  auto serre = [&](const HomSpace& H, const Ext1Space& X, bool hom_first) {
    const int dh = H.dimq(), dx = X.dimq();
    Mat<Fq> p(hom_first ? dh : dx, hom_first ? dx : dh, f.zero());
    std::vector<Fq> eh(dh, f.zero()), ex(dx, f.zero());
    for (int i = 0; i < dh; ++i) {
      eh[i] = f.one();
      const SheafMap phi = H.FromCoords(eh);
      eh[i] = f.zero();
      for (int j = 0; j < dx; ++j) {
        ex[j] = f.one();
        const Fq val = HermSerre(R, inst_.F, phi, X.FromCoords(ex));
        ex[j] = f.zero();
        if (hom_first) p(i, j) = val;
        else p(j, i) = val;
      }
    }
    return p;
  };
  switch (k) {
    case 1: return serre(HomSpace(R, fd, e2), Ext1Space(R, fd, e2.dual()), true);
    case 2: return serre(HomSpace(R, fd, e1.dual()), Ext1Space(R, fd, e1), true);
    case 4: return serre(HomSpace(R, fd, e2.dual()), Ext1Space(R, fd, e2), false);
    default: return serre(HomSpace(R, fd, e1), Ext1Space(R, fd, e1.dual()), false);
  }
}

DualityResult ThetaPipeline::VerifyDuality() const {
  const Field& f = R_->field();
  const FqOps ops{&f};
  std::vector<Mat<Fq>> p;
  DualityResult out;
  for (int k = 1; k <= 5; ++k) {
    p.push_back(Pairing(k));
    const Mat<Fq>& pk = p.back();
    out.perfect.push_back(pk.rows == pk.cols && Rank(ops, pk) == pk.rows);
    if (!out.perfect.back())
      throw InvariantError("pairing " + std::to_string(k) + " is not perfect");
  }
  for (int i = 1; i <= 4; ++i) {
    const Mat<Fq> lhs = MatMul(ops, Transpose(row1_.maps[i - 1]), p[i]);
    const Mat<Fq> rhs = MatMul(ops, p[i - 1], row2_.maps[4 - i]);
    int sign;
    if (IsZeroMat(ops, lhs) && IsZeroMat(ops, rhs)) sign = 0;
    else if (lhs == rhs) sign = 1;
    else if (lhs == Neg(f, rhs)) sign = -1;
    else
      throw InvariantError("map " + std::to_string(i) +
                           " of row 1 is not dual to map " +
                           std::to_string(5 - i) + " of row 2 up to sign");
    out.signs.push_back(sign);
  }
  return out;
}

std::int64_t ThetaPipeline::VerifyPairingIdentity(int side, double bound) const {
  const PolyRing& R = *R_;
  const Field& f = R.field();
  const Lagrangian& E = side == 1 ? inst_.E1 : inst_.E2;
  const ExtClass e = ExtensionClass(R, inst_.G, E);
  const HomSpace H(R, E.E, inst_.F.F);
  std::int64_t count = 0;
  ForEachVector(f, H.dimq(), bound, "Hom(E, F) enumeration",
                [&](const std::vector<Fq>& v) {
                  const SheafMap t = H.FromCoords(v);
                  const Fq lhs = ExtensionPairing(R, e, AOfT(R, inst_.F, t));
                  const Fq q21 = InducedForm(inst_.F, *q_, Side::k21, SOfT(t, side));
                  const Fq rhs = side == 1 ? f.neg(q21) : q21;
                  if (lhs.v != rhs.v)
                    throw InvariantError("extension pairing differs from the "
                                         "torsion form at t #" +
                                         std::to_string(count));
                  ++count;
                });
  return count;
}

std::vector<std::int64_t> ThetaPipeline::PushCounts(int side, double bound) const {
  const FiniteVS src(inst_.field, Row(side).dims[1], bound);
  const FiniteVS tgt(inst_.field, v_->dimq(), bound);
  std::vector<std::int64_t> counts(tgt.size(), 0);
  for (std::size_t idx : ImageIndices(src, tgt, Row(side).maps[1])) ++counts[idx];
  return counts;
}

void ThetaPipeline::VerifyPushforward(int side, double bound) const {
  const Field& f = R_->field();
  const auto counts = PushCounts(side, bound);
  const FiniteVS V(inst_.field, v_->dimq(), bound);
  const std::int64_t qh = static_cast<std::int64_t>(Card(f.q(), HomDim(side)));
  const Mat<Fq>& g = Row(side).maps[2];
  for (std::size_t i = 0; i < V.size(); ++i) {
    const std::int64_t expect = VecIsZero(Apply(f, g, V.Point(i))) ? qh : 0;
    if (counts[i] != expect)
      throw InvariantError("pushforward differs from q^hom g^* delta at v #" +
                           std::to_string(i));
  }
}

// ---------------------------------------------------------------------------

bool ModularityReport::AllOk() const {
  return equal && FirstFailure() == nullptr;
}

const StepResult* ModularityReport::FirstFailure() const {
  for (const auto& s : steps)
    if (!s.ok) return &s;
  return nullptr;
}

ModularityReport ModularityCheck(const Character& psi, const PolyRing& R,
                                 const ThetaInstance& inst,
                                 const ModularityOptions& opt) {
  ValidateInstance(R, inst, opt.bound);
  const Field& f = R.field();
  const int n = inst.F.F.rank();
  ModularityReport rep;
  PipelineTrace& tr = rep.trace;
  tr.m = inst.E1.E.rank();
  tr.n = n;
  tr.chi1 = ChiDet(inst.E1, n);
  tr.chi2 = ChiDet(inst.E2, n);
  tr.half_exp1 = HalfExponent(inst.E1, n);
  tr.half_exp2 = HalfExponent(inst.E2, n);

  using Clock = std::chrono::steady_clock;
  auto step = [&](const std::string& name, const std::function<std::string()>& fn) {
    const auto t0 = Clock::now();
    StepResult s{name, true, "", 0};
    try {
      s.detail = fn();
    } catch (const Error& e) {
      s.ok = false;
      s.detail = e.what();
    }
    if (s.detail.rfind("FAIL", 0) == 0) s.ok = false;
    s.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    rep.steps.push_back(s);
    return s.ok;
  };

  step("theta series of E1", [&] {
    rep.z1 = ThetaSeries(psi, R, inst.G, inst.E1, inst.F, opt.bound);
    return std::to_string(rep.z1.terms) + " terms";
  });
  step("theta series of E2", [&] {
    rep.z2 = ThetaSeries(psi, R, inst.G, inst.E2, inst.F, opt.bound);
    return std::to_string(rep.z2.terms) + " terms";
  });
  rep.equal = rep.z1.terms > 0 && rep.z2.terms > 0 && rep.z1.Equals(rep.z2);
  step("Z1 = Z2", [&] { return std::string(rep.equal ? "equal" : "FAIL: differ"); });

  if (!opt.replay) {
    rep.replay_note = "replay disabled";
    return rep;
  }
  std::unique_ptr<ThetaPipeline> pipe;
  try {
    const InstanceSizes sz = EstimateSizes(inst);
    if (std::max({sz.v, sz.ext1, sz.ext2}) > std::max(opt.bound, 1e6))
      throw SizeBoundError("pipeline spaces exceed the bound", sz.Max());
    pipe = std::make_unique<ThetaPipeline>(R, inst);
  } catch (const Error& e) {
    rep.replay_note = e.what();
    return rep;
  }
  rep.replayed = true;
  const ThetaPipeline& P = *pipe;
  const int r = P.dim_v();
  tr.dim_v = r;
  tr.deg_dq = P.q().DegreeDQ();
  tr.eta = P.q().EtaDQ();
  tr.hom = P.HomDim(1);
  tr.ext = P.ExtDim(1);
  tr.row1 = P.Row(1);
  tr.row2 = P.Row(2);
  tr.f = tr.row1.maps[1];
  tr.g = tr.row1.maps[2];
  tr.f2 = tr.row2.maps[1];
  tr.g2 = tr.row2.maps[2];

  const QuadSpace v12 = InducedQuadraticSpace(inst.F, P.q(), Side::k12);
  const QuadSpace v21 = InducedQuadraticSpace(inst.F, P.q(), Side::k21);
  tr.gram12 = v12.gram();
  tr.gram21 = v21.gram();
  const FiniteVS V(inst.field, r, std::max(opt.bound, 1e6));
  const int eta_n = n % 2 ? tr.eta : 1;

  step("q12 = -q21", [&] {
    return std::string(tr.gram12 == Neg(f, tr.gram21) && v12.Nondegenerate()
                           ? "ok"
                           : "FAIL: forms are not opposite and perfect");
  });
  step("five-term exactness, row 1", [&] {
    P.VerifyExact(1);
    return std::string("ok");
  });
  step("five-term exactness, row 2", [&] {
    P.VerifyExact(2);
    return std::string("ok");
  });
  step("five-term duality", [&] {
    tr.duality = P.VerifyDuality();
    std::string s = "signs";
    for (int x : tr.duality.signs) s += " " + std::to_string(x);
    return s;
  });
  if (opt.check_pairing_identity) {
    step("extension pairing = -q21(s(t)) for E1", [&] {
      return std::to_string(P.VerifyPairingIdentity(1, opt.bound)) + " t checked";
    });
    step("extension pairing = q21(s(t)) for E2", [&] {
      return std::to_string(P.VerifyPairingIdentity(2, opt.bound)) + " t checked";
    });
  }
  step("Gauss sum = eta(D_Q)^n q^{dim V/2}", [&] {
    const GaussData g = GaussSum(psi, v12, std::max(opt.bound, 1e6));
    tr.gauss = g.G;
    return std::string(g.GammaIs(psi.Int(eta_n)) ? "ok" : "FAIL: gamma differs");
  });
  step("pushforward of f", [&] {
    P.VerifyPushforward(1, std::max(opt.bound, 1e6));
    return std::string("ok");
  });
  step("pushforward of f2", [&] {
    P.VerifyPushforward(2, std::max(opt.bound, 1e6));
    return std::string("ok");
  });

  tr.f_push = P.PushCounts(1, std::max(opt.bound, 1e6));
  tr.f2_push = P.PushCounts(2, std::max(opt.bound, 1e6));
  const FiniteFn phi1 = QuadraticCharacterFn(psi, v12);
  const FiniteFn phi2 = FromCounts(psi, tr.f_push);
  const FiniteFn phi21 = QuadraticCharacterFn(psi, v21);
  const FiniteFn push2 = FromCounts(psi, tr.f2_push);
  tr.pairing12 = SumProduct(psi, phi1, phi2);
  tr.pairing21 = SumProduct(psi, phi21, push2);

  step("Z1 = <q12^* psi, f_! 1>", [&] {
    ThetaValue z{tr.pairing12, tr.chi1, tr.half_exp1, 0};
    return std::string(z.Equals(rep.z1) ? "ok" : "FAIL: differs from the direct sum");
  });
  step("Plancherel", [&] {
    return std::string(CheckPlancherel(psi, V, phi1, phi2) ? "ok" : "FAIL");
  });
  step("Gaussian transform", [&] {
    return std::string(CheckGaussian(psi, v12) ? "ok" : "FAIL");
  });
  // g_hat_! 1 on the dual of V, by enumerating the dual of Ext^1.
  const FiniteVS Xd(inst.field, tr.ext, std::max(opt.bound, 1e6));
  std::vector<std::int64_t> ghat(V.size(), 0);
  for (std::size_t idx : ImageIndices(Xd, V, Transpose(tr.g))) ++ghat[idx];
  step("transform of g^* delta", [&] {
    FiniteFn gdelta(V.size(), psi.Zero());
    for (std::size_t i = 0; i < V.size(); ++i)
      if (VecIsZero(Apply(f, tr.g, V.Point(i)))) gdelta[i] = psi.One();
    const FiniteFn lhs = Ft(psi, V, gdelta);
    const CharValue sgn = psi.Int(r % 2 ? -1 : 1);
    for (std::size_t i = 0; i < V.size(); ++i)
      if (!EqualScaled(psi, lhs[i], 0, sgn * psi.Int(ghat[i]), 2 * (r - tr.ext)))
        return std::string("FAIL at index ") + std::to_string(i);
    return std::string("ok");
  });
  const Mat<Fq> h = ScaleMat(f, tr.gram12, f.from_int(2));
  step("g_hat_! 1 (h v) = f2_! 1 (v)", [&] {
    for (std::size_t i = 0; i < V.size(); ++i)
      if (ghat[V.Index(Apply(f, h, V.Point(i)))] != tr.f2_push[i])
        return std::string("FAIL at index ") + std::to_string(i);
    return std::string("ok");
  });
  step("quarter elimination", [&] {
    const QuadSpace dual = v12.Dual();
    const Fq c = f.neg(f.mul(f.half(), f.half()));
    for (std::size_t i = 0; i < V.size(); ++i) {
      const auto v = V.Point(i);
      if (f.mul(c, dual.Eval(Apply(f, h, v))).v != v21.Eval(v).v)
        return std::string("FAIL at index ") + std::to_string(i);
    }
    return std::string("ok");
  });
  step("assembled chain", [&] {
    // q^r <phi1, phi2> = G q^{hom + r - ext} <q21^* psi, f2_! 1>.
    const bool ok = EqualScaled(psi, tr.pairing12, 2 * r, tr.gauss * tr.pairing21,
                                2 * (tr.hom + r - tr.ext));
    return std::string(ok ? "ok" : "FAIL");
  });
  step("Z2 = <q21^* psi, f2_! 1>", [&] {
    ThetaValue z{tr.pairing21, tr.chi2, tr.half_exp2, 0};
    return std::string(z.Equals(rep.z2) ? "ok" : "FAIL: differs from the direct sum");
  });
  step("exponent identity", [&] {
    const int lhs = tr.half_exp1 + r + 2 * (tr.hom - tr.ext);
    return lhs == tr.half_exp2 ? std::string("ok")
                               : "FAIL: " + std::to_string(lhs) + " vs " +
                                     std::to_string(tr.half_exp2);
  });
  step("sign identity", [&] {
    return std::string(tr.chi1 * eta_n == tr.chi2 ? "ok" : "FAIL");
  });
  return rep;
}

TransitivityReport TransitivityCheck(const Character& psi, const PolyRing& R,
                                     const ThetaInstance& inst, double bound) {
  ValidateInstance(R, inst, bound);
  TransitivityReport out;
  out.L = CompleteTransverse(R, inst.G, inst.E1, inst.E2);
  out.z1 = ThetaSeries(psi, R, inst.G, inst.E1, inst.F, bound);
  out.z2 = ThetaSeries(psi, R, inst.G, inst.E2, inst.F, bound);
  out.zl = ThetaSeries(psi, R, inst.G, out.L, inst.F, bound);
  out.ok = out.z1.Equals(out.zl) && out.zl.Equals(out.z2);
  return out;
}

}  // namespace tz
