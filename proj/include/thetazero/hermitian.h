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

#ifndef THETAZERO_HERMITIAN_H_
#define THETAZERO_HERMITIAN_H_

// Hermitian and skew-Hermitian bundles on P^1 over F_{q^2}, Lagrangian
// subbundles, and the torsion module Q = (sigma^*E2^* + sigma^*E1^*) / G
// attached to a transverse pair.
//
// Conventions. A skew-Hermitian G carries a matrix H with sigma(H)^T = -H;
// its pairing is <z, z'> = sigma(z')^T H z, linear in z. A Lagrangian E is
// a column matrix J: E -> G. The quotient G -> sigma^*E^* is
// P_E = sigma(J)^T H, and b12 = P_2 J_1: E1 -> sigma^*E2^*.

#include <random>
#include <string>
#include <vector>

#include "thetazero/polyalg.h"
#include "thetazero/projline.h"

namespace tz {

// h: F -> sigma^*F^* (x) omega; entry (j, i) has degree -f_j - 2 - f_i.
struct HermBundle {
  SplitBundle F;
  PolyMat h;
};

// h: G -> sigma^*G^*; entry (j, i) has degree -g_j - g_i.
struct SkewHermBundle {
  SplitBundle G;
  PolyMat h;
};

struct Lagrangian {
  SplitBundle E;
  PolyMat J;  // 2m x m
};

// Throw kInvalidArgument with a description of the first failed condition.
void CheckHermBundle(const PolyRing& R, const HermBundle& F);
void CheckSkewHermBundle(const PolyRing& R, const SkewHermBundle& G);

// sigma(B)^T H A for column matrices A, B.
PolyMat FormMatrix(const PolyRing& R, const SkewHermBundle& G, const PolyMat& a,
                   const PolyMat& b);
SheafMap QuotientMap(const PolyRing& R, const SkewHermBundle& G,
                     const Lagrangian& E);
SheafMap InclusionMap(const Lagrangian& E, const SkewHermBundle& G);
PolyMat B12(const PolyRing& R, const SkewHermBundle& G, const Lagrangian& e1,
            const Lagrangian& e2);

// Throws kInvalidArgument for a wrong rank or degree, kNotSaturated for a
// non-subbundle; otherwise returns whether the restricted form vanishes.
bool IsLagrangian(const PolyRing& R, const SkewHermBundle& G,
                  const Lagrangian& E);
// IsLagrangian or throw kNotLagrangian.
void RequireLagrangian(const PolyRing& R, const SkewHermBundle& G,
                       const Lagrangian& E, const std::string& name);
bool IsTransverse(const PolyRing& R, const SkewHermBundle& G,
                  const Lagrangian& e1, const Lagrangian& e2);

// The subbundle of G whose generic fiber is spanned by the columns of c.
Lagrangian Saturate(const PolyRing& R, const SplitBundle& G,
                    const Mat<RatFunc>& c);
// A Lagrangian transverse to both inputs, built on the generic fiber.
Lagrangian CompleteTransverse(const PolyRing& R, const SkewHermBundle& G,
                              const Lagrangian& e1, const Lagrangian& e2);

// G = E + E^* with H = [[0, I], [-I, 0]].
SkewHermBundle Hyperbolic(const PolyRing& R, const SplitBundle& e);
// The summands E = [I; 0] and E^* = [0; I] of Hyperbolic(e).
Lagrangian HyperbolicFirst(const PolyRing& R, const SplitBundle& e);
Lagrangian HyperbolicSecond(const PolyRing& R, const SplitBundle& e);
// The graph {(s, u s)} of u: E -> E^* in Hyperbolic(e).
Lagrangian GraphLagrangian(const PolyRing& R, const SplitBundle& e,
                           const PolyMat& u);
// sigma(u)^T == u.
bool IsHermitianMatrix(const PolyRing& R, const PolyMat& u);

// A random Hermitian u with entry (i, j) of degree <= deg(i, j), where
// deg(i, j) = deg(j, i); negative bounds give zero entries.
PolyMat RandomHermitian(const PolyRing& R, std::mt19937_64& rng,
                        const Mat<int>& deg);

// A random Hermitian bundle of rank n <= 2 and degree -n: O(-1)^n with a
// constant form, or for n = 2 also O(0) + O(-2) with [[0, c], [sigma c, w]].
HermBundle RandomHermBundle(const PolyRing& R, std::mt19937_64& rng, int n);

struct TransversePair {
  SkewHermBundle G;
  Lagrangian E1, E2;
};

// Random Lagrangians E1, E2 in Hyperbolic(e), each a sum of lines
// [A; B] (A, B coprime forms over F_q) moved by a random unitary
// automorphism of G. The line over O(a) + O(-a) has twist between
// -|a| - max_len and -|a|. The pair is transverse and its Q avoids
// t = infinity.
TransversePair RandomTransversePair(const PolyRing& R, std::mt19937_64& rng,
                                    const SplitBundle& e, int max_len);

// A closed point of X' carrying part of Q. Inert points are sigma-stable and
// lie over a point of X of degree deg2; split points come in conjugate pairs
// over a point of X of degree 2 deg2.
struct QPoint {
  Poly pi;
  int length = 0;
  int deg2 = 0;
  bool inert = false;
};

class QData {
 public:
  using Element = TorsionModule::Element;

  // Requires transversality and that Q is supported away from t = infinity.
  QData(const PolyRing& R, const SkewHermBundle& G, const Lagrangian& e1,
        const Lagrangian& e2);

  const PolyRing& ring() const { return *R_; }
  const TorsionModule& Q() const { return q_; }
  const TorsionModule& Q1() const { return q1_; }  // coker b21
  const TorsionModule& Q2() const { return q2_; }  // coker b12
  const TorsionModule& SigmaQ() const { return sq_; }  // coker sigma(M)
  const PolyMat& M() const { return m_; }
  const PolyMat& b12() const { return b12_; }
  const PolyMat& b21() const { return b21_; }

  Element Iota1(const Element& x1) const;
  Element Iota2(const Element& x2) const;
  Element Iota1Inv(const Element& x) const;
  Element Iota2Inv(const Element& x) const;
  // sigma^*Q <-> Q by conjugating representatives.
  Element ToQ(const Element& sx) const;
  Element ToSigmaQ(const Element& x) const;

  // Sesquilinear pairings Q1 x Q2 -> K'/R and Q2 x Q1 -> K'/R induced by the
  // rational extension of <,> to G#; linear in the first argument.
  RatFunc Gamma12(const Element& x1, const Element& y2) const;
  RatFunc Gamma21(const Element& x2, const Element& y1) const;
  // c12(s, s') = Gamma12(iota1^-1 s, iota2^-1 s'); c21 symmetrically.
  RatFunc C12(const Element& s, const Element& sp) const;
  RatFunc C21(const Element& s, const Element& sp) const;

  // The trace of the residue map K'/R -> H^1(omega) -> F_q.
  Fq Residue(const RatFunc& r) const;

  const std::vector<QPoint>& points() const { return points_; }
  int DegreeDQ() const;  // deg_X D_Q
  int EtaDQ() const;     // (-1)^{deg_X D_Q}

  // Lemmas on the diagram; each throws InvariantError naming the failure.
  void VerifyBijections(double enum_bound) const;
  void VerifyBetaDuality(double enum_bound) const;
  void VerifyHermitian(double enum_bound) const;
  void VerifyDivisor() const;
  void VerifyAll(double enum_bound = 1e4) const;

 private:
  RatFunc Proper(const Poly& num, const Poly& den) const;

  const PolyRing* R_;
  PolyMat m_, b12_, b21_, p1_, p2_, p1s2_, p2s1_;
  PolyMat adj12_, adj21_;
  Poly det12_, det21_;
  TorsionModule q_, q1_, q2_, sq_;
  std::vector<QPoint> points_;
};

}  // namespace tz

#endif  // THETAZERO_HERMITIAN_H_
