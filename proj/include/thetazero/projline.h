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

#ifndef THETAZERO_PROJLINE_H_
#define THETAZERO_PROJLINE_H_

// Split vector bundles on P^1 over F_{q^2} and their Hom, Ext^1 and Serre
// duality, computed with the two-chart Cech cover {y != 0}, {x != 0}.
//
// Every bundle O(d) is trivialized on the generic fiber by y^d, so a form of
// degree d in (x : y) becomes a polynomial in t = x/y of degree <= d. With
// this trivialization a section of O(d) over {y != 0} is a polynomial in t, a
// section over {x != 0} is a Laurent polynomial with exponents <= d, and
// H^1(O(d)) has the basis t^a, d < a < 0 (the Cech class x^a y^{d-a}).
// Cech cocycles are taken as (chart {x != 0}) - (chart {y != 0}).

#include <optional>
#include <string>
#include <vector>

#include "thetazero/gf.h"
#include "thetazero/linalg.h"
#include "thetazero/polyalg.h"

namespace tz {

// sum_i c[i] t^{low + i}
struct Laurent {
  int low = 0;
  std::vector<Fq2> c;
  bool is_zero() const { return c.empty(); }
  int high() const { return low + static_cast<int>(c.size()) - 1; }
  friend bool operator==(const Laurent&, const Laurent&) = default;
};

class LaurentOps {
 public:
  using T = Laurent;
  explicit LaurentOps(const PolyRing& R) : R_(&R), F_(&R.field()) {}
  T zero() const { return T{}; }
  T one() const { return from_poly(R_->one()); }
  T from_poly(const Poly& p) const;
  T monomial(Fq2 c, int k) const;
  Fq2 coeff(const T& x, int k) const;
  T add(const T& x, const T& y) const;
  T sub(const T& x, const T& y) const { return add(x, neg(y)); }
  T neg(const T& x) const;
  T mul(const T& x, const T& y) const;
  T scale(const T& x, Fq2 c) const;
  T sigma(const T& x) const;
  bool is_zero(const T& x) const { return x.is_zero(); }
  // Keeps exponents in [lo, hi].
  T truncate(const T& x, int lo, int hi) const;
  // The expansion of x at infinity, exponents >= min_exp.
  T expand_at_infinity(const RatFunc& x, int min_exp) const;
  // Coefficient of t^{-1} of sum_ij a_ij b_ji.
  Fq2 trace_residue(const Mat<T>& a, const Mat<T>& b) const;

 private:
  static void Normalize(T& x);
  const PolyRing* R_;
  const Field* F_;
};

struct SplitBundle {
  std::vector<int> twists;
  int rank() const { return static_cast<int>(twists.size()); }
  int degree2() const;  // over F_{q^2}
  int degq() const { return 2 * degree2(); }  // over F_q
  SplitBundle dual() const;
  SplitBundle twist(int k) const;
  friend bool operator==(const SplitBundle&, const SplitBundle&) = default;
};

SplitBundle DirectSum(const SplitBundle& a, const SplitBundle& b);
inline int H0Dim(int d) { return d >= 0 ? d + 1 : 0; }
inline int H1Dim(int d) { return d <= -2 ? -d - 1 : 0; }

// Entry (j, i) is a polynomial of degree <= tgt_j - src_i (zero if negative).
struct SheafMap {
  SplitBundle src;
  SplitBundle tgt;
  PolyMat m;
};

// Throws unless the entry degrees fit the twists.
void CheckSheafMap(const SheafMap& f);
SheafMap Compose(const PolyRing& R, const SheafMap& g, const SheafMap& f);
SheafMap SigmaTwist(const PolyRing& R, const SheafMap& f);
// sigma^* f^dual: sigma^* B^* -> sigma^* A^*, the conjugate transpose.
SheafMap SigmaDual(const PolyRing& R, const SheafMap& f);
SheafMap ZeroMap(const SplitBundle& src, const SplitBundle& tgt);
SheafMap IdentityMap(const PolyRing& R, const SplitBundle& e);

// An element of Ext^1(src, tgt) = H^1(Hom(src, tgt)): entry (j, i) is a
// Laurent polynomial supported in the H^1 range of O(tgt_j - src_i).
struct ExtClass {
  SplitBundle src;
  SplitBundle tgt;
  Mat<Laurent> c;
};

ExtClass SigmaTwist(const PolyRing& R, const ExtClass& e);
// Reduces an arbitrary overlap cocycle to its H^1 representative.
ExtClass ReduceCocycle(const PolyRing& R, const SplitBundle& src,
                       const SplitBundle& tgt, const Mat<Laurent>& c);
// Yoneda products with maps: e o f and g o e.
ExtClass ComposeExtMap(const PolyRing& R, const ExtClass& e, const SheafMap& f);
ExtClass ComposeMapExt(const PolyRing& R, const SheafMap& g, const ExtClass& e);

// Hom(A, B) as an F_q-vector space with monomial coordinates.
class HomSpace {
 public:
  HomSpace(const PolyRing& R, SplitBundle a, SplitBundle b);
  const SplitBundle& src() const { return a_; }
  const SplitBundle& tgt() const { return b_; }
  int dim2() const { return dim2_; }
  int dimq() const { return 2 * dim2_; }
  // F_{q^2}-basis of single-monomial maps.
  std::vector<SheafMap> Basis2() const;
  std::vector<Fq> Coords(const SheafMap& f) const;
  SheafMap FromCoords(const std::vector<Fq>& v) const;

 private:
  const PolyRing* R_;
  SplitBundle a_, b_;
  int dim2_ = 0;
};

// Ext^1(A, B) as an F_q-vector space with Cech monomial coordinates.
class Ext1Space {
 public:
  Ext1Space(const PolyRing& R, SplitBundle a, SplitBundle b);
  const SplitBundle& src() const { return a_; }
  const SplitBundle& tgt() const { return b_; }
  int dim2() const { return dim2_; }
  int dimq() const { return 2 * dim2_; }
  std::vector<ExtClass> Basis2() const;
  std::vector<Fq> Coords(const ExtClass& e) const;
  ExtClass FromCoords(const std::vector<Fq>& v) const;

 private:
  const PolyRing* R_;
  SplitBundle a_, b_;
  int dim2_ = 0;
};

// <phi, xi> for phi in Hom(A, B), xi in Ext^1(B, A (x) omega): the t^{-1}
// coefficient of tr(xi o phi), then the trace to F_q.
Fq SerrePairing(const PolyRing& R, const SheafMap& phi, const ExtClass& xi);

// The trace map Ext^1(F (x) omega^{-1}, F) -> H^1(omega) = F_q.
Fq TraceToH1Omega(const PolyRing& R, const ExtClass& xi);

// True if the full-size minors of f generate the unit ideal on both charts,
// so that f is a subbundle inclusion (columns) or a surjection (rows).
bool IsSaturated(const PolyRing& R, const SheafMap& f);

// The class in Ext^1(C, E) of 0 -> E -i-> G -p-> C -> 0. Requires p i = 0,
// i saturated, p surjective and rank G = rank E + rank C.
ExtClass ExtClassOfSequence(const PolyRing& R, const SheafMap& i,
                            const SheafMap& p);

// Chart data for a surjection p: G -> C: right inverses over {y != 0} and
// {x != 0}, both written in the global t-trivialization.
struct ChartSplitting {
  Mat<Laurent> sy;
  Mat<Laurent> sx;
};
ChartSplitting SplitSurjection(const PolyRing& R, const SheafMap& p);
// A left inverse of a saturated inclusion over {y != 0}.
PolyMat LeftInverseY(const PolyRing& R, const SheafMap& i);
// A right inverse of a surjection over {y != 0}.
PolyMat RightInverseY(const PolyRing& R, const SheafMap& p);
Mat<Laurent> ToLaurent(const PolyRing& R, const PolyMat& m);

// The connecting map Hom(X, C) -> Ext^1(X, E) of the sequence: phi maps to
// e o phi with e the class of the sequence.
ExtClass Connecting(const PolyRing& R, const ExtClass& e, const SheafMap& phi);

}  // namespace tz

#endif  // THETAZERO_PROJLINE_H_
