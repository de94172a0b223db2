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

#ifndef THETAZERO_THETA_H_
#define THETAZERO_THETA_H_

// The r = 0 theta series of a Lagrangian and the comparison of two transverse
// Lagrangians through the torsion sheaf Q.
//
// Notation: t in Hom(E, F) is an n x m polynomial matrix T, and
// a(t) = sigma(T)^T h_F T. For the pair (E1, E2) the space V is
// Hom(F^*, sigma^*Q) = (sigma^*Q)^n, and the two rows of five-term sequences
// are
//   Hom(F^*, s^*E2) -> Hom(F^*, E1^*) -f-> V -g-> Ext^1(F^*, s^*E2) -> Ext^1(F^*, E1^*)
//   Hom(F^*, s^*E1) -> Hom(F^*, E2^*) -f2-> V -g2-> Ext^1(F^*, s^*E1) -> Ext^1(F^*, E2^*)

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "thetazero/character.h"
#include "thetazero/charvalue.h"
#include "thetazero/hermitian.h"
#include "thetazero/quadspace.h"

namespace tz {

struct ThetaInstance {
  FieldPtr field;
  SkewHermBundle G;
  Lagrangian E1, E2;
  HermBundle F;
};

struct InstanceSizes {
  double hom1 = 0;  // |Hom(E1, F)|
  double hom2 = 0;  // |Hom(E2, F)|
  double v = 0;     // |V|
  double ext1 = 0;  // |Ext^1(F^*, s^*E2)|
  double ext2 = 0;  // |Ext^1(F^*, s^*E1)|
  double Max() const;
};

InstanceSizes EstimateSizes(const ThetaInstance& inst);

// All preconditions, then the size estimate against `bound`.
void ValidateInstance(const PolyRing& R, const ThetaInstance& inst,
                      double bound);

// Hyperbolic G on O(a) + O(-a), a in {0, 1}, random transverse Lagrangians of
// rank m and a random Hermitian F of rank n; resampled until every space of
// the pipeline has at most `bound` elements and Q avoids t = infinity.
ThetaInstance RandomInstance(const PolyRing& R, std::mt19937_64& rng, int m,
                             int n, double bound, int max_len = 2);

SheafMap AOfT(const PolyRing& R, const HermBundle& F, const SheafMap& t);
// e_{G,E} in Ext^1(s^*E^*, E).
ExtClass ExtensionClass(const PolyRing& R, const SkewHermBundle& G,
                        const Lagrangian& E);
Fq ExtensionPairing(const PolyRing& R, const ExtClass& e, const SheafMap& a);

// sign * sqrt(q)^half_exponent * sum.
struct ThetaValue {
  CharValue sum;
  int sign = 1;
  int half_exponent = 0;
  std::int64_t terms = 0;
  // Throws when the value leaves Z[zeta_p][sqrt q].
  CharValue Value() const;
  bool Equals(const ThetaValue& o) const;
  std::string ToString() const;
};

int ChiDet(const Lagrangian& E, int n);
int HalfExponent(const Lagrangian& E, int n);

ThetaValue ThetaSeries(const Character& psi, const PolyRing& R,
                       const SkewHermBundle& G, const Lagrangian& E,
                       const HermBundle& F, double bound = 1e5);

struct FiveTermRow {
  int side = 1;
  std::vector<int> dims;       // five F_q-dimensions
  std::vector<Mat<Fq>> maps;   // four maps, maps[i]: dims[i] -> dims[i+1]
  std::vector<int> ranks;
};

struct DualityResult {
  // signs[i] relates the i-th map of row 1 with the (3-i)-th of row 2;
  // 0 when both sides vanish.
  std::vector<int> signs;
  std::vector<bool> perfect;  // the five pairings
};

struct StepResult {
  std::string name;
  bool ok = false;
  std::string detail;
  double seconds = 0;
};

struct PipelineTrace {
  int m = 0, n = 0;
  int dim_v = 0;  // over F_q
  int deg_dq = 0;
  int eta = 1;
  int chi1 = 1, chi2 = 1;
  int half_exp1 = 0, half_exp2 = 0;
  int hom = 0, ext = 0;  // dim_q Hom / Ext^1 (F^*, s^*E2)
  Mat<Fq> gram12, gram21;
  Mat<Fq> f, g, f2, g2;
  FiveTermRow row1, row2;
  DualityResult duality;
  CharValue gauss;
  std::vector<std::int64_t> f_push, f2_push;
  CharValue pairing12;  // <q12^* psi, f_! 1>
  CharValue pairing21;  // <q21^* psi, f2_! 1>
};

// The torsion-module side of the comparison.
class ThetaPipeline {
 public:
  ThetaPipeline(const PolyRing& R, const ThetaInstance& inst);

  const QData& q() const { return *q_; }
  const HomToTorsion& V() const { return *v_; }
  int dim_v() const { return v_->dimq(); }

  // s = (sigma^* iota_side) o t^dual, for t in Hom(E_side, F).
  HomToTorsion::Point SOfT(const SheafMap& t, int side) const;

  // The maps f and g of each row, as F_q-matrices in monomial coordinates.
  const FiveTermRow& Row(int side) const { return side == 1 ? row1_ : row2_; }
  // Throws InvariantError naming the stage if a row is not exact.
  void VerifyExact(int side) const;
  Mat<Fq> Pairing(int k) const;  // k = 1..5
  // Throws InvariantError if some position is dual up to neither sign.
  DualityResult VerifyDuality() const;

  // Checks <e_{G,E1}, a(t)> = -q21(s(t)) (side 1) or
  // <e_{G,E2}, a(t)> = q21(s(t)) (side 2) for every t; returns the count.
  std::int64_t VerifyPairingIdentity(int side, double bound) const;

  // f_! 1 by counting fibers; returns the table over V.
  std::vector<std::int64_t> PushCounts(int side, double bound) const;
  // Checks f_! 1 = q^hom g^* delta on V.
  void VerifyPushforward(int side, double bound) const;

  int HomDim(int side) const;  // dim_q Hom(F^*, s^*E_other)
  int ExtDim(int side) const;

 private:
  FiveTermRow BuildRow(int side) const;
  Mat<Fq> ConnectingMatrix(int side) const;

  const PolyRing* R_;
  ThetaInstance inst_;
  std::unique_ptr<QData> q_;
  std::unique_ptr<HomToTorsion> v_;
  FiveTermRow row1_, row2_;
};

struct ModularityOptions {
  double bound = 1e5;
  bool replay = true;
  bool check_pairing_identity = true;
};

struct ModularityReport {
  ThetaValue z1, z2;
  bool equal = false;
  bool replayed = false;
  std::string replay_note;
  std::vector<StepResult> steps;
  PipelineTrace trace;
  bool AllOk() const;
  const StepResult* FirstFailure() const;
};

ModularityReport ModularityCheck(const Character& psi, const PolyRing& R,
                                 const ThetaInstance& inst,
                                 const ModularityOptions& opt = {});

struct TransitivityReport {
  Lagrangian L;
  ThetaValue z1, z2, zl;
  bool ok = false;
};

// L = complete_transverse(E1, E2) and the three theta values.
TransitivityReport TransitivityCheck(const Character& psi, const PolyRing& R,
                                     const ThetaInstance& inst,
                                     double bound = 1e5);

}  // namespace tz

#endif  // THETAZERO_THETA_H_
