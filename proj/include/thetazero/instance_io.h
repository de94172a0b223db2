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

#ifndef THETAZERO_INSTANCE_IO_H_
#define THETAZERO_INSTANCE_IO_H_

// Instance files (JSON, "schema": 1) and machine-readable reports.
//
// {
//   "schema": 1,
//   "field": {"p": 3, "f": 1},
//   "G":  {"hyperbolic": [0]}            or {"twists": [...], "h": [[poly]]},
//   "E1": {"recipe": "hyperbolic_first"} or "hyperbolic_second",
//         {"recipe": "graph", "u": [[poly]]} or {"twists": [...], "J": [[poly]]},
//   "E2": ...,
//   "F":  {"twists": [-1], "h": [[poly]]},
//   "bound": 100000
// }
//
// A poly is a list of coefficients, lowest degree first. A coefficient is an
// integer (an element of F_q by index) or a pair [a, b] meaning a + b alpha.

#include <cstdint>
#include <string>
#include <vector>

#include "thetazero/fourier.h"
#include "thetazero/theta.h"

namespace tz {

struct ParsedInstance {
  ThetaInstance inst;
  double bound = 1e5;
};

// Throws Error(kParse) naming the JSON path of the offending value.
ParsedInstance ParseInstance(const std::string& text);
std::string InstanceToJson(const ThetaInstance& inst, double bound);
// FNV-1a of the canonical JSON.
std::uint64_t InstanceHash(const ThetaInstance& inst);
std::string HashHex(std::uint64_t h);

std::string ModularityReportJson(const ModularityReport& rep,
                                 const ThetaInstance& inst, bool timings);
std::string ModularityCsvHeader();
std::string ModularityCsvRow(int index, const ModularityReport& rep,
                             const ThetaInstance& inst);

struct GaussRow {
  int q = 0;
  std::string form;
  int dim = 0;
  CharValue G;
  bool has_gamma = false;
  CharValue gamma;
};

// gamma of H+, H-, split and norm-form sums up to dim_max for every q.
std::vector<GaussRow> GaussTable(const std::vector<int>& qs, int dim_max);
std::string GaussTableCsv(const std::vector<GaussRow>& rows);
std::string GaussTableJson(const std::vector<GaussRow>& rows);

std::string SelfTestJson(int q, int r_max, int trials, std::uint64_t seed,
                         const std::vector<SelfTestLine>& lines);
std::string SelfTestText(const std::vector<SelfTestLine>& lines);

// Field for q = p^f; throws kInvalidArgument when q is not a prime power.
FieldPtr FieldForQ(int q);

}  // namespace tz

#endif  // THETAZERO_INSTANCE_IO_H_
