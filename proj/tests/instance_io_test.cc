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

#include "thetazero/instance_io.h"

#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"

namespace tz {
namespace {

std::string ReadData(const std::string& name) {
  std::ifstream in(std::string(THETAZERO_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorCode ParseCode(const std::string& text, std::string* what) {
  try {
    ParsedInstance p = ParseInstance(text);
    PolyRing R(p.inst.field);
    ValidateInstance(R, p.inst, p.bound);
  } catch (const Error& e) {
    *what = e.what();
    return e.code();
  }
  return ErrorCode{0};
}

TEST(InstanceIo, RoundTripPreservesHashAndValues) {
  const FieldPtr F = Field::Make(3, 1);
  const PolyRing R(F);
  const Character psi(F);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const ThetaInstance inst = RandomInstance(R, rng, 1, 1 + trial % 2, 1e4);
    const std::string text = InstanceToJson(inst, 1e4);
    const ParsedInstance back = ParseInstance(text);
    EXPECT_EQ(back.bound, 1e4);
    EXPECT_EQ(InstanceHash(back.inst), InstanceHash(inst));
    EXPECT_EQ(InstanceToJson(back.inst, 1e4), text);
    const ThetaValue a = ThetaSeries(psi, R, inst.G, inst.E1, inst.F);
    const ThetaValue b = ThetaSeries(psi, R, back.inst.G, back.inst.E1, back.inst.F);
    EXPECT_EQ(a.sum, b.sum);
  }
}

TEST(InstanceIo, RecipesAndExplicitFormsAgree) {
  const ParsedInstance a = ParseInstance(ReadData("explicit_rank_one.json"));
  const PolyRing R(a.inst.field);
  EXPECT_EQ(a.bound, 1e5);
  const ThetaInstance& I = a.inst;
  EXPECT_EQ(I.G.h, Hyperbolic(R, SplitBundle{{0}}).h);
  EXPECT_EQ(I.E1.J, HyperbolicFirst(R, SplitBundle{{0}}).J);
  EXPECT_EQ(I.E2.J(1, 0), R.t());
  const Character psi(I.field);
  const ModularityReport rep = ModularityCheck(psi, R, I);
  EXPECT_TRUE(rep.AllOk());
  EXPECT_EQ(rep.z1.Value(), psi.Int(3));
}

TEST(InstanceIo, GraphRecipeReplays) {
  // u = t^2 on O(-1): Q has length 2 at t = 0.
  const ParsedInstance a = ParseInstance(ReadData("graph_rank_one.json"));
  const PolyRing R(a.inst.field);
  const QData q(R, a.inst.G, a.inst.E1, a.inst.E2);
  ASSERT_EQ(q.points().size(), 1u);
  EXPECT_EQ(q.points()[0].length, 2);
  const ModularityReport rep = ModularityCheck(Character(a.inst.field), R, a.inst);
  EXPECT_TRUE(rep.replayed) << rep.replay_note;
  EXPECT_EQ(rep.trace.dim_v, 8);
  EXPECT_TRUE(rep.equal);
  EXPECT_TRUE(rep.AllOk());
}

TEST(InstanceIo, LocatedErrors) {
  std::string what;
  EXPECT_EQ(ParseCode(ReadData("bad_coefficient.json"), &what), ErrorCode::kParse);
  EXPECT_NE(what.find("/E2/u/0/0/0"), std::string::npos) << what;
  EXPECT_EQ(ParseCode(ReadData("corrupt_not_isotropic.json"), &what),
            ErrorCode::kNotLagrangian);
  EXPECT_NE(what.find("/E1"), std::string::npos) << what;

  nlohmann::json doc = nlohmann::json::parse(ReadData("hyperbolic_q0.json"));
  EXPECT_EQ(ParseCode(doc.dump(), &what), ErrorCode{0}) << what;
  auto broken = doc;
  broken["schema"] = 2;
  EXPECT_EQ(ParseCode(broken.dump(), &what), ErrorCode::kParse);
  EXPECT_NE(what.find("/schema"), std::string::npos);
  broken = doc;
  broken.erase("F");
  EXPECT_EQ(ParseCode(broken.dump(), &what), ErrorCode::kParse);
  EXPECT_NE(what.find("/F"), std::string::npos);
  broken = doc;
  broken["E1"]["recipe"] = "diagonal";
  EXPECT_EQ(ParseCode(broken.dump(), &what), ErrorCode::kParse);
  EXPECT_NE(what.find("/E1/recipe"), std::string::npos);
  broken = doc;
  broken["F"]["h"] = {{{0, 1}}};  // t is not a constant on O(-1)
  EXPECT_NE(ParseCode(broken.dump(), &what), ErrorCode{0});
  broken = doc;
  broken["field"]["p"] = 9;
  EXPECT_EQ(ParseCode(broken.dump(), &what), ErrorCode::kInvalidArgument);
  EXPECT_NE(what.find("/field"), std::string::npos);
  broken = doc;
  broken["E2"] = doc["E1"];
  EXPECT_EQ(ParseCode(broken.dump(), &what), ErrorCode::kNotTransverse);
  EXPECT_EQ(ParseCode("{\"schema\": 1,", &what), ErrorCode::kParse);
}

TEST(InstanceIo, FieldForQ) {
  EXPECT_EQ(FieldForQ(3)->q(), 3);
  EXPECT_EQ(FieldForQ(9)->f(), 2);
  EXPECT_EQ(FieldForQ(25)->p(), 5);
  for (int bad : {1, 2, 4, 6, 15})
    EXPECT_THROW(FieldForQ(bad), Error) << bad;
}

TEST(InstanceIo, GaussTableAnchors) {
  const auto rows = GaussTable({3, 5, 7}, 4);
  auto gamma = [&](int q, const std::string& form) -> const GaussRow& {
    for (const auto& r : rows)
      if (r.q == q && r.form == form) return r;
    throw std::runtime_error("missing row " + form);
  };
  for (int q : {3, 5, 7}) {
    const int p = q;
    EXPECT_TRUE(gamma(q, "H+").has_gamma);
    EXPECT_EQ(gamma(q, "H+").gamma, CharValue::Integer(p, q, 1));
    EXPECT_EQ(gamma(q, "H-").gamma, CharValue::Integer(p, q, -1));
    EXPECT_EQ(gamma(q, "H+^2").gamma, CharValue::Integer(p, q, 1));
    EXPECT_EQ(gamma(q, "H- + H-").gamma, CharValue::Integer(p, q, 1));
  }
  EXPECT_EQ(gamma(5, "H+ + H-").gamma, CharValue::Integer(5, 5, -1));
  const std::string csv = GaussTableCsv(rows);
  EXPECT_EQ(csv.rfind("q,form,dim,G,gamma\n", 0), 0u);
  EXPECT_NE(csv.find("3,H-,2,-3,-1\n"), std::string::npos);
  EXPECT_EQ(nlohmann::json::parse(GaussTableJson(rows)).size(), rows.size());
  EXPECT_THROW(GaussTable({3}, 30), SizeBoundError);
}

TEST(InstanceIo, ReportIsDeterministic) {
  const FieldPtr F = Field::Make(3, 1);
  const PolyRing R(F);
  std::mt19937_64 r1(9), r2(9);
  const ThetaInstance a = RandomInstance(R, r1, 1, 1, 1e4);
  const ThetaInstance b = RandomInstance(R, r2, 1, 1, 1e4);
  const Character psi(F);
  const std::string ja = ModularityReportJson(ModularityCheck(psi, R, a), a, false);
  const std::string jb = ModularityReportJson(ModularityCheck(psi, R, b), b, false);
  EXPECT_EQ(ja, jb);
  const auto doc = nlohmann::json::parse(ja);
  EXPECT_TRUE(doc["equal"].get<bool>());
  EXPECT_EQ(doc["instance_hash"], HashHex(InstanceHash(a)));
  EXPECT_FALSE(doc["steps"][0].contains("seconds"));
  EXPECT_EQ(doc["Z1"]["normalized"], doc["Z2"]["normalized"]);
}

TEST(InstanceIo, CsvRow) {
  const ParsedInstance p = ParseInstance(ReadData("hyperbolic_q0.json"));
  const PolyRing R(p.inst.field);
  const ModularityReport rep = ModularityCheck(Character(p.inst.field), R, p.inst);
  const std::string row = ModularityCsvRow(4, rep, p.inst);
  EXPECT_EQ(row.rfind("4," + HashHex(InstanceHash(p.inst)) + ",3,1,1,0,", 0), 0u) << row;
  EXPECT_EQ(row.substr(row.size() - 5), ",1,1,");
  int commas = 0;
  for (char c : ModularityCsvHeader()) commas += c == ',';
  EXPECT_EQ(commas, 10);
}

TEST(InstanceIo, SelfTestReports) {
  const std::vector<SelfTestLine> lines{{"plancherel", 5, 5}, {"push", 5, 4}};
  const auto doc = nlohmann::json::parse(SelfTestJson(3, 2, 5, 0, lines));
  EXPECT_FALSE(doc["all_pass"].get<bool>());
  EXPECT_TRUE(doc["identities"][0]["ok"].get<bool>());
  EXPECT_EQ(SelfTestText(lines), "PASS plancherel 5/5\nFAIL push 4/5\n");
}

}  // namespace
}  // namespace tz
