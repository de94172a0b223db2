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

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace tz {

using nlohmann::json;

namespace {

[[noreturn]] void Fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::kParse, (path.empty() ? "/" : path) + ": " + msg);
}

const json& At(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) Fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) Fail(path + "/" + key, "missing");
  return *it;
}

int AsInt(const json& j, const std::string& path) {
  if (!j.is_number_integer()) Fail(path, "expected an integer");
  return j.get<int>();
}

Fq ParseFq(const Field& f, const json& j, const std::string& path) {
  const int k = AsInt(j, path);
  if (k < 0 || k >= f.q()) {
    if (f.f() == 1) return f.from_int(k);
    Fail(path, "element index out of range [0, " + std::to_string(f.q()) + ")");
  }
  return f.element(k);
}

Poly ParsePoly(const PolyRing& R, const json& j, const std::string& path) {
  if (!j.is_array()) Fail(path, "expected a coefficient list");
  std::vector<Fq2> c;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "/" + std::to_string(i);
    const json& x = j[i];
    if (x.is_array()) {
      if (x.size() != 2) Fail(p, "expected [a, b]");
      c.push_back(Fq2{ParseFq(R.field(), x[0], p + "/0"),
                      ParseFq(R.field(), x[1], p + "/1")});
    } else {
      c.push_back(R.field().embed(ParseFq(R.field(), x, p)));
    }
  }
  return R.from_coeffs(std::move(c));
}

PolyMat ParseMat(const PolyRing& R, const json& j, int rows, int cols,
                 const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    Fail(path, "expected " + std::to_string(rows) + " rows");
  PolyMat m(rows, cols, Poly{});
  for (int i = 0; i < rows; ++i) {
    const std::string p = path + "/" + std::to_string(i);
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
      Fail(p, "expected " + std::to_string(cols) + " entries");
    for (int k = 0; k < cols; ++k)
      m(i, k) = ParsePoly(R, j[i][k], p + "/" + std::to_string(k));
  }
  return m;
}

SplitBundle ParseTwists(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) Fail(path, "expected a nonempty twist list");
  SplitBundle b;
  for (std::size_t i = 0; i < j.size(); ++i)
    b.twists.push_back(AsInt(j[i], path + "/" + std::to_string(i)));
  return b;
}

// Rethrows validation failures of a parsed component with its path.
template <class Fn>
void Located(const std::string& path, Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

json PolyJson(const Poly& p) {
  json out = json::array();
  for (const Fq2& c : p.c) {
    if (c.b.v == 0)
      out.push_back(c.a.v);
    else
      out.push_back(json::array({c.a.v, c.b.v}));
  }
  return out;
}

json MatJson(const PolyMat& m) {
  json out = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols; ++k) row.push_back(PolyJson(m(i, k)));
    out.push_back(row);
  }
  return out;
}

json FqMatJson(const Mat<Fq>& m) {
  json out = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols; ++k) row.push_back(m(i, k).v);
    out.push_back(row);
  }
  return out;
}

json CanonicalJson(const ThetaInstance& inst) {
  json j;
  j["schema"] = 1;
  j["field"] = {{"p", inst.field->p()}, {"f", inst.field->f()}};
  j["G"] = {{"twists", inst.G.G.twists}, {"h", MatJson(inst.G.h)}};
  j["E1"] = {{"twists", inst.E1.E.twists}, {"J", MatJson(inst.E1.J)}};
  j["E2"] = {{"twists", inst.E2.E.twists}, {"J", MatJson(inst.E2.J)}};
  j["F"] = {{"twists", inst.F.F.twists}, {"h", MatJson(inst.F.h)}};
  return j;
}

json CharValueJson(const CharValue& v) {
  return {{"coefficients", v.Coefficients()}, {"value", v.ToString()}};
}

json ThetaJson(const ThetaValue& z) {
  json j = CharValueJson(z.sum);
  j["sign"] = z.sign;
  j["half_exponent"] = z.half_exponent;
  j["terms"] = z.terms;
  j["display"] = z.ToString();
  try {
    j["normalized"] = CharValueJson(z.Value());
  } catch (const Error&) {
    j["normalized"] = nullptr;
  }
  return j;
}

std::string CsvEscape(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ParsedInstance ParseInstance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) Fail("", "expected an object");
  if (AsInt(At(doc, "schema", ""), "/schema") != 1)
    Fail("/schema", "unsupported schema version");

  const json& fj = At(doc, "field", "");
  const int p = AsInt(At(fj, "p", "/field"), "/field/p");
  const int fdeg = fj.contains("f") ? AsInt(fj["f"], "/field/f") : 1;
  ParsedInstance out;
  Located("/field", [&] { out.inst.field = Field::Make(p, fdeg); });
  const PolyRing R(out.inst.field);

  const json& gj = At(doc, "G", "");
  SplitBundle hyp;
  bool hyperbolic = false;
  if (gj.is_object() && gj.contains("hyperbolic")) {
    hyp = ParseTwists(gj["hyperbolic"], "/G/hyperbolic");
    out.inst.G = Hyperbolic(R, hyp);
    hyperbolic = true;
  } else {
    out.inst.G.G = ParseTwists(At(gj, "twists", "/G"), "/G/twists");
    const int r = out.inst.G.G.rank();
    if (r % 2) Fail("/G/twists", "rank must be even");
    out.inst.G.h = ParseMat(R, At(gj, "h", "/G"), r, r, "/G/h");
  }
  Located("/G", [&] { CheckSkewHermBundle(R, out.inst.G); });
  const int m = out.inst.G.G.rank() / 2;

  auto lagrangian = [&](const std::string& key) {
    const std::string path = "/" + key;
    const json& ej = At(doc, key, "");
    Lagrangian L;
    if (ej.is_object() && ej.contains("recipe")) {
      if (!ej["recipe"].is_string()) Fail(path + "/recipe", "expected a string");
      const std::string recipe = ej["recipe"];
      if (!hyperbolic) Fail(path + "/recipe", "recipes need a hyperbolic G");
      if (recipe == "hyperbolic_first") {
        L = HyperbolicFirst(R, hyp);
      } else if (recipe == "hyperbolic_second") {
        L = HyperbolicSecond(R, hyp);
      } else if (recipe == "graph") {
        const PolyMat u = ParseMat(R, At(ej, "u", path), m, m, path + "/u");
        Located(path + "/u", [&] { L = GraphLagrangian(R, hyp, u); });
      } else {
        Fail(path + "/recipe", "unknown recipe '" + recipe + "'");
      }
    } else {
      L.E = ParseTwists(At(ej, "twists", path), path + "/twists");
      if (L.E.rank() != m) Fail(path + "/twists", "rank must be half of rank G");
      L.J = ParseMat(R, At(ej, "J", path), 2 * m, m, path + "/J");
    }
    Located(path, [&] { RequireLagrangian(R, out.inst.G, L, key); });
    return L;
  };
  out.inst.E1 = lagrangian("E1");
  out.inst.E2 = lagrangian("E2");

  const json& fb = At(doc, "F", "");
  out.inst.F.F = ParseTwists(At(fb, "twists", "/F"), "/F/twists");
  const int n = out.inst.F.F.rank();
  out.inst.F.h = ParseMat(R, At(fb, "h", "/F"), n, n, "/F/h");
  Located("/F", [&] { CheckHermBundle(R, out.inst.F); });

  if (doc.contains("bound")) {
    const json& b = doc["bound"];
    if (!b.is_number() || b.get<double>() <= 0) Fail("/bound", "expected a positive number");
    out.bound = b.get<double>();
  }
  return out;
}

std::string InstanceToJson(const ThetaInstance& inst, double bound) {
  json j = CanonicalJson(inst);
  j["bound"] = bound;
  return j.dump(2);
}

std::uint64_t InstanceHash(const ThetaInstance& inst) {
  const std::string s = CanonicalJson(inst).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string HashHex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string ModularityReportJson(const ModularityReport& rep,
                                 const ThetaInstance& inst, bool timings) {
  const InstanceSizes sz = EstimateSizes(inst);
  const PipelineTrace& tr = rep.trace;
  json j;
  j["instance_hash"] = HashHex(InstanceHash(inst));
  j["q"] = inst.field->q();
  j["m"] = inst.E1.E.rank();
  j["n"] = inst.F.F.rank();
  j["sizes"] = {{"hom1", sz.hom1}, {"hom2", sz.hom2}, {"v", sz.v},
                {"ext1", sz.ext1}, {"ext2", sz.ext2}};
  j["Z1"] = ThetaJson(rep.z1);
  j["Z2"] = ThetaJson(rep.z2);
  j["equal"] = rep.equal;
  j["all_steps_ok"] = rep.AllOk();
  j["replayed"] = rep.replayed;
  if (!rep.replay_note.empty()) j["replay_note"] = rep.replay_note;
  json steps = json::array();
  for (const StepResult& s : rep.steps) {
    json e = {{"name", s.name}, {"ok", s.ok}, {"detail", s.detail}};
    if (timings) e["seconds"] = s.seconds;
    steps.push_back(e);
  }
  j["steps"] = steps;
  if (rep.replayed) {
    j["trace"] = {{"dim_v", tr.dim_v},
                  {"deg_dq", tr.deg_dq},
                  {"eta", tr.eta},
                  {"chi1", tr.chi1},
                  {"chi2", tr.chi2},
                  {"half_exp1", tr.half_exp1},
                  {"half_exp2", tr.half_exp2},
                  {"hom", tr.hom},
                  {"ext", tr.ext},
                  {"row1_dims", tr.row1.dims},
                  {"row2_dims", tr.row2.dims},
                  {"duality_signs", tr.duality.signs},
                  {"gram12", FqMatJson(tr.gram12)},
                  {"gauss", CharValueJson(tr.gauss)},
                  {"pairing12", CharValueJson(tr.pairing12)},
                  {"pairing21", CharValueJson(tr.pairing21)}};
  }
  return j.dump(2);
}

std::string ModularityCsvHeader() {
  return "index,hash,q,m,n,dim_v,Z1,Z2,equal,steps_ok,first_failure";
}

std::string ModularityCsvRow(int index, const ModularityReport& rep,
                             const ThetaInstance& inst) {
  const StepResult* bad = rep.FirstFailure();
  std::ostringstream os;
  os << index << ',' << HashHex(InstanceHash(inst)) << ',' << inst.field->q()
     << ',' << inst.E1.E.rank() << ',' << inst.F.F.rank() << ','
     << rep.trace.dim_v << ',' << CsvEscape(rep.z1.ToString()) << ','
     << CsvEscape(rep.z2.ToString()) << ',' << (rep.equal ? 1 : 0) << ','
     << (rep.AllOk() ? 1 : 0) << ',' << CsvEscape(bad ? bad->name : "");
  return os.str();
}

FieldPtr FieldForQ(int q) {
  for (int p = 3; p <= q; p += 2) {
    if (!IsPrime(p) || q % p) continue;
    int f = 0;
    for (int r = q; r % p == 0; r /= p) ++f;
    int pf = 1;
    for (int i = 0; i < f; ++i) pf *= p;
    if (pf != q) break;
    return Field::Make(p, f);
  }
  throw Error(ErrorCode::kInvalidArgument,
              "q = " + std::to_string(q) + " is not an odd prime power");
}

std::vector<GaussRow> GaussTable(const std::vector<int>& qs, int dim_max) {
  Require(dim_max >= 1, ErrorCode::kInvalidArgument, "dim-max must be positive");
  std::vector<GaussRow> rows;
  for (int q : qs) {
    const FieldPtr f = FieldForQ(q);
    const Character psi(f);
    const QuadSpace hp = HyperbolicPlane(f), hm = NormForm(f);
    std::vector<std::pair<std::string, QuadSpace>> forms;
    forms.emplace_back("<1>", DiagonalForm(f, {f->one()}));
    forms.emplace_back("<nu>", DiagonalForm(f, {f->nu()}));
    forms.emplace_back("H+", hp);
    forms.emplace_back("H-", hm);
    forms.emplace_back("<1,-1>", DiagonalForm(f, {f->one(), f->neg(f->one())}));
    forms.emplace_back("<1,1>", DiagonalForm(f, {f->one(), f->one()}));
    forms.emplace_back("<1,nu>", DiagonalForm(f, {f->one(), f->nu()}));
    QuadSpace split = hp;
    for (int k = 2; 2 * k <= dim_max; ++k) {
      split = OrthogonalSum(split, hp);
      forms.emplace_back("H+^" + std::to_string(k), split);
    }
    if (dim_max >= 3) {
      forms.emplace_back("H+ + <1>", OrthogonalSum(hp, DiagonalForm(f, {f->one()})));
      forms.emplace_back("H- + <1>", OrthogonalSum(hm, DiagonalForm(f, {f->one()})));
    }
    if (dim_max >= 4) {
      forms.emplace_back("H+ + H-", OrthogonalSum(hp, hm));
      forms.emplace_back("H- + H-", OrthogonalSum(hm, hm));
    }
    for (const auto& [name, V] : forms) {
      if (V.dim() > dim_max) continue;
      const GaussData g = GaussSum(psi, V);
      rows.push_back(GaussRow{q, name, V.dim(), g.G, g.has_gamma, g.gamma});
    }
  }
  return rows;
}

std::string GaussTableCsv(const std::vector<GaussRow>& rows) {
  std::ostringstream os;
  os << "q,form,dim,G,gamma\n";
  for (const GaussRow& r : rows)
    os << r.q << ',' << CsvEscape(r.form) << ',' << r.dim << ','
       << CsvEscape(r.G.ToString()) << ','
       << CsvEscape(r.has_gamma ? r.gamma.ToString() : "") << '\n';
  return os.str();
}

std::string GaussTableJson(const std::vector<GaussRow>& rows) {
  json out = json::array();
  for (const GaussRow& r : rows) {
    json e = {{"q", r.q}, {"form", r.form}, {"dim", r.dim}, {"G", CharValueJson(r.G)}};
    e["gamma"] = r.has_gamma ? CharValueJson(r.gamma) : json(nullptr);
    out.push_back(e);
  }
  return out.dump(2);
}

std::string SelfTestJson(int q, int r_max, int trials, std::uint64_t seed,
                         const std::vector<SelfTestLine>& lines) {
  json ids = json::array();
  bool all = true;
  for (const SelfTestLine& l : lines) {
    ids.push_back({{"identity", l.identity},
                   {"trials", l.trials},
                   {"passed", l.passed},
                   {"ok", l.passed == l.trials}});
    all = all && l.passed == l.trials;
  }
  json j = {{"q", q},        {"r_max", r_max},       {"trials", trials},
            {"seed", seed},  {"identities", ids},    {"all_pass", all}};
  return j.dump(2);
}

std::string SelfTestText(const std::vector<SelfTestLine>& lines) {
  std::ostringstream os;
  for (const SelfTestLine& l : lines)
    os << (l.passed == l.trials ? "PASS " : "FAIL ") << l.identity << ' '
       << l.passed << '/' << l.trials << '\n';
  return os.str();
}

}  // namespace tz
