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

#include "thetazero/thetazero_c.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <random>
#include <string>

#include "thetazero/instance_io.h"

struct tz_field {
  tz::FieldPtr f;
};

struct tz_instance {
  tz::ThetaInstance inst;
};

namespace {

thread_local std::string g_last_error;

template <class Fn>
tz_status Guard(Fn fn) {
  g_last_error.clear();
  try {
    fn();
    return TZ_OK;
  } catch (const tz::Error& e) {
    g_last_error = e.what();
    return static_cast<tz_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return TZ_INTERNAL;
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void NotNull(const void* p, const char* what) {
  tz::Require(p != nullptr, tz::ErrorCode::kInvalidArgument,
              std::string(what) + " is null");
}

tz::Fq Scale(const tz::Field& f, int c) {
  tz::Require(c > 0 && c < f.q(), tz::ErrorCode::kInvalidArgument,
              "psi scale must be a nonzero element index below q");
  return f.element(c);
}

}  // namespace

extern "C" {

const char* tz_version(void) { return "1.0.0"; }

const char* tz_last_error(void) { return g_last_error.c_str(); }

void tz_string_free(char* s) { std::free(s); }

tz_status tz_field_new(int q, tz_field** out) {
  return Guard([&] {
    NotNull(out, "out");
    *out = new tz_field{tz::FieldForQ(q)};
  });
}

void tz_field_free(tz_field* f) { delete f; }

int tz_field_q(const tz_field* f) { return f ? f->f->q() : 0; }

tz_status tz_instance_from_json(const char* text, tz_instance** out,
                                double* bound) {
  return Guard([&] {
    NotNull(text, "text");
    NotNull(out, "out");
    tz::ParsedInstance p = tz::ParseInstance(text);
    tz::PolyRing R(p.inst.field);
    tz::ValidateInstance(R, p.inst, p.bound);
    if (bound) *bound = p.bound;
    *out = new tz_instance{std::move(p.inst)};
  });
}

tz_status tz_instance_random(const tz_field* f, uint64_t seed, int m, int n,
                             double bound, tz_instance** out) {
  return Guard([&] {
    NotNull(f, "field");
    NotNull(out, "out");
    tz::PolyRing R(f->f);
    std::mt19937_64 rng(seed);
    *out = new tz_instance{tz::RandomInstance(R, rng, m, n, bound)};
  });
}

tz_status tz_instance_to_json(const tz_instance* inst, double bound, char** out) {
  return Guard([&] {
    NotNull(inst, "instance");
    NotNull(out, "out");
    *out = Dup(tz::InstanceToJson(inst->inst, bound));
  });
}

tz_status tz_instance_hash(const tz_instance* inst, uint64_t* out) {
  return Guard([&] {
    NotNull(inst, "instance");
    NotNull(out, "out");
    *out = tz::InstanceHash(inst->inst);
  });
}

tz_status tz_instance_size_estimate(const tz_instance* inst, double* out) {
  return Guard([&] {
    NotNull(inst, "instance");
    NotNull(out, "out");
    *out = tz::EstimateSizes(inst->inst).Max();
  });
}

void tz_instance_free(tz_instance* inst) { delete inst; }

tz_status tz_modularity(const tz_instance* inst, int psi_scale, double bound,
                        int timings, int csv_index, char** report, int* equal) {
  return Guard([&] {
    NotNull(inst, "instance");
    NotNull(report, "report");
    const tz::ThetaInstance& I = inst->inst;
    tz::PolyRing R(I.field);
    tz::Character psi(I.field, Scale(*I.field, psi_scale));
    tz::ModularityOptions opt;
    opt.bound = bound;
    const tz::ModularityReport rep = tz::ModularityCheck(psi, R, I, opt);
    if (equal) *equal = rep.equal && rep.AllOk() ? 1 : 0;
    *report = Dup(csv_index >= 0 ? tz::ModularityCsvRow(csv_index, rep, I)
                                 : tz::ModularityReportJson(rep, I, timings != 0));
  });
}

tz_status tz_modularity_csv_header(char** out) {
  return Guard([&] {
    NotNull(out, "out");
    *out = Dup(tz::ModularityCsvHeader());
  });
}

tz_status tz_gauss_table(const int* q_list, int nq, int dim_max, int format,
                         char** out) {
  return Guard([&] {
    NotNull(q_list, "q_list");
    NotNull(out, "out");
    const std::vector<int> qs(q_list, q_list + nq);
    const auto rows = tz::GaussTable(qs, dim_max);
    *out = Dup(format == 1 ? tz::GaussTableJson(rows) : tz::GaussTableCsv(rows));
  });
}

tz_status tz_fourier_selftest(int q, int psi_scale, int r_max, int trials,
                              uint64_t seed, int format, char** out,
                              int* all_pass) {
  return Guard([&] {
    NotNull(out, "out");
    const tz::FieldPtr f = tz::FieldForQ(q);
    tz::Character psi(f, Scale(*f, psi_scale));
    const auto lines = tz::FourierSelfTest(psi, r_max, trials, seed);
    bool ok = true;
    for (const auto& l : lines) ok = ok && l.passed == l.trials;
    if (all_pass) *all_pass = ok ? 1 : 0;
    *out = Dup(format == 1 ? tz::SelfTestJson(q, r_max, trials, seed, lines)
                           : tz::SelfTestText(lines));
  });
}

}  // extern "C"
