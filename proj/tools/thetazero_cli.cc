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

// thetazero: Gauss-sum tables, Fourier self-tests and modularity sweeps.
//
// Exit status: 0 when everything held, 1 when some identity failed, 2 on
// invalid input or a bound violation.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "thetazero/thetazero_c.h"

namespace {

constexpr int kFailed = 1;
constexpr int kError = 2;

int Report(tz_status s, const std::string& context) {
  std::cerr << "error (" << static_cast<int>(s) << "): " << context << ": "
            << tz_last_error() << "\n";
  return kError;
}

std::string Take(char* s) {
  std::string out(s ? s : "");
  tz_string_free(s);
  return out;
}

struct GaussArgs {
  std::vector<int> qs{3, 5, 7};
  int dim_max = 4;
  bool json = false;
};

int RunGauss(const GaussArgs& a) {
  char* out = nullptr;
  const tz_status s = tz_gauss_table(a.qs.data(), static_cast<int>(a.qs.size()),
                                     a.dim_max, a.json ? 1 : 0, &out);
  if (s != TZ_OK) return Report(s, "gauss-table");
  std::cout << Take(out);
  if (a.json) std::cout << "\n";
  return 0;
}

struct SelfTestArgs {
  int q = 3;
  int r_max = 2;
  int trials = 50;
  std::uint64_t seed = 0;
  int psi_scale = 1;
  bool json = false;
};

int RunSelfTest(const SelfTestArgs& a) {
  char* out = nullptr;
  int ok = 0;
  const tz_status s = tz_fourier_selftest(a.q, a.psi_scale, a.r_max, a.trials,
                                          a.seed, a.json ? 1 : 0, &out, &ok);
  if (s != TZ_OK) return Report(s, "fourier-selftest");
  std::cout << Take(out);
  if (a.json) std::cout << "\n";
  return ok ? 0 : kFailed;
}

struct ModularityArgs {
  std::string instance;
  std::vector<std::uint64_t> random;
  std::uint64_t seed = 0;
  int count = 0;
  int m = 1;
  int n = 1;
  int q = 3;
  double bound = 1e5;
  int psi_scale = 1;
  bool json = false;
  bool csv = false;
  bool timings = false;
};

std::string HashString(const tz_instance* inst) {
  std::uint64_t h = 0;
  tz_instance_hash(inst, &h);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

// Runs one instance and appends its report; returns 0, kFailed or kError.
int CheckOne(const ModularityArgs& a, const tz_instance* inst, int index,
             double bound, std::vector<std::string>* out) {
  double est = 0;
  tz_instance_size_estimate(inst, &est);
  std::cerr << "instance " << index << " " << HashString(inst)
            << ": largest space " << static_cast<std::int64_t>(est)
            << " elements, bound " << static_cast<std::int64_t>(bound) << "\n";
  char* rep = nullptr;
  int equal = 0;
  const tz_status s = tz_modularity(inst, a.psi_scale, bound, a.timings ? 1 : 0,
                                    a.csv ? index : -1, &rep, &equal);
  if (s != TZ_OK) return Report(s, "instance " + std::to_string(index));
  const std::string text = Take(rep);
  if (a.json || a.csv) {
    out->push_back(text);
  } else {
    out->push_back("instance " + std::to_string(index) + " " + HashString(inst) +
                   (equal ? " equal" : " NOT EQUAL"));
  }
  return equal ? 0 : kFailed;
}

int RunModularity(ModularityArgs a) {
  if (a.random.size() == 2) {
    a.seed = a.random[0];
    a.count = static_cast<int>(a.random[1]);
  }
  std::vector<std::string> out;
  int status = 0;
  int passed = 0, total = 0;
  if (!a.instance.empty()) {
    std::ifstream in(a.instance);
    if (!in) {
      std::cerr << "error: cannot read " << a.instance << "\n";
      return kError;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    tz_instance* inst = nullptr;
    double bound = a.bound;
    const tz_status s = tz_instance_from_json(ss.str().c_str(), &inst, &bound);
    if (s != TZ_OK) return Report(s, a.instance);
    const int r = CheckOne(a, inst, 0, bound, &out);
    tz_instance_free(inst);
    if (r == kError) return kError;
    status = r;
    total = 1;
    passed = r == 0;
  } else {
    if (a.count <= 0) {
      std::cerr << "error: give --instance FILE, --random SEED COUNT or --count\n";
      return kError;
    }
    tz_field* field = nullptr;
    tz_status s = tz_field_new(a.q, &field);
    if (s != TZ_OK) return Report(s, "field");
    for (int i = 0; i < a.count; ++i) {
      tz_instance* inst = nullptr;
      s = tz_instance_random(field, a.seed + static_cast<std::uint64_t>(i), a.m,
                             a.n, a.bound, &inst);
      if (s != TZ_OK) {
        tz_field_free(field);
        return Report(s, "random instance " + std::to_string(i));
      }
      const int r = CheckOne(a, inst, i, a.bound, &out);
      tz_instance_free(inst);
      if (r == kError) {
        tz_field_free(field);
        return kError;
      }
      status = std::max(status, r);
      ++total;
      passed += r == 0;
    }
    tz_field_free(field);
  }
  if (a.json) {
    std::cout << "[";
    for (std::size_t i = 0; i < out.size(); ++i)
      std::cout << (i ? ",\n" : "\n") << out[i];
    std::cout << "\n]\n";
  } else if (a.csv) {
    char* header = nullptr;
    tz_modularity_csv_header(&header);
    std::cout << Take(header) << "\n";
    for (const auto& line : out) std::cout << line << "\n";
  } else {
    for (const auto& line : out) std::cout << line << "\n";
    std::cout << passed << "/" << total << " equal\n";
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact r = 0 theta series and their modularity over P^1"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tz_version()));

  GaussArgs ga;
  auto* gauss = app.add_subcommand("gauss-table", "Normalized Gauss sums of small quadratic spaces");
  gauss->add_option("--q", ga.qs, "Field sizes")->expected(1, -1);
  gauss->add_option("--dim-max", ga.dim_max, "Largest dimension")->check(CLI::PositiveNumber);
  auto* gcsv = gauss->add_flag("--csv", "CSV output (default)");
  gauss->add_flag("--json", ga.json, "JSON output")->excludes(gcsv);

  SelfTestArgs sa;
  auto* self = app.add_subcommand("fourier-selftest", "Finite and arithmetic Fourier identities");
  self->add_option("--q", sa.q, "Field size");
  self->add_option("--r-max", sa.r_max, "Largest dimension")->check(CLI::NonNegativeNumber);
  self->add_option("--trials", sa.trials, "Random functions per identity")
      ->check(CLI::PositiveNumber);
  self->add_option("--seed", sa.seed, "PRNG seed");
  self->add_option("--psi-scale", sa.psi_scale, "c in psi_c(x) = psi(cx)");
  self->add_flag("--json", sa.json, "JSON output");

  ModularityArgs ma;
  auto* mod = app.add_subcommand("modularity", "Compare the theta series of two Lagrangians");
  auto* inst_opt = mod->add_option("--instance", ma.instance, "Instance JSON file")
                       ->check(CLI::ExistingFile);
  auto* rnd = mod->add_option("--random", ma.random, "SEED COUNT")->expected(2);
  mod->add_option("--seed", ma.seed, "First seed")->excludes(rnd)->excludes(inst_opt);
  mod->add_option("--count", ma.count, "Number of random instances")
      ->excludes(rnd)->excludes(inst_opt);
  rnd->excludes(inst_opt);
  mod->add_option("--m", ma.m, "Rank of the Lagrangians");
  mod->add_option("--n", ma.n, "Rank of F");
  mod->add_option("--q", ma.q, "Field size");
  mod->add_option("--bound", ma.bound, "Enumeration bound")->check(CLI::PositiveNumber);
  mod->add_option("--psi-scale", ma.psi_scale, "c in psi_c(x) = psi(cx)");
  auto* mjson = mod->add_flag("--json", ma.json, "JSON reports");
  mod->add_flag("--csv", ma.csv, "CSV rows")->excludes(mjson);
  mod->add_flag("--timings", ma.timings, "Include step timings in JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }
  if (*gauss) return RunGauss(ga);
  if (*self) return RunSelfTest(sa);
  return RunModularity(ma);
}
