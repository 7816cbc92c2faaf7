#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "phasekit/errors.hpp"
#include "suites.hpp"

using namespace phasekit;
using namespace phasekit::cli;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

SuiteOptions pinned(double tol, int count = 0) {
  SuiteOptions o;
  o.seed = 7;
  o.tolerance = tol;
  o.count = count;
  return o;
}

void fold(Outcome& out, const SuiteReport& r) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%s %s max=%.2e (%.2fs)%s; ", r.command.c_str(), r.dataset.c_str(),
                r.max_residual, r.runtime_s, r.ok ? "" : " FAILED");
  out.detail += buf;
  out.pass = out.pass && r.ok;
}

Outcome criterion(int id) {
  Outcome out;
  const std::vector<std::string> all{"A1", "A2", "A3"};
  switch (id) {
    case 1:
      for (const char* b : {"A2", "A3"}) {
        const SuiteReport r = run_vv(builtin_target(b), pinned(1e-6));
        fold(out, r);
        if (r.records.empty()) out.pass = false;
      }
      break;
    case 2: {
      double total = 0.0;
      for (const auto& b : all) {
        const SuiteReport r = run_omega_grid(builtin_target(b), pinned(1e-8));
        total += r.runtime_s;
        fold(out, r);
      }
      if (total >= 60.0) out.pass = false;
      break;
    }
    case 3:
      for (const auto& b : all) fold(out, run_locality(builtin_target(b), pinned(1e-6, 10)));
      break;
    case 4:
      for (const auto& b : all) {
        const SuiteReport r = run_integrality(builtin_target(b), pinned(1e-5, 20));
        fold(out, r);
        if (r.records.size() != 20) out.pass = false;
      }
      break;
    case 5:
      fold(out, run_polylog(pinned(1e-10, 20)));
      break;
    case 6:
      for (const auto& b : all) fold(out, run_periods(builtin_target(b), pinned(1e-7, 50)));
      break;
    case 7:
      for (const auto& b : all) fold(out, run_validate(builtin_target(b), pinned(1e-10)));
      break;
    case 8:
      for (const auto& b : all) fold(out, run_residue(builtin_target(b), pinned(1e-10)));
      break;
    case 9:
      for (const char* b : {"A1", "A2"}) fold(out, run_fock(builtin_target(b), {4, 6, 8}, pinned(1e-8)));
      break;
    case 10:
      for (const auto& b : all) {
        const SuiteReport r = run_derivative(builtin_target(b), pinned(1e-6, 20));
        fold(out, r);
        // A1 realizes only even intersection numbers; the larger built-ins must realize all three.
        if (b != "A1") {
          int poles = 0;
          for (const auto& rec : r.records) poles += rec.contains("pole_order") ? 1 : 0;
          if (poles != 3) out.pass = false;
        }
      }
      break;
    default:
      out.pass = false;
  }
  return out;
}

}  // namespace

int main() {
  int failures = 0;
  for (int id = 1; id <= 10; ++id) {
    Outcome o;
    try {
      o = criterion(id);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    std::printf("Criterion %d: %s  %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
