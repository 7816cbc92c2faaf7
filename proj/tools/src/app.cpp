#include "app.hpp"

#include <fstream>
#include <ostream>

#include "io.hpp"
#include "phasekit/errors.hpp"
#include "suites.hpp"

namespace phasekit::cli {

namespace {

Target resolve_target(const RunConfig& c) {
  if (!c.builtin.empty() && !c.dataset.empty()) fail(ErrorCode::kParse, "use either --builtin or --dataset");
  if (!c.dataset.empty()) return dataset_target(load_lattice(c.dataset));
  return builtin_target(c.builtin.empty() ? "A2" : c.builtin);
}

SuiteReport dispatch(const RunConfig& c) {
  SuiteOptions o;
  o.seed = c.seed;
  o.tolerance = c.tolerance;
  o.count = c.count;
  if (c.tolerance && !(*c.tolerance > 0.0)) fail(ErrorCode::kParse, "tolerance must be positive");
  if (c.count < 0) fail(ErrorCode::kParse, "count must be non-negative");
  if (c.command == "polylog") return run_polylog(o);
  const Target target = resolve_target(c);
  if (c.command == "validate") return run_validate(target, o);
  if (c.command == "omega") {
    if (c.lambda.empty() != c.mu.empty()) fail(ErrorCode::kParse, "omega needs both --lambda and --mu");
    if (c.lambda.empty()) return run_omega_grid(target, o);
    const auto alpha = c.alpha.empty() ? std::vector<long long>{} : parse_int_list(c.alpha);
    const auto beta = c.beta.empty() ? std::vector<long long>{} : parse_int_list(c.beta);
    return run_omega_point(target, parse_complex(c.lambda), parse_complex(c.mu), alpha, beta, c.n_max, o);
  }
  if (c.command == "locality") return run_locality(target, o);
  if (c.command == "integrality") {
    if (c.path.empty()) return run_integrality(target, o);
    return run_integrality(target, o, load_path(c.path).points);
  }
  if (c.command == "vv") return run_vv(target, o);
  if (c.command == "periods") return run_periods(target, o);
  if (c.command == "residue") return run_residue(target, o);
  if (c.command == "fock") {
    for (int order : c.orders)
      if (order < 0) fail(ErrorCode::kParse, "orders must be non-negative");
    return run_fock(target, c.orders, o);
  }
  if (c.command == "derivative") return run_derivative(target, o);
  fail(ErrorCode::kParse, "unknown command '" + c.command + "'");
}

void emit(const RunConfig& c, const SuiteReport& report, std::ostream& out) {
  const std::string text = c.format == "csv" ? report_to_csv(report) : report.to_json(c.seed).dump(2) + "\n";
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out);
  if (!file) fail(ErrorCode::kParse, "cannot write '" + c.out + "'");
  file << text;
}

int exit_for(ErrorCode code) {
  switch (error_class(code)) {
    case ErrorClass::kParse:
      return kExitParse;
    case ErrorClass::kTolerance:
      return kExitTolerance;
    case ErrorClass::kDomain:
      return kExitDomain;
  }
  return kExitInternal;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.format != "json" && config.format != "csv") fail(ErrorCode::kParse, "format must be json or csv");
    const SuiteReport report = dispatch(config);
    emit(config, report, out);
    if (!report.ok) {
      err << config.command << ": residual " << report.max_residual << " exceeds tolerance " << report.tolerance
          << "\n";
      return kExitTolerance;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace phasekit::cli
