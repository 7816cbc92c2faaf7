#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "phasekit/lattice.hpp"
#include "phasekit/periods.hpp"

namespace phasekit::cli {

using json = nlohmann::json;

// Lattice data plus the full model when the dataset is one of the A_mu built-ins.
struct Target {
  std::string label;
  MilnorLatticeData lattice;
  std::optional<SingularityModel> model;

  const SingularityModel& require_model() const;
};

Target builtin_target(const std::string& name);
Target dataset_target(const MilnorLatticeData& data);

struct SuiteReport {
  std::string command;
  std::string dataset;
  double tolerance = 0.0;
  double max_residual = 0.0;
  bool ok = true;
  double runtime_s = 0.0;
  json records = json::array();
  json summary = json::object();

  // Folds one residual into max_residual/ok against the report tolerance or an explicit one.
  bool observe(double residual);
  bool observe(double residual, double tol);
  json to_json(std::uint64_t seed) const;
};

struct SuiteOptions {
  std::uint64_t seed = 7;
  std::optional<double> tolerance;
  int count = 0;  // suite-specific sample count; 0 selects the default
};

// Lattice, monodromy, normalized log and Frobenius invariants.
SuiteReport run_validate(const Target& target, const SuiteOptions& options);

// Closed form versus oracle partial sums on a 5x5 grid, |lambda|/|mu| in [2, 8], n_max = 60.
SuiteReport run_omega_grid(const Target& target, const SuiteOptions& options);
// Single evaluation; alpha/beta empty means all basis pairs.
SuiteReport run_omega_point(const Target& target, cplx lambda, cplx mu, const std::vector<long long>& alpha,
                            const std::vector<long long>& beta, int n_max, const SuiteOptions& options);

SuiteReport run_locality(const Target& target, const SuiteOptions& options);

// Randomized loop suite; when loop is given only that lambda-plane loop is used.
SuiteReport run_integrality(const Target& target, const SuiteOptions& options,
                            const std::optional<std::vector<cplx>>& loop = std::nullopt);

SuiteReport run_vv(const Target& target, const SuiteOptions& options);

SuiteReport run_periods(const Target& target, const SuiteOptions& options);

SuiteReport run_residue(const Target& target, const SuiteOptions& options);

// Composition scalar versus the graded oracle exponential at the given orders, plus OPE M-stability.
SuiteReport run_fock(const Target& target, const std::vector<int>& orders, const SuiteOptions& options);

SuiteReport run_derivative(const Target& target, const SuiteOptions& options);

SuiteReport run_polylog(const SuiteOptions& options);

// Worker count from PHASEKIT_THREADS, capped by the hardware.
int worker_count();

}  // namespace phasekit::cli
