#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace phasekit::cli {

struct RunConfig {
  std::string command;
  std::string builtin;  // A1, A2 or A3
  std::string dataset;  // lattice.v1 file
  std::uint64_t seed = 7;
  std::optional<double> tolerance;
  int count = 0;
  std::vector<int> orders{4, 6, 8};
  std::string path;  // path.v1 loop for integrality
  std::string out;   // report file; empty writes to stdout
  std::string format = "json";
  // omega single evaluation
  std::string lambda;
  std::string mu;
  std::string alpha;
  std::string beta;
  int n_max = 60;
};

enum ExitCode : int { kExitOk = 0, kExitInternal = 1, kExitParse = 2, kExitDomain = 3, kExitTolerance = 4 };

// Runs one command and writes the report; returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace phasekit::cli
