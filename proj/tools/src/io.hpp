#pragma once

#include <string>
#include <vector>

#include "phasekit/lattice.hpp"
#include "phasekit/types.hpp"
#include "suites.hpp"

namespace phasekit::cli {

// "re,im", "re+imi", "re" or "imi"; throws kParse.
cplx parse_complex(const std::string& text);
// Comma separated integers.
std::vector<long long> parse_int_list(const std::string& text);

MilnorLatticeData lattice_from_json(const json& j);
json lattice_to_json(const MilnorLatticeData& data);
MilnorLatticeData load_lattice(const std::string& path);

struct LoopInput {
  std::vector<cplx> points;
  double clearance = 1e-6;
};

LoopInput path_from_json(const json& j);
LoopInput load_path(const std::string& path);

// Flat CSV projection of the report records, one row per record.
std::string report_to_csv(const SuiteReport& report);

}  // namespace phasekit::cli
