#pragma once

#include <functional>

#include "phasekit/types.hpp"

namespace phasekit {

struct OdeOptions {
  double rtol = 1e-12;
  double atol = 1e-14;
  double initial_step = 1e-3;
  double min_step = 1e-13;
  int max_steps = 500000;
};

struct OdeStats {
  int accepted = 0;
  int rejected = 0;
  double max_local_error = 0.0;  // largest accepted weighted error estimate
};

using OdeRhs = std::function<void(double s, const CVec& y, CVec& dy)>;
// Upper bound on the step size at (s, y); return a huge value for no bound.
using StepCeiling = std::function<double(double s, const CVec& y)>;

// Adaptive Dormand-Prince 5(4) on [s0, s1].
CVec integrate_dopri5(const OdeRhs& rhs, double s0, double s1, CVec y0, const OdeOptions& options = {},
                      const StepCeiling& ceiling = nullptr, OdeStats* stats = nullptr);

}  // namespace phasekit
