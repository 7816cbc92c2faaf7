#include "phasekit/ode.hpp"

#include <algorithm>
#include <cmath>

#include "phasekit/errors.hpp"

namespace phasekit {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// Differences between the 5th and embedded 4th order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

CVec integrate_dopri5(const OdeRhs& rhs, double s0, double s1, CVec y0, const OdeOptions& options,
                      const StepCeiling& ceiling, OdeStats* stats) {
  OdeStats local;
  if (s1 == s0) return y0;
  const double dir = s1 > s0 ? 1.0 : -1.0;
  const double span = std::abs(s1 - s0);
  const int n = static_cast<int>(y0.size());
  CVec y = std::move(y0), k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n);
  double s = s0;
  double h = std::min(options.initial_step, span);
  rhs(s, y, k1);
  for (int step = 0; step < options.max_steps; ++step) {
    const double remaining = std::abs(s1 - s);
    if (remaining <= 1e-15 * span) {
      if (stats) *stats = local;
      return y;
    }
    if (ceiling) h = std::min(h, ceiling(s, y));
    h = std::min(h, remaining);
    if (h < options.min_step * span) fail(ErrorCode::kStiffnessFailure, "step size underflow in path integration");
    const double hs = dir * h;
    tmp = y + hs * a21 * k1;
    rhs(s + c2 * hs, tmp, k2);
    tmp = y + hs * (a31 * k1 + a32 * k2);
    rhs(s + c3 * hs, tmp, k3);
    tmp = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(s + c4 * hs, tmp, k4);
    tmp = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(s + c5 * hs, tmp, k5);
    tmp = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(s + hs, tmp, k6);
    ynew = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(s + hs, ynew, k7);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      const cplx e = hs * (e1 * k1(i) + e3 * k3(i) + e4 * k4(i) + e5 * k5(i) + e6 * k6(i) + e7 * k7(i));
      const double scale = options.atol + options.rtol * std::max(std::abs(y(i)), std::abs(ynew(i)));
      err = std::max(err, std::abs(e) / scale);
    }
    if (err <= 1.0) {
      s += hs;
      y = ynew;
      k1 = k7;
      ++local.accepted;
      local.max_local_error = std::max(local.max_local_error, err);
    } else {
      ++local.rejected;
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= err <= 1.0 ? factor : std::min(factor, 1.0);
  }
  fail(ErrorCode::kStiffnessFailure, "maximum number of integration steps exceeded");
}

}  // namespace phasekit
