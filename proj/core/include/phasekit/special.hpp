#pragma once

#include "phasekit/types.hpp"

namespace phasekit {

// Gamma function on the complex plane (Lanczos, g = 7, with reflection).
cplx gamma_fn(cplx z);

// 1/Gamma(z); entire, exactly zero at non-positive integers.
cplx recip_gamma(cplx z);

// Riemann zeta at an integer argument n != 1.
double zeta_int(int n);

// Binomial coefficient as a double.
double binomial(int n, int k);

}  // namespace phasekit
