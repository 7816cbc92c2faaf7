#pragma once

#include <vector>

#include "phasekit/types.hpp"

namespace phasekit::poly {

// Dense polynomial, coefficients in ascending degree.
using Poly = std::vector<cplx>;

Poly trim(Poly p);
Poly add(const Poly& a, const Poly& b);
Poly scale(const Poly& a, cplx c);
Poly mul(const Poly& a, const Poly& b);
Poly derivative(const Poly& a);
// Remainder modulo a monic polynomial.
Poly mod_monic(const Poly& a, const Poly& m);
cplx eval(const Poly& a, cplx x);
// All roots via companion-matrix eigenvalues.
std::vector<cplx> roots(const Poly& a);

}  // namespace phasekit::poly
