#include <doctest.h>

#include "phasekit/lattice.hpp"
#include "phasekit/opcalc.hpp"

using namespace phasekit;

TEST_SUITE("opcalc") {
  TEST_CASE("normalized logarithm has spectrum in (-1, 0] and exponentiates back") {
    for (int mu = 1; mu <= 3; ++mu) {
      const CMat sigma = classical_monodromy(a_mu_lattice(mu)).mat();
      const NormalizedLog nl = normalized_log(sigma);
      CHECK(nl.residual < 1e-10);
      CHECK(nl.order == mu + 1);
      for (const Rational& nu : nl.nu) {
        CHECK(nu.value() <= 0.0);
        CHECK(nu.value() > -1.0);
      }
      CHECK((exp_minus_two_pi_i(nl.N) - sigma).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  TEST_CASE("unipotent monodromy gives a nilpotent normalized log") {
    CMat sigma(2, 2);
    sigma << 1.0, 1.0, 0.0, 1.0;
    const NormalizedLog nl = normalized_log(sigma);
    CHECK(nl.residual < 1e-12);
    CHECK(nl.N.nil_order() == 2);
    const CMat n = nl.N.mat();
    CHECK((n * n).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("operator power is multiplicative") {
    CMat sigma(2, 2);
    sigma << 1.0, 1.0, 0.0, 1.0;
    const NormalizedLog nl = normalized_log(sigma);
    const cplx x(0.3, 0.4), y(1.2, -0.5);
    const CMat a = operator_power(x, std::log(x), nl.N).mat();
    const CMat b = operator_power(y, std::log(y), nl.N).mat();
    const CMat ab = operator_power(x * y, std::log(x) + std::log(y), nl.N).mat();
    CHECK((a * b - ab).cwiseAbs().maxCoeff() < 1e-12);
  }
}
