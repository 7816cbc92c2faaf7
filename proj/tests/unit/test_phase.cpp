#include <doctest.h>

#include "phasekit/errors.hpp"
#include "phasekit/lattice.hpp"
#include "phasekit/phase.hpp"

using namespace phasekit;

TEST_SUITE("phase") {
  TEST_CASE("A1 phase equals 2 log((1 - sqrt x)/(1 + sqrt x)), frozen mpmath values") {
    const SingularityModel m = make_model(1);
    const CVec e = CVec::Unit(1, 0);
    struct Row {
      cplx lambda, mu, omega;
    };
    const Row rows[] = {
        {{3.0, 1.0}, {0.5, 0.2}, {-1.7540740438944951898, -0.058421147929391301927}},
        {{-2.0, 2.0}, {0.3, -0.6}, {0.253567508239243054, 1.8001432629692649037}},
    };
    for (const Row& r : rows) {
      const PhaseValue c = omega_closed_form(e, e, r.lambda, r.mu, m, std::log(r.lambda), std::log(r.mu));
      CHECK(std::abs(c.omega - r.omega) < 1e-12);
      // The oracle continues log(mu) as log(lambda) + Log(mu/lambda).
      const cplx oracle = omega_oracle(e, e, r.lambda, r.mu, m, 400).value;
      CHECK(std::abs(oracle - omega_closed_form(e, e, r.lambda, r.mu, m).omega) < 1e-10);
    }
  }

  TEST_CASE("closed form agrees with oracle partial sums for all basis pairs") {
    for (int mu = 1; mu <= 3; ++mu) {
      const SingularityModel m = make_model(mu);
      const cplx lambda(2.5, 2.0), nu(0.4, -0.3);
      for (int a = 0; a < mu; ++a)
        for (int b = 0; b < mu; ++b) {
          const CVec ea = CVec::Unit(mu, a), eb = CVec::Unit(mu, b);
          const OracleValue o = omega_oracle(ea, eb, lambda, nu, m, 60);
          CHECK(std::abs(o.value - omega_closed_form(ea, eb, lambda, nu, m).omega) < 1e-8);
        }
    }
  }

  TEST_CASE("bilinearity in the cycles") {
    const SingularityModel m = make_model(3);
    CVec a(3), b(3);
    a << 1.0, -2.0, 1.0;
    b << 0.0, 1.0, 3.0;
    const cplx lambda(3.0, -1.0), nu(0.7, 0.1);
    cplx sum = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        sum += a(i) * b(j) * omega_closed_form(CVec::Unit(3, i), CVec::Unit(3, j), lambda, nu, m).omega;
    CHECK(std::abs(omega_closed_form(a, b, lambda, nu, m).omega - sum) < 1e-11);
  }

  TEST_CASE("oracle requires |lambda| > |mu|") {
    const SingularityModel m = make_model(2);
    CHECK_THROWS_AS(omega_oracle(CVec::Unit(2, 0), CVec::Unit(2, 0), cplx(0.5), cplx(1.0), m, 10), Error);
  }

  TEST_CASE("P antisymmetry") {
    const SingularityModel m = make_model(2);
    CHECK(p_antisymmetry_residual(CVec::Unit(2, 0), CVec::Unit(2, 1), cplx(2.0, 1.0), cplx(0.5, 0.1), m) < 1e-12);
  }

  TEST_CASE("locality: A1 self pairing lies in 1 + 2Z, k shifts with the winding") {
    const SingularityModel m = make_model(1);
    const IVec e = IVec::Unit(1, 0);
    const cplx nu(1.0, 0.5), lambda = nu * cplx(1.2, 0.1);
    for (int w : {1, -1, 3}) {
      const LocalityResult r = locality_check(e, e, lambda, nu, m, w);
      CHECK(r.k_residual < 1e-6);
      CHECK(r.b_residual < 1e-8);
      const long long q = std::llround(r.quotient.real());
      CHECK(std::llabs(q % 2) == 1);
    }
    CHECK(locality_check(e, e, lambda, nu, m, 1).k == 0);
    CHECK(locality_check(e, e, lambda, nu, m, -1).k == -1);
  }

  TEST_CASE("locality: orthogonal pair gives -2 pi i SF independent of the path") {
    const SingularityModel m = make_model(3);
    const IVec a = IVec::Unit(3, 0), b = IVec::Unit(3, 2);
    REQUIRE(intersection(m.lattice, a, b) == 0);
    const cplx nu(0.8, -0.4), lambda = nu * cplx(1.15, 0.2);
    for (int w : {1, -1, 3, -3}) {
      const LocalityResult r = locality_check(a, b, lambda, nu, m, w);
      CHECK(std::abs(r.difference + kTwoPiI * static_cast<double>(seifert_pairing(m.lattice, a, b))) < 1e-9);
    }
  }

  TEST_CASE("lambda-derivative identity") {
    const SingularityModel m = make_model(2);
    CVec a(2), b(2);
    a << 1.0, 1.0;
    b << 0.0, -1.0;
    const DLambdaResult d = dlambda_identity_check(a, b, cplx(2.0, 1.5), cplx(0.6, 0.2), m);
    CHECK(d.residual < 1e-6);
  }

  TEST_CASE("pole order of the phase factor at the diagonal is -(alpha|beta)") {
    const SingularityModel m = make_model(3);
    const cplx nu(0.9, 0.3);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const PoleResult p = pole_order_at_diagonal(CVec::Unit(3, a), CVec::Unit(3, b), nu, m);
        CHECK(p.pole_order == -intersection(m.lattice, IVec::Unit(3, a), IVec::Unit(3, b)));
      }
  }
}
