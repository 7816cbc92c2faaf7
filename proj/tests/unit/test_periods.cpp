#include <doctest.h>

#include "phasekit/continuation.hpp"
#include "phasekit/periods.hpp"

using namespace phasekit;

TEST_SUITE("periods") {
  TEST_CASE("A1 period matches the two-root formula sqrt(2) lambda^{-1/2}") {
    const SingularityModel m = make_model(1);
    for (cplx lambda : {cplx(2.0, 0.5), cplx(-1.0, 3.0)}) {
      const CVec v = period_vector_t0(CVec::Unit(1, 0), 0, lambda, std::log(lambda), m);
      CHECK(std::abs(v(0)) == doctest::Approx(std::sqrt(2.0) / std::sqrt(std::abs(lambda))).epsilon(1e-13));
    }
  }

  TEST_CASE("closed-form periods agree with the root oracle for k = -2..2") {
    for (int mu = 1; mu <= 3; ++mu) {
      const SingularityModel m = make_model(mu);
      const cplx lambda(1.3, 0.7);
      const cplx log_lambda = std::log(lambda);
      const RootTracker roots = RootTracker::reference(m.frobenius.model, lambda, log_lambda);
      for (int k = -2; k <= 2; ++k) {
        const CMat closed = period_matrix_t0(k, lambda, log_lambda, m);
        for (int a = 0; a < mu; ++a) {
          const CVec o = root_oracle(m.frobenius, roots.roots(), CVec::Unit(mu, a), k, CVec::Zero(mu), lambda);
          CHECK((closed.col(a) - o).norm() < 1e-11 * std::max(1.0, o.norm()));
        }
      }
    }
  }

  TEST_CASE("residue Gram matrix from the Seifert form equals the residue pairing") {
    for (int mu = 1; mu <= 3; ++mu) {
      const SingularityModel m = make_model(mu);
      CHECK((residue_gram_from_seifert(m) - m.frobenius.eta).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((m.frobenius.eta - m.frobenius.eta.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
  }

  TEST_CASE("higher residue pairing: K4 leading coefficient and K1 symmetry") {
    const SingularityModel m = make_model(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const ScalarSeries a = higher_residue_pairing(i, j, m);
        const ScalarSeries b = higher_residue_pairing(j, i, m);
        CHECK(std::abs(a.coefficient(Rational(1)) - m.residue_gram(i, j)) < 1e-12);
        for (const auto& [e, c] : a.terms)
          CHECK(std::abs(c + std::exp(kI * kPi * e.value()) * b.coefficient(e)) < 1e-12);
      }
  }

  TEST_CASE("Frobenius algebra is associative and commutative") {
    const FrobeniusData f = a_mu_frobenius(3);
    CVec t(3);
    t << cplx(0.2, 0.1), cplx(-0.3, 0.4), cplx(0.5, -0.2);
    CHECK(associativity_residual(f, t) < 1e-12);
  }
}
