#include <doctest.h>

#include <random>

#include "phasekit/errors.hpp"
#include "phasekit/fock.hpp"
#include "phasekit/phase.hpp"

using namespace phasekit;

TEST_SUITE("fock") {
  TEST_CASE("tame predicate examples") {
    CHECK(tame_predicate(TameMonomial{1, {}, {}}));
    CHECK_FALSE(tame_predicate(TameMonomial{1, {4}, {}}));
    CHECK(tame_predicate(TameMonomial{0, {1}, {0, 0}}));
  }

  TEST_CASE("products of tame monomials expand into tame monomials") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> g(0, 3), len(0, 3), mode(0, 5);
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
      auto sample = [&] {
        TameMonomial m{g(rng), {}, {}};
        for (int i = len(rng); i > 0; --i) m.negative.push_back(mode(rng));
        for (int i = len(rng); i > 0; --i) m.positive.push_back(mode(rng));
        return m;
      };
      const TameMonomial a = sample(), b = sample();
      if (!tame_predicate(a) || !tame_predicate(b)) continue;
      ++checked;
      for (const TameMonomial& c : weyl_product_support(a, b)) CHECK(tame_predicate(c));
    }
    CHECK(checked > 100);
  }

  TEST_CASE("graded exponential is multiplicative") {
    const std::vector<cplx> a{cplx(0.3, 0.1), cplx(-0.2, 0.5), cplx(0.7, 0.0), cplx(0.1, -0.4)};
    const std::vector<cplx> b{cplx(-0.6, 0.2), cplx(0.4, 0.4), cplx(0.05, 0.3), cplx(-0.2, 0.1)};
    std::vector<cplx> s(a.size());
    for (size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
    const int order = static_cast<int>(a.size());
    const auto ea = graded_exp(a, order), eb = graded_exp(b, order), es = graded_exp(s, order);
    for (int d = 0; d <= order; ++d) {
      cplx conv = 0.0;
      for (int i = 0; i <= d; ++i) conv += ea[i] * eb[d - i];
      CHECK(std::abs(conv - es[d]) < 1e-14);
    }
  }

  TEST_CASE("composition scalar equals the graded exponential of the oracle terms") {
    for (int mu = 1; mu <= 2; ++mu) {
      const SingularityModel m = make_model(mu);
      const cplx lambda(3.0, 1.0), nu(0.8, -0.3);
      for (int order : {4, 6, 8}) {
        const CVec a = CVec::Unit(mu, 0), b = CVec::Unit(mu, mu - 1);
        const CompositionResult c = compose_and_extract_phase(a, b, lambda, nu, m, order);
        std::vector<cplx> terms;
        cplx prev = 0.0;
        for (int n = 0; n < order; ++n) {
          const cplx cur = omega_oracle(a, b, lambda, nu, m, n).value;
          terms.push_back(cur - prev);
          prev = cur;
        }
        cplx expected = 0.0;
        for (cplx g : graded_exp(terms, order)) expected += g;
        CHECK(std::abs(c.scalar - expected) < 1e-8 * std::max(1.0, std::abs(expected)));
      }
    }
  }

  TEST_CASE("composition is multiplicative in the first cycle and trivial for alpha = 0") {
    const SingularityModel m = make_model(2);
    const cplx lambda(2.5, -1.0), nu(0.6, 0.4);
    const int order = 6;
    const CVec a = CVec::Unit(2, 0), a2 = CVec::Unit(2, 1), b = CVec::Unit(2, 1);
    const auto ga = compose_and_extract_phase(a, b, lambda, nu, m, order).graded;
    const auto gb = compose_and_extract_phase(a2, b, lambda, nu, m, order).graded;
    const auto gs = compose_and_extract_phase(CVec(a + a2), b, lambda, nu, m, order).graded;
    for (int d = 0; d <= order; ++d) {
      cplx conv = 0.0;
      for (int i = 0; i <= d; ++i) conv += ga[i] * gb[d - i];
      CHECK(std::abs(conv - gs[d]) < 1e-8);
    }
    CHECK(std::abs(compose_and_extract_phase(CVec::Zero(2), b, lambda, nu, m, order).scalar - 1.0) < 1e-14);
  }

  TEST_CASE("normal ordering on the vacuum is symmetric in the two insertions") {
    const SingularityModel m = make_model(2);
    const int order = 6;
    const cplx lambda(2.0, 1.0), nu(0.5, -0.5);
    const FieldModes fa = field_modes(m, CVec::Unit(2, 0), CVec::Zero(2), lambda, std::log(lambda), order);
    const FieldModes fb = field_modes(m, CVec::Unit(2, 1), CVec::Zero(2), nu, std::log(nu), order);
    const FockElement v = FockElement::vacuum(2, order);
    const FockElement ab = exp_creation(exp_creation(v, fb.creation), fa.creation);
    const FockElement ba = exp_creation(exp_creation(v, fa.creation), fb.creation);
    CHECK((ab - ba).max_abs() < 1e-13);
  }

  TEST_CASE("vertex operators annihilate nothing on the vacuum: only creation survives") {
    const SingularityModel m = make_model(2);
    const int order = 4;
    const cplx lambda(1.5, 0.5);
    const FockElement v = FockElement::vacuum(2, order);
    const FieldModes f = field_modes(m, CVec::Unit(2, 0), CVec::Zero(2), lambda, std::log(lambda), order);
    const FockElement g = apply_vertex_operator(CVec::Unit(2, 0), CVec::Zero(2), lambda, std::log(lambda), v, m);
    CHECK((g - exp_creation(v, f.creation)).max_abs() < 1e-13);
  }

  TEST_CASE("OPE initial condition and M-stability") {
    const SingularityModel m = make_model(2);
    const cplx lambda(2.0, 0.7);
    const cplx log_lambda = std::log(lambda);
    FockElement v = FockElement::vacuum(2, 4);
    v.add(FockKey{-1, {0}}, 0.5);
    const OpeResult init = ope_product(VoaGenerator::heisenberg(CVec::Unit(2, 0)), VoaGenerator::lattice(CVec::Zero(2)),
                                       0, 0, lambda, log_lambda, m, v);
    const FockElement phi = apply_heisenberg(CVec::Unit(2, 0), CVec::Zero(2), lambda, log_lambda, v, m);
    CHECK((init.value - phi).max_abs() < 1e-10);
    const OpeResult ee = ope_product(VoaGenerator::lattice(CVec::Unit(2, 0)), VoaGenerator::lattice(CVec::Unit(2, 1)),
                                     0, 1, lambda, log_lambda, m, v);
    CHECK(ee.stability_residual < 1e-9);
    CHECK(ee.regularity_residual < 1e-9);
    CHECK_THROWS_AS(ope_product(VoaGenerator::lattice(CVec::Unit(2, 0)), VoaGenerator::lattice(CVec::Unit(2, 1)), 0,
                                0, lambda, log_lambda, m, v),
                    Error);
  }

  TEST_CASE("monomials beyond the truncation are rejected") {
    FockElement v(2, 2);
    CHECK_THROWS_AS(v.add(FockKey{0, {4}}, 1.0), Error);
    CHECK_THROWS_AS(FockElement(1, kMaxTruncation + 1), Error);
  }
}
