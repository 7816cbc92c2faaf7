#include <doctest.h>

#include "phasekit/errors.hpp"
#include "phasekit/lattice.hpp"
#include "phasekit/opcalc.hpp"

using namespace phasekit;

namespace {

IMat ipow(const IMat& m, int k) {
  IMat out = IMat::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("intersection forms of the built-ins") {
    CHECK(intersection_form(builtin_lattice("A1"))(0, 0) == 2);
    const IMat g = intersection_form(builtin_lattice("A2"));
    CHECK(g(0, 0) == 2);
    CHECK(g(1, 1) == 2);
    CHECK(std::llabs(g(0, 1)) == 1);
    CHECK(g == IMat(g.transpose()));
  }

  TEST_CASE("classical monodromy: A1 is -1, A_mu has order mu + 1") {
    CHECK(classical_monodromy_integer(builtin_lattice("A1"))(0, 0) == -1);
    for (int mu = 1; mu <= 3; ++mu) {
      const MilnorLatticeData d = a_mu_lattice(mu);
      const IMat s = classical_monodromy_integer(d);
      CHECK(ipow(s, mu + 1) == IMat::Identity(mu, mu));
      CHECK(ipow(s, mu) != IMat::Identity(mu, mu));
      const IMat g = intersection_form(d);
      CHECK(IMat(s.transpose() * g * s) == g);
      CHECK(IMat(s.transpose() * d.seifert * s) == d.seifert);
      CHECK(spectrum_residual(d, classical_monodromy(d).mat()) < 1e-10);
    }
  }

  TEST_CASE("Seifert form relation SF(sigma b, a) = -SF(a, b)") {
    const MilnorLatticeData d = a_mu_lattice(3);
    const IMat s = classical_monodromy_integer(d);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const IVec ea = IVec::Unit(3, a), eb = IVec::Unit(3, b);
        CHECK(seifert_pairing(d, s * eb, ea) == -seifert_pairing(d, ea, eb));
        CHECK(seifert_pairing(d, ea, eb) + seifert_pairing(d, eb, ea) == intersection(d, ea, eb));
      }
    for (int i = 0; i < 3; ++i) CHECK(d.seifert(i, i) == 1);
  }

  TEST_CASE("reflections") {
    const MilnorLatticeData d = a_mu_lattice(2);
    const IVec e0 = IVec::Unit(2, 0), e1 = IVec::Unit(2, 1);
    const IMat r0 = reflection(d, e0), r1 = reflection(d, e1);
    CHECK(IVec(r0 * e0) == IVec(-e0));
    CHECK(IMat(r0 * r0) == IMat::Identity(2, 2));
    const IMat p = r0 * r1;
    CHECK(ipow(p, 3) == IMat::Identity(2, 2));
    CHECK(ipow(p, 1) != IMat::Identity(2, 2));
    CHECK_THROWS_AS(reflection(d, IVec(e0 + e0)), Error);
  }

  TEST_CASE("validation reports singular and malformed data") {
    MilnorLatticeData bad = a_mu_lattice(2);
    bad.seifert << 1, 1, 1, 1;
    CHECK_FALSE(validate_lattice(bad).empty());
    CHECK_THROWS_AS(classical_monodromy(bad), Error);
    MilnorLatticeData wrong = a_mu_lattice(2);
    wrong.spectrum = {Rational(0), Rational(0)};
    CHECK_FALSE(validate_lattice(wrong).empty());
    CHECK(validate_lattice(a_mu_lattice(3)).empty());
  }
}
