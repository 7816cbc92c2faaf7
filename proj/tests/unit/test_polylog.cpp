#include <doctest.h>

#include "phasekit/errors.hpp"
#include "phasekit/polylog.hpp"

using namespace phasekit;

TEST_SUITE("polylog") {
  TEST_CASE("principal polylogarithms match frozen mpmath values") {
    const cplx xs[] = {{0.3, 0.4}, {-2.5, 0.7}, {0.9, -0.2}};
    const cplx expected[6][3] = {
        {{0.21539145804622710307, 0.51914611424652296885},
         {-1.2723733250720086414, 0.19739555984988074617},
         {1.4978661367769954967, -1.107148717794090614}},
        {{0.26659686674274041589, 0.46136289181910899428},
         {-1.7197600506740887723, 0.34873270167206681431},
         {1.1898655826035623809, -0.4471849047239117407}},
        {{0.28615178039588962126, 0.43082140592475462672},
         {-2.0348563500685149831, 0.47441064594569940326},
         {1.0281486168620388891, -0.28264286015827742246}},
        {{0.29398330480553135174, 0.41535593703709471854},
         {-2.2357004180724806807, 0.56420438522393098624},
         {0.95807526713259357967, -0.23245773948718359174}},
        {{0.29728078493131264162, 0.40763719366981536242},
         {-2.355092552512504874, 0.62217655391332176675},
         {0.92717590093327605294, -0.21408682138941739308}},
        {{0.29873305859553981616, 0.40379996893118440788},
         {-2.4226178192466157063, 0.65702128600703623304},
         {0.91301795523001866197, -0.20647480810371688375}},
    };
    for (int p = 1; p <= 6; ++p)
      for (int j = 0; j < 3; ++j) CHECK(std::abs(li_principal(p, xs[j]) - expected[p - 1][j]) < 1e-12);
  }

  TEST_CASE("Bernoulli polynomials match frozen mpmath values") {
    const cplx x(0.25, -0.4);
    CHECK(std::abs(bernoulli_poly(1, x) - cplx(-0.25, -0.4)) < 1e-14);
    CHECK(std::abs(bernoulli_poly(2, x) - cplx(-0.1808333333333333511, 0.2)) < 1e-14);
    CHECK(std::abs(bernoulli_poly(5, x) - cplx(-0.13141406250000001543, -0.027219166666666671932)) < 1e-14);
  }

  TEST_CASE("Jonquiere inversion holds for both crossing sides and half planes") {
    for (cplx x : {cplx(0.4, 0.3), cplx(0.5, -0.6), cplx(-0.7, 0.2), cplx(-0.1, -0.5)})
      for (double crossing : {0.5, 2.0}) {
        const ComplexPath path = jonquiere_path(x, crossing);
        for (int p = 1; p <= 6; ++p) CHECK(jonquiere_invert(p, x, path) < 1e-10);
      }
  }

  TEST_CASE("continued logarithm picks up 2 pi i around the origin") {
    ComplexPath loop{{cplx(1.0), cplx(0.0, 1.0), cplx(-1.0), cplx(0.0, -1.0), cplx(1.0)}, "loop"};
    CHECK(std::abs(continued_log(loop) - kTwoPiI) < 1e-12);
  }

  TEST_CASE("inversion rejects points outside the unit disc") {
    const cplx x(1.5, 0.5);
    CHECK_THROWS_AS(jonquiere_invert(2, x, jonquiere_path(x, 0.5)), Error);
  }
}
