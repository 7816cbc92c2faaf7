#include <doctest.h>

#include "phasekit/continuation.hpp"
#include "phasekit/errors.hpp"
#include "phasekit/lattice.hpp"

using namespace phasekit;

namespace {

CVec deformation(int mu) {
  CVec t = CVec::Zero(mu);
  if (mu >= 2) t(1) = cplx(-0.6, 0.1);
  if (mu >= 3) t(2) = cplx(0.1, 0.2);
  t(0) = cplx(0.1, -0.05);
  return t;
}

}  // namespace

TEST_SUITE("continuation") {
  TEST_CASE("ODE-continued periods agree with the root oracle") {
    for (int mu = 1; mu <= 3; ++mu) {
      const SingularityModel m = make_model(mu);
      const cplx lambda0(4.0, 0.0), lambda(1.5, 1.2);
      const CVec t = deformation(mu);
      const ParamPath route = standard_route(lambda0, t, lambda);
      RootTracker roots = RootTracker::reference(m.frobenius.model, lambda0, std::log(lambda0));
      roots.follow(route);
      for (int k = -1; k <= 1; ++k) {
        const CMat y = periods_along(m, k, route, std::log(lambda0));
        for (int a = 0; a < mu; ++a) {
          const CVec o = root_oracle(m.frobenius, roots.roots(), CVec::Unit(mu, a), k, t, lambda);
          CHECK((y.col(a) - o).norm() < 1e-8 * std::max(1.0, o.norm()));
        }
      }
    }
  }

  TEST_CASE("canonical coordinates are the critical values") {
    const SingularityModel m = make_model(3);
    const CVec t = deformation(3);
    const CanonicalCoordinates cc = canonical_coordinates(t, m.frobenius);
    CHECK(cc.residual < 1e-10);
    for (cplx u : m.frobenius.model.critical_values(t)) {
      double best = 1e300;
      for (cplx v : cc.u) best = std::min(best, std::abs(u - v));
      CHECK(best < 1e-10);
    }
  }

  TEST_CASE("loops around critical values give Picard-Lefschetz reflections") {
    const SingularityModel m = make_model(2);
    const CVec t = deformation(2);
    const cplx base(5.0, 0.5);
    const CMat y = periods_along(m, 0, standard_route(base, t, base), std::log(base));
    RootTracker roots = RootTracker::reference(m.frobenius.model, base, std::log(base));
    roots.move_to(t, base);
    const auto us = m.frobenius.model.critical_values(t);
    const double rho = 0.1 * std::abs(us[0] - us[1]);
    for (cplx u : us) {
      const auto loop = critical_value_loop(base, u, rho);
      CMat out(2, 2);
      for (int a = 0; a < 2; ++a) out.col(a) = pf_continue_lambda(y.col(a), 0, t, loop, m.frobenius);
      const CMat w = y.partialPivLu().solve(out);
      const IMat wi = w.real().array().round().cast<long long>().matrix();
      CHECK((w - to_complex(wi)).cwiseAbs().maxCoeff() < 1e-6);
      RootTracker tr = roots;
      tr.move_to(t, loop[1]);
      const auto pair = tr.closest_pair();
      const IVec phi = pair_to_cycle(pair.first, pair.second, 2).real().array().round().cast<long long>().matrix();
      CHECK(wi == reflection(m.lattice, phi));
    }
  }

  TEST_CASE("paths through the discriminant are rejected") {
    const SingularityModel m = make_model(2);
    const CVec t = CVec::Zero(2);
    const CVec y = period_vector_t0(CVec::Unit(2, 0), 0, cplx(1.0), 0.0, m);
    CHECK_THROWS_AS(pf_continue_lambda(y, 0, t, {cplx(1.0), cplx(-1.0)}, m.frobenius, 1e-3), Error);
  }

  TEST_CASE("phase form integrals: vanishing cycle constant and a contractible loop") {
    const SingularityModel m = make_model(2);
    const CVec t = deformation(2);
    const cplx base(5.0, 0.5);
    const auto us = m.frobenius.model.critical_values(t);
    const double rho = 0.1 * std::abs(us[0] - us[1]);
    const cplx xi = -0.15 * rho * base / std::abs(base);
    const PhaseBase pb = prepare_phase_base(m, t, base, xi);
    for (int i = 0; i < 2; ++i) {
      const VanishingCheck v = vanishing_cycle_check(m, pb, i);
      CHECK(std::abs(v.ratio - 1.0) < 1e-6);
    }
    // Small square next to the base point encloses no critical value.
    const std::vector<cplx> loop{base, base + 0.5, base + cplx(0.5, 0.5), base + cplx(0.0, 0.5), base};
    const LoopRun run = run_loop(m, pb, loop);
    CHECK(run.w_integer == IMat::Identity(2, 2));
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const IntegerCheck c = loop_integrality_value(pb, run, CVec::Unit(2, a), CVec::Unit(2, b));
        CHECK(c.nearest == 0);
        CHECK(c.residual < 1e-8);
      }
  }

  TEST_CASE("loop phase combination is integral on a critical value loop") {
    const SingularityModel m = make_model(3);
    const CVec t = deformation(3);
    const cplx base(6.0, 1.0);
    const auto us = m.frobenius.model.critical_values(t);
    double gap = 1e300;
    for (size_t a = 0; a < us.size(); ++a)
      for (size_t b = 0; b < a; ++b) gap = std::min(gap, std::abs(us[a] - us[b]));
    const double rho = 0.1 * gap;
    const PhaseBase pb = prepare_phase_base(m, t, base, -0.15 * rho * base / std::abs(base));
    const LoopRun run = run_loop(m, pb, critical_value_loop(base, us[0], rho));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) CHECK(loop_integrality_value(pb, run, CVec::Unit(3, a), CVec::Unit(3, b)).residual < 1e-5);
  }
}
