#include <benchmark/benchmark.h>

#include "phasekit/continuation.hpp"
#include "phasekit/fock.hpp"
#include "phasekit/phase.hpp"
#include "phasekit/polylog.hpp"

namespace {

using namespace phasekit;

void bm_li_principal(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const cplx x(0.7, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(li_principal(p, x));
}
BENCHMARK(bm_li_principal)->Arg(1)->Arg(3)->Arg(6);

void bm_omega_closed_form(benchmark::State& state) {
  const SingularityModel m = make_model(static_cast<int>(state.range(0)));
  const CVec a = CVec::Unit(m.rank(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(omega_closed_form(a, a, cplx(4.0, 1.0), cplx(1.0, 0.3), m));
}
BENCHMARK(bm_omega_closed_form)->DenseRange(1, 3);

void bm_omega_oracle(benchmark::State& state) {
  const SingularityModel m = make_model(2);
  const CVec a = CVec::Unit(2, 0);
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(omega_oracle(a, a, cplx(4.0, 1.0), cplx(1.0, 0.3), m, n_max));
}
BENCHMARK(bm_omega_oracle)->Arg(20)->Arg(60);

void bm_period_continuation(benchmark::State& state) {
  const SingularityModel m = make_model(static_cast<int>(state.range(0)));
  CVec t = CVec::Zero(m.rank());
  t(0) = cplx(0.2, 0.1);
  const cplx lambda0(4.0, 0.0);
  const ParamPath path = standard_route(lambda0, t, cplx(1.5, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(periods_along(m, 0, path, std::log(lambda0)));
}
BENCHMARK(bm_period_continuation)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void bm_compose(benchmark::State& state) {
  const SingularityModel m = make_model(2);
  const CVec a = CVec::Unit(2, 0);
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(compose_and_extract_phase(a, a, cplx(3.0, 1.0), cplx(0.8, 0.2), m, order));
}
BENCHMARK(bm_compose)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
