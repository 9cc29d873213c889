#include <benchmark/benchmark.h>

#include "vslb/initial_conditions.hpp"
#include "vslb/operators.hpp"
#include "vslb/reference_solver.hpp"
#include "vslb/slab_scheme.hpp"
#include "vslb/transforms.hpp"

using namespace vslb;

namespace {

SpectralField random_field(int n) {
  ICSpec spec;
  spec.kind = ICKind::random_divfree;
  spec.seed = 3;
  return make_initial(spec, Lattice(n));
}

void BM_RoundTrip(benchmark::State& state) {
  const SpectralField u = random_field(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    SpectralField back = to_spectral(to_physical(u), u.lattice());
    benchmark::DoNotOptimize(back);
  }
}
BENCHMARK(BM_RoundTrip)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_VelocityRhs(benchmark::State& state) {
  const SpectralField u = random_field(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    SpectralField r = velocity_rhs(u);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_VelocityRhs)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_Integrate(benchmark::State& state) {
  SolverConfig cfg;
  cfg.lattice = Lattice(static_cast<int>(state.range(0)));
  cfg.t_end = 10 * cfg.dt;
  cfg.store_trajectory = false;
  const SpectralField u0 = make_initial({ICKind::taylor_green}, cfg.lattice);
  for (auto _ : state) {
    Integration run = integrate(cfg, u0);
    benchmark::DoNotOptimize(run);
  }
  state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_Integrate)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_PicardSlab(benchmark::State& state) {
  SolverConfig cfg;
  cfg.lattice = Lattice(16);
  cfg.t_end = 0.01;
  const Integration run = integrate(cfg, make_initial({ICKind::beltrami_abc}, cfg.lattice));
  const SpectralField w0 = curl(run.trajectory.front().field) + curl(random_field(16));
  const SchemeConfig scheme;
  for (auto _ : state) {
    SlabSolution sol = picard_slab(run.trajectory, w0, 0.0, 0.01, scheme);
    benchmark::DoNotOptimize(sol);
  }
}
BENCHMARK(BM_PicardSlab)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
