#include "swflow/checks.hpp"
#include "swflow/optimize.hpp"

#include <benchmark/benchmark.h>

using namespace swflow;

namespace {

Configuration bench_cfg(int n) {
  FluxMatrix f{};
  f[0][1] = 1;
  f[1][0] = -1;
  Configuration c = random_configuration(cube(n), 1, {0.5, 1.0}, f);
  for (double& v : c.s().values()) v = -1.0;
  return c;
}

void BM_energy_weitzenbock(benchmark::State& st) {
  const Configuration c = bench_cfg(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(energy_weitzenbock(c));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(c.lattice().sites()));
}
BENCHMARK(BM_energy_weitzenbock)->Arg(4)->Arg(6)->Arg(8);

void BM_energy_first_order(benchmark::State& st) {
  const Configuration c = bench_cfg(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(energy_first_order(c));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(c.lattice().sites()));
}
BENCHMARK(BM_energy_first_order)->Arg(4)->Arg(6)->Arg(8);

void BM_gradient(benchmark::State& st) {
  const Configuration c = bench_cfg(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    Gradient g = gradient(c);
    benchmark::DoNotOptimize(g.da.values().data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(c.lattice().sites()));
}
BENCHMARK(BM_gradient)->Arg(4)->Arg(6)->Arg(8);

void BM_poisson(benchmark::State& st) {
  const Lattice lat = cube(static_cast<int>(st.range(0)));
  const PoissonMethod method = st.range(1) == 0 ? PoissonMethod::spectral : PoissonMethod::conjugate_gradient;
  ScalarField rho = random_scalar(lat, 2);
  const double m = mean(rho);
  for (double& v : rho.values()) v -= m;
  for (auto _ : st) {
    ScalarField f = poisson_solve(lat, rho, {method});
    benchmark::DoNotOptimize(f.values().data());
  }
  st.SetLabel(method == PoissonMethod::spectral ? "spectral" : "cg");
}
BENCHMARK(BM_poisson)->ArgsProduct({{4, 6, 8}, {0, 1}});

void BM_full_gauge_fix(benchmark::State& st) {
  const Configuration c = bench_cfg(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    auto fixed = full_gauge_fix(c);
    benchmark::DoNotOptimize(fixed.first.a().values().data());
  }
}
BENCHMARK(BM_full_gauge_fix)->Arg(4)->Arg(6)->Arg(8);

void BM_minimize_20_iterations(benchmark::State& st) {
  const Configuration c = bench_cfg(static_cast<int>(st.range(0)));
  MinimizeParams p;
  p.max_iters = 20;
  p.grad_tol = 1e-14;
  for (auto _ : st) {
    Trajectory t = minimize(c, p);
    benchmark::DoNotOptimize(t.records.data());
  }
}
BENCHMARK(BM_minimize_20_iterations)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
