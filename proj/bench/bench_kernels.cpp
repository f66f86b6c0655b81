// Serial reference kernels vs the OpenMP ones on representative grids.
#include <benchmark/benchmark.h>

#include <random>

#include "kirchhoff/field.hpp"

using namespace kirchhoff;

namespace {

ProblemSpec make_problem(const GridDomain& dom) {
  ProblemSpec p;
  p.phi = make_double_power_phi(2.0, 3.0);
  p.kirchhoff = make_affine_kirchhoff(1.0, 1.0);
  p.nonlinearity = make_power_nonlinearity(7.0);
  p.dimension = 3;
  p.domain = dom;
  return p;
}

ScalarField make_field(const GridDomain& dom) {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ScalarField u(dom);
  for (auto& v : u.values) v = dist(rng);
  return u;
}

GridDomain domain_for(const benchmark::State& state) {
  const int n = int(state.range(0));
  return state.range(1) == 0 ? GridDomain::interval(1.0, n * n)
                             : GridDomain::rectangle(1.0, 1.0, n, n);
}

void grid_args(benchmark::internal::Benchmark* b) {
  for (int shape : {0, 1})
    for (int n : {64, 128, 256}) b->Args({n, shape});
}

template <Exec exec>
void BM_modular_gradient(benchmark::State& state) {
  const GridDomain dom = domain_for(state);
  const ProblemSpec p = make_problem(dom);
  const ScalarField u = make_field(dom);
  for (auto _ : state)
    benchmark::DoNotOptimize(modular_gradient(p, u, exec));
  state.SetItemsProcessed(state.iterations() * dom.node_count());
}

template <Exec exec>
void BM_residual(benchmark::State& state) {
  const GridDomain dom = domain_for(state);
  const ProblemSpec p = make_problem(dom);
  const ScalarField u = make_field(dom);
  for (auto _ : state) {
    ScalarField r = residual(p, u, exec);
    benchmark::DoNotOptimize(r.values.data());
  }
  state.SetItemsProcessed(state.iterations() * dom.node_count());
}

template <Exec exec>
void BM_energy(benchmark::State& state) {
  const GridDomain dom = domain_for(state);
  const ProblemSpec p = make_problem(dom);
  const ScalarField u = make_field(dom);
  for (auto _ : state) benchmark::DoNotOptimize(energy(p, u, exec));
  state.SetItemsProcessed(state.iterations() * dom.node_count());
}

BENCHMARK(BM_modular_gradient<Exec::serial>)->Apply(grid_args);
BENCHMARK(BM_modular_gradient<Exec::parallel>)->Apply(grid_args);
BENCHMARK(BM_residual<Exec::serial>)->Apply(grid_args);
BENCHMARK(BM_residual<Exec::parallel>)->Apply(grid_args);
BENCHMARK(BM_energy<Exec::serial>)->Apply(grid_args);
BENCHMARK(BM_energy<Exec::parallel>)->Apply(grid_args);

}  // namespace

BENCHMARK_MAIN();
