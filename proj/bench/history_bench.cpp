// Serial vs OpenMP history kernel, and whole solves with each.

#include <benchmark/benchmark.h>

#include "abel/benchmarks.hpp"
#include "abel/discretization.hpp"
#include "abel/solver.hpp"

using namespace abel;

namespace {

struct Setup {
  BenchmarkProblem problem;
  Mesh mesh;
  std::vector<ElementSolution> prior;
  std::vector<double> points;

  Setup(int N, int M) : problem(make_benchmark(BenchmarkId::ex3_branca)), mesh(uniform_mesh(N, 1.0, M)) {
    const PiecewiseSolution sol = solve(problem.spec, mesh);
    prior.assign(sol.elements.begin(), sol.elements.end() - 1);
    points = ElementAssembler(problem.spec, mesh, N - 1).collocation_points();
  }
};

void history(benchmark::State& state, Execution exec) {
  const Setup s(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  std::vector<double> out(s.points.size());
  for (auto _ : state) {
    history_values(s.problem.spec, s.mesh, s.prior, s.points, out, exec);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(s.prior.size()));
}

void full_solve(benchmark::State& state, Execution exec) {
  const BenchmarkProblem b = make_benchmark(BenchmarkId::ex2_plato);
  const Mesh mesh = uniform_mesh(static_cast<int>(state.range(0)), 1.0, static_cast<int>(state.range(1)));
  SolverOptions options;
  options.execution = exec;
  for (auto _ : state) {
    PiecewiseSolution sol = solve(b.spec, mesh, options);
    benchmark::DoNotOptimize(sol.elements.data());
  }
}

}  // namespace

BENCHMARK_CAPTURE(history, serial, Execution::serial)->ArgsProduct({{64, 256, 1024}, {2, 8}});
BENCHMARK_CAPTURE(history, parallel, Execution::parallel)->ArgsProduct({{64, 256, 1024}, {2, 8}});
BENCHMARK_CAPTURE(full_solve, serial, Execution::serial)->Args({512, 2})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(full_solve, parallel, Execution::parallel)->Args({512, 2})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
