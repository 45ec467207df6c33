#include <benchmark/benchmark.h>

#include "fracsol/fox_h.hpp"
#include "fracsol/gamma_complex.hpp"
#include "fracsol/solver_pde.hpp"
#include "fracsol/verify.hpp"
#include "fracsol/wright.hpp"

using namespace fracsol;

namespace {

pde::DiffusionProblem case1_problem() {
  pde::DiffusionProblem p;
  p.alpha = 0.8;
  p.m = 1;
  p.d = 0.0;
  p.A = 1.0;
  return p;
}

fox_h::HFunctionSpec case1_spec() { return *std::get<pde::FoxHForm>(pde::solve(case1_problem()).repr).spec; }

void BM_LnGamma(benchmark::State& state) {
  Complex z{3.7, -12.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(gamma::ln_gamma(z));
    z += Complex{1e-9, 0.0};
  }
}
BENCHMARK(BM_LnGamma);

void BM_MittagLeffler(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wright::mittag_leffler(0.7, 1.2, -x));
}
BENCHMARK(BM_MittagLeffler)->Arg(1)->Arg(5);

void BM_FoxHAdaptive(benchmark::State& state) {
  const auto spec = case1_spec();
  const double z = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fox_h::eval_mellin_barnes(spec, z));
}
BENCHMARK(BM_FoxHAdaptive)->Arg(1)->Arg(50)->Unit(benchmark::kMicrosecond);

void BM_ContourGridPoint(benchmark::State& state) {
  const fox_h::ContourGrid grid(case1_spec(), 0.1, 10.0);
  double z = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(grid(z));
    z = z < 9.0 ? z + 1e-3 : 0.5;
  }
}
BENCHMARK(BM_ContourGridPoint)->Unit(benchmark::kMicrosecond);

void BM_EvaluateGrid(benchmark::State& state) {
  const auto sol = pde::solve(case1_problem());
  std::vector<pde::SamplePoint> pts;
  const int n = static_cast<int>(state.range(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) pts.push_back({0.5 + 1.5 * i / n, 0.5 + 1.5 * j / n});
  }
  for (auto _ : state) benchmark::DoNotOptimize(pde::evaluate_grid(sol, pts));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(pts.size()));
}
BENCHMARK(BM_EvaluateGrid)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ResidualFoxHForm(benchmark::State& state) {
  const auto sol = pde::solve(case1_problem());
  const std::vector<verify::GridPoint> grid = {{0.8, 0.8}, {1.5, 1.5}};
  for (auto _ : state) benchmark::DoNotOptimize(verify::residual_pde(sol, grid, 1e-4));
}
BENCHMARK(BM_ResidualFoxHForm)->Unit(benchmark::kMillisecond);

void BM_CoefficientResidual(benchmark::State& state) {
  pde::DiffusionProblem p{2.5, 1, 1.0, 1.0, 0.5, 0.1, 0.0, {}};
  const auto sol = pde::solve(p);
  for (auto _ : state) benchmark::DoNotOptimize(verify::residual_pde_coefficients(sol, 20));
}
BENCHMARK(BM_CoefficientResidual)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
