#include <benchmark/benchmark.h>

#include "toepker/generators.hpp"
#include "toepker/theorems.hpp"

using namespace toepker;

static void BM_BlaschkeExpand(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BlaschkeProduct b({{cplx(0.5, 0.3), 1}, {cplx(-0.7, 0.1), 2}}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(blaschke_expand(b, n));
}
BENCHMARK(BM_BlaschkeExpand)->RangeMultiplier(2)->Range(64, 1024);

static void BM_ModelSpace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BlaschkeProduct b({{cplx(0.8, 0.0), 1}, {cplx(0.0, 0.5), 1}, {cplx(-0.6, 0.2), 1}});
  for (auto _ : state) benchmark::DoNotOptimize(model_space(b, n));
}
BENCHMARK(BM_ModelSpace)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

static void BM_PerturbedKernel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  const Instance inst = random_conj_inner_instance(rng, n, 2, false);
  const OperatorMatrix r = perturbed_matrix(toeplitz_matrix(inst.symbol, n), inst.perturbation);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_subspace(r));
}
BENCHMARK(BM_PerturbedKernel)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

static void BM_DefectTheorem(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  const Instance inst = random_invertible_product_instance(rng, n, 3);
  const DefectCase c = defect_case_of(inst.symbol);
  for (auto _ : state) benchmark::DoNotOptimize(verify_defect_theorem(c, inst.perturbation, n));
}
BENCHMARK(BM_DefectTheorem)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
