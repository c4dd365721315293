#include <benchmark/benchmark.h>

#include "toepker/cgp.hpp"
#include "toepker/generators.hpp"

using namespace toepker;

static void BM_KBasis(benchmark::State& state) {
  const int n = 128;
  const int l = static_cast<int>(state.range(0));
  Rng rng(3);
  const Instance inst = random_inner_instance(rng, n, 1, false);
  const CgpFrame f = build_cgp_frame(defect_case_of(inst.symbol), inst.perturbation, n);
  for (auto _ : state) benchmark::DoNotOptimize(k_basis(f, n, l));
}
BENCHMARK(BM_KBasis)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

static void BM_VerifyRepresentation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(4);
  const Instance inst = random_invertible_product_instance(rng, n, 1);
  const DefectCase c = defect_case_of(inst.symbol);
  CgpOptions opts;
  opts.brute_force_oracle = false;
  for (auto _ : state) benchmark::DoNotOptimize(verify_corollary(c, inst.perturbation, n, opts));
}
BENCHMARK(BM_VerifyRepresentation)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_ProjectionOfOneFormula(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(remark_projection_check(5, 4));
}
BENCHMARK(BM_ProjectionOfOneFormula)->Unit(benchmark::kMillisecond);
