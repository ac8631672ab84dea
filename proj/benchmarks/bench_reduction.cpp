// LLL cost on the prime bases as the dimension grows. The reduction is
// done once per factorization run, but it dominates setup time, so its
// scaling is worth watching.

#include <benchmark/benchmark.h>

#include "pnl/prime_lattice.hpp"
#include "pnl/reduction.hpp"

using namespace pnl;

namespace {

PnlConfig config_for(long d) {
  BigInt N(10403);
  HpReal C = sqrt(HpReal::of(10403L, default_precision(N)));
  return PnlConfig::make(N, d, 1, C, 2);
}

void bm_lll_schnorr(benchmark::State& state) {
  PnlConfig cfg = config_for(state.range(0));
  BasisMatrix s = build_schnorr_basis(cfg);
  for (auto _ : state) {
    ReducedBasis rb = lll_reduce(s);
    benchmark::DoNotOptimize(rb.transform);
  }
}

void bm_lll_adleman(benchmark::State& state) {
  PnlConfig cfg = config_for(state.range(0));
  BasisMatrix a = build_adleman_basis(cfg);
  for (auto _ : state) {
    ReducedBasis rb = lll_reduce(a);
    benchmark::DoNotOptimize(rb.transform);
  }
}

void bm_babai(benchmark::State& state) {
  PnlConfig cfg = config_for(state.range(0));
  ReducedBasis rb = lll_reduce(build_schnorr_basis(cfg));
  std::vector<HpReal> t = build_target(cfg);
  for (auto _ : state) {
    BabaiResult b = babai_nearest_plane(rb, t);
    benchmark::DoNotOptimize(b.dist);
  }
}

}  // namespace

BENCHMARK(bm_lll_schnorr)->Arg(10)->Arg(20)->Arg(30);
BENCHMARK(bm_lll_adleman)->Arg(10)->Arg(20)->Arg(30);
BENCHMARK(bm_babai)->Arg(10)->Arg(20)->Arg(30);
