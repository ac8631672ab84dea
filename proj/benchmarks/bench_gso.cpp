// Closed-form GSO against the generic iterative sweep on the prime
// bases: the closed form should stay near-linear in d while the sweep
// grows cubically.

#include <benchmark/benchmark.h>

#include "pnl/lattice.hpp"
#include "pnl/prime_lattice.hpp"

using namespace pnl;

namespace {

PnlConfig config_for(long d) {
  BigInt N(10403);
  HpReal C = sqrt(HpReal::of(10403L, default_precision(N)));
  return PnlConfig::make(N, d, 2, C, 2);
}

void bm_gso_closed_form(benchmark::State& state) {
  PnlConfig cfg = config_for(state.range(0));
  for (auto _ : state) {
    PrimeGso g = gso_prime_basis(cfg);
    benchmark::DoNotOptimize(g.t_star_norm_sq);
  }
}

void bm_gso_iterative(benchmark::State& state) {
  PnlConfig cfg = config_for(state.range(0));
  BasisMatrix a = build_adleman_basis(cfg);
  for (auto _ : state) {
    GsoResult g = gso_iterative(a);
    benchmark::DoNotOptimize(g.star_norms_sq.back());
  }
}

void bm_volume_closed_form(benchmark::State& state) {
  PnlConfig cfg = config_for(state.range(0));
  for (auto _ : state) {
    HpReal v = vol_adleman_closed(cfg);
    benchmark::DoNotOptimize(v);
  }
}

void bm_volume_gram(benchmark::State& state) {
  PnlConfig cfg = config_for(state.range(0));
  BasisMatrix a = build_adleman_basis(cfg);
  for (auto _ : state) {
    HpReal v = volume_gram(a);
    benchmark::DoNotOptimize(v);
  }
}

}  // namespace

BENCHMARK(bm_gso_closed_form)->Arg(10)->Arg(25)->Arg(60);
BENCHMARK(bm_gso_iterative)->Arg(10)->Arg(25)->Arg(60);
BENCHMARK(bm_volume_closed_form)->Arg(10)->Arg(25)->Arg(60);
BENCHMARK(bm_volume_gram)->Arg(10)->Arg(25)->Arg(60);
