// Enumeration throughput on a mid-size prime lattice, and the decode +
// smoothness screen that every candidate passes through afterwards.

#include <benchmark/benchmark.h>

#include "pnl/enumerate.hpp"
#include "pnl/prime_lattice.hpp"
#include "pnl/reduction.hpp"
#include "pnl/relations.hpp"

using namespace pnl;

namespace {

PnlConfig config_for(long d) {
  BigInt N(10403);
  HpReal C = sqrt(HpReal::of(10403L, default_precision(N)));
  return PnlConfig::make(N, d, 1, C, 2);
}

void bm_enumerate_short(benchmark::State& state) {
  PnlConfig cfg = config_for(state.range(0));
  ReducedBasis rb = lll_reduce(build_adleman_basis(cfg));
  // Radius: a modest multiple of the shortest reduced column keeps the
  // tree small enough to time repeatedly.
  std::vector<HpReal> zero(static_cast<size_t>(rb.basis.rows()),
                           HpReal::of(0L, cfg.prec));
  HpReal best = residual_norms(rb.basis, [&] {
                  std::vector<long> e(static_cast<size_t>(rb.basis.cols()), 0);
                  e[0] = 1;
                  return e;
                }(), zero).two_norm_sq;
  SearchBudget budget;
  budget.norm = 2;
  budget.radius = sqrt(best) * HpReal::of(1.6, cfg.prec);
  for (auto _ : state) {
    EnumerationResult r = enumerate_short(rb, budget, ShortSign::adleman);
    benchmark::DoNotOptimize(r.found.size());
  }
}

void bm_enumerate_close(benchmark::State& state) {
  PnlConfig cfg = config_for(state.range(0));
  ReducedBasis rb = lll_reduce(build_schnorr_basis(cfg));
  std::vector<HpReal> t = build_target(cfg);
  BabaiResult b = babai_nearest_plane(rb, t);
  SearchBudget budget;
  budget.norm = 2;
  budget.radius = b.dist * HpReal::of(1.2, cfg.prec);
  for (auto _ : state) {
    EnumerationResult r = enumerate_close(rb, t, budget);
    benchmark::DoNotOptimize(r.found.size());
  }
}

void bm_smoothness_screen(benchmark::State& state) {
  PnlConfig cfg = config_for(25);
  // A fixed candidate stream: decode a batch once, then time the
  // factor-over-base screen applied to each.
  RelationSearcher searcher(cfg, Mode::schnorr);
  std::vector<Candidate> cands;
  while (cands.size() < 200 && !searcher.exhausted()) {
    std::vector<Candidate> batch = searcher.next_batch();
    cands.insert(cands.end(), batch.begin(), batch.end());
  }
  for (auto _ : state) {
    size_t kept = 0;
    for (const Candidate& c : cands)
      if (candidate_to_relation(c, cfg).kind ==
          CandidateOutcome::Kind::relation)
        ++kept;
    benchmark::DoNotOptimize(kept);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(cands.size()));
}

}  // namespace

BENCHMARK(bm_enumerate_short)->Arg(10)->Arg(15);
BENCHMARK(bm_enumerate_close)->Arg(10)->Arg(15);
BENCHMARK(bm_smoothness_screen);
