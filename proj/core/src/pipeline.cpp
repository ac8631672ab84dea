#include "pnl/pipeline.hpp"

#include <stdexcept>

namespace pnl {

namespace {

// Counters accumulate across collection calls; rounds/nodes/gamma_rejects
// mirror the searcher's lifetime totals, so later snapshots replace.
void merge_stats(SearchStats& into, const SearchStats& s) {
  into.candidates_seen += s.candidates_seen;
  into.accepted += s.accepted;
  into.rejected_not_smooth += s.rejected_not_smooth;
  into.rejected_degenerate += s.rejected_degenerate;
  into.rejected_k_not_coprime += s.rejected_k_not_coprime;
  into.duplicates += s.duplicates;
  into.gamma_rejects = s.gamma_rejects;
  into.rounds = s.rounds;
  into.nodes = s.nodes;
}

BitMatrix parity_matrix(const std::vector<Relation>& relations, long d) {
  BitMatrix m(relations.size(), static_cast<size_t>(d) + 1);
  for (size_t i = 0; i < relations.size(); ++i)
    for (size_t j = 0; j <= static_cast<size_t>(d); ++j)
      m.set(i, j, ((relations[i].a[j] + relations[i].b[j]) & 1) != 0);
  return m;
}

}  // namespace

const char* to_string(FailureReason r) {
  switch (r) {
    case FailureReason::invalid_input: return "invalid_input";
    case FailureReason::prime_input: return "prime_input";
    case FailureReason::config_invalid: return "config_invalid";
    case FailureReason::insufficient_relations: return "insufficient_relations";
    case FailureReason::all_dependencies_trivial: return "all_dependencies_trivial";
    case FailureReason::budget_exhausted: return "budget_exhausted";
  }
  return "unknown";
}

const char* to_string(FactorSource s) {
  switch (s) {
    case FactorSource::trial_division: return "trial_division";
    case FactorSource::perfect_power: return "perfect_power";
    case FactorSource::early_gcd: return "early_gcd";
    case FactorSource::dependency: return "dependency";
  }
  return "unknown";
}

std::optional<BigInt> trial_divide(const BigInt& N, const FactorBase& fb) {
  if (N < 2) throw std::invalid_argument("trial_divide: N must be >= 2");
  for (long i = 1; i <= fb.dim(); ++i) {
    BigInt p(fb.prime(i));
    if (p < N && mpz_divisible_p(N.get_mpz_t(), p.get_mpz_t()))
      return p;
  }
  return std::nullopt;
}

std::pair<BigInt, BigInt> assemble_xy(const std::vector<Relation>& relations,
                                      const std::vector<size_t>& chosen,
                                      const PnlConfig& cfg) {
  size_t width = static_cast<size_t>(cfg.d) + 1;
  std::vector<long> ex(width, 0), ey(width, 0);
  for (size_t i : chosen) {
    const Relation& r = relations.at(i);
    for (size_t j = 0; j < width; ++j) {
      ex[j] += r.a[j] + r.b[j];
      ey[j] += r.a[j];
    }
  }
  for (size_t j = 0; j < width; ++j)
    if (ex[j] & 1)
      throw std::invalid_argument(
          "assemble_xy: odd summed exponent, not a dependency");

  // Index 0 is the sign prime: (-1)^(e_0/2).
  BigInt x = ((ex[0] / 2) & 1) ? cfg.N - 1 : BigInt(1);
  BigInt y = 1;
  for (size_t j = 1; j < width; ++j) {
    BigInt p(cfg.base.prime(static_cast<long>(j)));
    if (ex[j] != 0) x = x * mod_pow(p, BigInt(ex[j] / 2), cfg.N) % cfg.N;
    if (ey[j] != 0) y = y * mod_pow(p, BigInt(ey[j]), cfg.N) % cfg.N;
  }

  if (mod_pow(x, BigInt(2), cfg.N) != mod_pow(y, BigInt(2), cfg.N))
    throw std::logic_error("assemble_xy: x^2 != y^2 mod N");
  return {x, y};
}

FactorReport factor(const BigInt& N, const FactorOptions& options) {
  FactorReport rep;
  rep.seed = options.searcher.seed;

  if (N <= 1) {
    rep.reason = FailureReason::invalid_input;
    return rep;
  }
  if (is_prime(N)) {
    rep.reason = FailureReason::prime_input;
    return rep;
  }
  FactorBase fb = primes_first(options.d);
  if (auto g = trial_divide(N, fb)) {
    rep.factor = *g;
    rep.source = FactorSource::trial_division;
    return rep;
  }
  // Beyond the base: a prime power would sink the congruence-of-squares
  // stage, so unwrap it here.
  if (auto pp = perfect_power(N)) {
    rep.factor = pp->first;
    rep.source = FactorSource::perfect_power;
    return rep;
  }

  mpfr_prec_t prec = options.prec != 0 ? options.prec : default_precision(N);
  HpReal C = options.c_value ? to_prec(*options.c_value, prec)
                             : sqrt(HpReal::of(N, prec));
  PnlConfig cfg = PnlConfig::make(N, options.d, options.p, C, options.sigma,
                                  prec);

  // The searchers take their own radii from the reduction, but a
  // non-positive capture threshold means the theorem ball is empty — the
  // configuration contradicts the premise of the whole search.
  try {
    if (capture_threshold(cfg, 1).sign() <= 0) {
      rep.reason = FailureReason::config_invalid;
      return rep;
    }
  } catch (const std::domain_error&) {  // C <= 1
    rep.reason = FailureReason::config_invalid;
    return rep;
  }

  RelationSearcher searcher(cfg, options.mode, options.searcher);
  size_t quota = static_cast<size_t>(options.d) + 2 + options.quota_margin;

  CollectResult first =
      collect_relations(cfg, searcher, quota, options.early_factor_policy);
  merge_stats(rep.stats, first.stats);
  rep.relations = std::move(first.relations);
  std::optional<BigInt> early = first.early_factor;

  if (early && options.early_factor_policy == EarlyFactorPolicy::stop) {
    rep.factor = *early;
    rep.source = FactorSource::early_gcd;
    return rep;
  }

  for (long attempt = 0; attempt <= options.retry_rounds; ++attempt) {
    if (rep.relations.size() >= 2) {
      std::vector<BitVec> basis =
          nullspace(parity_matrix(rep.relations, cfg.d));
      for (const BitVec& c :
           iterate_dependencies(basis, options.dependency_cap)) {
        ++rep.dependencies_tried;
        std::vector<size_t> chosen;
        for (size_t i = 0; i < rep.relations.size(); ++i)
          if (c.get(i)) chosen.push_back(i);
        auto [x, y] = assemble_xy(rep.relations, chosen, cfg);
        // x = +-y mod N is the degenerate congruence; anything else
        // guarantees a proper factor through gcd(x + y, N).
        if (x == y || x + y == cfg.N || x + y == 0) continue;
        BigInt g = gcd(x + y, cfg.N);
        if (g <= 1 || g >= cfg.N)
          throw std::logic_error("factor: nontrivial congruence gave a "
                                 "trivial gcd");
        rep.factor = g;
        rep.source = FactorSource::dependency;
        rep.x = x;
        rep.y = y;
        rep.dependency = std::move(chosen);
        return rep;
      }
    }

    // Every dependency degenerated (or none existed): widen the relation
    // set and retry, reusing the same reduced basis.
    if (attempt == options.retry_rounds || searcher.exhausted()) break;
    size_t before = rep.relations.size();
    // Candidates never repeat across calls (the searcher's annuli
    // partition the ball, and (u,k,gamma) determines z), so a fresh
    // collection round cannot duplicate stored relations.
    CollectResult more = collect_relations(
        cfg, searcher, options.quota_margin + 1, options.early_factor_policy);
    merge_stats(rep.stats, more.stats);
    for (Relation& r : more.relations) rep.relations.push_back(std::move(r));
    if (!early) early = more.early_factor;
    if (early && options.early_factor_policy == EarlyFactorPolicy::stop) {
      rep.factor = *early;
      rep.source = FactorSource::early_gcd;
      return rep;
    }
    if (rep.relations.size() == before && searcher.exhausted()) break;
  }

  if (early) {
    rep.factor = *early;
    rep.source = FactorSource::early_gcd;
    return rep;
  }

  if (rep.relations.size() < static_cast<size_t>(cfg.d) + 2)
    rep.reason = FailureReason::insufficient_relations;
  else if (searcher.exhausted())
    rep.reason = FailureReason::all_dependencies_trivial;
  else
    rep.reason = FailureReason::budget_exhausted;
  return rep;
}

}  // namespace pnl
