#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pnl/enumerate.hpp"
#include "pnl/prime_lattice.hpp"

namespace pnl {

// One verified congruence u - k N^gamma = v with u and v smooth over the
// factor base. Exponent vectors run over prime indices 0..d where index 0
// is the sign "prime" p_0 = -1: a_0 is always 0 (u > 0), b_0 is 1 exactly
// when v < 0.
struct Relation {
  BigInt u;
  BigInt k;
  BigInt v;
  long gamma = 1;
  std::vector<long> a;  // u  = prod_{i>=1} p_i^{a_i}
  std::vector<long> b;  // v  = (-1)^{b_0} prod_{i>=1} p_i^{b_i}
};

// Exponents of n over the base, sign first — or nothing if a cofactor
// survives trial division by every base prime. Throws on n = 0.
std::optional<std::vector<long>> factor_over_base(const BigInt& n,
                                                  const FactorBase& fb);

enum class RejectReason { not_smooth, degenerate, k_not_coprime };

// Outcome of screening one candidate: a relation, a reject, or a factor of
// N that fell out of a gcd for free.
struct CandidateOutcome {
  enum class Kind { relation, reject, early_factor } kind;
  Relation rel;         // kind == relation
  RejectReason reason;  // kind == reject
  BigInt g;             // kind == early_factor, 1 < g < N
};

CandidateOutcome candidate_to_relation(const Candidate& cand,
                                       const PnlConfig& cfg);

// Budget knobs for the growing-radius candidate search.
struct SearcherOptions {
  double radius_growth = 1.3;       // annulus ratio per round
  long max_rounds = 32;
  std::uint64_t max_nodes_per_round = 4'000'000;
  std::uint64_t max_results_per_round = 50'000;
  long gamma_max = 4;               // Adleman mode: reject larger gamma
  std::uint64_t seed = 0;           // recorded for reproducibility
};

// Streams candidates from lattice search in rounds of growing Euclidean
// radius. Round i keeps exactly the vectors with r_{i-1} < ||.||_2 <= r_i
// (exact high-precision comparisons), so rounds partition the ball and no
// candidate is ever seen twice. The reduction is done once and reused.
class RelationSearcher {
public:
  RelationSearcher(const PnlConfig& cfg, Mode mode, SearcherOptions opt = {});

  // Candidates of the next annulus; empty batches are possible while the
  // radius is still growing. exhausted() goes true when the round budget
  // is spent.
  std::vector<Candidate> next_batch();
  bool exhausted() const { return exhausted_; }

  const ReducedBasis& reduced() const { return rb_; }
  long rounds_run() const { return round_; }
  std::uint64_t nodes_used() const { return nodes_; }
  std::uint64_t gamma_rejects() const { return gamma_rejects_; }
  const SearcherOptions& options() const { return opt_; }

private:
  const PnlConfig& cfg_;
  Mode mode_;
  SearcherOptions opt_;
  ReducedBasis rb_;
  std::vector<HpReal> target_;  // empty in Adleman mode
  HpReal radius_;
  HpReal prev_radius_sq_;       // exact annulus floor (0 first round)
  long round_ = 0;
  std::uint64_t nodes_ = 0;
  std::uint64_t gamma_rejects_ = 0;
  bool exhausted_ = false;
};

struct SearchStats {
  std::uint64_t candidates_seen = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected_not_smooth = 0;
  std::uint64_t rejected_degenerate = 0;
  std::uint64_t rejected_k_not_coprime = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t gamma_rejects = 0;
  long rounds = 0;
  std::uint64_t nodes = 0;
};

// What to do when a gcd surfaces a factor mid-search: stop is the faithful
// fast path; record_and_continue keeps collecting so the congruence-of-
// squares machinery still gets exercised (the factor is reported either
// way, never lost).
enum class EarlyFactorPolicy { stop, record_and_continue };

struct CollectResult {
  std::vector<Relation> relations;  // distinct by (u, k, gamma)
  SearchStats stats;
  std::optional<BigInt> early_factor;
  bool insufficient = false;  // budget ran out below quota
};

CollectResult collect_relations(const PnlConfig& cfg,
                                RelationSearcher& searcher, size_t quota,
                                EarlyFactorPolicy policy =
                                    EarlyFactorPolicy::stop);

struct RelationIoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Line-delimited persistence: a "pnl-relations 1 <N> <d>" header, then one
// "u k gamma v a_0..a_d b_0..b_d" record per line. The loader treats the
// file as untrusted and re-verifies every invariant (exact products,
// residue identity, coprimality) before returning, throwing
// RelationIoError with the offending line number otherwise.
void save_relations(const std::string& path,
                    const std::vector<Relation>& relations,
                    const PnlConfig& cfg);
std::vector<Relation> load_relations(const std::string& path,
                                     const PnlConfig& cfg);

}  // namespace pnl
