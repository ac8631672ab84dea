#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pnl/gf2.hpp"
#include "pnl/relations.hpp"

namespace pnl {

enum class FailureReason {
  invalid_input,            // N <= 1
  prime_input,              // N passes the deterministic primality test
  config_invalid,           // capture threshold <= 0: empty premise ball
  insufficient_relations,   // search budget spent below quota
  all_dependencies_trivial, // every congruence had x = +-y mod N
  budget_exhausted,         // retry cap hit while extending relations
};

const char* to_string(FailureReason r);

enum class FactorSource {
  trial_division,  // a base prime divides N
  perfect_power,   // N = m^e, factor m
  early_gcd,       // incidental gcd during relation search
  dependency,      // congruence of squares
};

const char* to_string(FactorSource s);

struct FactorOptions {
  long d = 25;
  long p = 1;
  // C defaults to sqrt(N); set c_value to override.
  std::optional<HpReal> c_value;
  long sigma = 2;
  Mode mode = Mode::schnorr;
  mpfr_prec_t prec = 0;          // 0: default_precision(N)
  size_t quota_margin = 8;       // relations beyond d+2
  long retry_rounds = 4;         // quota extensions before giving up
  size_t dependency_cap = size_t{1} << 16;
  SearcherOptions searcher;
  EarlyFactorPolicy early_factor_policy = EarlyFactorPolicy::stop;
};

struct FactorReport {
  std::optional<BigInt> factor;       // 1 < factor < N, divides N
  FactorSource source = FactorSource::dependency;   // valid when factor set
  FailureReason reason = FailureReason::invalid_input;  // when factor empty
  std::vector<Relation> relations;    // all verified relations collected
  size_t dependencies_tried = 0;
  SearchStats stats;
  std::uint64_t seed = 0;
  // Set when source == dependency: the successful congruence.
  BigInt x;
  BigInt y;
  std::vector<size_t> dependency;     // indices of the relations combined
};

// Smallest base prime that divides N, when one exists and is a proper
// divisor (p_i < N); nullopt certifies gcd(N, prod p_i) = 1.
std::optional<BigInt> trial_divide(const BigInt& N, const FactorBase& fb);

// x = prod p_j^{sum_i c_i (a_ij + b_ij)/2} mod N (index 0 contributes the
// sign (-1)^{e_0/2}), y = prod p_j^{sum_i c_i a_ij} mod N. The a-exponents
// of y are deliberately not halved; x^2 = y^2 (mod N) anyway because
// v = u - k N^gamma makes prod v^c = prod u^c (mod N). The congruence is
// re-checked exactly before returning. Throws std::invalid_argument when
// some summed exponent is odd (c is then not a dependency).
std::pair<BigInt, BigInt> assemble_xy(const std::vector<Relation>& relations,
                                      const std::vector<size_t>& chosen,
                                      const PnlConfig& cfg);

// The full run: input screening (primality, perfect power), trial
// division, then relation collection / GF(2) dependencies / congruence of
// squares, extending the relation set when every dependency degenerates.
FactorReport factor(const BigInt& N, const FactorOptions& options = {});

}  // namespace pnl
