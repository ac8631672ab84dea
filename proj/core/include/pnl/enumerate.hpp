#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pnl/reduction.hpp"

namespace pnl {

// Limits for an enumeration run. `radius` bounds the chosen norm of the
// residual B z - t; the tree walk itself always prunes on the Euclidean
// norm (||.||_2 <= ||.||_1 makes that lossless for norm = 1).
struct SearchBudget {
  std::uint64_t max_nodes = 50'000'000;
  std::uint64_t max_results = 1'000'000;
  HpReal radius;
  int norm = 1;  // 1 or 2
};

// Exact high-precision norms of B z - target, evaluated against the exact
// basis. Every accept/reject decision in this module — enumeration filter,
// box oracle, distance reporting — funnels through this one function, so
// the searchers and the oracles can never disagree on a borderline vector.
struct ResidualNorms {
  HpReal one_norm;
  HpReal two_norm_sq;
};

ResidualNorms residual_norms(const BasisMatrix& basis,
                             const std::vector<long>& z,
                             const std::vector<HpReal>& target);

struct FoundVector {
  std::vector<long> z;  // coefficients w.r.t. the original basis
  HpReal one_norm;
  HpReal two_norm_sq;
};

struct EnumerationResult {
  std::vector<FoundVector> found;  // sorted by (one_norm, lexicographic z)
  bool truncated = false;          // hit max_nodes or max_results
  std::uint64_t nodes = 0;
};

// Every lattice vector with ||B z - t||_norm <= radius, found depth-first
// over the GSO of the reduced basis; the float tree walk runs with a small
// radius inflation and each leaf is confirmed through residual_norms, so
// the result set is exactly the mathematically qualifying set (within
// budget). Deterministic for fixed inputs.
EnumerationResult enumerate_close(const ReducedBasis& rb,
                                  const std::vector<HpReal>& target,
                                  const SearchBudget& budget);

// Sign convention for short vectors: each +-pair is reported once.
//   canonical — representative has its last nonzero coordinate negative;
//   adleman   — representative has z_{d+1} < 0, and vectors with
//               z_{d+1} = 0 are dropped entirely (they encode no equation).
enum class ShortSign { canonical, adleman };

// Nonzero lattice vectors with ||B z||_norm <= radius, one per +-pair.
EnumerationResult enumerate_short(const ReducedBasis& rb,
                                  const SearchBudget& budget,
                                  ShortSign sign_mode = ShortSign::canonical);

// Odometer over z in [-b_i, b_i]^cols. Throws std::invalid_argument when
// the box exceeds 10^8 points. The visitor sees each z exactly once, in
// lexicographic order.
void for_each_in_box(const std::vector<long>& bounds,
                     const std::function<void(const std::vector<long>&)>& visit);

// Exhaustive-box oracle: every z in the box with its exact norms. The
// target may be the zero vector (short-vector study). Used by tests to
// certify enumeration completeness; guarded like for_each_in_box.
std::vector<FoundVector> brute_force_box(const BasisMatrix& basis,
                                         const std::vector<HpReal>& target,
                                         const std::vector<long>& bounds);

}  // namespace pnl
