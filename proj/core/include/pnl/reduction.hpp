#pragma once

#include <vector>

#include "pnl/lattice.hpp"
#include "pnl/numerics.hpp"

namespace pnl {

// LLL output. The reduction itself runs on an exact integer image of the
// basis (columns scaled by 2^scale_bits and rounded), so the transform is
// exact and scaled[j] = sum_i transform[j][i] * scaled_original[i] holds
// as integer identity. `basis` is the reduced integer basis scaled back
// to reals; `original` keeps the caller's exact matrix because all final
// norm decisions downstream are made against it, never the rounded image.
struct ReducedBasis {
  BasisMatrix original;
  BasisMatrix basis;
  std::vector<std::vector<BigInt>> scaled_original;  // column-major
  std::vector<std::vector<BigInt>> scaled;           // column-major, reduced
  std::vector<std::vector<BigInt>> transform;        // column-major U
  long scale_bits = 0;
  double delta = 0.99;
  GsoResult gso;  // GSO of `basis`
};

// Integral LLL (exact integer Gram-Schmidt state, de Weger style) at
// parameter delta in (1/4, 1). Throws SingularBasisError when the scaled
// columns are linearly dependent.
ReducedBasis lll_reduce(const BasisMatrix& basis, double delta = 0.99);

// Coefficients w.r.t. the original basis columns for a vector given in
// reduced-basis coordinates: z_orig = U z_red. Throws std::overflow_error
// if a coefficient does not fit in long (never happens for vectors inside
// any sane search radius).
std::vector<long> to_original_coords(const ReducedBasis& rb,
                                     const std::vector<BigInt>& z_red);

// Nearest-plane: walk the GSO levels top-down rounding each coefficient
// (ties to even). Returns coefficients w.r.t. the ORIGINAL basis and the
// exact-path Euclidean distance ||B_orig z - t||_2.
struct BabaiResult {
  std::vector<long> z;
  HpReal dist;
};

BabaiResult babai_nearest_plane(const ReducedBasis& rb,
                                const std::vector<HpReal>& target);

}  // namespace pnl
