#pragma once

#include <vector>

#include "pnl/numerics.hpp"

namespace pnl {

// Column-major matrix of high-precision reals. Columns are lattice basis
// vectors; rows >= cols. Linear independence is not checked on
// construction, it surfaces as a singular-basis error in the operations
// that need it.
class BasisMatrix {
public:
  BasisMatrix(long rows, long cols, mpfr_prec_t prec);

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  mpfr_prec_t prec() const { return prec_; }

  const HpReal& at(long r, long c) const { return e_[idx(r, c)]; }
  HpReal& at(long r, long c) { return e_[idx(r, c)]; }

  std::vector<HpReal> column(long c) const;
  void set_column(long c, const std::vector<HpReal>& v);

private:
  size_t idx(long r, long c) const;
  long rows_, cols_;
  mpfr_prec_t prec_;
  std::vector<HpReal> e_;
};

struct SingularBasisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Gram-Schmidt output: star vectors b*_k, projection coefficients
// mu[k][j] (j < k), and squared norms ||b*_k||^2.
struct GsoResult {
  std::vector<std::vector<HpReal>> star;       // cols vectors of length rows
  std::vector<std::vector<HpReal>> mu;         // mu[k] has k entries
  std::vector<HpReal> star_norms_sq;           // cols entries

  long size() const { return static_cast<long>(star.size()); }
};

// The near-diagonal shape shared by the prime-number lattice bases:
// diag(x_1..x_d) stacked over a dense bottom row (y_1..y_d, y_{d+1}).
// Column d+1 is (0,...,0, y_{d+1}).
struct XySpec {
  std::vector<HpReal> x;  // d entries, all nonzero
  std::vector<HpReal> y;  // d+1 entries

  long dim() const { return static_cast<long>(x.size()); }
  BasisMatrix assemble() const;
};

// Classical projection recurrence. Throws SingularBasisError when a star
// vector degenerates (rank < cols) and when the computed stars fail the
// orthogonality tolerance |<b*_i, b*_j>| <= 2^(-prec/4) ||b*_i|| ||b*_j||.
GsoResult gso_iterative(const BasisMatrix& basis);

// Closed-form GSO of an XySpec matrix via the scalars
// K_j = 1 + sum_{i<=j} (y_i/x_i)^2. O(d^2) arithmetic, no projections.
GsoResult gso_closed_form(const XySpec& spec);

// sqrt(|det(B^T B)|). Throws SingularBasisError when the Gram determinant
// falls below 2^(-prec/2).
HpReal volume_gram(const BasisMatrix& basis);

// Volume of the lattice spanned by the identity stacked over row x:
// sqrt(1 + sum x_i^2) (rank-one update determinant).
HpReal volume_rank_one(const std::vector<HpReal>& x);

}  // namespace pnl
