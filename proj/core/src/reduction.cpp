#include "pnl/reduction.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace pnl {

namespace {

BigInt dot_z(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  BigInt acc = 0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// Nearest integer to num/den for den > 0 (half rounds up). Used only for
// size-reduction steps, where either tie choice keeps |lambda| <= d/2.
BigInt round_quot(const BigInt& num, const BigInt& den) {
  BigInt q;
  BigInt two_num_plus_den = 2 * num + den;
  BigInt two_den = 2 * den;
  mpz_fdiv_q(q.get_mpz_t(), two_num_plus_den.get_mpz_t(),
             two_den.get_mpz_t());
  return q;
}

// Exact integer-Gram-Schmidt LLL state over the scaled columns.
// D[0] = 1, D[c+1] = Gram determinant of columns 0..c; L[c][j] (j < c) is
// the integral mu numerator: mu_{c,j} = L[c][j] / D[j+1].
struct IntegralLll {
  std::vector<std::vector<BigInt>>& cols;
  std::vector<std::vector<BigInt>>& u;  // transform columns
  std::vector<BigInt> D;
  std::vector<std::vector<BigInt>> L;
  long n;

  IntegralLll(std::vector<std::vector<BigInt>>& cols_,
              std::vector<std::vector<BigInt>>& u_)
      : cols(cols_), u(u_), n(static_cast<long>(cols_.size())) {
    D.assign(static_cast<size_t>(n) + 1, BigInt(0));
    D[0] = 1;
    L.assign(static_cast<size_t>(n),
             std::vector<BigInt>(static_cast<size_t>(n), BigInt(0)));
  }

  BigInt& lam(long i, long j) {
    return L[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }

  // Incremental exact Gram-Schmidt row for column k.
  void gram_row(long k) {
    for (long j = 0; j <= k; ++j) {
      BigInt t = dot_z(cols[static_cast<size_t>(k)], cols[static_cast<size_t>(j)]);
      for (long i = 0; i < j; ++i) {
        BigInt num = D[static_cast<size_t>(i) + 1] * t - lam(k, i) * lam(j, i);
        mpz_divexact(t.get_mpz_t(), num.get_mpz_t(),
                     D[static_cast<size_t>(i)].get_mpz_t());
      }
      if (j < k)
        lam(k, j) = t;
      else {
        if (t <= 0)
          throw SingularBasisError(
              "lll_reduce: scaled columns are linearly dependent (column " +
              std::to_string(k) + ")");
        D[static_cast<size_t>(k) + 1] = t;
      }
    }
  }

  void size_reduce(long k, long l) {
    const BigInt& dl = D[static_cast<size_t>(l) + 1];
    if (2 * abs(lam(k, l)) <= dl) return;
    BigInt q = round_quot(lam(k, l), dl);
    for (size_t r = 0; r < cols[static_cast<size_t>(k)].size(); ++r)
      cols[static_cast<size_t>(k)][r] -= q * cols[static_cast<size_t>(l)][r];
    for (size_t r = 0; r < u[static_cast<size_t>(k)].size(); ++r)
      u[static_cast<size_t>(k)][r] -= q * u[static_cast<size_t>(l)][r];
    lam(k, l) -= q * dl;
    for (long i = 0; i < l; ++i) lam(k, i) -= q * lam(l, i);
  }

  void swap_step(long k, long kmax) {
    std::swap(cols[static_cast<size_t>(k)], cols[static_cast<size_t>(k) - 1]);
    std::swap(u[static_cast<size_t>(k)], u[static_cast<size_t>(k) - 1]);
    for (long j = 0; j <= k - 2; ++j)
      std::swap(lam(k, j), lam(k - 1, j));
    BigInt l_val = lam(k, k - 1);
    BigInt b_num = D[static_cast<size_t>(k) - 1] * D[static_cast<size_t>(k) + 1] +
                   l_val * l_val;
    BigInt b;
    mpz_divexact(b.get_mpz_t(), b_num.get_mpz_t(),
                 D[static_cast<size_t>(k)].get_mpz_t());
    for (long i = k + 1; i <= kmax; ++i) {
      BigInt t = lam(i, k);
      BigInt num = D[static_cast<size_t>(k) + 1] * lam(i, k - 1) - l_val * t;
      mpz_divexact(lam(i, k).get_mpz_t(), num.get_mpz_t(),
                   D[static_cast<size_t>(k)].get_mpz_t());
      num = b * t + l_val * lam(i, k);
      mpz_divexact(lam(i, k - 1).get_mpz_t(), num.get_mpz_t(),
                   D[static_cast<size_t>(k) + 1].get_mpz_t());
    }
    D[static_cast<size_t>(k)] = b;
  }

  void run(const BigInt& delta_num, const BigInt& delta_den) {
    if (n == 0) return;
    long k = 1, kmax = 0;
    gram_row(0);
    while (k < n) {
      if (k > kmax) {
        kmax = k;
        gram_row(k);
      }
      size_reduce(k, k - 1);
      // Lovasz in integral form: swap when
      // den d_k d_{k-2} < num d_{k-1}^2 - den lambda^2.
      BigInt lhs = delta_den * D[static_cast<size_t>(k) + 1] *
                   D[static_cast<size_t>(k) - 1];
      BigInt rhs = delta_num * D[static_cast<size_t>(k)] *
                       D[static_cast<size_t>(k)] -
                   delta_den * lam(k, k - 1) * lam(k, k - 1);
      if (lhs < rhs) {
        swap_step(k, kmax);
        k = std::max(1L, k - 1);
      } else {
        for (long l = k - 2; l >= 0; --l) size_reduce(k, l);
        ++k;
      }
    }
  }
};

std::vector<std::vector<BigInt>> scale_columns(const BasisMatrix& basis,
                                               long scale_bits) {
  std::vector<std::vector<BigInt>> cols;
  cols.reserve(static_cast<size_t>(basis.cols()));
  HpReal tmp(basis.prec() + 64);
  for (long c = 0; c < basis.cols(); ++c) {
    std::vector<BigInt> col;
    col.reserve(static_cast<size_t>(basis.rows()));
    for (long r = 0; r < basis.rows(); ++r) {
      mpfr_mul_2si(tmp.raw(), basis.at(r, c).raw(), scale_bits, MPFR_RNDN);
      BigInt z;
      mpfr_get_z(z.get_mpz_t(), tmp.raw(), MPFR_RNDN);
      col.push_back(std::move(z));
    }
    cols.push_back(std::move(col));
  }
  return cols;
}

}  // namespace

ReducedBasis lll_reduce(const BasisMatrix& basis, double delta) {
  Rational dq(delta);
  if (!(dq > Rational(1, 4) && dq < 1))
    throw std::invalid_argument("lll_reduce: delta must lie in (1/4, 1)");

  long n = basis.cols();
  long m = basis.rows();
  ReducedBasis rb{basis,
                  BasisMatrix(m, n, basis.prec() + 64),
                  {},
                  {},
                  {},
                  static_cast<long>(basis.prec()),
                  delta,
                  {}};

  rb.scaled_original = scale_columns(basis, rb.scale_bits);
  rb.scaled = rb.scaled_original;
  rb.transform.assign(static_cast<size_t>(n),
                      std::vector<BigInt>(static_cast<size_t>(n), BigInt(0)));
  for (long j = 0; j < n; ++j)
    rb.transform[static_cast<size_t>(j)][static_cast<size_t>(j)] = 1;

  IntegralLll state(rb.scaled, rb.transform);
  state.run(BigInt(dq.get_num()), BigInt(dq.get_den()));

  // Exact-transform invariant: B_orig_scaled * U = B_red_scaled. Cheap at
  // these dimensions and catches any bookkeeping slip immediately.
  for (long j = 0; j < n; ++j) {
    for (long r = 0; r < m; ++r) {
      BigInt acc = 0;
      for (long i = 0; i < n; ++i)
        acc += rb.scaled_original[static_cast<size_t>(i)][static_cast<size_t>(r)] *
               rb.transform[static_cast<size_t>(j)][static_cast<size_t>(i)];
      if (acc != rb.scaled[static_cast<size_t>(j)][static_cast<size_t>(r)])
        throw std::logic_error("lll_reduce: transform does not reproduce "
                               "the reduced basis");
    }
  }

  // Scale the reduced integer columns back to reals; prec + 64 bits make
  // the descaling exact for every entry LLL can produce here.
  for (long c = 0; c < n; ++c)
    for (long r = 0; r < m; ++r) {
      HpReal e(basis.prec() + 64);
      mpfr_set_z(e.raw(),
                 rb.scaled[static_cast<size_t>(c)][static_cast<size_t>(r)].get_mpz_t(),
                 MPFR_RNDN);
      mpfr_mul_2si(e.raw(), e.raw(), -rb.scale_bits, MPFR_RNDN);
      rb.basis.at(r, c) = std::move(e);
    }

  rb.gso = gso_iterative(rb.basis);
  return rb;
}

std::vector<long> to_original_coords(const ReducedBasis& rb,
                                     const std::vector<BigInt>& z_red) {
  size_t n = rb.transform.size();
  if (z_red.size() != n)
    throw std::invalid_argument("to_original_coords: length mismatch");
  std::vector<long> out(n, 0);
  for (size_t i = 0; i < n; ++i) {
    BigInt acc = 0;
    for (size_t j = 0; j < n; ++j) acc += rb.transform[j][i] * z_red[j];
    if (!acc.fits_slong_p())
      throw std::overflow_error(
          "to_original_coords: coefficient exceeds long range");
    out[i] = acc.get_si();
  }
  return out;
}

BabaiResult babai_nearest_plane(const ReducedBasis& rb,
                                const std::vector<HpReal>& target) {
  long n = rb.basis.cols();
  long m = rb.basis.rows();
  if (static_cast<long>(target.size()) != m)
    throw std::invalid_argument("babai_nearest_plane: target length mismatch");

  std::vector<HpReal> w = target;
  std::vector<BigInt> z_red(static_cast<size_t>(n), BigInt(0));
  for (long j = n - 1; j >= 0; --j) {
    HpReal num = HpReal::of(0L, rb.basis.prec());
    for (long r = 0; r < m; ++r)
      num += w[static_cast<size_t>(r)] * rb.gso.star[static_cast<size_t>(j)][static_cast<size_t>(r)];
    HpReal mu = num / rb.gso.star_norms_sq[static_cast<size_t>(j)];
    BigInt c = mu.round_to_int();
    z_red[static_cast<size_t>(j)] = c;
    HpReal ch = HpReal::of(c, rb.basis.prec());
    for (long r = 0; r < m; ++r)
      w[static_cast<size_t>(r)] -= ch * rb.basis.at(r, j);
  }

  BabaiResult res;
  res.z = to_original_coords(rb, z_red);
  // Distance along the caller-facing path: exact original basis, not the
  // rounded reduction image, so comparisons against oracles are apples to
  // apples.
  HpReal acc = HpReal::of(0L, rb.original.prec());
  for (long r = 0; r < m; ++r) {
    HpReal e = -target[static_cast<size_t>(r)];
    for (long c = 0; c < n; ++c)
      e += HpReal::of(res.z[static_cast<size_t>(c)], rb.original.prec()) *
           rb.original.at(r, c);
    acc += square(e);
  }
  res.dist = sqrt(acc);
  return res;
}

}  // namespace pnl
