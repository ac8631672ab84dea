#include "pnl/lattice.hpp"

#include <stdexcept>
#include <string>

namespace pnl {

namespace {

HpReal dot(const std::vector<HpReal>& a, const std::vector<HpReal>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dot: length mismatch");
  HpReal acc = HpReal::of(0L, a.empty() ? 64 : a[0].prec());
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

BasisMatrix::BasisMatrix(long rows, long cols, mpfr_prec_t prec)
    : rows_(rows), cols_(cols), prec_(prec) {
  if (rows < 1 || cols < 1 || rows < cols)
    throw std::invalid_argument("BasisMatrix: need rows >= cols >= 1");
  e_.reserve(static_cast<size_t>(rows) * cols);
  for (long i = 0; i < rows * cols; ++i) e_.push_back(HpReal::of(0L, prec));
}

size_t BasisMatrix::idx(long r, long c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("BasisMatrix: index (" + std::to_string(r) + "," +
                            std::to_string(c) + ") outside " +
                            std::to_string(rows_) + "x" + std::to_string(cols_));
  return static_cast<size_t>(c) * rows_ + r;
}

std::vector<HpReal> BasisMatrix::column(long c) const {
  std::vector<HpReal> v;
  v.reserve(rows_);
  for (long r = 0; r < rows_; ++r) v.push_back(at(r, c));
  return v;
}

void BasisMatrix::set_column(long c, const std::vector<HpReal>& v) {
  if (static_cast<long>(v.size()) != rows_)
    throw std::invalid_argument("set_column: length mismatch");
  for (long r = 0; r < rows_; ++r) at(r, c) = v[r];
}

BasisMatrix XySpec::assemble() const {
  long d = dim();
  if (static_cast<long>(y.size()) != d + 1)
    throw std::invalid_argument("XySpec: y must have d+1 entries");
  mpfr_prec_t prec = x.empty() ? y.back().prec() : x[0].prec();
  BasisMatrix b(d + 1, d + 1, prec);
  for (long i = 0; i < d; ++i) {
    if (x[i].is_zero())
      throw std::invalid_argument("XySpec: diagonal entries must be nonzero");
    b.at(i, i) = x[i];
    b.at(d, i) = y[i];
  }
  b.at(d, d) = y[d];
  return b;
}

GsoResult gso_iterative(const BasisMatrix& basis) {
  long n = basis.cols();
  mpfr_prec_t prec = basis.prec();
  GsoResult out;
  out.star.reserve(n);
  out.mu.reserve(n);
  out.star_norms_sq.reserve(n);

  // Degenerate-star threshold relative to the input column, and pairwise
  // orthogonality tolerance for the self-check below.
  HpReal tol = mul_2exp(HpReal::of(1L, prec), -static_cast<long>(prec / 4));

  for (long k = 0; k < n; ++k) {
    std::vector<HpReal> bk = basis.column(k);
    std::vector<HpReal> star = bk;
    std::vector<HpReal> muk;
    muk.reserve(k);
    for (long j = 0; j < k; ++j) {
      HpReal m = dot(bk, out.star[j]) / out.star_norms_sq[j];
      for (long r = 0; r < basis.rows(); ++r) star[r] -= m * out.star[j][r];
      muk.push_back(std::move(m));
    }
    HpReal nsq = dot(star, star);
    HpReal input_nsq = dot(bk, bk);
    if (nsq <= tol * tol * input_nsq)
      throw SingularBasisError("gso_iterative: column " + std::to_string(k) +
                               " is (numerically) dependent on its predecessors");
    out.star.push_back(std::move(star));
    out.mu.push_back(std::move(muk));
    out.star_norms_sq.push_back(std::move(nsq));
  }

  // Orthogonality self-check: |<b*_i, b*_j>| <= 2^(-prec/4) |b*_i| |b*_j|.
  for (long i = 0; i < n; ++i) {
    for (long j = i + 1; j < n; ++j) {
      HpReal ip = abs(dot(out.star[i], out.star[j]));
      HpReal bound =
          tol * sqrt(out.star_norms_sq[i]) * sqrt(out.star_norms_sq[j]);
      if (ip > bound)
        throw SingularBasisError(
            "gso_iterative: orthogonality check failed for stars " +
            std::to_string(i) + "," + std::to_string(j) +
            " (precision exhausted or basis ill-conditioned)");
    }
  }
  return out;
}

GsoResult gso_closed_form(const XySpec& spec) {
  long d = spec.dim();
  if (static_cast<long>(spec.y.size()) != d + 1)
    throw std::invalid_argument("gso_closed_form: y must have d+1 entries");
  mpfr_prec_t prec = spec.x.empty() ? spec.y.back().prec() : spec.x[0].prec();
  HpReal one = HpReal::of(1L, prec);

  // q_i = y_i / x_i;  running sums K with K[0] = 1 and
  // K[j] = 1 + sum_{i<j} q_i^2, so K[j] covers columns 0..j-1.
  std::vector<HpReal> q;
  q.reserve(d);
  std::vector<HpReal> K;
  K.reserve(d + 1);
  K.push_back(one);
  if (spec.y.back().is_zero())
    throw SingularBasisError("gso_closed_form: last column is zero");
  for (long i = 0; i < d; ++i) {
    if (spec.x[i].is_zero())
      throw SingularBasisError("gso_closed_form: zero diagonal entry");
    q.push_back(spec.y[i] / spec.x[i]);
    K.push_back(K.back() + square(q.back()));
  }

  GsoResult out;
  out.star.reserve(d + 1);
  out.mu.reserve(d + 1);
  out.star_norms_sq.reserve(d + 1);

  HpReal zero = HpReal::of(0L, prec);
  for (long k = 0; k < d; ++k) {
    // Star k: entries -(y_k / K_{k-1}) q_i for i < k, x_k at i = k, zeros
    // for k < i < d, and y_k / K_{k-1} in the bottom row.
    std::vector<HpReal> star(static_cast<size_t>(d) + 1, zero);
    HpReal yk_over_K = spec.y[k] / K[k];
    for (long i = 0; i < k; ++i) star[i] = -yk_over_K * q[i];
    star[k] = spec.x[k];
    star[d] = yk_over_K;
    out.star.push_back(std::move(star));
    out.star_norms_sq.push_back(square(spec.x[k]) * K[k + 1] / K[k]);

    // mu_{k,j} = y_k y_j / (x_j^2 K[j+1]).
    std::vector<HpReal> muk;
    muk.reserve(k);
    for (long j = 0; j < k; ++j)
      muk.push_back(spec.y[k] * spec.y[j] / (square(spec.x[j]) * K[j + 1]));
    out.mu.push_back(std::move(muk));
  }

  // Last column (0,...,0,y_{d+1}): star is y_{d+1}/K_d * (-q_1..-q_d, 1),
  // squared norm y_{d+1}^2 / K_d.
  {
    std::vector<HpReal> star(static_cast<size_t>(d) + 1, zero);
    HpReal yd1_over_K = spec.y[d] / K[d];
    for (long i = 0; i < d; ++i) star[i] = -yd1_over_K * q[i];
    star[d] = yd1_over_K;
    out.star.push_back(std::move(star));
    out.star_norms_sq.push_back(square(spec.y[d]) / K[d]);
    std::vector<HpReal> muk;
    muk.reserve(d);
    for (long j = 0; j < d; ++j)
      muk.push_back(spec.y[d] * spec.y[j] / (square(spec.x[j]) * K[j + 1]));
    out.mu.push_back(std::move(muk));
  }
  return out;
}

HpReal volume_gram(const BasisMatrix& basis) {
  long n = basis.cols();
  mpfr_prec_t prec = basis.prec();

  // Gram matrix G = B^T B, then determinant by Gaussian elimination with
  // partial pivoting. G is symmetric positive definite for a full-rank
  // basis, but pivoting keeps the elimination honest near singularity.
  std::vector<std::vector<HpReal>> g;
  g.reserve(n);
  for (long i = 0; i < n; ++i) {
    std::vector<HpReal> row;
    row.reserve(n);
    for (long j = 0; j < n; ++j)
      row.push_back(dot(basis.column(i), basis.column(j)));
    g.push_back(std::move(row));
  }

  HpReal det = HpReal::of(1L, prec);
  HpReal threshold = mul_2exp(HpReal::of(1L, prec), -static_cast<long>(prec / 2));
  for (long c = 0; c < n; ++c) {
    long pivot = c;
    for (long r = c + 1; r < n; ++r)
      if (abs(g[r][c]) > abs(g[pivot][c])) pivot = r;
    if (pivot != c) {
      std::swap(g[pivot], g[c]);
      det = -det;
    }
    if (abs(g[c][c]) <= threshold)
      throw SingularBasisError(
          "volume_gram: Gram determinant below rank threshold");
    det *= g[c][c];
    for (long r = c + 1; r < n; ++r) {
      HpReal f = g[r][c] / g[c][c];
      for (long j = c; j < n; ++j) g[r][j] -= f * g[c][j];
    }
  }
  return sqrt(abs(det));
}

HpReal volume_rank_one(const std::vector<HpReal>& x) {
  if (x.empty()) throw std::invalid_argument("volume_rank_one: empty x");
  HpReal acc = HpReal::of(1L, x[0].prec());
  for (const HpReal& xi : x) acc += square(xi);
  return sqrt(acc);
}

}  // namespace pnl
