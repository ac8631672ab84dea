#include "pnl/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pnl {

namespace {

// The float tree walk over-covers the exact ball by this relative slack
// (plus an absolute floor for radius -> 0 exact-hit searches); every
// over-covered leaf is culled by the exact filter, so inflation can only
// add work, never wrong answers.
constexpr double kRadiusInflation = 2e-6;
constexpr double kBudgetFloor = 1e-20;

struct Walk {
  const ReducedBasis& rb;
  const std::vector<HpReal>& target;  // zero vector in short mode
  const SearchBudget& budget;
  bool short_mode;
  ShortSign sign_mode;

  long n = 0;
  std::vector<std::vector<double>> mu;  // mu[i][j], j < i
  std::vector<double> bs;               // ||b*_j||^2
  std::vector<double> tau;              // GSO coordinates of the target
  double in_span_budget = 0;

  std::vector<BigInt> z_red;
  EnumerationResult out;
  bool stop = false;

  Walk(const ReducedBasis& rb_, const std::vector<HpReal>& target_,
       const SearchBudget& budget_, bool short_mode_, ShortSign sign_mode_)
      : rb(rb_), target(target_), budget(budget_), short_mode(short_mode_),
        sign_mode(sign_mode_) {
    if (budget.radius.is_nan() || budget.radius.sign() <= 0)
      throw std::invalid_argument("enumerate: radius must be positive");
    if (budget.norm != 1 && budget.norm != 2)
      throw std::invalid_argument("enumerate: norm must be 1 or 2");
    n = rb.basis.cols();
    long m = rb.basis.rows();
    if (static_cast<long>(target.size()) != m)
      throw std::invalid_argument("enumerate: target length mismatch");

    mu.assign(static_cast<size_t>(n), {});
    bs.resize(static_cast<size_t>(n));
    tau.resize(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) {
      bs[static_cast<size_t>(i)] =
          rb.gso.star_norms_sq[static_cast<size_t>(i)].to_double();
      mu[static_cast<size_t>(i)].resize(static_cast<size_t>(i));
      for (long j = 0; j < i; ++j)
        mu[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            rb.gso.mu[static_cast<size_t>(i)][static_cast<size_t>(j)].to_double();
    }

    // Target coordinates tau_j = <t, b*_j>/||b*_j||^2 and the out-of-span
    // component; only r^2 - ||t_perp||^2 is available to the tree walk.
    mpfr_prec_t prec = rb.basis.prec();
    std::vector<HpReal> perp = target;
    for (long j = 0; j < n; ++j) {
      HpReal num = HpReal::of(0L, prec);
      for (long r = 0; r < m; ++r)
        num += target[static_cast<size_t>(r)] *
               rb.gso.star[static_cast<size_t>(j)][static_cast<size_t>(r)];
      HpReal tj = num / rb.gso.star_norms_sq[static_cast<size_t>(j)];
      tau[static_cast<size_t>(j)] = tj.to_double();
      for (long r = 0; r < m; ++r)
        perp[static_cast<size_t>(r)] -=
            tj * rb.gso.star[static_cast<size_t>(j)][static_cast<size_t>(r)];
    }
    HpReal perp_sq = HpReal::of(0L, prec);
    for (const HpReal& e : perp) perp_sq += square(e);

    double r2_sq = square(budget.radius).to_double();
    in_span_budget = r2_sq * (1 + kRadiusInflation) -
                     perp_sq.to_double() * (1 - kRadiusInflation) +
                     kBudgetFloor;
    z_red.assign(static_cast<size_t>(n), BigInt(0));
  }

  void leaf(bool all_zero) {
    if (short_mode && all_zero) return;
    std::vector<long> z = to_original_coords(rb, z_red);
    if (short_mode) {
      if (sign_mode == ShortSign::adleman) {
        if (z.back() == 0) return;  // encodes no equation, and so does -z
        if (z.back() > 0)
          for (long& zi : z) zi = -zi;
      } else {
        long last_nonzero = 0;
        for (size_t i = z.size(); i-- > 0;)
          if (z[i] != 0) {
            last_nonzero = z[i];
            break;
          }
        if (last_nonzero > 0)
          for (long& zi : z) zi = -zi;
      }
    }
    ResidualNorms norms = residual_norms(rb.original, z, target);
    bool keep = budget.norm == 1
                    ? norms.one_norm <= budget.radius
                    : norms.two_norm_sq <= square(budget.radius);
    if (!keep) return;
    if (out.found.size() >= budget.max_results) {
      out.truncated = true;
      stop = true;
      return;
    }
    out.found.push_back(
        {std::move(z), std::move(norms.one_norm), std::move(norms.two_norm_sq)});
  }

  void dfs(long j, double used, bool all_zero_above) {
    if (j < 0) {
      leaf(all_zero_above);
      return;
    }
    size_t sj = static_cast<size_t>(j);
    double c = tau[sj];
    for (long i = j + 1; i < n; ++i)
      c -= static_cast<double>(z_red[static_cast<size_t>(i)].get_si()) *
           mu[static_cast<size_t>(i)][sj];
    double room = in_span_budget - used;
    if (room < 0) return;
    double spread = std::sqrt(room / bs[sj]);
    long lo = static_cast<long>(std::ceil(c - spread));
    long hi = static_cast<long>(std::floor(c + spread));
    if (short_mode && all_zero_above) lo = std::max(lo, 0L);
    for (long z = lo; z <= hi; ++z) {
      if (++out.nodes > budget.max_nodes) {
        out.truncated = true;
        stop = true;
        return;
      }
      double dz = static_cast<double>(z) - c;
      double inc = dz * dz * bs[sj];
      if (used + inc > in_span_budget) continue;
      z_red[sj] = z;
      dfs(j - 1, used + inc, all_zero_above && z == 0);
      if (stop) return;
    }
    z_red[sj] = 0;
  }

  EnumerationResult run() {
    if (in_span_budget >= 0 && n > 0) dfs(n - 1, 0.0, true);
    std::sort(out.found.begin(), out.found.end(),
              [](const FoundVector& a, const FoundVector& b) {
                if (a.one_norm < b.one_norm) return true;
                if (a.one_norm > b.one_norm) return false;
                return a.z < b.z;
              });
    return std::move(out);
  }
};

void check_box(const std::vector<long>& bounds) {
  double points = 1;
  for (long b : bounds) {
    if (b < 0) throw std::invalid_argument("box bounds must be >= 0");
    points *= 2.0 * static_cast<double>(b) + 1.0;
    if (points > 1e8)
      throw std::invalid_argument("box too large (guard: 10^8 points)");
  }
}

}  // namespace

ResidualNorms residual_norms(const BasisMatrix& basis,
                             const std::vector<long>& z,
                             const std::vector<HpReal>& target) {
  if (static_cast<long>(z.size()) != basis.cols())
    throw std::invalid_argument("residual_norms: z length mismatch");
  if (static_cast<long>(target.size()) != basis.rows())
    throw std::invalid_argument("residual_norms: target length mismatch");
  mpfr_prec_t prec = basis.prec();
  ResidualNorms out{HpReal::of(0L, prec), HpReal::of(0L, prec)};
  for (long r = 0; r < basis.rows(); ++r) {
    HpReal e = -target[static_cast<size_t>(r)];
    for (long c = 0; c < basis.cols(); ++c) {
      long zc = z[static_cast<size_t>(c)];
      if (zc != 0) e += HpReal::of(zc, prec) * basis.at(r, c);
    }
    out.one_norm += abs(e);
    out.two_norm_sq += square(e);
  }
  return out;
}

EnumerationResult enumerate_close(const ReducedBasis& rb,
                                  const std::vector<HpReal>& target,
                                  const SearchBudget& budget) {
  Walk walk(rb, target, budget, /*short_mode=*/false, ShortSign::canonical);
  return walk.run();
}

EnumerationResult enumerate_short(const ReducedBasis& rb,
                                  const SearchBudget& budget,
                                  ShortSign sign_mode) {
  std::vector<HpReal> zero(static_cast<size_t>(rb.basis.rows()),
                           HpReal::of(0L, rb.basis.prec()));
  Walk walk(rb, zero, budget, /*short_mode=*/true, sign_mode);
  return walk.run();
}

void for_each_in_box(
    const std::vector<long>& bounds,
    const std::function<void(const std::vector<long>&)>& visit) {
  check_box(bounds);
  size_t n = bounds.size();
  if (n == 0) return;
  std::vector<long> z(n);
  for (size_t i = 0; i < n; ++i) z[i] = -bounds[i];
  for (;;) {
    visit(z);
    size_t i = n;
    while (i-- > 0) {
      if (z[i] < bounds[i]) {
        ++z[i];
        break;
      }
      z[i] = -bounds[i];
      if (i == 0) return;
    }
    if (i == static_cast<size_t>(-1)) return;
  }
}

std::vector<FoundVector> brute_force_box(const BasisMatrix& basis,
                                         const std::vector<HpReal>& target,
                                         const std::vector<long>& bounds) {
  if (static_cast<long>(bounds.size()) != basis.cols())
    throw std::invalid_argument("brute_force_box: bounds length mismatch");
  std::vector<FoundVector> out;
  for_each_in_box(bounds, [&](const std::vector<long>& z) {
    ResidualNorms norms = residual_norms(basis, z, target);
    out.push_back({z, std::move(norms.one_norm), std::move(norms.two_norm_sq)});
  });
  return out;
}

}  // namespace pnl
