#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "pnl/enumerate.hpp"
#include "pnl/lattice.hpp"
#include "pnl/numerics.hpp"
#include "pnl/prime_lattice.hpp"
#include "pnl/reduction.hpp"

using namespace pnl;

namespace {

using ZSet = std::set<std::vector<long>>;

ZSet z_set(const std::vector<FoundVector>& found) {
  ZSet s;
  for (const FoundVector& f : found) s.insert(f.z);
  return s;
}

// Canonical +-pair representative used by enumerate_short oracles.
std::vector<long> canonical_rep(std::vector<long> z) {
  for (auto it = z.rbegin(); it != z.rend(); ++it) {
    if (*it == 0) continue;
    if (*it > 0)
      for (long& c : z) c = -c;
    break;
  }
  return z;
}

// Oracle z-set for enumerate_close: exact box sweep filtered by the exact
// norms — the same residual_norms values the searcher confirms with.
ZSet box_close_set(const BasisMatrix& basis, const std::vector<HpReal>& target,
                   const std::vector<long>& bounds, const SearchBudget& budget) {
  ZSet s;
  HpReal r2 = square(budget.radius);
  for (const FoundVector& f : brute_force_box(basis, target, bounds)) {
    bool in = budget.norm == 1 ? (f.one_norm <= budget.radius)
                               : (f.two_norm_sq <= r2);
    if (in) s.insert(f.z);
  }
  return s;
}

ZSet box_short_set(const BasisMatrix& basis, const std::vector<long>& bounds,
                   const SearchBudget& budget, ShortSign sign_mode) {
  std::vector<HpReal> zero(static_cast<size_t>(basis.rows()),
                           HpReal::of(0L, basis.prec()));
  ZSet s;
  HpReal r2 = square(budget.radius);
  for (const FoundVector& f : brute_force_box(basis, zero, bounds)) {
    bool all_zero = std::all_of(f.z.begin(), f.z.end(),
                                [](long c) { return c == 0; });
    if (all_zero) continue;
    if (sign_mode == ShortSign::adleman && f.z.back() == 0) continue;
    bool in = budget.norm == 1 ? (f.one_norm <= budget.radius)
                               : (f.two_norm_sq <= r2);
    if (!in) continue;
    std::vector<long> rep = f.z;
    if (sign_mode == ShortSign::adleman) {
      if (rep.back() > 0)
        for (long& c : rep) c = -c;
    } else {
      rep = canonical_rep(rep);
    }
    s.insert(rep);
  }
  return s;
}

BasisMatrix basis_from_longs(const std::vector<std::vector<long>>& cols,
                             mpfr_prec_t prec) {
  BasisMatrix b(static_cast<long>(cols[0].size()),
                static_cast<long>(cols.size()), prec);
  for (size_t c = 0; c < cols.size(); ++c)
    for (size_t r = 0; r < cols[c].size(); ++r)
      b.at(static_cast<long>(r), static_cast<long>(c)) =
          HpReal::of(cols[c][r], prec);
  return b;
}

// Covering box for a close search on a prime-lattice basis: each residual
// coordinate i <= d is z_i * diag_i, so |z_i| <= radius / diag_i in either
// norm. The +1 absorbs rounding; over-covering is harmless.
std::vector<long> close_cover(const PnlConfig& cfg, const HpReal& radius) {
  std::vector<long> b;
  for (size_t i = 0; i < static_cast<size_t>(cfg.d); ++i) {
    HpReal diag = cfg.p == 1 ? cfg.ln_p[i] : root_n(cfg.ln_p[i], cfg.p);
    b.push_back(static_cast<long>((radius / diag).to_double()) + 1);
  }
  return b;
}

// Covering box for a short search on the Adleman basis. The last
// coordinate satisfies |z_{d+1}| ln N <= sum_i b_i ln p_i + radius / C.
std::vector<long> short_cover(const PnlConfig& cfg, const HpReal& radius) {
  std::vector<long> b = close_cover(cfg, radius);
  HpReal spread = radius / cfg.C;
  for (size_t i = 0; i < b.size(); ++i)
    spread = spread + HpReal::of(b[i], cfg.prec) * cfg.ln_p[i];
  b.push_back(static_cast<long>((spread / cfg.ln_N).to_double()) + 1);
  return b;
}

}  // namespace

TEST_CASE("residual_norms computes both norms exactly") {
  BasisMatrix b = basis_from_longs({{3, 0}, {0, 4}}, 96);
  std::vector<HpReal> t = {HpReal::of(1L, 96), HpReal::of(0L, 96)};
  ResidualNorms n = residual_norms(b, {1, 1}, t);
  // Residual (3-1, 4) = (2, 4): 1-norm 6, squared 2-norm 20.
  CHECK(n.one_norm == HpReal::of(6L, 96));
  CHECK(n.two_norm_sq == HpReal::of(20L, 96));
}

TEST_CASE("enumerate_close returns empty below the minimum distance") {
  PnlConfig cfg = PnlConfig::make(BigInt(143), 4, 1, HpReal::of(8L, 128), 1,
                                  128);
  ReducedBasis rb = lll_reduce(build_schnorr_basis(cfg));
  PrimeGso pg = gso_prime_basis(cfg);
  SearchBudget budget;
  budget.norm = 2;
  // Out-of-span component alone exceeds this radius.
  budget.radius = sqrt(pg.t_star_norm_sq) * HpReal::of(0.9, 128);
  EnumerationResult res = enumerate_close(rb, build_target(cfg), budget);
  CHECK(res.found.empty());
  CHECK(!res.truncated);
}

TEST_CASE("enumerate_close pinpoints an exact lattice point") {
  BasisMatrix b = basis_from_longs({{5, 0, 1}, {2, 3, 0}, {0, 1, 7}}, 128);
  ReducedBasis rb = lll_reduce(b);
  std::vector<long> z0 = {2, -1, 3};
  std::vector<HpReal> t(3, HpReal::of(0L, 128));
  for (size_t c = 0; c < 3; ++c)
    for (size_t r = 0; r < 3; ++r)
      t[r] = t[r] + HpReal::of(z0[c], 128) *
                        b.at(static_cast<long>(r), static_cast<long>(c));
  SearchBudget budget;
  budget.norm = 2;
  budget.radius = HpReal::parse("1e-6", 128);
  EnumerationResult res = enumerate_close(rb, t, budget);
  REQUIRE(res.found.size() == 1);
  CHECK(res.found[0].z == z0);
  CHECK(res.found[0].two_norm_sq <= HpReal::parse("1e-12", 128));
}

TEST_CASE("enumerate_close equals the box oracle on prime lattices") {
  for (long p : {1L, 2L}) {
    for (int norm : {1, 2}) {
      PnlConfig cfg = PnlConfig::make(BigInt(143), 4, p,
                                      sqrt(HpReal::of(143L, 128)), 1, 128);
      ReducedBasis rb = lll_reduce(build_schnorr_basis(cfg));
      std::vector<HpReal> target = build_target(cfg);

      SearchBudget budget;
      budget.norm = norm;
      // Radius comfortably above the Babai point so the set is nonempty.
      BabaiResult bb = babai_nearest_plane(rb, target);
      if (norm == 2) {
        budget.radius = bb.dist * HpReal::of(1.4, 128);
      } else {
        ResidualNorms bn = residual_norms(build_schnorr_basis(cfg), bb.z, target);
        budget.radius = bn.one_norm * HpReal::of(1.05, 128);
      }

      EnumerationResult res = enumerate_close(rb, target, budget);
      REQUIRE(!res.truncated);

      ZSet got = z_set(res.found);
      CHECK(got.size() == res.found.size());  // no duplicates
      ZSet want = box_close_set(build_schnorr_basis(cfg), target,
                                close_cover(cfg, budget.radius), budget);
      CHECK(got == want);
      CHECK(!want.empty());
    }
  }
}

TEST_CASE("enumerate_short equals the box oracle (both sign modes)") {
  for (int norm : {1, 2}) {
    PnlConfig cfg = PnlConfig::make(BigInt(143), 4, 1,
                                    HpReal::of(6L, 128), 1, 128);
    BasisMatrix a = build_adleman_basis(cfg);
    ReducedBasis rb = lll_reduce(a);

    SearchBudget budget;
    budget.norm = norm;
    // First reduced column length, inflated: a nonempty, modest ball.
    HpReal n0 = HpReal::of(0L, 128);
    for (long r = 0; r < rb.basis.rows(); ++r)
      n0 = n0 + square(rb.basis.at(r, 0));
    budget.radius = sqrt(n0) * HpReal::of(2.5, 128);

    for (ShortSign mode : {ShortSign::canonical, ShortSign::adleman}) {
      EnumerationResult res = enumerate_short(rb, budget, mode);
      REQUIRE(!res.truncated);
      ZSet got = z_set(res.found);
      CHECK(got.size() == res.found.size());
      ZSet want = box_short_set(a, short_cover(cfg, budget.radius), budget, mode);
      CHECK(got == want);
      CHECK(!want.empty());

      for (const std::vector<long>& z : got) {
        // One representative per +-pair, correctly signed.
        std::vector<long> neg = z;
        for (long& c : neg) c = -c;
        CHECK(got.find(neg) == got.end());
        if (mode == ShortSign::adleman) {
          CHECK(z.back() < 0);
        } else {
          auto last_nz = std::find_if(z.rbegin(), z.rend(),
                                      [](long c) { return c != 0; });
          REQUIRE(last_nz != z.rend());
          CHECK(*last_nz < 0);
        }
      }
    }
  }
}

TEST_CASE("enumeration output is deterministic and sorted") {
  PnlConfig cfg = PnlConfig::make(BigInt(10403), 5, 1,
                                  sqrt(HpReal::of(10403L, 128)), 1, 128);
  ReducedBasis rb = lll_reduce(build_schnorr_basis(cfg));
  std::vector<HpReal> target = build_target(cfg);
  SearchBudget budget;
  budget.norm = 1;
  BabaiResult bb = babai_nearest_plane(rb, target);
  budget.radius =
      residual_norms(build_schnorr_basis(cfg), bb.z, target).one_norm *
      HpReal::of(1.3, 128);

  EnumerationResult a = enumerate_close(rb, target, budget);
  EnumerationResult b = enumerate_close(rb, target, budget);
  REQUIRE(a.found.size() == b.found.size());
  CHECK(a.nodes == b.nodes);
  for (size_t i = 0; i < a.found.size(); ++i) {
    CHECK(a.found[i].z == b.found[i].z);
    CHECK(a.found[i].one_norm == b.found[i].one_norm);
  }
  for (size_t i = 1; i < a.found.size(); ++i) {
    bool ordered = a.found[i - 1].one_norm < a.found[i].one_norm ||
                   (a.found[i - 1].one_norm == a.found[i].one_norm &&
                    a.found[i - 1].z < a.found[i].z);
    CHECK(ordered);
  }
}

TEST_CASE("budget caps set the truncation flag") {
  PnlConfig cfg = PnlConfig::make(BigInt(10403), 5, 1,
                                  HpReal::of(4L, 128), 1, 128);
  ReducedBasis rb = lll_reduce(build_adleman_basis(cfg));
  SearchBudget wide;
  wide.norm = 2;
  wide.radius = HpReal::of(20L, 128);
  EnumerationResult full = enumerate_short(rb, wide);
  REQUIRE(full.found.size() > 3);

  SearchBudget capped = wide;
  capped.max_results = 2;
  EnumerationResult cut = enumerate_short(rb, capped);
  CHECK(cut.truncated);
  CHECK(cut.found.size() <= 2);

  SearchBudget starved = wide;
  starved.max_nodes = 1;
  EnumerationResult none = enumerate_short(rb, starved);
  CHECK(none.truncated);
}

TEST_CASE("search budget rejects a bad norm index") {
  PnlConfig cfg = PnlConfig::make(BigInt(143), 3, 1, HpReal::of(4L, 128), 1,
                                  128);
  ReducedBasis rb = lll_reduce(build_adleman_basis(cfg));
  SearchBudget budget;
  budget.norm = 3;
  budget.radius = HpReal::of(1L, 128);
  CHECK_THROWS_AS(enumerate_short(rb, budget), std::invalid_argument);
}

TEST_CASE("for_each_in_box visits the whole box once, in order") {
  std::vector<std::vector<long>> seen;
  for_each_in_box({1, 2}, [&](const std::vector<long>& z) {
    seen.push_back(z);
  });
  REQUIRE(seen.size() == 15);  // 3 * 5
  CHECK(seen.front() == std::vector<long>{-1, -2});
  CHECK(seen.back() == std::vector<long>{1, 2});
  CHECK(std::is_sorted(seen.begin(), seen.end()));
  ZSet uniq(seen.begin(), seen.end());
  CHECK(uniq.size() == seen.size());

  size_t count = 0;
  for_each_in_box({3, 3, 3, 3, 3},
                  [&](const std::vector<long>&) { ++count; });
  CHECK(count == 16807);  // 7^5
}

TEST_CASE("for_each_in_box rejects oversized boxes") {
  CHECK_THROWS_AS(
      for_each_in_box({10000, 10000}, [](const std::vector<long>&) {}),
      std::invalid_argument);
}

TEST_CASE("brute_force_box reports exact norms") {
  BasisMatrix b = basis_from_longs({{2, 0}, {0, 3}}, 96);
  std::vector<HpReal> t = {HpReal::of(0L, 96), HpReal::of(0L, 96)};
  std::vector<FoundVector> all = brute_force_box(b, t, {1, 1});
  REQUIRE(all.size() == 9);
  for (const FoundVector& f : all) {
    ResidualNorms n = residual_norms(b, f.z, t);
    CHECK(f.one_norm == n.one_norm);
    CHECK(f.two_norm_sq == n.two_norm_sq);
  }
}
