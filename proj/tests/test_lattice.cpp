#include <doctest.h>

#include <random>
#include <vector>

#include "pnl/lattice.hpp"
#include "pnl/numerics.hpp"

using namespace pnl;

namespace {

// Exact Gram determinant of an integer-entry basis, computed in rationals
// with plain Gaussian elimination. Oracle for volume_gram.
Rational gram_det_exact(const std::vector<std::vector<long>>& cols) {
  size_t d = cols.size();
  std::vector<std::vector<Rational>> g(d, std::vector<Rational>(d));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      Rational s(0);
      for (size_t r = 0; r < cols[i].size(); ++r)
        s += Rational(cols[i][r]) * Rational(cols[j][r]);
      g[i][j] = s;
    }
  Rational det(1);
  for (size_t c = 0; c < d; ++c) {
    size_t pivot = c;
    while (pivot < d && g[pivot][c] == 0) ++pivot;
    if (pivot == d) return Rational(0);
    if (pivot != c) {
      std::swap(g[pivot], g[c]);
      det = -det;
    }
    det *= g[c][c];
    for (size_t r = c + 1; r < d; ++r) {
      Rational f = g[r][c] / g[c][c];
      for (size_t k = c; k < d; ++k) g[r][k] -= f * g[c][k];
    }
  }
  return det;
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

HpReal sqrt_rational(const Rational& q, mpfr_prec_t prec) {
  return sqrt(HpReal::of(BigInt(q.get_num()), prec) /
              HpReal::of(BigInt(q.get_den()), prec));
}

}  // namespace

TEST_CASE("volume_gram matches exact rational determinants") {
  mpfr_prec_t prec = 128;
  HpReal tol = mul_2exp(HpReal::of(1L, 64), -60);

  SUBCASE("hand-picked integer bases") {
    std::vector<std::vector<std::vector<long>>> cases = {
        {{1, 0}, {0, 1}},
        {{2, 0}, {0, 3}},
        {{1, 1}, {0, 1}},
        {{3, 1, 0}, {1, 3, 1}, {0, 1, 3}},
        {{1, 2, 3, 4}, {0, 1, 0, 1}, {5, 0, 0, 1}, {1, 1, 1, 0}},
        // More rows than columns.
        {{1, 2, 3}, {4, 5, 6}},
    };
    for (const auto& cols : cases) {
      Rational det = gram_det_exact(cols);
      HpReal want = sqrt_rational(det, prec);
      HpReal got = volume_gram(basis_from_longs(cols, prec));
      CHECK(abs(got - want) <= tol * (HpReal::of(1L, 64) + abs(want)));
    }
  }

  SUBCASE("random integer bases") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long> entry(-9, 9);
    for (int trial = 0; trial < 40; ++trial) {
      size_t d = 1 + static_cast<size_t>(rng() % 5);
      size_t rows = d + static_cast<size_t>(rng() % 3);
      std::vector<std::vector<long>> cols(d, std::vector<long>(rows));
      for (auto& c : cols)
        for (auto& e : c) e = entry(rng);
      Rational det = gram_det_exact(cols);
      if (det == 0) {
        CHECK_THROWS_AS(volume_gram(basis_from_longs(cols, prec)),
                        SingularBasisError);
      } else {
        HpReal want = sqrt_rational(det, prec);
        HpReal got = volume_gram(basis_from_longs(cols, prec));
        CHECK(abs(got - want) <= tol * (HpReal::of(1L, 64) + abs(want)));
      }
    }
  }
}

TEST_CASE("volume_gram rejects rank-deficient bases") {
  // Second column is twice the first.
  CHECK_THROWS_AS(volume_gram(basis_from_longs({{1, 2}, {2, 4}}, 96)),
                  SingularBasisError);
  CHECK_THROWS_AS(
      volume_gram(basis_from_longs({{1, 0, 1}, {0, 1, 1}, {1, 1, 2}}, 96)),
      SingularBasisError);
}

TEST_CASE("gso_iterative on a known example") {
  // Columns (3,0),(1,2): b*_1=(3,0), mu=1/3, b*_2=(0,2).
  mpfr_prec_t prec = 96;
  BasisMatrix b = basis_from_longs({{3, 0}, {1, 2}}, prec);
  GsoResult g = gso_iterative(b);
  HpReal tol = mul_2exp(HpReal::of(1L, 64), -60);
  CHECK(abs(g.star[0][0] - HpReal::of(3L, prec)) <= tol);
  CHECK(abs(g.star[0][1]) <= tol);
  CHECK(abs(g.star[1][0]) <= tol);
  CHECK(abs(g.star[1][1] - HpReal::of(2L, prec)) <= tol);
  REQUIRE(g.mu[1].size() == 1);
  CHECK(abs(g.mu[1][0] - HpReal::of(1L, prec) / HpReal::of(3L, prec)) <= tol);
  CHECK(abs(g.star_norms_sq[0] - HpReal::of(9L, prec)) <= tol);
  CHECK(abs(g.star_norms_sq[1] - HpReal::of(4L, prec)) <= tol);
}

TEST_CASE("gso_iterative rejects dependent columns") {
  CHECK_THROWS_AS(gso_iterative(basis_from_longs({{1, 2}, {2, 4}}, 96)),
                  SingularBasisError);
}

TEST_CASE("product of star norms equals the volume") {
  mpfr_prec_t prec = 128;
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<long> entry(-6, 6);
  int done = 0;
  while (done < 25) {
    size_t d = 2 + static_cast<size_t>(rng() % 4);
    size_t rows = d + static_cast<size_t>(rng() % 2);
    std::vector<std::vector<long>> cols(d, std::vector<long>(rows));
    for (auto& c : cols)
      for (auto& e : c) e = entry(rng);
    if (gram_det_exact(cols) == 0) continue;
    ++done;
    BasisMatrix b = basis_from_longs(cols, prec);
    GsoResult g = gso_iterative(b);
    HpReal prod = HpReal::of(1L, prec);
    for (const HpReal& n2 : g.star_norms_sq) prod = prod * sqrt(n2);
    HpReal vol = volume_gram(b);
    CHECK(abs(prod - vol) <=
          mul_2exp(HpReal::of(1L, 64), -60) * (HpReal::of(1L, 64) + vol));
  }
}

TEST_CASE("XySpec assembles the bordered-diagonal shape") {
  mpfr_prec_t prec = 96;
  XySpec spec;
  spec.x = {HpReal::of(2L, prec), HpReal::of(3L, prec)};
  spec.y = {HpReal::of(5L, prec), HpReal::of(7L, prec), HpReal::of(11L, prec)};
  BasisMatrix b = spec.assemble();
  REQUIRE(b.rows() == 3);
  REQUIRE(b.cols() == 3);
  CHECK(b.at(0, 0) == HpReal::of(2L, prec));
  CHECK(b.at(1, 1) == HpReal::of(3L, prec));
  CHECK(b.at(1, 0).is_zero());
  CHECK(b.at(0, 1).is_zero());
  CHECK(b.at(0, 2).is_zero());
  CHECK(b.at(1, 2).is_zero());
  CHECK(b.at(2, 0) == HpReal::of(5L, prec));
  CHECK(b.at(2, 1) == HpReal::of(7L, prec));
  CHECK(b.at(2, 2) == HpReal::of(11L, prec));
}

TEST_CASE("closed-form GSO agrees with the iterative one") {
  mpfr_prec_t prec = 160;
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<long> xv(1, 12), yv(-15, 15);
  HpReal rel_tol = mul_2exp(HpReal::of(1L, 64), -80);

  for (int trial = 0; trial < 30; ++trial) {
    size_t d = 1 + static_cast<size_t>(rng() % 6);
    XySpec spec;
    spec.x.reserve(d);
    spec.y.reserve(d + 1);
    for (size_t i = 0; i < d; ++i) spec.x.push_back(HpReal::of(xv(rng), prec));
    for (size_t i = 0; i <= d; ++i) {
      long y = yv(rng);
      // y_d = 0 would zero the last column and make the basis singular.
      if (i == d && y == 0) y = 1;
      spec.y.push_back(HpReal::of(y, prec));
    }

    GsoResult closed = gso_closed_form(spec);
    GsoResult iter = gso_iterative(spec.assemble());

    REQUIRE(closed.star.size() == iter.star.size());
    for (size_t c = 0; c < closed.star.size(); ++c) {
      REQUIRE(closed.star[c].size() == iter.star[c].size());
      for (size_t r = 0; r < closed.star[c].size(); ++r) {
        HpReal scale = HpReal::of(1L, 64) + abs(iter.star[c][r]);
        CHECK(abs(closed.star[c][r] - iter.star[c][r]) <= rel_tol * scale);
      }
    }
    for (size_t k = 0; k < closed.star_norms_sq.size(); ++k) {
      HpReal scale = HpReal::of(1L, 64) + abs(iter.star_norms_sq[k]);
      CHECK(abs(closed.star_norms_sq[k] - iter.star_norms_sq[k]) <=
            rel_tol * scale);
    }
    for (size_t k = 0; k < closed.mu.size(); ++k) {
      REQUIRE(closed.mu[k].size() == iter.mu[k].size());
      for (size_t j = 0; j < closed.mu[k].size(); ++j) {
        HpReal scale = HpReal::of(1L, 64) + abs(iter.mu[k][j]);
        CHECK(abs(closed.mu[k][j] - iter.mu[k][j]) <= rel_tol * scale);
      }
    }
  }
}

TEST_CASE("closed-form GSO requires nonzero diagonal entries") {
  XySpec spec;
  spec.x = {HpReal::of(0L, 96)};
  spec.y = {HpReal::of(1L, 96), HpReal::of(1L, 96)};
  CHECK_THROWS_AS(gso_closed_form(spec), SingularBasisError);
}

TEST_CASE("volume scales by the product of column scalings") {
  mpfr_prec_t prec = 128;
  BasisMatrix b = basis_from_longs({{3, 1, 0}, {1, 3, 1}, {0, 1, 3}}, prec);
  HpReal v0 = volume_gram(b);
  // Double the first column: the volume doubles.
  BasisMatrix b2 = b;
  std::vector<HpReal> col = b2.column(0);
  for (HpReal& e : col) e = e + e;
  b2.set_column(0, col);
  HpReal v2 = volume_gram(b2);
  CHECK(abs(v2 - (v0 + v0)) <=
        mul_2exp(HpReal::of(1L, 64), -60) * (HpReal::of(1L, 64) + v2));
}

TEST_CASE("volume_rank_one matches the Gram determinant") {
  mpfr_prec_t prec = 128;
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> entry(-8, 8);
  for (int trial = 0; trial < 20; ++trial) {
    size_t d = 1 + static_cast<size_t>(rng() % 5);
    std::vector<HpReal> x;
    std::vector<std::vector<long>> cols(d, std::vector<long>(d + 1, 0));
    // Identity on top, arbitrary integer bottom row: the rank-one volume
    // formula sqrt(1 + sum x_i^2) applies to the bottom-row vector.
    std::vector<long> bottom(d);
    for (size_t i = 0; i < d; ++i) {
      bottom[i] = entry(rng);
      cols[i][i] = 1;
      cols[i][d] = bottom[i];
      x.push_back(HpReal::of(bottom[i], prec));
    }
    HpReal got = volume_rank_one(x);
    Rational det = gram_det_exact(cols);
    HpReal want = sqrt_rational(det, prec);
    CHECK(abs(got - want) <=
          mul_2exp(HpReal::of(1L, 64), -60) * (HpReal::of(1L, 64) + want));
  }
}

TEST_CASE("BasisMatrix validates its shape") {
  CHECK_THROWS_AS(BasisMatrix(0, 1, 64), std::invalid_argument);
  CHECK_THROWS_AS(BasisMatrix(2, 0, 64), std::invalid_argument);
  CHECK_THROWS_AS(BasisMatrix(2, 3, 64), std::invalid_argument);
}
