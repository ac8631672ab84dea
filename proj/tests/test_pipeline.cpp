#include <doctest.h>

#include <string>
#include <vector>

#include "pnl/numerics.hpp"
#include "pnl/pipeline.hpp"

using namespace pnl;

namespace {

FactorOptions small_opts(long d, long sigma = 2) {
  FactorOptions o;
  o.d = d;
  o.sigma = sigma;
  o.searcher.max_rounds = 30;
  return o;
}

}  // namespace

TEST_CASE("trial_divide finds the smallest base prime divisor") {
  FactorBase fb = primes_first(25);
  auto g = trial_divide(BigInt(91), fb);  // 7 * 13
  REQUIRE(g.has_value());
  CHECK(*g == 7);

  g = trial_divide(BigInt(97L * 89), fb);
  REQUIRE(g.has_value());
  CHECK(*g == 89);

  CHECK(!trial_divide(BigInt(10403), fb).has_value());  // 101 * 103
  CHECK(!trial_divide(BigInt(101), fb).has_value());

  // A base prime itself: p = N is not a proper divisor.
  CHECK(!trial_divide(BigInt(97), fb).has_value());
  // But its square is caught.
  g = trial_divide(BigInt(97L * 97), fb);
  REQUIRE(g.has_value());
  CHECK(*g == 97);
}

TEST_CASE("assemble_xy builds a checked congruence of squares") {
  PnlConfig cfg = PnlConfig::make(BigInt(35), 4, 1,
                                  sqrt(HpReal::of(35L, 128)), 1, 128);

  // Hand-verified relations over N = 35:
  //   36 - 35 =   1:  a = (0,2,2,0,0), b = (0,0,0,0,0)  (all even alone)
  //   32 - 35 =  -3:  a = (0,5,0,0,0), b = (1,0,1,0,0)
  //    8 - 35 = -27:  a = (0,3,0,0,0), b = (1,0,3,0,0)
  // The last two sum to even exponents everywhere (including the sign
  // slot): a+b totals (2, 8, 4, 0, 0).
  Relation r1;
  r1.u = BigInt(36);
  r1.k = BigInt(1);
  r1.v = BigInt(1);
  r1.gamma = 1;
  r1.a = {0, 2, 2, 0, 0};
  r1.b = {0, 0, 0, 0, 0};

  SUBCASE("single even relation") {
    auto [x, y] = assemble_xy({r1}, {0}, cfg);
    // x = 2^(2/2) * 3^(2/2) = 6, y = 2^2 * 3^2 = 36 mod 35 = 1.
    CHECK(x == 6);
    CHECK(y == 1);
    CHECK(x * x % 35 == y * y % 35);
  }

  SUBCASE("pair with negative residues") {
    Relation r2;
    r2.u = BigInt(32);
    r2.k = BigInt(1);
    r2.v = BigInt(-3);
    r2.gamma = 1;
    r2.a = {0, 5, 0, 0, 0};
    r2.b = {1, 0, 1, 0, 0};
    Relation r3;
    r3.u = BigInt(8);
    r3.k = BigInt(1);
    r3.v = BigInt(-27);
    r3.gamma = 1;
    r3.a = {0, 3, 0, 0, 0};
    r3.b = {1, 0, 3, 0, 0};

    auto [x, y] = assemble_xy({r1, r2, r3}, {1, 2}, cfg);
    CHECK(x * x % 35 == y * y % 35);
    // Sign slot sums to 2, so x = (-1)^1 * 2^((5+3)/2) * 3^((1+3)/2)
    // = -(16 * 9) = -144 = 31 mod 35; y = 2^(5+3) = 256 = 11 mod 35.
    CHECK(x == 35 - (BigInt(16) * 9 % 35));
    CHECK(y == BigInt(256) % 35);
  }

  SUBCASE("odd exponent sum is rejected") {
    Relation r2;
    r2.u = BigInt(32);
    r2.k = BigInt(1);
    r2.v = BigInt(-3);
    r2.gamma = 1;
    r2.a = {0, 5, 0, 0, 0};
    r2.b = {1, 0, 1, 0, 0};
    CHECK_THROWS_AS(assemble_xy({r1, r2}, {0, 1}, cfg),
                    std::invalid_argument);
  }
}

TEST_CASE("factor screens trivial inputs") {
  FactorReport rep = factor(BigInt(1));
  CHECK(!rep.factor.has_value());
  CHECK(rep.reason == FailureReason::invalid_input);
  CHECK(std::string(to_string(rep.reason)) == "invalid_input");

  rep = factor(BigInt(0));
  CHECK(!rep.factor.has_value());
  CHECK(rep.reason == FailureReason::invalid_input);

  rep = factor(BigInt(-15));
  CHECK(!rep.factor.has_value());
  CHECK(rep.reason == FailureReason::invalid_input);

  rep = factor(BigInt(101));
  CHECK(!rep.factor.has_value());
  CHECK(rep.reason == FailureReason::prime_input);

  rep = factor(BigInt("1000000000000000003"));
  CHECK(!rep.factor.has_value());
  CHECK(rep.reason == FailureReason::prime_input);
}

TEST_CASE("factor catches small divisors by trial division") {
  FactorReport rep = factor(BigInt(91), small_opts(25));
  REQUIRE(rep.factor.has_value());
  CHECK(*rep.factor == 7);
  CHECK(rep.source == FactorSource::trial_division);
  CHECK(std::string(to_string(rep.source)) == "trial_division");

  // 8051 = 83 * 97 and p_25 = 97: the pipeline front end takes it.
  rep = factor(BigInt(8051), small_opts(25));
  REQUIRE(rep.factor.has_value());
  CHECK(*rep.factor == 83);
  CHECK(rep.source == FactorSource::trial_division);
}

TEST_CASE("factor unwraps perfect powers") {
  FactorReport rep = factor(BigInt(10201), small_opts(10));  // 101^2
  REQUIRE(rep.factor.has_value());
  CHECK(*rep.factor == 101);
  CHECK(rep.source == FactorSource::perfect_power);

  rep = factor(BigInt(1) << 30, small_opts(10));
  REQUIRE(rep.factor.has_value());
  CHECK(rep.source == FactorSource::trial_division);  // 2 divides first
}

TEST_CASE("factor rejects a configuration with an empty premise ball") {
  FactorOptions o = small_opts(4);  // p_4 = 7: 4 ln 7 < ln 10403
  o.c_value = HpReal::of(1.0001, 128);  // threshold < 0: hopeless C
  FactorReport rep = factor(BigInt(10403), o);
  CHECK(!rep.factor.has_value());
  CHECK(rep.reason == FailureReason::config_invalid);

  o.c_value = HpReal::of(0.5, 128);  // C <= 1 is invalid outright
  rep = factor(BigInt(10403), o);
  CHECK(!rep.factor.has_value());
  CHECK(rep.reason == FailureReason::config_invalid);
}

TEST_CASE("factor cracks 10403 end to end") {
  FactorOptions o = small_opts(25);
  o.early_factor_policy = EarlyFactorPolicy::record_and_continue;
  FactorReport rep = factor(BigInt(10403), o);
  REQUIRE(rep.factor.has_value());
  CHECK((rep.factor == 101 || rep.factor == 103));
  CHECK(BigInt(10403) % *rep.factor == 0);
  REQUIRE(rep.source == FactorSource::dependency);
  CHECK(rep.relations.size() >= 27);  // d + 2
  CHECK(rep.dependencies_tried >= 1);
  REQUIRE(!rep.dependency.empty());

  // The reported congruence is genuine and nontrivial.
  BigInt N(10403);
  CHECK(rep.x * rep.x % N == rep.y * rep.y % N);
  CHECK(rep.x % N != rep.y % N);
  CHECK((rep.x + rep.y) % N != 0);

  // Every reported relation verifies.
  for (const Relation& r : rep.relations) {
    BigInt Ng = 1;
    for (long i = 0; i < r.gamma; ++i) Ng *= N;
    CHECK(r.u - r.k * Ng == r.v);
  }
}

TEST_CASE("factor is reproducible") {
  FactorOptions o = small_opts(25);
  o.early_factor_policy = EarlyFactorPolicy::record_and_continue;
  FactorReport a = factor(BigInt(10403), o);
  FactorReport b = factor(BigInt(10403), o);
  REQUIRE(a.factor.has_value());
  REQUIRE(b.factor.has_value());
  CHECK(*a.factor == *b.factor);
  CHECK(a.relations.size() == b.relations.size());
  CHECK(a.x == b.x);
  CHECK(a.y == b.y);
  CHECK(a.dependency == b.dependency);
  CHECK(a.stats.nodes == b.stats.nodes);
}

TEST_CASE("factor handles a semiprime with base-resident factors via gcd") {
  // N = 899 = 29 * 31 with d = 9 (p_9 = 23): no trial hit, but relation
  // search on such small N surfaces factors through residue gcds. Accept
  // either a dependency or an early gcd, and verify the factor.
  FactorOptions o = small_opts(9);
  o.early_factor_policy = EarlyFactorPolicy::stop;
  o.retry_rounds = 6;
  FactorReport rep = factor(BigInt(899), o);
  REQUIRE(rep.factor.has_value());
  CHECK((*rep.factor == 29 || *rep.factor == 31));
  CHECK(BigInt(899) % *rep.factor == 0);
}

TEST_CASE("failure reason names are stable") {
  CHECK(std::string(to_string(FailureReason::insufficient_relations)) ==
        "insufficient_relations");
  CHECK(std::string(to_string(FailureReason::all_dependencies_trivial)) ==
        "all_dependencies_trivial");
  CHECK(std::string(to_string(FailureReason::budget_exhausted)) ==
        "budget_exhausted");
  CHECK(std::string(to_string(FailureReason::config_invalid)) ==
        "config_invalid");
  CHECK(std::string(to_string(FailureReason::prime_input)) == "prime_input");
  CHECK(std::string(to_string(FactorSource::early_gcd)) == "early_gcd");
  CHECK(std::string(to_string(FactorSource::dependency)) == "dependency");
  CHECK(std::string(to_string(FactorSource::perfect_power)) ==
        "perfect_power");
}
