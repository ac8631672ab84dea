#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pnl {

// Exact integers and rationals. GMP keeps both in canonical form (no
// leading limbs, normalized sign, reduced fractions), which is exactly the
// invariant the rest of the toolkit relies on.
using BigInt = mpz_class;
using Rational = mpq_class;

/* ------------------------------------------------------------------ */
/* HpReal: high-precision real backed by MPFR                          */
/* ------------------------------------------------------------------ */

// Immutable-by-convention real number carrying its own working precision.
// Every constructor and arithmetic operation is correctly rounded
// (MPFR round-to-nearest), so the relative error of a single step is at
// most 2^(1-prec), and results are bit-identical across platforms and
// runs. Binary operations round into max(prec(a), prec(b)).
class HpReal {
public:
  HpReal() { mpfr_init2(v_, 53); }
  explicit HpReal(mpfr_prec_t prec) { mpfr_init2(v_, prec); }

  HpReal(const HpReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  HpReal(HpReal&& o) noexcept {
    mpfr_init2(v_, 53);
    mpfr_swap(v_, o.v_);
  }
  HpReal& operator=(const HpReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  HpReal& operator=(HpReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~HpReal() { mpfr_clear(v_); }

  static HpReal of(long x, mpfr_prec_t prec) {
    HpReal r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
  }
  static HpReal of(const BigInt& x, mpfr_prec_t prec) {
    HpReal r(prec);
    mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
    return r;
  }
  static HpReal of(double x, mpfr_prec_t prec) {
    HpReal r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }
  static HpReal parse(const std::string& s, mpfr_prec_t prec);

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Nearest integer, ties to even. Exact in BigInt.
  BigInt round_to_int() const;
  std::string str(size_t digits = 0) const;

  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  friend HpReal operator+(const HpReal& a, const HpReal& b) {
    HpReal r(join(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend HpReal operator-(const HpReal& a, const HpReal& b) {
    HpReal r(join(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend HpReal operator*(const HpReal& a, const HpReal& b) {
    HpReal r(join(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend HpReal operator/(const HpReal& a, const HpReal& b) {
    HpReal r(join(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend HpReal operator-(const HpReal& a) {
    HpReal r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  HpReal& operator+=(const HpReal& o) { return *this = *this + o; }
  HpReal& operator-=(const HpReal& o) { return *this = *this - o; }
  HpReal& operator*=(const HpReal& o) { return *this = *this * o; }
  HpReal& operator/=(const HpReal& o) { return *this = *this / o; }

  friend bool operator<(const HpReal& a, const HpReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const HpReal& a, const HpReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const HpReal& a, const HpReal& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const HpReal& a, const HpReal& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const HpReal& a, const HpReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const HpReal& a, const HpReal& b) { return !(a == b); }

private:
  static mpfr_prec_t join(const HpReal& a, const HpReal& b) {
    return std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_));
  }
  mpfr_t v_;
};

HpReal sqrt(const HpReal& x);
HpReal exp(const HpReal& x);
HpReal log(const HpReal& x);
HpReal abs(const HpReal& x);
HpReal square(const HpReal& x);
HpReal pow(const HpReal& base, const HpReal& e);
// x^(1/n) for integer n >= 1.
HpReal root_n(const HpReal& x, unsigned long n);
// x * 2^k, exact.
HpReal mul_2exp(const HpReal& x, long k);

// Re-represent x at another precision: exact when widening, correctly
// rounded when narrowing.
HpReal to_prec(const HpReal& x, mpfr_prec_t prec);
// Exact three-way comparison of a real against an integer (no rounding).
int cmp(const HpReal& a, const BigInt& b);

/* ------------------------------------------------------------------ */
/* Factor base                                                         */
/* ------------------------------------------------------------------ */

// Extended prime list {p_0 = -1, p_1 = 2, ..., p_d}. The leading -1 is the
// sign "prime": exponent 0 or 1, used when factoring negative residues.
class FactorBase {
public:
  explicit FactorBase(std::vector<long> primes);

  // Number of true primes (d); the list has d+1 entries counting p_0.
  long dim() const { return static_cast<long>(primes_.size()) - 1; }
  // p_i for 0 <= i <= dim(); prime(0) == -1.
  long prime(long i) const { return primes_.at(static_cast<size_t>(i)); }
  long largest() const { return primes_.back(); }
  const std::vector<long>& entries() const { return primes_; }

private:
  std::vector<long> primes_;
};

// p_0 = -1 followed by the first d primes in increasing order.
FactorBase primes_first(long d);

/* ------------------------------------------------------------------ */
/* Number-theoretic helpers                                            */
/* ------------------------------------------------------------------ */

// Natural log of a positive integer at the given precision.
// Requires x >= 1 (ln 1 == 0 exactly); throws std::domain_error otherwise.
HpReal ln_hp(const BigInt& x, mpfr_prec_t prec);

// Nonnegative gcd; gcd(0, 0) == 0.
BigInt gcd(const BigInt& a, const BigInt& b);

// base^e mod m in [0, m). Requires e >= 0 and m >= 2.
BigInt mod_pow(const BigInt& base, const BigInt& e, const BigInt& m);

// Miller-Rabin with the fixed witness schedule {2, 3, 5, ..., 41}.
// Deterministic, and provably correct for n < 3.3 * 10^24.
bool is_prime(const BigInt& n);

// Smallest exponent e >= 2 with n == m^e, if any.
std::optional<std::pair<BigInt, unsigned long>> perfect_power(const BigInt& n);

// Working precision used throughout for a given modulus:
// 64 + 2*bitlength(n) bits, so float rounding stays far below the integer
// gaps that are always re-checked exactly.
mpfr_prec_t default_precision(const BigInt& n);

}  // namespace pnl
