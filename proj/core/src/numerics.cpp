#include "pnl/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace pnl {

HpReal HpReal::parse(const std::string& s, mpfr_prec_t prec) {
  HpReal r(prec);
  // mpfr_set_str returns 0 only when the whole string parses.
  if (mpfr_set_str(r.raw(), s.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("HpReal::parse: not a decimal number: " + s);
  }
  return r;
}

BigInt HpReal::round_to_int() const {
  if (is_nan()) throw std::domain_error("HpReal::round_to_int: NaN");
  HpReal t(prec());
  mpfr_rint(t.v_, v_, MPFR_RNDN);  // ties to even
  BigInt z;
  mpfr_get_z(z.get_mpz_t(), t.v_, MPFR_RNDZ);
  return z;
}

std::string HpReal::str(size_t digits) const {
  if (digits == 0) {
    // Enough digits to round-trip the significand.
    digits = static_cast<size_t>(std::ceil(static_cast<double>(prec()) * 0.30103)) + 2;
  }
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
  std::string mant(s);
  mpfr_free_str(s);
  if (mant == "@NaN@" || mant == "@Inf@" || mant == "-@Inf@") return mant;
  std::string sign;
  if (!mant.empty() && mant[0] == '-') {
    sign = "-";
    mant = mant.substr(1);
  }
  if (mpfr_zero_p(v_)) return sign + "0";
  return sign + "0." + mant + "e" + std::to_string(e);
}

HpReal sqrt(const HpReal& x) {
  HpReal r(x.prec());
  mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

HpReal exp(const HpReal& x) {
  HpReal r(x.prec());
  mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

HpReal log(const HpReal& x) {
  HpReal r(x.prec());
  mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

HpReal abs(const HpReal& x) {
  HpReal r(x.prec());
  mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

HpReal square(const HpReal& x) {
  HpReal r(x.prec());
  mpfr_sqr(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

HpReal pow(const HpReal& base, const HpReal& e) {
  HpReal r(std::max(base.prec(), e.prec()));
  mpfr_pow(r.raw(), base.raw(), e.raw(), MPFR_RNDN);
  return r;
}

HpReal root_n(const HpReal& x, unsigned long n) {
  if (n == 0) throw std::domain_error("root_n: n must be >= 1");
  HpReal r(x.prec());
  mpfr_rootn_ui(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}

HpReal mul_2exp(const HpReal& x, long k) {
  HpReal r(x.prec());
  mpfr_mul_2si(r.raw(), x.raw(), k, MPFR_RNDN);
  return r;
}

HpReal to_prec(const HpReal& x, mpfr_prec_t prec) {
  HpReal r(prec);
  mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

int cmp(const HpReal& a, const BigInt& b) {
  return mpfr_cmp_z(a.raw(), b.get_mpz_t());
}

/* ------------------------------------------------------------------ */

FactorBase::FactorBase(std::vector<long> primes) : primes_(std::move(primes)) {
  if (primes_.size() < 2 || primes_[0] != -1) {
    throw std::invalid_argument("FactorBase: list must start with p_0 = -1 and hold at least one prime");
  }
  for (size_t i = 1; i < primes_.size(); ++i) {
    if (primes_[i] < 2 || (i > 1 && primes_[i] <= primes_[i - 1]) ||
        !is_prime(BigInt(primes_[i]))) {
      throw std::invalid_argument(
          "FactorBase: entries after p_0 must be ascending primes");
    }
  }
}

FactorBase primes_first(long d) {
  if (d < 1) throw std::invalid_argument("primes_first: d must be >= 1");
  // Upper bound on p_d (Rosser-type), generous for small d.
  double dd = static_cast<double>(d);
  size_t bound = 16;
  if (d >= 6) {
    bound = static_cast<size_t>(dd * (std::log(dd) + std::log(std::log(dd))) * 1.2) + 16;
  } else {
    bound = 16;
  }
  std::vector<long> out{-1};
  for (;;) {
    std::vector<bool> composite(bound + 1, false);
    out.resize(1);
    for (size_t n = 2; n <= bound && out.size() < static_cast<size_t>(d) + 1; ++n) {
      if (composite[n]) continue;
      out.push_back(static_cast<long>(n));
      for (size_t m = n * n; m <= bound; m += n) composite[m] = true;
    }
    if (out.size() == static_cast<size_t>(d) + 1) return FactorBase(std::move(out));
    bound *= 2;
  }
}

/* ------------------------------------------------------------------ */

HpReal ln_hp(const BigInt& x, mpfr_prec_t prec) {
  if (x <= 0) throw std::domain_error("ln_hp: argument must be positive");
  if (prec < 2) throw std::invalid_argument("ln_hp: precision too small");
  HpReal r(prec);
  // Round the integer into an intermediate with enough bits to be exact,
  // then take the correctly rounded log at the requested precision.
  mpfr_prec_t xbits = std::max<mpfr_prec_t>(prec, mpz_sizeinbase(x.get_mpz_t(), 2));
  HpReal t(xbits);
  mpfr_set_z(t.raw(), x.get_mpz_t(), MPFR_RNDN);
  mpfr_log(r.raw(), t.raw(), MPFR_RNDN);
  return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

BigInt mod_pow(const BigInt& base, const BigInt& e, const BigInt& m) {
  if (m < 2) throw std::domain_error("mod_pow: modulus must be >= 2");
  if (e < 0) throw std::domain_error("mod_pow: exponent must be >= 0");
  BigInt r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

namespace {

// One Miller-Rabin round. n odd, n - 1 = q * 2^s.
bool mr_witness_passes(const BigInt& n, const BigInt& q, unsigned long s, long a) {
  BigInt x = mod_pow(BigInt(a), q, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  static const long kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (long w : kWitnesses) {
    if (n == w) return true;
    if (n % w == 0) return false;
  }
  BigInt q = n - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q >>= 1;
    ++s;
  }
  for (long w : kWitnesses) {
    if (!mr_witness_passes(n, q, s, w)) return false;
  }
  return true;
}

std::optional<std::pair<BigInt, unsigned long>> perfect_power(const BigInt& n) {
  if (n < 4) return std::nullopt;
  unsigned long maxe = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (unsigned long e = 2; e <= maxe; ++e) {
    BigInt root;
    int exact = mpz_root(root.get_mpz_t(), n.get_mpz_t(), e);
    if (exact != 0) return std::make_pair(root, e);
    if (root < 2) break;
  }
  return std::nullopt;
}

mpfr_prec_t default_precision(const BigInt& n) {
  size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  return static_cast<mpfr_prec_t>(64 + 2 * bits);
}

}  // namespace pnl
