#include "pnl/prime_lattice.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace pnl {

namespace {

// Exponent sanity bound for decoding: anything beyond this would produce
// integers with hundreds of thousands of digits, which no capture radius
// ever admits.
constexpr long kMaxExponent = 1L << 20;

// Diagonal entry (ln p)^(1/p).
HpReal diag_entry(const HpReal& ln_prime, long p) {
  return p == 1 ? ln_prime : root_n(ln_prime, static_cast<unsigned long>(p));
}

// Image of z under the 1-norm matrix at an explicit precision; the public
// one_norm_image pins prec = cfg.prec, the capture check retries wider.
HpReal image_at(const std::vector<long>& z, const PnlConfig& cfg, Mode mode,
                mpfr_prec_t prec) {
  size_t want = static_cast<size_t>(cfg.d) + (mode == Mode::adleman ? 1 : 0);
  if (z.size() != want)
    throw std::invalid_argument("one_norm_image: z has length " +
                                std::to_string(z.size()) + ", expected " +
                                std::to_string(want));
  std::vector<HpReal> logs =
      prec == cfg.prec ? cfg.ln_p : cfg.ln_p_at(prec);
  HpReal ln_n = prec == cfg.prec ? cfg.ln_N : cfg.ln_N_at(prec);
  HpReal c = to_prec(cfg.C, std::max(prec, cfg.C.prec()));

  HpReal sum_abs = HpReal::of(0L, prec);
  HpReal sum_signed = HpReal::of(0L, prec);
  for (long i = 0; i < cfg.d; ++i) {
    HpReal term = HpReal::of(z[static_cast<size_t>(i)], prec) *
                  logs[static_cast<size_t>(i)];
    sum_abs += abs(term);
    sum_signed += term;
  }
  if (mode == Mode::adleman)
    sum_signed += HpReal::of(z[static_cast<size_t>(cfg.d)], prec) * ln_n;
  else
    sum_signed -= ln_n;
  return sum_abs + c * abs(sum_signed);
}

HpReal threshold_at(const PnlConfig& cfg, long gamma, mpfr_prec_t prec) {
  if (!(cfg.C > HpReal::of(1L, cfg.C.prec())))
    throw std::domain_error("capture_threshold: requires C > 1");
  if (gamma < 1) throw std::domain_error("capture_threshold: gamma >= 1");
  HpReal c = to_prec(cfg.C, std::max(prec, cfg.C.prec()));
  HpReal ln_pd = prec == cfg.prec ? cfg.ln_p.back() : cfg.ln_p_at(prec).back();
  HpReal ln_n = prec == cfg.prec ? cfg.ln_N : cfg.ln_N_at(prec);
  HpReal two = HpReal::of(2L, prec);
  return two * log(c) + two * HpReal::of(cfg.sigma, prec) * ln_pd -
         HpReal::of(gamma, prec) * ln_n;
}

}  // namespace

PnlConfig PnlConfig::make(const BigInt& N, long d, long p, const HpReal& C,
                          long sigma, mpfr_prec_t prec) {
  if (N < 2) throw std::invalid_argument("PnlConfig: N must be >= 2");
  if (d < 1) throw std::invalid_argument("PnlConfig: d must be >= 1");
  if (p < 1) throw std::invalid_argument("PnlConfig: norm index p must be >= 1");
  if (sigma < 1) throw std::invalid_argument("PnlConfig: sigma must be >= 1");
  if (C.is_nan() || C.sign() <= 0)
    throw std::invalid_argument("PnlConfig: C must be positive");
  if (prec == 0) prec = default_precision(N);
  if (prec < 53) throw std::invalid_argument("PnlConfig: prec must be >= 53");

  PnlConfig cfg{N, d, p, C, sigma, prec, primes_first(d), {}, {}};
  cfg.ln_p = cfg.ln_p_at(prec);
  cfg.ln_N = cfg.ln_N_at(prec);
  return cfg;
}

std::vector<HpReal> PnlConfig::ln_p_at(mpfr_prec_t prec2) const {
  std::vector<HpReal> logs;
  logs.reserve(static_cast<size_t>(d));
  for (long i = 1; i <= d; ++i) logs.push_back(ln_hp(BigInt(base.prime(i)), prec2));
  return logs;
}

HpReal PnlConfig::ln_N_at(mpfr_prec_t prec2) const {
  return ln_hp(N, prec2);
}

BasisMatrix build_schnorr_basis(const PnlConfig& cfg) {
  BasisMatrix b(cfg.d + 1, cfg.d, cfg.prec);
  for (long i = 0; i < cfg.d; ++i) {
    const HpReal& lnp = cfg.ln_p[static_cast<size_t>(i)];
    b.at(i, i) = diag_entry(lnp, cfg.p);
    b.at(cfg.d, i) = cfg.C * lnp;
  }
  return b;
}

BasisMatrix build_adleman_basis(const PnlConfig& cfg) {
  BasisMatrix b(cfg.d + 1, cfg.d + 1, cfg.prec);
  for (long i = 0; i < cfg.d; ++i) {
    const HpReal& lnp = cfg.ln_p[static_cast<size_t>(i)];
    b.at(i, i) = diag_entry(lnp, cfg.p);
    b.at(cfg.d, i) = cfg.C * lnp;
  }
  b.at(cfg.d, cfg.d) = cfg.C * cfg.ln_N;
  return b;
}

std::vector<HpReal> build_target(const PnlConfig& cfg) {
  std::vector<HpReal> t(static_cast<size_t>(cfg.d) + 1,
                        HpReal::of(0L, cfg.prec));
  t.back() = cfg.C * cfg.ln_N;
  return t;
}

Candidate decode_candidate(std::vector<long> z, const PnlConfig& cfg,
                           Mode mode) {
  size_t want = static_cast<size_t>(cfg.d) + (mode == Mode::adleman ? 1 : 0);
  if (z.size() != want)
    throw std::invalid_argument("decode_candidate: z has length " +
                                std::to_string(z.size()) + ", expected " +
                                std::to_string(want));
  for (long zi : z)
    if (zi <= -kMaxExponent || zi >= kMaxExponent)
      throw std::invalid_argument("decode_candidate: exponent out of range");

  if (mode == Mode::adleman) {
    long last = z[static_cast<size_t>(cfg.d)];
    if (last == 0)
      throw NoCandidateError(
          "decode_candidate: z_{d+1} = 0 encodes no equation");
    // Of z and -z, keep the one with negative last coordinate: that is the
    // representative for which u - k N^gamma is the small residue.
    if (last > 0)
      for (long& zi : z) zi = -zi;
  }

  Candidate cand;
  cand.u = 1;
  cand.k = 1;
  BigInt pw;
  for (long i = 0; i < cfg.d; ++i) {
    long zi = z[static_cast<size_t>(i)];
    if (zi == 0) continue;
    BigInt prime(cfg.base.prime(i + 1));
    mpz_pow_ui(pw.get_mpz_t(), prime.get_mpz_t(),
               static_cast<unsigned long>(zi > 0 ? zi : -zi));
    if (zi > 0)
      cand.u *= pw;
    else
      cand.k *= pw;
  }
  cand.gamma = mode == Mode::adleman ? -z[static_cast<size_t>(cfg.d)] : 1;
  cand.z = std::move(z);
  return cand;
}

HpReal one_norm_image(const std::vector<long>& z, const PnlConfig& cfg,
                      Mode mode) {
  return image_at(z, cfg, mode, cfg.prec);
}

HpReal capture_threshold(const PnlConfig& cfg, long gamma) {
  return threshold_at(cfg, gamma, cfg.prec);
}

HpReal svp_bound(const HpReal& epsilon, long gamma, const PnlConfig& cfg) {
  if (!(cfg.C > HpReal::of(1L, cfg.C.prec())))
    throw std::domain_error("svp_bound: requires C > 1");
  if (gamma < 1) throw std::domain_error("svp_bound: gamma >= 1");
  if (epsilon.sign() < 0) throw std::domain_error("svp_bound: epsilon >= 0");
  mpfr_prec_t prec = std::max(cfg.prec, epsilon.prec());
  // N^(gamma/2)/C * e^(eps/2) = exp((gamma ln N + eps)/2) / C.
  HpReal expo = (HpReal::of(gamma, prec) * to_prec(cfg.ln_N, prec) +
                 to_prec(epsilon, prec)) /
                HpReal::of(2L, prec);
  return exp(expo) / cfg.C;
}

HpReal cvp_bound(const HpReal& epsilon, const PnlConfig& cfg) {
  return svp_bound(epsilon, 1, cfg);
}

CaptureReport check_capture(const Candidate& cand, const PnlConfig& cfg,
                            Mode mode) {
  long gamma = mode == Mode::adleman ? cand.gamma : 1;

  CaptureReport rep;
  rep.image = one_norm_image(cand.z, cfg, mode);
  rep.threshold = capture_threshold(cfg, gamma);

  // Premise: image <= threshold. Differences inside the guard band are
  // re-resolved with fresh logarithms at doubled precision; past that the
  // comparison stands (the operands are correctly rounded, a flip would
  // need ~prec/2 cancelling bits).
  HpReal band = mul_2exp(HpReal::of(1L, cfg.prec),
                         -static_cast<long>(cfg.prec / 4));
  if (abs(rep.image - rep.threshold) <= band) {
    mpfr_prec_t prec2 = cfg.prec * 2;
    rep.premise_holds =
        image_at(cand.z, cfg, mode, prec2) <= threshold_at(cfg, gamma, prec2);
  } else {
    rep.premise_holds = rep.image <= rep.threshold;
  }

  // Conclusion in exact integers: |u - k N^gamma| <= p_d^sigma.
  BigInt n_pow;
  mpz_pow_ui(n_pow.get_mpz_t(), cfg.N.get_mpz_t(),
             static_cast<unsigned long>(gamma));
  rep.v = cand.u - cand.k * n_pow;
  BigInt limit;
  BigInt pd(cfg.base.largest());
  mpz_pow_ui(limit.get_mpz_t(), pd.get_mpz_t(),
             static_cast<unsigned long>(cfg.sigma));
  rep.conclusion_holds = abs(rep.v) <= limit;
  return rep;
}

HpReal vol_adleman_closed(const PnlConfig& cfg) {
  HpReal prod = HpReal::of(1L, cfg.prec);
  for (const HpReal& lnp : cfg.ln_p) prod *= diag_entry(lnp, cfg.p);
  return cfg.C * cfg.ln_N * prod;
}

HpReal vol_schnorr_closed(const PnlConfig& cfg) {
  HpReal prod = HpReal::of(1L, cfg.prec);
  HpReal s = HpReal::of(1L, cfg.prec);
  HpReal c_sq = square(cfg.C);
  for (const HpReal& lnp : cfg.ln_p) {
    HpReal diag = diag_entry(lnp, cfg.p);
    prod *= diag;
    // (ln p)^(2-2/p) written as (ln p)^2 / ((ln p)^(1/p))^2 to stay on
    // the same root_n code path as the basis entries.
    s += c_sq * (square(lnp) / square(diag));
  }
  return sqrt(s) * prod;
}

PrimeGso gso_prime_basis(const PnlConfig& cfg) {
  XySpec spec;
  spec.x.reserve(static_cast<size_t>(cfg.d));
  spec.y.reserve(static_cast<size_t>(cfg.d) + 1);
  for (const HpReal& lnp : cfg.ln_p) {
    spec.x.push_back(diag_entry(lnp, cfg.p));
    spec.y.push_back(cfg.C * lnp);
  }
  spec.y.push_back(cfg.C * cfg.ln_N);

  PrimeGso out;
  out.gso = gso_closed_form(spec);

  // D_j = 1 + C^2 sum_{i<=j} (ln p_i)^(2-2/p) is the K_j sequence of the
  // closed form specialized to these x, y.
  out.D.reserve(static_cast<size_t>(cfg.d) + 1);
  out.D.push_back(HpReal::of(1L, cfg.prec));
  for (long j = 0; j < cfg.d; ++j) {
    HpReal q = spec.y[static_cast<size_t>(j)] / spec.x[static_cast<size_t>(j)];
    out.D.push_back(out.D.back() + square(q));
  }

  // t is the final column, so its star vector is exactly t* and the
  // closed form already carries ||t*||^2 = (C ln N)^2 / D_d.
  out.t_star = out.gso.star.back();
  out.t_star_norm_sq = out.gso.star_norms_sq.back();

  std::vector<HpReal> t = build_target(cfg);
  out.effective_target.reserve(t.size());
  for (size_t i = 0; i < t.size(); ++i)
    out.effective_target.push_back(t[i] - out.t_star[i]);
  return out;
}

}  // namespace pnl
