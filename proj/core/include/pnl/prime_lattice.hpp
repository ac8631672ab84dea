#pragma once

#include <vector>

#include "pnl/lattice.hpp"
#include "pnl/numerics.hpp"

namespace pnl {

// Which lattice a coefficient vector lives in: the Schnorr lattice pairs
// d-dimensional vectors with the fixed target t (close-vector search),
// the Adleman lattice absorbs the N column and searches short vectors.
enum class Mode { schnorr, adleman };

// All search parameters in one bundle. Construction precomputes the prime
// list and the logarithms every operation needs. C > 0 is accepted here so
// the bases and volumes can be studied at small C; the capture-theorem
// operations require C > 1 and enforce it themselves.
struct PnlConfig {
  BigInt N;                 // the composite under attack
  long d = 0;               // lattice dimension (number of odd-indexed primes)
  long p = 1;               // norm index of the basis entries
  HpReal C;                 // scaling constant of the bottom row
  long sigma = 1;           // smoothness slack: residues bounded by p_d^sigma
  mpfr_prec_t prec = 0;     // working precision in bits
  FactorBase base;          // [-1, 2, 3, ..., p_d]
  std::vector<HpReal> ln_p; // ln p_1 .. ln p_d at prec
  HpReal ln_N;              // ln N at prec

  // prec = 0 selects default_precision(N). Throws std::invalid_argument on
  // N < 2, d < 1, p < 1, sigma < 1 or C <= 0.
  static PnlConfig make(const BigInt& N, long d, long p, const HpReal& C,
                        long sigma, mpfr_prec_t prec = 0);

  // Same logs recomputed at a different precision (guard-band retries).
  std::vector<HpReal> ln_p_at(mpfr_prec_t prec2) const;
  HpReal ln_N_at(mpfr_prec_t prec2) const;
};

// A lattice vector decoded into the Diophantine quartet it proposes:
// u = prod_{z_i>0, i<=d} p_i^{z_i}, k = prod_{z_i<0, i<=d} p_i^{-z_i},
// gamma = |z_{d+1}| (Adleman) or 1 (Schnorr). The split by sign makes
// gcd(u,k) = 1 automatic.
struct Candidate {
  std::vector<long> z;
  BigInt u;
  BigInt k;
  long gamma = 1;
};

struct NoCandidateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// (d+1) x d matrix: diag((ln p_i)^(1/p)) over bottom row C ln p_i.
BasisMatrix build_schnorr_basis(const PnlConfig& cfg);

// (d+1) x (d+1): the Schnorr basis plus final column (0,...,0, C ln N).
BasisMatrix build_adleman_basis(const PnlConfig& cfg);

// (0,...,0, C ln N), length d+1 — the close-vector target.
std::vector<HpReal> build_target(const PnlConfig& cfg);

// Decode z (length d for Schnorr, d+1 for Adleman). In Adleman mode a
// vector with z_{d+1} > 0 is replaced by its opposite — only one of the
// pair encodes the equation with gamma > 0 — and z_{d+1} = 0 is a
// NoCandidateError (no power of N involved, nothing to factor).
Candidate decode_candidate(std::vector<long> z, const PnlConfig& cfg,
                           Mode mode);

// 1-norm of A_1 z (Adleman, |z| = d+1) or S_1 z - t (Schnorr, |z| = d),
// always with exponent-1 diagonal entries regardless of cfg.p: the capture
// theorems are statements about the 1-norm matrices.
HpReal one_norm_image(const std::vector<long>& z, const PnlConfig& cfg,
                      Mode mode);

// 2 ln C + 2 sigma ln p_d - gamma ln N. May be negative, in which case the
// premise ball is empty. Requires C > 1.
HpReal capture_threshold(const PnlConfig& cfg, long gamma);

// Residue bound N^(gamma/2) / C * exp(epsilon/2) valid whenever
// ||A_1 z||_1 <= epsilon. Requires C > 1, epsilon >= 0.
HpReal svp_bound(const HpReal& epsilon, long gamma, const PnlConfig& cfg);

// Close-vector analog: same bound at gamma = 1, valid whenever
// ||S_1 z - t||_1 <= epsilon.
HpReal cvp_bound(const HpReal& epsilon, const PnlConfig& cfg);

// Capture-theorem verdict for one candidate. The premise comparison
// (1-norm image vs threshold) is float; when the margin is inside the
// 2^(-prec/4) guard band both sides are recomputed at doubled precision
// before deciding. The conclusion |u - k N^gamma| <= p_d^sigma and the
// residue v are exact integer arithmetic.
struct CaptureReport {
  bool premise_holds = false;
  bool conclusion_holds = false;
  BigInt v;          // u - k N^gamma, exact
  HpReal image;      // 1-norm image at cfg.prec
  HpReal threshold;  // capture threshold at cfg.prec
};

CaptureReport check_capture(const Candidate& cand, const PnlConfig& cfg,
                            Mode mode);

// Closed-form volumes: C ln N * prod (ln p_i)^(1/p) for the Adleman
// lattice, sqrt(1 + C^2 sum (ln p_i)^(2-2/p)) * prod (ln p_i)^(1/p) for
// the Schnorr lattice.
HpReal vol_adleman_closed(const PnlConfig& cfg);
HpReal vol_schnorr_closed(const PnlConfig& cfg);

// Closed-form GSO of {b_1,...,b_d, t} (which is exactly the Adleman
// matrix) with the D_j sequence, the projected target t*, and the
// effective close-vector target t - t*.
struct PrimeGso {
  GsoResult gso;                         // stars of b_1..b_d and t
  std::vector<HpReal> D;                 // D_0 = 1, ..., D_d
  std::vector<HpReal> t_star;            // projection of t on span(b_1..b_d)^perp
  HpReal t_star_norm_sq;                 // (C ln N)^2 / D_d
  std::vector<HpReal> effective_target;  // t - t*
};

PrimeGso gso_prime_basis(const PnlConfig& cfg);

}  // namespace pnl
