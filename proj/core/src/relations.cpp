#include "pnl/relations.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace pnl {

namespace {

// Exact u' = prod p_i^{e_i} (i >= 1) and v' = (-1)^{e_0} prod p_i^{e_i}
// rebuilds used by the loader's re-verification.
BigInt rebuild_product(const std::vector<long>& e, const FactorBase& fb,
                       bool signed_value) {
  BigInt acc = 1;
  BigInt pw;
  for (long i = 1; i <= fb.dim(); ++i) {
    long ei = e[static_cast<size_t>(i)];
    if (ei == 0) continue;
    BigInt prime(fb.prime(i));
    mpz_pow_ui(pw.get_mpz_t(), prime.get_mpz_t(),
               static_cast<unsigned long>(ei));
    acc *= pw;
  }
  if (signed_value && e[0] == 1) acc = -acc;
  return acc;
}

[[noreturn]] void bad_line(size_t line_no, const std::string& what) {
  throw RelationIoError("relations file line " + std::to_string(line_no) +
                        ": " + what);
}

}  // namespace

std::optional<std::vector<long>> factor_over_base(const BigInt& n,
                                                  const FactorBase& fb) {
  if (n == 0) throw std::domain_error("factor_over_base: n must be nonzero");
  std::vector<long> e(static_cast<size_t>(fb.dim()) + 1, 0);
  if (n < 0) e[0] = 1;
  BigInt m = abs(n);
  for (long i = 1; i <= fb.dim(); ++i) {
    unsigned long p = static_cast<unsigned long>(fb.prime(i));
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e[static_cast<size_t>(i)];
    }
  }
  if (m != 1) return std::nullopt;
  return e;
}

CandidateOutcome candidate_to_relation(const Candidate& cand,
                                       const PnlConfig& cfg) {
  CandidateOutcome out{CandidateOutcome::Kind::reject, {},
                       RejectReason::degenerate, BigInt(0)};

  BigInt n_pow;
  mpz_pow_ui(n_pow.get_mpz_t(), cfg.N.get_mpz_t(),
             static_cast<unsigned long>(cand.gamma));
  BigInt v = cand.u - cand.k * n_pow;
  if (v == 0) {
    // N^gamma | u with gcd(u,k)=1 means the decoding is broken upstream.
    out.reason = RejectReason::degenerate;
    return out;
  }

  BigInt g = gcd(v, cfg.N);
  if (g != 1 && g != cfg.N) {
    out.kind = CandidateOutcome::Kind::early_factor;
    out.g = g;
    return out;
  }
  g = gcd(cand.k, cfg.N);
  if (g != 1) {
    if (g != cfg.N) {
      out.kind = CandidateOutcome::Kind::early_factor;
      out.g = g;
      return out;
    }
    out.reason = RejectReason::k_not_coprime;
    return out;
  }

  auto b = factor_over_base(v, cfg.base);
  if (!b) {
    out.reason = RejectReason::not_smooth;
    return out;
  }

  Relation rel;
  rel.u = cand.u;
  rel.k = cand.k;
  rel.v = std::move(v);
  rel.gamma = cand.gamma;
  rel.a.assign(static_cast<size_t>(cfg.d) + 1, 0);
  for (long i = 0; i < cfg.d; ++i)
    if (cand.z[static_cast<size_t>(i)] > 0)
      rel.a[static_cast<size_t>(i) + 1] = cand.z[static_cast<size_t>(i)];
  rel.b = std::move(*b);
  out.kind = CandidateOutcome::Kind::relation;
  out.rel = std::move(rel);
  return out;
}

RelationSearcher::RelationSearcher(const PnlConfig& cfg, Mode mode,
                                   SearcherOptions opt)
    : cfg_(cfg), mode_(mode), opt_(opt),
      rb_(lll_reduce(mode == Mode::schnorr ? build_schnorr_basis(cfg)
                                           : build_adleman_basis(cfg))),
      radius_(HpReal::of(0L, cfg.prec)),
      prev_radius_sq_(HpReal::of(0L, cfg.prec)) {
  if (opt_.radius_growth <= 1.0)
    throw std::invalid_argument("RelationSearcher: radius_growth must be > 1");
  HpReal margin = HpReal::of(1.05, cfg.prec);
  if (mode_ == Mode::schnorr) {
    target_ = build_target(cfg);
    BabaiResult near = babai_nearest_plane(rb_, target_);
    // Start just past the nearest-plane point: guarantees round 1 is
    // nonempty without flooding it.
    radius_ = near.dist * margin + HpReal::of(0.001, cfg.prec);
  } else {
    // Start at the shortest reduced basis vector.
    HpReal best = HpReal::of(0L, cfg.prec);
    for (long c = 0; c < rb_.basis.cols(); ++c) {
      HpReal nrm = HpReal::of(0L, cfg.prec);
      for (long r = 0; r < rb_.basis.rows(); ++r)
        nrm += square(rb_.basis.at(r, c));
      if (c == 0 || nrm < best) best = nrm;
    }
    radius_ = sqrt(best) * margin;
  }
}

std::vector<Candidate> RelationSearcher::next_batch() {
  std::vector<Candidate> batch;
  if (exhausted_) return batch;
  if (round_ >= opt_.max_rounds) {
    exhausted_ = true;
    return batch;
  }
  ++round_;

  SearchBudget budget;
  budget.max_nodes = opt_.max_nodes_per_round;
  budget.max_results = opt_.max_results_per_round;
  budget.radius = radius_;
  budget.norm = 2;

  EnumerationResult res =
      mode_ == Mode::schnorr
          ? enumerate_close(rb_, target_, budget)
          : enumerate_short(rb_, budget, ShortSign::adleman);
  nodes_ += res.nodes;
  if (res.truncated) exhausted_ = true;  // partial ball: stop after this use

  for (FoundVector& f : res.found) {
    // Annulus filter: drop everything round i-1 already delivered. The
    // comparison repeats the exact filter expression of that round, so
    // the partition has no seams.
    if (round_ > 1 && f.two_norm_sq <= prev_radius_sq_) continue;
    Candidate cand;
    try {
      cand = decode_candidate(std::move(f.z), cfg_, mode_);
    } catch (const NoCandidateError&) {
      continue;
    }
    if (mode_ == Mode::adleman && cand.gamma > opt_.gamma_max) {
      ++gamma_rejects_;
      continue;
    }
    batch.push_back(std::move(cand));
  }

  prev_radius_sq_ = square(radius_);
  radius_ = radius_ * HpReal::of(opt_.radius_growth, cfg_.prec);
  return batch;
}

CollectResult collect_relations(const PnlConfig& cfg,
                                RelationSearcher& searcher, size_t quota,
                                EarlyFactorPolicy policy) {
  CollectResult out;
  std::set<std::tuple<BigInt, BigInt, long>> seen;

  while (out.relations.size() < quota && !searcher.exhausted()) {
    std::vector<Candidate> batch = searcher.next_batch();
    for (Candidate& cand : batch) {
      ++out.stats.candidates_seen;
      CandidateOutcome oc = candidate_to_relation(cand, cfg);
      switch (oc.kind) {
        case CandidateOutcome::Kind::relation: {
          auto key = std::make_tuple(oc.rel.u, oc.rel.k, oc.rel.gamma);
          if (!seen.insert(key).second) {
            ++out.stats.duplicates;
            break;
          }
          ++out.stats.accepted;
          out.relations.push_back(std::move(oc.rel));
          break;
        }
        case CandidateOutcome::Kind::reject:
          if (oc.reason == RejectReason::not_smooth)
            ++out.stats.rejected_not_smooth;
          else if (oc.reason == RejectReason::degenerate)
            ++out.stats.rejected_degenerate;
          else
            ++out.stats.rejected_k_not_coprime;
          break;
        case CandidateOutcome::Kind::early_factor:
          if (policy == EarlyFactorPolicy::stop) {
            out.early_factor = oc.g;
            out.stats.rounds = searcher.rounds_run();
            out.stats.nodes = searcher.nodes_used();
            out.stats.gamma_rejects = searcher.gamma_rejects();
            out.insufficient = out.relations.size() < quota;
            return out;
          }
          if (!out.early_factor) out.early_factor = oc.g;
          break;
      }
    }
  }

  out.stats.rounds = searcher.rounds_run();
  out.stats.nodes = searcher.nodes_used();
  out.stats.gamma_rejects = searcher.gamma_rejects();
  out.insufficient = out.relations.size() < quota;
  return out;
}

void save_relations(const std::string& path,
                    const std::vector<Relation>& relations,
                    const PnlConfig& cfg) {
  std::ofstream f(path);
  if (!f) throw RelationIoError("cannot open " + path + " for writing");
  f << "pnl-relations 1 " << cfg.N << ' ' << cfg.d << '\n';
  for (const Relation& r : relations) {
    f << r.u << ' ' << r.k << ' ' << r.gamma << ' ' << r.v;
    for (long ai : r.a) f << ' ' << ai;
    for (long bi : r.b) f << ' ' << bi;
    f << '\n';
  }
  if (!f.good()) throw RelationIoError("write to " + path + " failed");
}

std::vector<Relation> load_relations(const std::string& path,
                                     const PnlConfig& cfg) {
  std::ifstream f(path);
  if (!f) throw RelationIoError("cannot open " + path);

  std::string line;
  if (!std::getline(f, line)) throw RelationIoError("empty relations file");
  {
    std::istringstream hs(line);
    std::string magic;
    int version = 0;
    BigInt n;
    long d = 0;
    if (!(hs >> magic >> version >> n >> d) || magic != "pnl-relations")
      throw RelationIoError("bad header: " + line);
    if (version != 1)
      throw RelationIoError("unsupported version " + std::to_string(version));
    if (n != cfg.N || d != cfg.d)
      throw RelationIoError("header (N, d) does not match configuration");
  }

  std::vector<Relation> out;
  size_t line_no = 1;
  size_t width = static_cast<size_t>(cfg.d) + 1;
  while (std::getline(f, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    Relation r;
    if (!(ls >> r.u >> r.k >> r.gamma >> r.v))
      bad_line(line_no, "cannot parse u k gamma v");
    r.a.resize(width);
    r.b.resize(width);
    for (size_t i = 0; i < width; ++i)
      if (!(ls >> r.a[i])) bad_line(line_no, "cannot parse exponent a");
    for (size_t i = 0; i < width; ++i)
      if (!(ls >> r.b[i])) bad_line(line_no, "cannot parse exponent b");
    std::string extra;
    if (ls >> extra) bad_line(line_no, "trailing tokens");

    // Untrusted input: re-establish every invariant from scratch.
    if (r.u < 1 || r.k < 1) bad_line(line_no, "u and k must be positive");
    if (r.gamma < 1) bad_line(line_no, "gamma must be >= 1");
    if (r.a[0] != 0) bad_line(line_no, "a_0 must be 0");
    if (r.b[0] != 0 && r.b[0] != 1) bad_line(line_no, "b_0 must be 0 or 1");
    for (size_t i = 0; i < width; ++i)
      if (r.a[i] < 0 || r.b[i] < 0 || r.a[i] > (1L << 20) ||
          r.b[i] > (1L << 20))
        bad_line(line_no, "exponent out of range");
    if (rebuild_product(r.a, cfg.base, false) != r.u)
      bad_line(line_no, "u does not match its exponent vector");
    if (rebuild_product(r.b, cfg.base, true) != r.v)
      bad_line(line_no, "v does not match its exponent vector");
    BigInt n_pow;
    mpz_pow_ui(n_pow.get_mpz_t(), cfg.N.get_mpz_t(),
               static_cast<unsigned long>(r.gamma));
    if (r.u - r.k * n_pow != r.v)
      bad_line(line_no, "u - k N^gamma != v");
    if (gcd(r.u, r.k) != 1) bad_line(line_no, "gcd(u, k) != 1");
    if (gcd(r.k, cfg.N) != 1) bad_line(line_no, "gcd(k, N) != 1");
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace pnl
