// Command line front end: factor a number through the prime-number-lattice
// pipeline, inspect a configuration's lattice invariants, or re-verify a
// relations file.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pnl/pipeline.hpp"

namespace {

using nlohmann::json;

struct CommonArgs {
  std::string n_str;
  long dim = 25;
  long norm = 1;
  std::string c_mode = "sqrtN";
  long sigma = 2;
  std::string mode = "schnorr";
  std::uint64_t seed = 0;
  std::string relations_file;
  bool emit_json = false;
};

void add_common_flags(CLI::App* cmd, CommonArgs& a, bool with_search_flags) {
  cmd->add_option("--n", a.n_str, "number to work on (decimal)")->required();
  cmd->add_option("--dim", a.dim, "lattice dimension d (number of primes)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--norm", a.norm, "basis norm index p >= 1")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--c-mode", a.c_mode,
                  "scaling constant: 'sqrtN' or 'value:<decimal>'");
  cmd->add_option("--sigma", a.sigma, "smoothness slack sigma >= 1")
      ->check(CLI::PositiveNumber);
  if (with_search_flags) {
    cmd->add_option("--mode", a.mode, "lattice mode")
        ->check(CLI::IsMember({"schnorr", "adleman"}));
    cmd->add_option("--seed", a.seed, "reproducibility token (recorded)");
  }
}

pnl::BigInt parse_n(const std::string& s) {
  try {
    pnl::BigInt n(s);
    return n;
  } catch (const std::invalid_argument&) {
    throw CLI::ValidationError("--n: '" + s + "' is not a decimal integer");
  }
}

std::optional<pnl::HpReal> parse_c_mode(const std::string& c_mode,
                                        const pnl::BigInt& n) {
  if (c_mode == "sqrtN") return std::nullopt;
  const std::string prefix = "value:";
  if (c_mode.rfind(prefix, 0) != 0)
    throw CLI::ValidationError(
        "--c-mode: expected 'sqrtN' or 'value:<decimal>'");
  return pnl::HpReal::parse(c_mode.substr(prefix.size()),
                            pnl::default_precision(n));
}

pnl::FactorOptions make_options(const CommonArgs& a, const pnl::BigInt& n) {
  pnl::FactorOptions opt;
  opt.d = a.dim;
  opt.p = a.norm;
  opt.c_value = parse_c_mode(a.c_mode, n);
  opt.sigma = a.sigma;
  opt.mode = a.mode == "adleman" ? pnl::Mode::adleman : pnl::Mode::schnorr;
  opt.searcher.seed = a.seed;
  return opt;
}

pnl::PnlConfig make_config(const CommonArgs& a, const pnl::BigInt& n) {
  mpfr_prec_t prec = pnl::default_precision(n);
  auto c = parse_c_mode(a.c_mode, n);
  pnl::HpReal c_val = c ? *c : pnl::sqrt(pnl::HpReal::of(n, prec));
  return pnl::PnlConfig::make(n, a.dim, a.norm, c_val, a.sigma, prec);
}

json relation_to_json(const pnl::Relation& r) {
  return json{{"u", r.u.get_str()},   {"k", r.k.get_str()},
              {"gamma", r.gamma},     {"v", r.v.get_str()},
              {"a", r.a},             {"b", r.b}};
}

json report_to_json(const pnl::FactorReport& rep, const pnl::BigInt& n) {
  json doc;
  doc["n"] = n.get_str();
  if (rep.factor) {
    doc["outcome"] = "factor";
    doc["factor"] = rep.factor->get_str();
    doc["cofactor"] = pnl::BigInt(n / *rep.factor).get_str();
    doc["source"] = pnl::to_string(rep.source);
  } else {
    doc["outcome"] = "failure";
    doc["reason"] = pnl::to_string(rep.reason);
  }
  doc["seed"] = rep.seed;
  doc["dependencies_tried"] = rep.dependencies_tried;
  doc["stats"] = {
      {"candidates_seen", rep.stats.candidates_seen},
      {"accepted", rep.stats.accepted},
      {"rejected_not_smooth", rep.stats.rejected_not_smooth},
      {"rejected_degenerate", rep.stats.rejected_degenerate},
      {"rejected_k_not_coprime", rep.stats.rejected_k_not_coprime},
      {"duplicates", rep.stats.duplicates},
      {"gamma_rejects", rep.stats.gamma_rejects},
      {"rounds", rep.stats.rounds},
      {"nodes", rep.stats.nodes},
  };
  if (rep.factor && rep.source == pnl::FactorSource::dependency) {
    doc["x"] = rep.x.get_str();
    doc["y"] = rep.y.get_str();
    doc["dependency"] = rep.dependency;
  }
  doc["relations"] = json::array();
  for (const pnl::Relation& r : rep.relations)
    doc["relations"].push_back(relation_to_json(r));
  return doc;
}

int run_factor(const CommonArgs& a) {
  pnl::BigInt n = parse_n(a.n_str);
  pnl::FactorOptions opt = make_options(a, n);
  pnl::FactorReport rep = pnl::factor(n, opt);

  if (!a.relations_file.empty() && !rep.relations.empty()) {
    pnl::PnlConfig cfg = make_config(a, n);
    pnl::save_relations(a.relations_file, rep.relations, cfg);
    std::cerr << "wrote " << rep.relations.size() << " relations to "
              << a.relations_file << "\n";
  }

  if (a.emit_json) std::cout << report_to_json(rep, n).dump(2) << "\n";

  if (rep.factor) {
    if (!a.emit_json) std::cout << rep.factor->get_str() << "\n";
    std::cerr << n.get_str() << " = " << rep.factor->get_str() << " * "
              << pnl::BigInt(n / *rep.factor).get_str() << "  (via "
              << pnl::to_string(rep.source) << ", "
              << rep.relations.size() << " relations, "
              << rep.dependencies_tried << " dependencies tried)\n";
    return 0;
  }
  std::cerr << "no factor found: " << pnl::to_string(rep.reason) << "\n";
  return 1;
}

int run_analyze(const CommonArgs& a) {
  pnl::BigInt n = parse_n(a.n_str);
  pnl::PnlConfig cfg = make_config(a, n);

  std::cout << "N = " << cfg.N.get_str() << ", d = " << cfg.d
            << " (p_d = " << cfg.base.largest() << "), p = " << cfg.p
            << ", sigma = " << cfg.sigma << ", prec = " << cfg.prec
            << " bits\n";
  std::cout << "C = " << cfg.C.str(20) << "\n\n";

  std::cout << "vol(Schnorr lattice) = " << pnl::vol_schnorr_closed(cfg).str(20)
            << "\n";
  std::cout << "vol(Adleman lattice) = " << pnl::vol_adleman_closed(cfg).str(20)
            << "\n\n";

  pnl::PrimeGso gso = pnl::gso_prime_basis(cfg);
  std::cout << "D_d = " << gso.D.back().str(20) << "\n";
  std::cout << "||t*||^2 = " << gso.t_star_norm_sq.str(20)
            << "   (orthogonal distance of the target from the span)\n";
  std::cout << "GSO star norms ||b*_k||:\n";
  for (long k = 0; k <= cfg.d; ++k)
    std::cout << "  k=" << (k + 1) << ": "
              << pnl::sqrt(gso.gso.star_norms_sq[static_cast<size_t>(k)]).str(12)
              << (k == cfg.d ? "  (= ||t*||)" : "") << "\n";
  std::cout << "\ncapture thresholds (1-norm ball radii):\n";
  for (long g = 1; g <= 4; ++g) {
    pnl::HpReal thr = pnl::capture_threshold(cfg, g);
    std::cout << "  gamma=" << g << ": " << thr.str(12);
    if (thr.sign() > 0) {
      std::cout << "   residue bound N^(gamma/2)/C e^(eps/2) = "
                << pnl::svp_bound(thr, g, cfg).str(12);
    } else {
      std::cout << "   (empty ball)";
    }
    std::cout << "\n";
  }
  return 0;
}

int run_verify(const CommonArgs& a) {
  pnl::BigInt n = parse_n(a.n_str);
  pnl::PnlConfig cfg = make_config(a, n);
  try {
    std::vector<pnl::Relation> rels =
        pnl::load_relations(a.relations_file, cfg);
    std::cout << a.relations_file << ": " << rels.size()
              << " relations, all invariants verified\n";
    return 0;
  } catch (const pnl::RelationIoError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prime-number-lattice factorization toolkit"};
  app.require_subcommand(1);

  CommonArgs fa, aa, va;
  CLI::App* cmd_factor = app.add_subcommand("factor", "factor a composite N");
  add_common_flags(cmd_factor, fa, /*with_search_flags=*/true);
  cmd_factor->add_option("--relations-file", fa.relations_file,
                         "write the verified relations collected in this run");
  cmd_factor->add_flag("--json", fa.emit_json,
                       "emit the full report as JSON on stdout");

  CLI::App* cmd_analyze = app.add_subcommand(
      "analyze", "print volumes, GSO norms and capture thresholds");
  add_common_flags(cmd_analyze, aa, /*with_search_flags=*/false);

  CLI::App* cmd_verify =
      app.add_subcommand("verify", "re-check a relations file");
  add_common_flags(cmd_verify, va, /*with_search_flags=*/false);
  cmd_verify
      ->add_option("--relations-file", va.relations_file, "file to verify")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_factor->parsed()) return run_factor(fa);
    if (cmd_analyze->parsed()) return run_analyze(aa);
    if (cmd_verify->parsed()) return run_verify(va);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
