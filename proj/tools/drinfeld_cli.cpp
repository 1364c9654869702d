#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "drinfeld/acceptance.hpp"
#include "drinfeld/json_io.hpp"
#include "drinfeld/parse.hpp"

using namespace drinfeld;

namespace {

struct Config {
  unsigned q = 0;
  std::string g1, g2, phi, prime, modulus, out, format = "json", lemma;
  unsigned max_deg = 6;
  unsigned trials = 1000;
  uint64_t seed = 1;
};

ojson config_echo(const Config& c) {
  return ojson{{"q", c.q},           {"g1", c.g1},
               {"g2", c.g2},         {"phi", c.phi},
               {"prime", c.prime},   {"modulus", c.modulus},
               {"maxDeg", c.max_deg}, {"trials", c.trials},
               {"seed", c.seed},     {"lemma", c.lemma},
               {"format", c.format}};
}

const FqCtx& field_of(const Config& cfg) {
  check(cfg.q != 0, Err::ConfigMismatch, "--q is required");
  return FqCtx::get(cfg.q);
}

ModuleF module_of(const Config& cfg, const FqCtx& k) {
  if (!cfg.phi.empty()) {
    check(cfg.g1.empty() && cfg.g2.empty(), Err::ConfigMismatch,
          "--phi excludes --g1/--g2");
    return parse_module(k, cfg.phi);
  }
  check(!cfg.g2.empty(), Err::ConfigMismatch,
        "a module spec needs --phi or --g1/--g2");
  RatFunc g1 = cfg.g1.empty() ? RatFunc::zero(k) : parse_ratfunc(k, cfg.g1);
  return make_rank2(k, g1, parse_ratfunc(k, cfg.g2));
}

Poly modulus_of(const Config& cfg, const FqCtx& k) {
  const std::string& s = !cfg.modulus.empty() ? cfg.modulus : cfg.prime;
  check(!s.empty(), Err::ConfigMismatch, "--modulus (or --prime) is required");
  return parse_poly(k, s);
}

bool is_config_error(Err e) {
  switch (e) {
    case Err::SyntaxError:
    case Err::FieldMismatch:
    case Err::ConfigMismatch:
    case Err::UnsupportedField:
    case Err::Precondition:
    case Err::RankMismatch:
      return true;
    default:
      return false;
  }
}

void emit_doc(const Config& cfg, const ojson& doc, std::ostream& out) {
  std::string text = cfg.format == "csv" ? csv_of(doc) : doc.dump(2) + "\n";
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out);
    check(f.good(), Err::ConfigMismatch, "cannot open --out path " + cfg.out);
    f << text;
  } else {
    out << text;
  }
}

int run_command(const std::vector<std::string>& args, std::ostream& out);

ojson groups_payload(const Config& cfg) {
  if (cfg.lemma == "5.5") return json_lemma55(verify_lemma_5_5());
  if (cfg.lemma == "5.6")
    return ojson{{"traceStep", json_trace_step(verify_prop_5_6_trace_step())},
                 {"level2", json_level2(verify_prop_5_6_level2(cfg.trials, cfg.seed))}};
  if (cfg.lemma == "6.1")
    return json_lemma61(verify_lemma_6_1(cfg.q ? cfg.q : 4));
  if (cfg.lemma == "gl2f2" || cfg.lemma == "4") return json_gl2f2(verify_gl2_f2());
  check(cfg.lemma.empty(), Err::ConfigMismatch,
        "--lemma must be one of 5.5, 5.6, 6.1, gl2f2");
  return ojson{{"gl2f2", json_gl2f2(verify_gl2_f2())},
               {"lemma55", json_lemma55(verify_lemma_5_5())},
               {"traceStep", json_trace_step(verify_prop_5_6_trace_step())},
               {"level2", json_level2(verify_prop_5_6_level2(cfg.trials, cfg.seed))},
               {"lemma61", json_lemma61(verify_lemma_6_1(cfg.q ? cfg.q : 4))}};
}

int run_command(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Exact computations with rank-2 Drinfeld modules over F_q(T)"};
  app.require_subcommand(0, 1);
  Config cfg;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--q", cfg.q, "field size q = p^e");
    s->add_option("--g1", cfg.g1, "tau coefficient of phi_T");
    s->add_option("--g2", cfg.g2, "tau^2 coefficient of phi_T");
    s->add_option("--phi", cfg.phi, "phi_T as an expression in T and t");
    s->add_option("--prime", cfg.prime, "monic irreducible prime P");
    s->add_option("--modulus", cfg.modulus, "torsion modulus ell");
    s->add_option("--max-deg", cfg.max_deg, "prime sampling degree bound");
    s->add_option("--trials", cfg.trials, "randomized trial count");
    s->add_option("--seed", cfg.seed, "seed for randomized searches");
    s->add_option("--out", cfg.out, "write the report to this path");
    s->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    return s;
  };

  CLI::App* c_torsion =
      add_common(app.add_subcommand("torsion", "splitting field of the ell-torsion"));
  CLI::App* c_order = add_common(
      app.add_subcommand("galois-order", "degree of the ell-division field"));
  CLI::App* c_image = add_common(
      app.add_subcommand("image", "mod-ell surjectivity certificate"));
  CLI::App* c_entangle = add_common(app.add_subcommand(
      "entangle", "quadratic subextension descriptors at degree-one moduli"));
  CLI::App* c_witness = add_common(
      app.add_subcommand("witness", "nonsurjectivity witness search"));
  CLI::App* c_groups = add_common(
      app.add_subcommand("verify-groups", "finite matrix group verifications"));
  c_groups->add_option("--lemma", cfg.lemma, "which statement: 5.5, 5.6, 6.1, gl2f2");
  CLI::App* c_frob = add_common(app.add_subcommand(
      "frobenius", "Frobenius characteristic polynomial at a prime"));
  CLI::App* c_suite =
      add_common(app.add_subcommand("suite", "run the acceptance battery"));

  std::vector<const char*> argv;
  argv.push_back("drinfeld");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  bool config_phase = true;
  try {
    using Clock = std::chrono::steady_clock;
    Clock::time_point t0 = Clock::now();
    auto wall = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };

    if (c_torsion->parsed() || c_order->parsed()) {
      const FqCtx& k = field_of(cfg);
      ModuleF phi = module_of(cfg, k);
      Poly ell = modulus_of(cfg, k);
      config_phase = false;
      SplittingReport r = splitting_field(phi, ell);
      ojson payload =
          c_torsion->parsed()
              ? json_splitting(phi, ell, r)
              : ojson{{"module", module_str(phi)},
                      {"modulus", ell.str()},
                      {"totalDegree", r.total_degree}};
      emit_doc(cfg, run_report(c_torsion->parsed() ? "torsion" : "galois-order",
                               config_echo(cfg), payload, wall()),
               out);
      return 0;
    }

    if (c_image->parsed()) {
      const FqCtx& k = field_of(cfg);
      ModuleF phi = module_of(cfg, k);
      Poly ell = modulus_of(cfg, k);
      config_phase = false;
      ImageCertificate cert = certify_mod_l_surjective(phi, ell, cfg.max_deg);
      emit_doc(cfg, run_report("image", config_echo(cfg),
                               json_certificate(phi, cert), wall()),
               out);
      return 0;
    }

    if (c_entangle->parsed()) {
      const FqCtx& k = field_of(cfg);
      ModuleF phi = module_of(cfg, k);
      config_phase = false;
      ojson descs = ojson::array();
      for (unsigned c = 0; c < k.q(); ++c) {
        Poly ell(k, {static_cast<uint8_t>(c), 1});
        try {
          descs.push_back(json_descriptor(quad_subext(phi, ell)));
        } catch (const Error& e) {
          descs.push_back(ojson{{"modulus", ell.str()},
                                {"error", std::string(err_name(e.code())) + ": " +
                                              e.what()}});
        }
      }
      ojson payload{{"module", module_str(phi)}, {"descriptors", descs}};
      if (k.q() % 2 == 1)
        payload["claimCheck"] = json_claim51(phi, claim_check_5_1(phi));
      emit_doc(cfg, run_report("entangle", config_echo(cfg), payload, wall()), out);
      return 0;
    }

    if (c_witness->parsed()) {
      const FqCtx& k = field_of(cfg);
      ModuleF phi = module_of(cfg, k);
      config_phase = false;
      EntanglementWitness w = nonsurjectivity_witness(phi, cfg.max_deg);
      emit_doc(cfg, run_report("witness", config_echo(cfg), json_witness(phi, w),
                               wall()),
               out);
      return 0;
    }

    if (c_groups->parsed()) {
      config_phase = false;
      emit_doc(cfg, run_report("verify-groups", config_echo(cfg),
                               groups_payload(cfg), wall()),
               out);
      return 0;
    }

    if (c_frob->parsed()) {
      const FqCtx& k = field_of(cfg);
      ModuleF phi = module_of(cfg, k);
      check(!cfg.prime.empty(), Err::ConfigMismatch, "--prime is required");
      Poly P = parse_poly(k, cfg.prime);
      config_phase = false;
      ModuleRes M = reduce_mod(phi, P);
      FrobCharPoly fc = frob_charpoly(M);
      ojson payload{{"module", module_str(phi)}};
      payload.update(json_charpoly(fc));
      if (!cfg.modulus.empty()) {
        Poly ell = parse_poly(k, cfg.modulus);
        std::string note;
        Mat2 m = frob_matrix_mod_l(M, ell, &note);
        FqRing R(k);
        payload["modL"] = ojson{{"modulus", ell.str()},
                                {"pattern", division_pattern(M, ell)},
                                {"matrix", m2_str(R, m)},
                                {"basis", note},
                                {"trace", m2_trace(R, m)},
                                {"det", m2_det(R, m)}};
      }
      emit_doc(cfg, run_report("frobenius", config_echo(cfg), payload, wall()), out);
      return 0;
    }

    if (c_suite->parsed()) {
      config_phase = false;
      auto self = [](const std::vector<std::string>& a) {
        std::ostringstream cap;
        int rc = run_command(a, cap);
        if (rc != 0)
          throw std::runtime_error("nested run exited " + std::to_string(rc));
        return cap.str();
      };
      std::vector<CriterionResult> results = run_acceptance_suite(out, self);
      unsigned failures = 0;
      ojson rows = ojson::array();
      for (const CriterionResult& r : results) {
        if (!r.pass) ++failures;
        rows.push_back(ojson{{"id", r.id},
                             {"name", r.name},
                             {"pass", r.pass},
                             {"detail", r.detail},
                             {"seconds", r.seconds}});
      }
      if (!cfg.out.empty())
        emit_doc(cfg,
                 run_report("suite", config_echo(cfg),
                            ojson{{"criteria", rows}, {"failures", failures}},
                            wall()),
                 out);
      return failures ? 4 : 0;
    }

    out << app.help();
    return 0;
  } catch (const Error& e) {
    if (config_phase || is_config_error(e.code())) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    }
    std::cerr << "computation error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_command(args, std::cout);
}
