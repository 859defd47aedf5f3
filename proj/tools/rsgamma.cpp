// Command-line front end: gamma factors, pole scans, parameter records, the
// Q2 evaluation, acceptance suites and brute-force comparisons.
//
// Exit status: 0 success, 1 a mismatch or failed suite, 2 invalid input.
#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "commands.hpp"

using namespace rsg;
using nlohmann::json;

int main(int argc, char** argv) {
  CLI::App app{"Gamma factors of simple supercuspidals of Sp_2l x GL_1 and their parameters"};
  app.require_subcommand(1);
  app.fallthrough();
  cli::Config cfg;
  app.add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", cfg.seed, "seed for every sampled check")->capture_default_str();
  app.add_flag("--timing", cfg.timing, "include wall-clock timings (output is then not byte-reproducible)");

  auto add_rep = [&](CLI::App* s) {
    s->add_option("-p,--p", cfg.p, "residue characteristic")->required();
    s->add_option("-l,--l", cfg.l, "Sp_2l rank")->capture_default_str();
    s->add_option("--alpha", cfg.alpha, "affine generic parameter; only its square class matters")
        ->capture_default_str();
    s->add_option("--omega", cfg.omega, "omega(-I) = +1 or -1")->capture_default_str();
    s->add_option("--psi-sign", cfg.psi_sign, "additive character convention, +1 or -1")->capture_default_str();
  };
  auto add_tau = [&](CLI::App* s) {
    s->add_option("--tau-root-order", cfg.tau_root_order, "tau(varpi) = r zeta_n^k: n")->capture_default_str();
    s->add_option("--tau-root-exp", cfg.tau_root_exp, "tau(varpi) = r zeta_n^k: k")->capture_default_str();
    s->add_option("--tau-rational", cfg.tau_rational, "tau(varpi) = r zeta_n^k: r, e.g. 3 or 1/2")
        ->capture_default_str();
    s->add_option("--tau-residue", cfg.tau_residue, "tau on units: zeta_{q-1}^{r log_g u}")->capture_default_str();
  };

  auto* gamma = app.add_subcommand("gamma", "gamma(s, pi x tau, psi) as a rational function of q^{-s}");
  add_rep(gamma);
  add_tau(gamma);
  gamma->add_option("--depth", cfg.depth, "take both integrals by brute force at this grid depth (0: closed forms)");
  auto* scan = app.add_subcommand("pole-scan", "which quadratic tame tau gives a pole at s = 1");
  add_rep(scan);
  auto* param = app.add_subcommand("parameter", "the parameter record (tau_alpha, uniformizer, xi data)");
  add_rep(param);
  param->add_option("--xi-reading", cfg.xi_reading,
                    "monomial: keep gamma(s, tau_alpha, psi_alpha)^{-1} whole; coefficient: its q^{1/2-s} coefficient")
      ->capture_default_str();
  auto* q2 = app.add_subcommand("q2", "the Q2 gamma factor, compared with tau(2) 2^{1/2-s}");
  q2->add_option("-l,--l", cfg.l, "Sp_2l rank")->capture_default_str();
  q2->add_option("--psi-sign", cfg.psi_sign, "psi(x) = exp(+-pi i x)")->capture_default_str();
  add_tau(q2);
  auto* verify = app.add_subcommand("verify", "run an acceptance suite; exit 0 iff it passes");
  std::string suite_help = "suite name or all:";
  for (const auto& s : suites::catalogue()) suite_help += " " + s.name;
  verify->add_option("--suite", cfg.suite, suite_help)->capture_default_str();
  auto* oracle = app.add_subcommand("oracle", "brute-force Shimura integrals against the closed forms, with timing");
  add_rep(oracle);
  add_tau(oracle);
  oracle->add_option("--depth", cfg.depth, "grid depth (default 4, or 5 for p = 2)");

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();

  cli::Outcome out;
  try {
    out = cli::execute(cfg);
  } catch (const cli::InputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "unsupported input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (cfg.format == "json") std::cout << out.doc.dump(2) << "\n";
  else std::cout << out.text;

  if (const char* dir = std::getenv("RSGAMMA_OUT_DIR")) {
    std::ofstream f(std::string(dir) + "/" + cfg.command + ".json");
    if (!f) {
      std::cerr << "cannot write report under " << dir << "\n";
      return 2;
    }
    f << out.doc.dump(2) << "\n";
  }
  return out.status;
}
