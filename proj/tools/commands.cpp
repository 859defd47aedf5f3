#include "commands.hpp"

#include <chrono>

#include "rsg/langlands.hpp"
#include "rsg/serialize.hpp"
#include "rsg/shimura.hpp"
#include "rsg/tate.hpp"

namespace rsg::cli {

using nlohmann::json;

namespace {

struct Report {
  json doc;
  int status = 0;
  std::string text;
};

mpq_class parse_rational(const std::string& s) {
  mpq_class r;
  if (r.set_str(s, 10) != 0) throw InputError("not a rational number: " + s);
  r.canonicalize();
  if (r == 0) throw InputError("tau(varpi) must be nonzero");
  return r;
}

void validate(const Config& c) {
  if (!is_prime(c.p)) throw InputError("p must be prime");
  if (PAdic::max_precision(c.p) < 4) throw InputError("p too large for word-sized p-adic digits");
  if (c.l < 2) throw InputError("l must be at least 2");
  if (c.omega != 1 && c.omega != -1) throw InputError("omega must be 1 or -1");
  if (c.psi_sign != 1 && c.psi_sign != -1) throw InputError("psi-sign must be 1 or -1");
  if (c.tau_root_order == 0) throw InputError("tau-root-order must be positive");
  if (c.p == 2) {
    if (c.alpha != 1) throw InputError("p = 2 has a single simple supercuspidal; alpha must be 1");
    if (c.omega != 1) throw InputError("p = 2 forces omega(-I) = 1");
    if (c.tau_residue != 0) throw InputError("over Q2 every tame character is unramified; tau-residue must be 0");
    if (c.command == "pole-scan" || c.command == "parameter")
      throw InputError(c.command + " requires odd p");
  } else if (c.alpha % static_cast<i64>(c.p) == 0) {
    throw InputError("alpha must be a unit");
  }
  if (c.tau_residue < 0 || (c.p > 2 && c.tau_residue >= static_cast<i64>(c.p - 1)))
    throw InputError("tau-residue must lie in [0, q-1)");
  if (c.depth < 0) throw InputError("depth must be nonnegative");
  if (c.xi_reading != "monomial" && c.xi_reading != "coefficient")
    throw InputError("xi-reading must be monomial or coefficient");
}

SSParams params_of(const Config& c) { return SSParams::make(c.p, c.l, c.alpha, c.omega, c.psi_sign); }

TameCharacter tau_of(const Config& c, const PAdic& varpi) {
  Scalar v = Scalar(parse_rational(c.tau_rational)) * Scalar::zeta(c.tau_root_order, c.tau_root_exp);
  return TameCharacter::make(varpi, v, c.tau_residue);
}

json inputs_of(const Config& c) {
  json j{{"command", c.command}, {"seed", c.seed}};
  if (c.command == "verify") {
    j["suite"] = c.suite;
    return j;
  }
  j["p"] = c.p;
  j["l"] = c.l;
  if (c.command != "q2") {
    SSParams prm = params_of(c);
    j["alpha"] = prm.alpha;  // canonical: 1 or the least non-residue
    j["omega_sign"] = prm.omega_sign;
  }
  j["psi"] = AdditiveCharacter::standard(c.p, c.psi_sign).describe();
  j["psi_sign"] = c.psi_sign;
  if (c.command == "gamma" || c.command == "q2" || c.command == "oracle")
    j["tau"] = {{"root_order", c.tau_root_order}, {"root_exp", c.tau_root_exp}, {"rational", c.tau_rational},
                {"residue_exponent", c.tau_residue}};
  if (c.command == "gamma" || c.command == "oracle") j["depth"] = c.depth;
  if (c.command == "parameter") j["xi_reading"] = c.xi_reading;
  return j;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Report cmd_gamma(const Config& c) {
  SSParams prm = params_of(c);
  TameCharacter tau = tau_of(c, prm.varpi);
  auto t0 = std::chrono::steady_clock::now();
  RatFunc g = gamma_assemble(prm, tau, prm.psi, c.depth);
  Report r;
  r.doc["exact"] = {{"gamma", to_json(g)}, {"gamma_text", g.to_string()}, {"tau", to_json(tau)}};
  r.doc["float"] = {{"gamma", to_float_json(g)}};
  r.doc["timing"] = {{"gamma_seconds", since(t0)}};
  r.text = "gamma(s, pi x tau, psi) = " + g.to_string() + "   [X = q^{-s}, tau = " + tau.describe() + "]\n";
  return r;
}

Report cmd_pole_scan(const Config& c) {
  SSParams prm = params_of(c);
  auto t0 = std::chrono::steady_clock::now();
  PoleScan s = pole_scan(prm);
  Report r;
  json cands = json::array();
  std::string text;
  for (size_t i = 0; i < s.candidates.size(); ++i) {
    cands.push_back({{"tau", to_json(s.candidates[i])}, {"order_at_s_1", s.orders[i]},
                     {"pole", static_cast<int>(i) == s.pole_index}});
    text += "  " + s.candidates[i].describe() + ": order " + std::to_string(s.orders[i]) +
            (static_cast<int>(i) == s.pole_index ? "  <- pole\n" : "\n");
  }
  r.doc["exact"] = {{"candidates", cands},
                    {"pole_index", s.pole_index},
                    {"tau", to_json(s.tau())},
                    {"unit_condition", s.unit_condition},
                    {"varpi_condition", s.varpi_condition}};
  r.doc["float"] = {{"tau_at_varpi", to_float_json(s.tau().value)}};
  r.doc["timing"] = {{"scan_seconds", since(t0)}};
  r.text = "pole scan over the four quadratic tame characters:\n" + text +
           "unit condition: " + (s.unit_condition ? "holds" : "fails") +
           ", varpi condition: " + (s.varpi_condition ? "holds" : "fails") + "\n";
  if (!s.unit_condition || !s.varpi_condition) r.status = 1;
  return r;
}

Report cmd_parameter(const Config& c) {
  SSParams prm = params_of(c);
  auto t0 = std::chrono::steady_clock::now();
  ParamRecord rec = build_parameter(prm);
  Report r;
  json ex = {{"record", to_json(rec)}};
  json fl = {{"pi1_uniformizer", rec.pi1_uniformizer.to_string()}};
  if (c.xi_reading == "coefficient") {
    ex["xi_zeta"] = to_json(rec.xi_zeta);
    fl["xi_zeta"] = to_float_json(rec.xi_zeta);
  } else {
    ex["xi_zeta"] = to_json(rec.xi_zeta_monomial);
    fl["xi_zeta"] = to_float_json(rec.xi_zeta_monomial);
  }
  r.doc["exact"] = ex;
  r.doc["float"] = fl;
  r.doc["tokens"] = rec.xi_zeta_tokens;
  r.doc["timing"] = {{"build_seconds", since(t0)}};
  r.text = "tau_alpha: " + rec.tau_alpha.describe() + "\n" +
           "GL uniformizer: varpi / " + std::to_string((c.l % 2 ? 4 : -4) * rec.alpha) + " = " +
           rec.pi1_uniformizer.to_string() + "\n" +
           "xi residue exponent: " + std::to_string(rec.xi_residue_exponent) + " mod " + std::to_string(c.p - 1) +
           "\n" + "xi(zeta) = " +
           (c.xi_reading == "coefficient" ? rec.xi_zeta.to_string() : rec.xi_zeta_monomial.to_string()) + " * " +
           rec.xi_zeta_tokens.front() + "\n" +
           (rec.induction_applies ? "" : "note: p divides 2l; the induction reading does not apply\n");
  return r;
}

Report cmd_q2(const Config& c) {
  SSParams prm = SSParams::make(2, c.l, 1, 1, c.psi_sign);
  TameCharacter tau = tau_of(c, prm.varpi);
  auto t0 = std::chrono::steady_clock::now();
  RatFunc g = gamma_assemble(prm, tau, prm.psi);
  RatFunc want = RatFunc::monomial(tau.value * Scalar::sqrt_q_pow(2, 1), 1);
  Scalar coeff;
  int k = 0;
  bool mono = g.is_monomial(&coeff, &k);
  Report r;
  r.doc["exact"] = {{"gamma", to_json(g)},
                    {"gamma_text", g.to_string()},
                    {"expected", to_json(want)},
                    {"matches", g == want},
                    {"coefficient_over_sqrt2", mono ? to_json(coeff * Scalar::sqrt_q_pow(2, -1)) : json()},
                    {"x_exponent", mono ? json(k) : json()}};
  r.doc["float"] = {{"gamma", to_float_json(g)}};
  r.doc["timing"] = {{"gamma_seconds", since(t0)}};
  r.text = "gamma(s, pi x tau, psi) = " + g.to_string() + "\nexpected tau(2) 2^{1/2-s} = " + want.to_string() +
           "\n" + (g == want ? "match\n" : "MISMATCH\n");
  if (!(g == want)) r.status = 1;
  return r;
}

Report cmd_verify(const Config& c) {
  std::vector<std::string> names;
  if (c.suite == "all") {
    for (const auto& s : suites::catalogue()) names.push_back(s.name);
  } else {
    bool known = false;
    for (const auto& s : suites::catalogue()) known = known || s.name == c.suite;
    if (!known) throw InputError("unknown suite: " + c.suite);
    names.push_back(c.suite);
  }
  Report r;
  json results = json::array(), timing = json::object();
  for (const std::string& n : names) {
    suites::SuiteResult s = suites::run(n, c.seed);
    results.push_back({{"id", s.id},
                       {"name", s.name},
                       {"pass", s.ok},
                       {"checked", s.checked},
                       {"first_counterexample", s.first_counterexample.empty() ? json() : json(s.first_counterexample)}});
    timing[s.name] = s.seconds;
    r.text += std::string(s.ok ? "PASS " : "FAIL ") + s.name + " (" + std::to_string(s.checked) + " checks)\n";
    if (!s.first_counterexample.empty()) r.text += "  first counterexample: " + s.first_counterexample + "\n";
    if (!s.ok) r.status = 1;
  }
  r.doc["suite_results"] = results;
  r.doc["timing"] = timing;
  return r;
}

Report cmd_oracle(const Config& c) {
  SSParams prm = params_of(c);
  TameCharacter tau = tau_of(c, prm.varpi);
  SectionData d{tau, prm.psi};
  int depth = c.depth > 0 ? c.depth : (c.p == 2 ? 5 : 4);
  Report r;
  json ex = json::object(), timing = json::object();
  std::string text;
  for (bool inter : {false, true}) {
    std::string key = inter ? "intertwined" : "plain";
    BruteStats st;
    RatFunc brute = psi_bruteforce(prm, d, depth, inter, 1, &st);
    auto t0 = std::chrono::steady_clock::now();
    RatFunc closed = psi_closed(prm, d, inter);
    double tc = since(t0);
    bool ok = brute == closed;
    ex[key] = {{"bruteforce", to_json(brute)}, {"closed", to_json(closed)}, {"match", ok}, {"grid_points", st.points}};
    timing[key] = {{"bruteforce_seconds", st.seconds}, {"closed_seconds", tc}};
    text += key + ": brute force " + brute.to_string() + " over " + std::to_string(st.points) + " points; closed " +
            closed.to_string() + (ok ? "  match\n" : "  MISMATCH\n");
    if (!ok) {
      r.status = 1;
      if (!r.doc.contains("first_counterexample"))
        r.doc["first_counterexample"] = {{"integral", key}, {"tau", to_json(tau)}, {"depth", depth}};
    }
  }
  r.doc["exact"] = ex;
  r.doc["timing"] = timing;
  r.text = text;
  return r;
}

}  // namespace

Outcome execute(Config c) {
  if (c.command == "q2") c.p = 2;
  validate(c);
  Report rep;
  if (c.command == "gamma") rep = cmd_gamma(c);
  else if (c.command == "pole-scan") rep = cmd_pole_scan(c);
  else if (c.command == "parameter") rep = cmd_parameter(c);
  else if (c.command == "q2") rep = cmd_q2(c);
  else if (c.command == "verify") rep = cmd_verify(c);
  else if (c.command == "oracle") rep = cmd_oracle(c);
  else throw InputError("unknown command: " + c.command);
  Outcome o;
  o.doc = {{"schema_version", kSchemaVersion},
           {"inputs", inputs_of(c)},
           {"exact", rep.doc.value("exact", json::object())},
           {"float", rep.doc.value("float", json::object())},
           {"tokens", rep.doc.value("tokens", json::array())},
           {"timing", c.timing ? rep.doc.value("timing", json::object()) : json()},
           {"suite_results", rep.doc.value("suite_results", json::array())}};
  if (rep.doc.contains("first_counterexample")) o.doc["first_counterexample"] = rep.doc["first_counterexample"];
  o.text = rep.text;
  o.status = rep.status;
  return o;
}

}  // namespace rsg::cli
