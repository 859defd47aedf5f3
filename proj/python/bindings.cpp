// Python bindings: the CLI's command layer plus a few scalar-valued helpers.
// Reports cross the boundary as JSON text and are decoded on the Python side.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "commands.hpp"
#include "rsg/characters.hpp"
#include "rsg/serialize.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

rsg::cli::Config config_from(const json& j) {
  rsg::cli::Config c;
  c.command = j.at("command").get<std::string>();
  c.p = j.value("p", c.p);
  c.l = j.value("l", c.l);
  c.alpha = j.value("alpha", c.alpha);
  c.omega = j.value("omega", c.omega);
  c.psi_sign = j.value("psi_sign", c.psi_sign);
  c.tau_root_order = j.value("tau_root_order", c.tau_root_order);
  c.tau_root_exp = j.value("tau_root_exp", c.tau_root_exp);
  c.tau_rational = j.value("tau_rational", c.tau_rational);
  c.tau_residue = j.value("tau_residue", c.tau_residue);
  c.depth = j.value("depth", c.depth);
  c.seed = j.value("seed", c.seed);
  c.xi_reading = j.value("xi_reading", c.xi_reading);
  c.suite = j.value("suite", c.suite);
  c.timing = j.value("timing", c.timing);
  return c;
}

rsg::PAdic rational(rsg::u64 p, const std::string& s) {
  mpq_class r;
  if (r.set_str(s, 10) != 0) throw rsg::cli::InputError("not a rational number: " + s);
  r.canonicalize();
  if (r == 0) throw rsg::cli::InputError("expected a nonzero rational");
  return rsg::PAdic::from_rational(p, r);
}

void require_prime(rsg::u64 p) {
  if (!rsg::is_prime(p)) throw rsg::cli::InputError("p must be prime");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact gamma factors and parameters of simple supercuspidals of Sp_2l";
  py::register_exception<rsg::cli::InputError>(m, "InputError", PyExc_ValueError);

  // (report JSON, text rendering, status) for one command configuration
  m.def("execute", [](const std::string& config_json) {
    rsg::cli::Outcome o = rsg::cli::execute(config_from(json::parse(config_json)));
    return py::make_tuple(o.doc.dump(), o.text, o.status);
  });

  m.def("suite_names", [] {
    std::vector<std::string> out;
    for (const auto& s : rsg::suites::catalogue()) out.push_back(s.name);
    return out;
  });

  m.def("hilbert_symbol", [](rsg::u64 p, const std::string& a, const std::string& b) {
    require_prime(p);
    return rsg::hilbert(rational(p, a), rational(p, b));
  });

  // gamma_psi(a) for psi = standard(p, sign): exact JSON and float rendering
  m.def("weil_factor", [](rsg::u64 p, const std::string& a, int psi_sign) {
    require_prime(p);
    if (psi_sign != 1 && psi_sign != -1) throw rsg::cli::InputError("psi_sign must be 1 or -1");
    rsg::Scalar g = rsg::weil_factor(rsg::AdditiveCharacter::standard(p, psi_sign), rational(p, a));
    return json{{"exact", rsg::to_json(g)}, {"float", rsg::to_float_json(g)}}.dump();
  });
}
