#include "rsg/serialize.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace rsg {

using nlohmann::json;

namespace {

// an integer as a JSON number when it fits in a long, else a decimal string
json int_json(const mpz_class& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

mpz_class int_of(const json& v) {
  if (v.is_string()) return mpz_class(v.get<std::string>());
  return mpz_class(v.get<long>());
}

json mpq_pair(const mpq_class& c) { return json::array({int_json(c.get_num()), int_json(c.get_den())}); }

mpq_class mpq_of(const json& num, const json& den) {
  mpq_class r(int_of(num), int_of(den));
  r.canonicalize();
  return r;
}

}  // namespace

json to_json(const Scalar& x) {
  json coeffs = json::array();
  for (const Scalar::Term& t : x.terms()) {
    json p = mpq_pair(t.c);
    coeffs.push_back(json::array({t.k, t.e, p[0], p[1]}));
  }
  return json{{"n", x.order()}, {"q", x.q()}, {"coeffs", coeffs}};
}

Scalar scalar_from_json(const json& j) {
  u64 n = j.at("n").get<u64>();
  u64 q = j.value("q", u64{0});
  Scalar r(0);
  for (const json& t : j.at("coeffs")) {
    if (!t.is_array() || t.size() != 4) throw std::invalid_argument("scalar_from_json: malformed term");
    Scalar term = Scalar(mpq_of(t[2], t[3])) * Scalar::zeta(n, t[0].get<i64>());
    int e = t[1].get<int>();
    if (e != 0) {
      if (!q) throw std::invalid_argument("scalar_from_json: sqrt(q) term without q");
      term = term * Scalar::sqrt_q_pow(q, e);
    }
    r += term;
  }
  if (n % r.order() == 0) r = r.lifted(n);
  return q ? r.with_q(q) : r;
}

json to_json(const PAdic& x) {
  if (x.is_zero()) {
    return json{{"p", x.p()}, {"zero", true}, {"abs_prec", x.is_exact_zero() ? -1 : x.abs_precision()}};
  }
  return json{{"p", x.p()}, {"zero", false}, {"v", x.valuation()}, {"unit", x.unit()}, {"prec", x.precision()}};
}

PAdic padic_from_json(const json& j) {
  u64 p = j.at("p").get<u64>();
  if (j.at("zero").get<bool>()) {
    int a = j.at("abs_prec").get<int>();
    return PAdic::zero(p, a < 0 ? PAdic::kInf : a);
  }
  return PAdic::make(p, j.at("v").get<int>(), j.at("unit").get<u64>(), j.at("prec").get<int>());
}

json to_json(const RatFunc& f) {
  json num = json::array(), den = json::array();
  for (const Scalar& c : f.num()) num.push_back(to_json(c));
  for (const Scalar& c : f.den()) den.push_back(to_json(c));
  return json{{"shift", f.shift()}, {"num", num}, {"den", den}};
}

RatFunc ratfunc_from_json(const json& j) {
  Poly num, den;
  for (const json& c : j.at("num")) num.push_back(scalar_from_json(c));
  for (const json& c : j.at("den")) den.push_back(scalar_from_json(c));
  if (num.empty()) return RatFunc();
  return RatFunc::from_polys(std::move(num), std::move(den), j.at("shift").get<int>());
}

json to_json(const TameCharacter& t) {
  return json{{"p", t.p}, {"varpi", to_json(t.varpi)}, {"value_at_varpi", to_json(t.value)},
              {"residue_exponent", t.residue_exponent}, {"describe", t.describe()}};
}

TameCharacter tame_from_json(const json& j) {
  return TameCharacter::make(padic_from_json(j.at("varpi")), scalar_from_json(j.at("value_at_varpi")),
                             j.at("residue_exponent").get<i64>());
}

json to_json(const ParamRecord& r) {
  return json{{"p", r.p},
              {"l", r.l},
              {"alpha", r.alpha},
              {"omega_sign", r.omega_sign},
              {"psi_sign", r.psi_sign},
              {"tau_alpha", to_json(r.tau_alpha)},
              {"pi1_uniformizer", to_json(r.pi1_uniformizer)},
              {"xi_residue_exponent", r.xi_residue_exponent},
              {"xi_zeta", to_json(r.xi_zeta)},
              {"xi_zeta_monomial", to_json(r.xi_zeta_monomial)},
              {"xi_zeta_tokens", r.xi_zeta_tokens},
              {"induction_applies", r.induction_applies}};
}

ParamRecord param_record_from_json(const json& j) {
  ParamRecord r;
  r.p = j.at("p").get<u64>();
  r.l = j.at("l").get<int>();
  r.alpha = j.at("alpha").get<i64>();
  r.omega_sign = j.at("omega_sign").get<int>();
  r.psi_sign = j.at("psi_sign").get<int>();
  r.tau_alpha = tame_from_json(j.at("tau_alpha"));
  r.pi1_uniformizer = padic_from_json(j.at("pi1_uniformizer"));
  r.xi_residue_exponent = j.at("xi_residue_exponent").get<i64>();
  r.xi_zeta = scalar_from_json(j.at("xi_zeta"));
  r.xi_zeta_monomial = ratfunc_from_json(j.at("xi_zeta_monomial"));
  r.xi_zeta_tokens = j.at("xi_zeta_tokens").get<std::vector<std::string>>();
  r.induction_applies = j.at("induction_applies").get<bool>();
  return r;
}

json to_float_json(const Scalar& x) {
  auto z = x.embed();
  // rounding residue of an exactly zero part
  double tiny = 1e-12 * std::abs(z);
  double re = std::abs(z.real()) < tiny ? 0.0 : z.real();
  double im = std::abs(z.imag()) < tiny ? 0.0 : z.imag();
  return json::array({re, im});
}

json to_float_json(const RatFunc& f) {
  json num = json::array(), den = json::array();
  for (const Scalar& c : f.num()) num.push_back(to_float_json(c));
  for (const Scalar& c : f.den()) den.push_back(to_float_json(c));
  return json{{"shift", f.shift()}, {"num", num}, {"den", den}};
}

}  // namespace rsg
