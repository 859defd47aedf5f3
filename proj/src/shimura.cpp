#include "rsg/shimura.hpp"

#include <chrono>
#include <numeric>
#include <optional>
#include <sstream>

#include "rsg/tate.hpp"
#include "rsg/weilrep.hpp"

namespace rsg {

namespace {

PAdic K(u64 p, i64 n) { return PAdic::from_int(p, n, PAdic::max_precision(p)); }

Scalar sq(u64 p, i64 e) { return Scalar::sqrt_q_pow(p, e); }

bool in_principal_units(const PAdic& a) {
  if (a.is_zero() || a.valuation() != 0) return false;
  return a.p() == 2 || (a - K(a.p(), 1)).in_ideal(1);
}

void same_psi(const SSParams& prm, const SectionData& d) {
  if (prm.psi.p != d.psi.p || prm.psi.multiplier() != d.psi.multiplier())
    throw std::domain_error("Shimura integral: Whittaker and section characters differ");
}

// 1: tau on units is (varpi, .) gamma_psi; 2: it is gamma_psi; 0: neither.
// Both restrictions are characters of o^x, so the primitive root decides.
int unit_case(const SectionData& d) {
  u64 p = d.tau.p;
  if (p == 2) return d.tau.is_unramified() ? 1 : 0;
  u64 g = primitive_root(p);
  Scalar tg = d.tau.on_residue(g), gg = weil_factor(d.psi, static_cast<i64>(g));
  if (tg == gg * Scalar(hilbert(d.tau.varpi, K(p, static_cast<i64>(g))))) return 1;
  if (tg == gg) return 2;
  return 0;
}

// exponents of gamma_psi(b) tau(b) / tau(varpi)^{v(b)} in Z/L, L = lcm(8, q - 1)
struct Phases {
  u64 p, L;
  PAdic varpi;
  std::map<SquareClass, u64> gam;
  std::vector<int> dlog;
  i64 r;

  explicit Phases(const SectionData& d)
      : p(d.tau.p), L(std::lcm<u64>(8, d.tau.p == 2 ? 1 : d.tau.p - 1)), varpi(d.tau.varpi),
        r(d.tau.residue_exponent) {
    for (const PAdic& rep : square_class_reps(p, varpi))
      gam[square_class_of(rep, varpi)] =
          static_cast<u64>(eighth_root_exponent(weil_factor(d.psi, rep))) * (L / 8);
    if (p != 2) dlog = dlog_table(p, primitive_root(p));
  }

  u64 of(const PAdic& b) const {
    u64 e = gam.at(square_class_of(b, varpi));
    if (p == 2 || r == 0) return e;
    PAdic u = b * varpi.pow(-b.valuation());
    i64 t = (r % static_cast<i64>(p - 1)) * dlog[u.unit_mod(1)];
    t %= static_cast<i64>(p - 1);
    if (t < 0) t += static_cast<i64>(p - 1);
    return e + static_cast<u64>(t) * (L / (p - 1));
  }
};

struct SectionTerm {
  bool in = false;
  int sign = 1;
  PAdic b;
};

// <g, eps> = <p, eps sigma(p, n_y)> <n_y, 1> with n_y = (1 0; y 1), y = g21/g22,
// p upper triangular with diagonal (1/g22, g22); f_s(<n_y,1>) = 1 when n_y lies in N
SectionTerm section_parts(const SectionData& d, const MpElement& g) {
  const PAdic &g21 = g.g.c, &g22 = g.g.d;
  int k0 = d.depth();
  if (g22.is_zero()) {
    if (g22.is_exact_zero()) return {};
    throw PrecisionError("section_eval: g22 is an inexact zero");
  }
  PAdic y = g21 / g22;
  if (y.is_zero()) {
    if (y.abs_precision() < k0) throw PrecisionError("section_eval: cannot place g21/g22");
  } else if (y.valuation() < k0) {
    return {};
  }
  Mat2 pm{g.g.a - g.g.b * y, g.g.b, PAdic::zero(g22.p()), g22};
  return {true, g.eps * cocycle(pm, Mat2::lower(y)), g22.inverse()};
}

std::optional<std::pair<u64, u64>> whittaker_root(const SSParams& prm, const PAdic& a, const PAdic& c,
                                                  const PAdic& x, const std::vector<PAdic>& r) {
  if (r.size() != static_cast<size_t>(prm.l - 2))
    throw std::invalid_argument("whittaker_eval: expected l - 2 coordinates in r");
  if (!in_principal_units(a) || !c.in_ideal(1) || !x.in_ideal(1)) return std::nullopt;
  for (const PAdic& t : r)
    if (!t.in_ideal(1)) return std::nullopt;
  if (c.is_zero()) return std::pair<u64, u64>{1, 0};
  return prm.psi.exponent(-(c / (a * prm.varpi)));
}

}  // namespace

SSParams SSParams::make(u64 p, int l, i64 alpha, int omega_sign, int psi_sign) {
  if (l < 2) throw std::domain_error("SSParams: l must be at least 2");
  if (omega_sign != 1 && omega_sign != -1) throw std::domain_error("SSParams: omega(-I) must be +-1");
  SSParams s;
  s.p = p;
  s.l = l;
  s.varpi = K(p, static_cast<i64>(p));
  if (p == 2) {
    // one simple supercuspidal: alpha and omega(-I) are both trivial
    s.alpha = 1;
    s.omega_sign = 1;
  } else {
    if (alpha % static_cast<i64>(p) == 0) throw std::domain_error("SSParams: alpha must be a unit");
    s.alpha = legendre(alpha, p) == 1 ? 1 : static_cast<i64>(least_nonresidue(p));
    s.omega_sign = omega_sign;
  }
  s.psi = AdditiveCharacter::standard(p, psi_sign).twisted(K(p, s.alpha));
  return s;
}

SSParams SSParams::with_psi(const AdditiveCharacter& other) const {
  if (other.p != p) throw std::domain_error("SSParams: character over another field");
  SSParams s = *this;
  s.psi = other;
  return s;
}

Scalar whittaker_eval(const SSParams& params, const PAdic& a, const PAdic& c, const PAdic& x,
                      const std::vector<PAdic>& r) {
  auto w = whittaker_root(params, a, c, x, r);
  if (!w) return Scalar(0).with_q(params.p);
  return Scalar::zeta(w->first, static_cast<i64>(w->second)).with_q(params.p);
}

RatFunc section_eval(const SectionData& data, const MpElement& g) {
  SectionTerm t = section_parts(data, g);
  if (!t.in) return RatFunc();
  int v = t.b.valuation();
  Scalar c = Scalar(t.sign) * sq(data.tau.p, -v) * weil_factor(data.psi, t.b) * data.tau.eval(t.b);
  return RatFunc::monomial(c, v);
}

RatFunc intertwine_A(const SectionData& d) {
  u64 p = d.tau.p;
  if (p == 2) {
    if (!d.tau.is_unramified()) throw std::domain_error("intertwine_A: tau must be unramified over Q2");
    // 2^{-s} tau(2) vol^x(1 + p^3)
    return RatFunc::monomial(d.tau.value * Scalar(mpq_class(1, 4)), 1);
  }
  switch (unit_case(d)) {
    case 1: return RatFunc::monomial(weil_factor(d.psi, d.tau.varpi).inverse() * d.tau.value, 1);
    case 2: return RatFunc(sq(p, -1));
  }
  throw std::domain_error("intertwine_A: tau on units is neither gamma_psi nor (varpi,.) gamma_psi");
}

RatFunc intertwine_closed(const SectionData& d, const PAdic& c, const PAdic& a) {
  u64 p = d.tau.p;
  if (c.is_zero()) throw std::domain_error("intertwine_closed: c = 0 has no closed form; use the shell sum");
  if (!c.in_ideal(1) || !in_principal_units(a)) throw std::domain_error("intertwine_closed: need c in p, a in 1+p");
  Scalar q(static_cast<long>(p));
  RatFunc L2 = RatFunc::inverse_binomial(q * d.tau.value.pow(2), 2);
  RatFunc A = intertwine_A(d);
  int v = c.valuation();
  if (p != 2) {
    // tau and gamma_psi only see c mod p^2 when v(c) = 1
    if (v == 1) return RatFunc::monomial(d.tau.eval(c) * weil_factor(d.psi, -c).inverse(), 1);
    return A * RatFunc(d.tau.eval(-1) * (q - Scalar(1))) * (L2 - RatFunc(1));
  }
  if (v == 1) return RatFunc(2) * A * RatFunc(weil_factor(d.psi, -(a * c)).inverse());
  if (v == 2) return RatFunc();
  Scalar half = d.psi.eval(PAdic::from_rational(2, mpq_class(1, 2)));
  Scalar k = Scalar(2) * weil_factor(d.psi, 2).inverse() * Scalar(hilbert(-c, a)) *
             weil_factor(d.psi, a).inverse() * (Scalar(1) + half);
  return A * RatFunc(k) * (L2 - RatFunc(1));
}

void ShellSeries::add_scaled(const ShellSeries& o, const Scalar& w) {
  if (ratio.is_zero()) ratio = o.ratio;
  else if (!o.ratio.is_zero() && o.ratio != ratio) throw std::logic_error("ShellSeries: tail ratios differ");
  for (const auto& [k, v] : o.head) head[k] += w * v;
  for (const auto& [k, v] : o.tail) tail[k] += w * v;
}

RatFunc ShellSeries::to_ratfunc() const {
  RatFunc h, t;
  for (const auto& [k, v] : head)
    if (!v.is_zero()) h = h + RatFunc::monomial(v, k);
  for (const auto& [k, v] : tail)
    if (!v.is_zero()) t = t + RatFunc::monomial(v, k);
  if (t.is_zero()) return h;
  return h + t * RatFunc::inverse_binomial(ratio, 2);
}

ShellSeries intertwine_shell_series(const SectionData& d, const PAdic& c, const PAdic& a) {
  u64 p = d.tau.p;
  int k = d.depth();
  if (!in_principal_units(a)) throw std::domain_error("intertwine_shells: a must lie in 1 + p");
  if (!c.in_ideal(1)) throw std::domain_error("intertwine_shells: c must lie in p");
  Phases ph(d);
  const MpElement winv = mp_inverse({Mat2::w1(p), 1});
  const MpElement bb{{a, PAdic::zero(p), c / a, a.inverse()}, 1};
  std::vector<PAdic> units;
  for (u64 u = 1; u < ipow(p, k); ++u)
    if (u % p) units.push_back(K(p, static_cast<i64>(u)));
  const Scalar tm1 = d.tau.eval(-1);

  // u over varpi^{-l}(u0 + p^k): additive volume sqrt(q)^{1-2k+2l}; the section
  // contributes sqrt(q)^{-l} X^l tau(varpi)^l, since b = a/u has valuation l
  auto shell = [&](int l) {
    CycVec acc(ph.L);
    PAdic scale = d.tau.varpi.pow(-l);
    for (const PAdic& u0 : units) {
      MpElement h = mp_mul(mp_mul(winv, {Mat2::upper(scale * u0), 1}), bb);
      SectionTerm t = section_parts(d, h);
      if (!t.in) continue;
      if (t.b.valuation() != l) throw std::logic_error("intertwine_shells: unexpected |b|");
      acc.add(ph.of(t.b) + (t.sign < 0 ? ph.L / 2 : 0), 1);
    }
    return acc.to_scalar() * sq(p, 1 - 2 * k + l) * d.tau.value.pow(l) * tm1;
  };

  ShellSeries s;
  s.ratio = Scalar(static_cast<long>(p)) * d.tau.value.pow(2);
  // below l = -1 the lower-left entry a^2/u + c has valuation <= -2 as well
  for (int l = -1; l < k; ++l) s.head[l] = shell(l);
  Scalar t0 = shell(k), t1 = shell(k + 1);
  if (shell(k + 2) != s.ratio * t0 || shell(k + 3) != s.ratio * t1)
    throw std::logic_error("intertwine_shells: shells are not periodic past the support depth");
  s.tail[k] = t0;
  s.tail[k + 1] = t1;
  return s;
}

RatFunc psi_closed(const SSParams& prm, const SectionData& d, bool intertwined) {
  same_psi(prm, d);
  u64 p = prm.p;
  Scalar q(static_cast<long>(p));
  Scalar beta2 = weil_beta(d.psi).pow(-2);
  if (p != 2) {
    // vol(p)^l vol(o) vol^x(1+p) vol(p^2)
    Scalar base = beta2 * weil_factor(d.psi, -1).inverse() * sq(p, -prm.l - 2) / (q - Scalar(1));
    if (!intertwined) return RatFunc(base);
    RatFunc L2 = RatFunc::inverse_binomial(q * d.tau.value.pow(2), 2);
    RatFunc Lam;
    switch (unit_case(d)) {
      case 1: Lam = RatFunc(1); break;
      case 2:
        Lam = RatFunc::monomial(-(d.tau.value * weil_factor(d.psi, d.tau.varpi) * sq(p, 1) *
                                  gauss_sum_varpi(d.psi.inverse())),
                                1);
        break;
      default: throw std::domain_error("psi_closed: tau on units is neither gamma_psi nor (varpi,.) gamma_psi");
    }
    return RatFunc(base * d.tau.eval(-1) * (q - Scalar(1))) * intertwine_A(d) *
           (L2 - RatFunc(1) - Lam * RatFunc((q - Scalar(1)).inverse()));
  }
  // 2^{-1} vol(o)^2 vol^x(1+p) vol(p^3) vol(p)^{l-1}
  Scalar base = beta2 * weil_factor(d.psi, -1) * sq(2, -4 - prm.l);
  if (!intertwined) return RatFunc(base);
  Scalar half = d.psi.eval(PAdic::from_rational(2, mpq_class(1, 2)));
  Scalar t2 = d.tau.value.pow(2);
  RatFunc ratio = RatFunc::from_polys({Scalar(-1), Scalar(0), Scalar(4) * t2}, {Scalar(1), Scalar(0), -(Scalar(2) * t2)});
  return RatFunc(Scalar(2) * base * (Scalar(1) + half) * weil_factor(d.psi, 2).inverse()) * intertwine_A(d) * ratio;
}

RatFunc psi_bruteforce(const SSParams& prm, const SectionData& d, int depth, bool intertwined, int beta_sign,
                       BruteStats* stats, u64 budget) {
  auto t_start = std::chrono::steady_clock::now();
  same_psi(prm, d);
  u64 p = prm.p;
  if (depth <= d.depth()) throw std::domain_error("psi_bruteforce: depth must exceed the depth of N");
  u64 n = ipow(p, depth - 1);
  u64 nx = p == 2 ? ipow(p, depth) : n;  // x over the support of phi
  u64 nr = ipow(n, prm.l - 2);
  long double est = static_cast<long double>(n) * n * nx * nr;
  if (est > static_cast<long double>(budget)) throw std::runtime_error("psi_bruteforce: point budget exceeded");

  const AdditiveCharacter& psi = d.psi;
  SchwartzFn phi = SchwartzFn::indicator(p, p == 2 ? 0 : 1);
  std::vector<PAdic> as, cs, xs;
  for (u64 i = 0; i < n; ++i) as.push_back(K(p, 1 + static_cast<i64>(p * i)));
  for (u64 j = 0; j < n; ++j) cs.push_back(j ? K(p, static_cast<i64>(p * j)) : prm.varpi.pow(depth));
  for (u64 i = 0; i < nx; ++i) xs.push_back(K(p, static_cast<i64>(p == 2 ? i : p * i)));
  std::vector<std::vector<PAdic>> rs(1);
  for (int k = 0; k < prm.l - 2; ++k) {
    std::vector<std::vector<PAdic>> next;
    for (const auto& r : rs)
      for (u64 i = 0; i < n; ++i) {
        auto r2 = r;
        r2.push_back(K(p, static_cast<i64>(p * i)));
        next.push_back(std::move(r2));
      }
    rs = std::move(next);
  }

  std::map<int, Scalar> plain;
  ShellSeries inter;
  u64 points = 0;
  for (const PAdic& c : cs) {
    const MpElement lc{Mat2::lower(c), 1};
    SchwartzFn Fc = weil_act(lc, phi, psi, beta_sign);
    for (const PAdic& a : as) {
      const MpElement ta{Mat2::diag(a), 1};
      MpElement bs = mp_mul(ta, lc);  // <b, sigma>, so omega(<b,1>) = sigma omega(ta) omega(lc)
      SchwartzFn G = weil_act(ta, Fc, psi, beta_sign);
      if (G.constancy_exp() > depth) throw std::runtime_error("psi_bruteforce: grid coarser than omega(b) phi");
      u64 L = std::lcm<u64>(G.root_order(), p);
      CycVec acc(L);
      bool any = false;
      for (const PAdic& x : xs) {
        auto idx = G.cell_index(x);
        for (const auto& r : rs) {
          ++points;
          auto w = whittaker_root(prm, a, c, x, r);
          if (!w || !idx) continue;
          if (L % w->first) throw std::logic_error("psi_bruteforce: Whittaker value outside the field");
          u64 shift = w->second * (L / w->first);
          for (const CycTerm& t : G.cell(*idx)) acc.add(t.e * (L / G.root_order()) + shift, t.c);
          any = true;
        }
      }
      if (!any) continue;
      Scalar S = Scalar(bs.eps) * acc.to_scalar() * sq(p, G.scale_exp());
      if (S.is_zero()) continue;
      if (!intertwined) {
        SectionTerm t = section_parts(d, {bs.g, 1});
        if (!t.in) continue;
        int v = t.b.valuation();
        plain[v] += S * Scalar(t.sign) * sq(p, -v) * weil_factor(psi, t.b) * d.tau.eval(t.b);
      } else {
        inter.add_scaled(intertwine_shell_series(d, c, a), S);
      }
    }
  }
  // d^x a over 1 + p^depth, dc, dx, dr over p^depth
  Scalar vol = Scalar(mpq_class(1, static_cast<unsigned long>((p == 2 ? 1 : p - 1) * n))) *
               sq(p, (1 - 2 * depth) * (prm.l));
  RatFunc out;
  if (!intertwined) {
    for (const auto& [k, v] : plain)
      if (!v.is_zero()) out = out + RatFunc::monomial(v, k);
  } else {
    out = inter.to_ratfunc();
  }
  if (stats) {
    stats->points = points;
    stats->seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  }
  return out * RatFunc(vol);
}

RatFunc c_factor(const TameCharacter& tau) {
  Scalar t = tau.eval(2).pow(-2);
  if (tau.p != 2) return RatFunc(t);
  // |2|^{-2(s-1/2)} = 2^{2s-1} = X^{-2} / 2
  return RatFunc::monomial(t * Scalar(mpq_class(1, 2)), -2);
}

RatFunc gamma_assemble(const SSParams& params, const TameCharacter& tau, const AdditiveCharacter& psi,
                       int brute_depth) {
  SSParams prm = params.with_psi(psi);
  SectionData d{tau, psi};
  RatFunc ratio = brute_depth > 0
                      ? psi_bruteforce(prm, d, brute_depth, true) / psi_bruteforce(prm, d, brute_depth, false)
                      : psi_closed(prm, d, true) / psi_closed(prm, d, false);
  Scalar k = Scalar(prm.omega_sign) * tau.eval(-1).pow(prm.l) * weil_factor(psi, -1) * weil_index(psi);
  return RatFunc(k) * c_factor(tau) * gamma_doubled(tau, psi) * ratio;
}

std::vector<TameCharacter> quadratic_tame_characters(const PAdic& varpi) {
  u64 p = varpi.p();
  std::vector<TameCharacter> out;
  for (i64 r : {i64{0}, static_cast<i64>(p - 1) / 2}) {
    if (p == 2 && r != 0) continue;
    for (long v : {1L, -1L}) out.push_back(TameCharacter::make(varpi, Scalar(v), r));
  }
  return out;
}

PoleScan pole_scan(const SSParams& params) {
  if (params.p == 2) throw std::domain_error("pole_scan: p must be odd");
  u64 p = params.p;
  PoleScan r;
  r.candidates = quadratic_tame_characters(params.varpi);
  Scalar s1 = point_s_equals_one(p);
  for (size_t i = 0; i < r.candidates.size(); ++i) {
    int o = gamma_assemble(params, r.candidates[i], params.psi).order_at(s1);
    r.orders.push_back(o);
    if (o < 0) {
      if (r.pole_index >= 0) throw std::logic_error("pole_scan: more than one pole at s = 1");
      r.pole_index = static_cast<int>(i);
    }
  }
  if (r.pole_index < 0) throw std::logic_error("pole_scan: no pole at s = 1");
  const TameCharacter& t = r.tau();
  u64 g = primitive_root(p);
  r.unit_condition = t.on_residue(g) == weil_factor(params.psi, static_cast<i64>(g));
  Scalar G = gauss_sum_varpi(params.psi.inverse());
  r.varpi_condition = t.value == weil_factor(params.psi, params.varpi).inverse() * sq(p, 1) * G.inverse();
  return r;
}

}  // namespace rsg
