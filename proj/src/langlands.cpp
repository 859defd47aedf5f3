#include "rsg/langlands.hpp"

#include <stdexcept>
#include <utility>

#include "rsg/tate.hpp"

namespace rsg {

namespace {

void require_odd(u64 p, const char* who) {
  if (p == 2) throw std::domain_error(std::string(who) + ": p = 2 is not supported");
}

// determinant over Q by elimination
mpq_class det_q(std::vector<std::vector<mpq_class>> m) {
  size_t n = m.size();
  mpq_class det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      mpq_class f = m[r][c] / m[c][c];
      for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

}  // namespace

TameCharacter tau_alpha(const AdditiveCharacter& psi) {
  u64 p = psi.p;
  require_odd(p, "tau_alpha");
  // gamma_psi on units must be the Legendre symbol; checked on every residue
  i64 r = weil_factor(psi, static_cast<i64>(primitive_root(p))) == Scalar(1) ? 0 : static_cast<i64>(p - 1) / 2;
  Scalar value = weil_factor(psi, psi.varpi).inverse() * Scalar::sqrt_q_pow(p, 1) *
                 gauss_sum_varpi(psi.inverse()).inverse();
  TameCharacter t = TameCharacter::make(psi.varpi, value, r);
  for (u64 u = 1; u < p; ++u)
    if (t.on_residue(u) != weil_factor(psi, static_cast<i64>(u)))
      throw std::logic_error("tau_alpha: gamma_psi on units is not a tame character");
  if (r == 0) throw std::logic_error("tau_alpha: gamma_psi is trivial on units");
  return t;
}

PAdic pi1_uniformizer(int l, i64 alpha, const PAdic& varpi) {
  u64 p = varpi.p();
  require_odd(p, "pi1_uniformizer");
  i64 d = (l % 2 ? 4 : -4) * alpha;  // (-1)^{l+1} 4 alpha
  return varpi / PAdic::from_int(p, d, varpi.precision());
}

RamifiedExt::RamifiedExt(int n, const PAdic& w) : n_(n), w_(w) {
  if (n < 1) throw std::invalid_argument("RamifiedExt: degree must be positive");
  if (w.is_zero() || w.valuation() != 1) throw std::invalid_argument("RamifiedExt: w must have valuation one");
}

RamifiedExt::Elt RamifiedExt::from_base(const PAdic& a) const {
  Elt x(static_cast<size_t>(n_), PAdic::zero(p()));
  x[0] = a;
  return x;
}

RamifiedExt::Elt RamifiedExt::zeta() const {
  if (n_ == 1) return from_base(w_);
  Elt x(static_cast<size_t>(n_), PAdic::zero(p()));
  x[1] = PAdic::from_int(p(), 1, PAdic::max_precision(p()));
  return x;
}

RamifiedExt::Elt RamifiedExt::add(const Elt& x, const Elt& y) const {
  Elt r(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) r[i] = x[i] + y[i];
  return r;
}

RamifiedExt::Elt RamifiedExt::mul(const Elt& x, const Elt& y) const {
  Elt r(static_cast<size_t>(n_), PAdic::zero(p()));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      PAdic t = x[i] * y[j];
      // zeta^{i+j} = w zeta^{i+j-n} past the degree
      if (i + j < n_) r[i + j] = r[i + j] + t;
      else r[i + j - n_] = r[i + j - n_] + w_ * t;
    }
  return r;
}

// the coefficient of zeta^j contributes n v(c_j) + j; these are distinct mod n,
// so the minimum is attained once
int RamifiedExt::valuation(const Elt& x) const {
  int best = PAdic::kInf;
  bool decided = false;
  int undecided_floor = PAdic::kInf;
  for (int j = 0; j < n_; ++j) {
    if (x[j].is_zero()) {
      if (!x[j].is_exact_zero()) undecided_floor = std::min(undecided_floor, n_ * x[j].abs_precision() + j);
      continue;
    }
    int v = n_ * x[j].valuation() + j;
    if (v < best) best = v;
    decided = true;
  }
  if (!decided) throw std::domain_error("RamifiedExt::valuation: zero or indistinguishable from zero");
  if (undecided_floor <= best) throw PrecisionError("RamifiedExt::valuation: precision exhausted");
  return best;
}

std::vector<std::vector<PAdic>> RamifiedExt::regular_matrix(const Elt& x) const {
  size_t n = static_cast<size_t>(n_);
  std::vector<std::vector<PAdic>> m(n, std::vector<PAdic>(n, PAdic::zero(p())));
  // column j holds x zeta^{n-1-j}; row i reads the coefficient of zeta^{n-1-i}
  Elt basis = from_base(PAdic::from_int(p(), 1, PAdic::max_precision(p())));
  for (int j = n_ - 1; j >= 0; --j) {
    Elt col = mul(x, basis);
    for (int i = 0; i < n_; ++i) m[i][j] = col[n_ - 1 - i];
    basis = mul(basis, zeta());
  }
  return m;
}

// elimination with the pivot of least valuation keeps every step integral
PAdic RamifiedExt::norm(const Elt& x) const {
  auto m = regular_matrix(x);
  size_t n = m.size();
  PAdic det = PAdic::from_int(p(), 1, PAdic::max_precision(p()));
  for (size_t c = 0; c < n; ++c) {
    size_t piv = n;
    for (size_t r = c; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      if (piv == n || m[r][c].valuation() < m[piv][c].valuation()) piv = r;
    }
    if (piv == n) return PAdic::zero(p(), det.abs_precision());
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det = det * m[c][c];
    PAdic inv = m[c][c].inverse();
    for (size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      PAdic f = m[r][c] * inv;
      for (size_t k = c; k < n; ++k) m[r][k] = m[r][k] - f * m[c][k];
    }
  }
  return det;
}

// Sylvester matrix of f = T^n - w and f' = n T^{n-1}; disc = (-1)^{n(n-1)/2} Res(f, f')
mpq_class RamifiedExt::discriminant() const {
  int n = n_;
  mpq_class w = w_.lift();
  std::vector<mpq_class> f(static_cast<size_t>(n + 1), 0), g(static_cast<size_t>(n), 0);
  f[0] = 1;  // highest degree first
  f[static_cast<size_t>(n)] = -w;
  g[0] = n;
  size_t dim = static_cast<size_t>(2 * n - 1);
  std::vector<std::vector<mpq_class>> s(dim, std::vector<mpq_class>(dim, 0));
  for (size_t r = 0; r < static_cast<size_t>(n - 1); ++r)
    for (size_t k = 0; k < f.size(); ++k) s[r][r + k] = f[k];
  for (size_t r = 0; r < static_cast<size_t>(n); ++r)
    for (size_t k = 0; k < g.size(); ++k) s[static_cast<size_t>(n - 1) + r][r + k] = g[k];
  mpq_class res = det_q(std::move(s));
  return (n * (n - 1) / 2) % 2 ? mpq_class(-res) : res;
}

Scalar xi_principal_units(const RamifiedExt& E, const RamifiedExt::Elt& x, const AdditiveCharacter& psi) {
  u64 p = E.p();
  RamifiedExt::Elt d = E.add(x, E.from_base(PAdic::from_int(p, -1, PAdic::max_precision(p))));
  bool is_one = true;
  for (const PAdic& c : d) is_one = is_one && c.is_zero() && c.abs_precision() >= 1;
  if (!is_one && E.valuation(d) < 1) throw std::domain_error("xi_principal_units: x is not in 1 + p_E");
  auto m = E.regular_matrix(x);
  int n = E.degree();
  PAdic sum = E.root_power().inverse() * m[static_cast<size_t>(n - 1)][0];
  for (int i = 0; i + 1 < n; ++i) sum = sum + m[static_cast<size_t>(i)][static_cast<size_t>(i + 1)];
  return psi.eval(sum);
}

i64 det_induction_residue_exponent(const RamifiedExt& E) {
  u64 p = E.p();
  require_odd(p, "det_induction_residue_exponent");
  PAdic d = PAdic::from_rational(p, E.discriminant());
  int s = hilbert(d, PAdic::from_int(p, static_cast<i64>(primitive_root(p))));
  return s > 0 ? 0 : static_cast<i64>(p - 1) / 2;
}

ParamRecord build_parameter(const SSParams& params) {
  u64 p = params.p;
  require_odd(p, "build_parameter");
  ParamRecord r;
  r.p = p;
  r.l = params.l;
  r.alpha = params.alpha;
  r.omega_sign = params.omega_sign;
  r.psi_sign = params.psi.sign;
  r.tau_alpha = tau_alpha(params.psi);
  r.pi1_uniformizer = pi1_uniformizer(params.l, params.alpha, params.varpi);
  r.induction_applies = (2 * params.l) % static_cast<int>(p) != 0;

  RamifiedExt E(2 * params.l, r.pi1_uniformizer);
  i64 q1 = static_cast<i64>(p - 1);
  r.xi_residue_exponent = ((r.tau_alpha.residue_exponent - det_induction_residue_exponent(E)) % q1 + q1) % q1;

  // gamma(s, pi, psi) = gamma(s, Pi_1, psi) gamma(s, tau_alpha, psi), and the
  // first factor must be delta q^{1/2 - s}
  RatFunc whole = gamma_assemble(params, TameCharacter::trivial(params.varpi), params.psi);
  RatFunc ta = tate_gamma(r.tau_alpha, params.psi);
  Scalar c;
  int k = 0;
  if (!(whole / ta).is_monomial(&c, &k) || k != 1)
    throw std::logic_error("build_parameter: gamma(s, pi) / gamma(s, tau_alpha) is not a multiple of q^{1/2-s}");
  r.xi_zeta = c * Scalar::sqrt_q_pow(p, -1);

  Scalar lead = Scalar(params.omega_sign) * weil_index(params.psi).inverse() *
                weil_factor(params.psi, params.varpi).inverse();
  r.xi_zeta_monomial = RatFunc(lead) * ta.inverse();
  return r;
}

}  // namespace rsg
