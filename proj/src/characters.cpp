#include "rsg/characters.hpp"

#include <map>
#include <tuple>
#include <mutex>
#include <sstream>

namespace rsg {

AdditiveCharacter AdditiveCharacter::with_uniformizer(const PAdic& varpi, int sign) {
  if (sign != 1 && sign != -1) throw std::domain_error("AdditiveCharacter: sign must be +-1");
  if (varpi.is_zero() || varpi.valuation() != 1) throw std::domain_error("AdditiveCharacter: bad uniformizer");
  AdditiveCharacter c;
  c.p = varpi.p();
  c.varpi = varpi;
  c.sign = sign;
  c.twist = PAdic::from_int(c.p, 1);
  return c;
}

AdditiveCharacter AdditiveCharacter::standard(u64 p, int sign) {
  return with_uniformizer(PAdic::from_int(p, static_cast<i64>(p)), sign);
}

AdditiveCharacter AdditiveCharacter::twisted(const PAdic& a) const {
  if (a.is_zero() || a.valuation() != 0) throw std::domain_error("psi_a: only unit twists keep level one");
  AdditiveCharacter c = *this;
  c.twist = twist * a;
  return c;
}

PAdic AdditiveCharacter::multiplier() const {
  PAdic d = p == 2 ? PAdic::from_int(2, 2) : varpi;
  return PAdic::from_int(p, sign) * twist / d;
}

std::pair<u64, u64> AdditiveCharacter::exponent(const PAdic& x) const {
  if (x.is_zero()) {
    if (x.is_exact_zero() || x.abs_precision() >= 1) return {1, 0};
    throw PrecisionError("psi: argument known below the conductor");
  }
  PAdic y = multiplier() * x;
  int v = y.valuation();
  if (v >= 0) return {1, 0};
  int j = -v;
  if (j > y.precision()) throw PrecisionError("psi: depth beyond precision");
  return {ipow(p, j), y.unit_mod(j)};
}

Scalar AdditiveCharacter::eval(const PAdic& x) const {
  auto [m, e] = exponent(x);
  return Scalar::zeta(m, static_cast<i64>(e)).with_q(p);
}

std::string AdditiveCharacter::describe() const {
  std::ostringstream os;
  os << "psi[p=" << p << ",varpi=" << varpi.lift().get_str() << ",sign=" << sign
     << ",twist=" << twist.lift().get_str() << "]";
  return os.str();
}

// ---- tame characters ----

TameCharacter TameCharacter::make(const PAdic& varpi, const Scalar& value, i64 r) {
  if (value.is_zero()) throw std::domain_error("TameCharacter: zero value on uniformizer");
  TameCharacter t;
  t.p = varpi.p();
  t.varpi = varpi;
  t.value = value.with_q(t.p);
  t.residue_exponent = t.p == 2 ? 0 : mod_floor(r, static_cast<i64>(t.p - 1));
  return t;
}

bool TameCharacter::is_quadratic() const {
  return value * value == Scalar(1) && (2 * residue_exponent) % static_cast<i64>(p > 2 ? p - 1 : 1) == 0;
}

static u64 dlog(u64 p, u64 g, u64 u) {
  u64 x = 1;
  for (u64 k = 0; k + 1 < p; ++k) {
    if (x == u % p) return k;
    x = x * g % p;
  }
  throw std::domain_error("dlog: not a unit");
}

Scalar TameCharacter::on_residue(u64 u) const {
  if (u % p == 0) throw std::domain_error("TameCharacter: residue not a unit");
  if (p == 2 || residue_exponent == 0) return Scalar(1).with_q(p);
  i64 e = static_cast<i64>((static_cast<u64>(residue_exponent) * dlog(p, generator(), u)) % (p - 1));
  return Scalar::zeta(p - 1, e).with_q(p);
}

Scalar TameCharacter::eval(const PAdic& x) const {
  if (x.is_zero()) throw std::domain_error("TameCharacter: zero input");
  int v = x.valuation();
  PAdic u = x * varpi.pow(-v);
  return value.pow(v) * on_residue(u.unit_mod(1));
}

TameCharacter TameCharacter::inverse() const { return make(varpi, value.inverse(), -residue_exponent); }

TameCharacter TameCharacter::pow(i64 k) const { return make(varpi, value.pow(k), residue_exponent * k); }

TameCharacter operator*(const TameCharacter& a, const TameCharacter& b) {
  if (a.p != b.p || a.varpi != b.varpi) throw std::domain_error("TameCharacter: mismatched fields");
  return TameCharacter::make(a.varpi, a.value * b.value, a.residue_exponent + b.residue_exponent);
}

bool operator==(const TameCharacter& a, const TameCharacter& b) {
  return a.p == b.p && a.varpi == b.varpi && a.value == b.value && a.residue_exponent == b.residue_exponent;
}

std::string TameCharacter::describe() const {
  std::ostringstream os;
  os << "tau[p=" << p << ",value=" << value.to_string() << ",r=" << residue_exponent << "]";
  return os.str();
}

// ---- Gauss sums ----

Scalar gauss_sum(const AdditiveCharacter& psi, i64 r) {
  u64 p = psi.p;
  u64 pm1 = p > 2 ? p - 1 : 1;
  u64 rr = static_cast<u64>(mod_floor(r, static_cast<i64>(pm1)));
  u64 m = pm1 / std::gcd(rr, pm1);  // order of eta
  u64 L = p * m;
  u64 g = primitive_root(p);
  CycVec acc(L);
  u64 x = 1;
  for (u64 k = 0; k < pm1; ++k) {
    auto [P, e] = psi.exponent(PAdic::from_int(p, static_cast<i64>(x)));
    u64 eta = (rr * k % pm1) / (pm1 / m);
    acc.add(e * (L / P) + eta * (L / m), 1);
    x = x * g % p;
  }
  return acc.to_scalar().with_q(p);
}

Scalar gauss_sum_varpi(const AdditiveCharacter& psi) {
  u64 p = psi.p;
  CycVec acc(p);
  for (u64 x = 1; x < p; ++x) {
    PAdic X = PAdic::from_int(p, static_cast<i64>(x));
    auto [P, e] = psi.exponent(X);
    acc.add(e * (p / P), hilbert(psi.varpi, X));
  }
  return acc.to_scalar().with_q(p);
}

// ---- Weil index ----

// x = p^{-k} i over p^{-k}/p^m; psi(a x^2) = e(U i^2 / p^E) with E = 2k - v(ca)
// depends on i mod p^E only, so m = E - k is the least constancy depth
static Scalar normalized_quadratic_sum(u64 p, u64 U, int E) {
  u64 M = ipow(p, E);
  CycVec acc(M);
  for (u64 i = 0; i < M; ++i) acc.add(mulmod(U, mulmod(i, i, M), M), 1);
  Scalar S = acc.to_scalar();
  if (S.is_zero()) return S;
  Scalar n2 = S.abs2();
  if (!n2.is_rational()) throw std::logic_error("weil_index: |S|^2 not rational");
  return (S * Scalar::sqrt_positive_rational(n2.rational_value()).inverse()).with_q(p);
}

Scalar weil_index_uncached(const AdditiveCharacter& psi, const PAdic& a, int* k_used) {
  if (a.is_zero()) throw std::domain_error("weil_index: zero input");
  u64 p = psi.p;
  PAdic b = psi.multiplier() * a;
  int w = b.valuation();
  int Emin = p == 2 ? 3 : 1;
  int k0 = (w + Emin + 1 + 2 * 64) / 2 - 64;  // ceil((w + Emin) / 2)
  Scalar prev;
  for (int k = k0; k <= k0 + 8; ++k) {
    int E = 2 * k - w;
    if (E > b.precision()) throw PrecisionError("weil_index: depth beyond precision");
    Scalar g = normalized_quadratic_sum(p, b.unit_mod(E), E);
    if (!g.is_zero() && g == prev) {
      if (g.pow(8) != Scalar(1)) throw std::logic_error("weil_index: not an eighth root of unity");
      if (k_used) *k_used = k;
      return g;
    }
    prev = g;
  }
  throw StabilizationError("weil_index: no stabilization within depth budget");
}

Scalar weil_index(const AdditiveCharacter& psi, const PAdic& a) {
  static std::mutex mu;
  static std::map<std::pair<u64, SquareClass>, Scalar> cache;
  PAdic b = psi.multiplier() * a;
  auto key = std::make_pair(psi.p, square_class_of(b, PAdic::from_int(psi.p, static_cast<i64>(psi.p))));
  {
    std::lock_guard<std::mutex> g(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Scalar r = weil_index_uncached(psi, a);
  std::lock_guard<std::mutex> g(mu);
  cache.emplace(key, r);
  return r;
}

Scalar weil_factor(const AdditiveCharacter& psi, const PAdic& a) {
  // depends only on the square classes of the multiplier and of a
  static std::mutex mu;
  static std::map<std::tuple<u64, SquareClass, SquareClass>, Scalar> cache;
  PAdic uni = PAdic::from_int(psi.p, static_cast<i64>(psi.p));
  auto key = std::make_tuple(psi.p, square_class_of(psi.multiplier(), uni), square_class_of(a, uni));
  {
    std::lock_guard<std::mutex> g(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Scalar r = weil_index(psi, a) * weil_index(psi).conj();
  std::lock_guard<std::mutex> g(mu);
  cache.emplace(key, r);
  return r;
}

}  // namespace rsg
