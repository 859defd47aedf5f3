#include "rsg/padic.hpp"

#include <algorithm>
#include <sstream>

namespace rsg {

int PAdic::max_precision(u64 p) {
  thread_local u64 last_p = 0;
  thread_local int last_n = 0;
  if (p == last_p) return last_n;
  if (!is_prime(p)) throw std::domain_error("PAdic: p must be prime");
  int n = 0;
  u128 pw = 1;
  while (pw * p <= ((u128)1 << 62)) { pw *= p; ++n; }
  last_p = p;
  last_n = n;
  return n;
}

int PAdic::default_precision(u64 p) { return std::min(kDefaultPrecision, max_precision(p)); }

static int resolve_prec(u64 p, int prec) {
  if (prec <= 0) return PAdic::default_precision(p);
  if (prec > PAdic::max_precision(p)) throw PrecisionError("PAdic: precision exceeds word size");
  return prec;
}

PAdic PAdic::zero(u64 p, int abs_prec) {
  PAdic z;
  z.p_ = p;
  z.abs_ = abs_prec;
  return z;
}

PAdic PAdic::make(u64 p, int v, u64 unit, int prec) {
  prec = resolve_prec(p, prec);
  if (unit % p == 0) throw std::domain_error("PAdic::make: unit divisible by p");
  PAdic x;
  x.p_ = p;
  x.zero_ = false;
  x.v_ = v;
  x.n_ = prec;
  x.u_ = unit % ipow(p, prec);
  x.abs_ = 0;
  return x;
}

PAdic PAdic::from_int(u64 p, i64 n, int prec) {
  prec = resolve_prec(p, prec);
  if (n == 0) return zero(p);
  int v = vp(n, p);
  i64 m = n;
  for (int i = 0; i < v; ++i) m /= static_cast<i64>(p);
  i64 mod = static_cast<i64>(ipow(p, prec));
  return make(p, v, static_cast<u64>(mod_floor(m, mod)), prec);
}

PAdic PAdic::from_rational(u64 p, const mpq_class& r, int prec) {
  prec = resolve_prec(p, prec);
  if (r == 0) return zero(p);
  mpz_class num = r.get_num(), den = r.get_den();
  mpz_class P(static_cast<unsigned long>(p));
  int v = 0;
  while (num % P == 0) { num /= P; ++v; }
  while (den % P == 0) { den /= P; --v; }
  mpz_class mod;
  mpz_ui_pow_ui(mod.get_mpz_t(), p, prec);
  mpz_class u = num % mod;
  if (u < 0) u += mod;
  mpz_class di;
  mpz_invert(di.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  u = u * di % mod;
  return make(p, v, u.get_ui(), prec);
}

int PAdic::valuation() const {
  if (zero_) throw std::domain_error("PAdic: valuation of zero");
  return v_;
}

u64 PAdic::unit() const {
  if (zero_) throw std::domain_error("PAdic: unit of zero");
  return u_;
}

u64 PAdic::unit_mod(int k) const {
  if (zero_) throw std::domain_error("PAdic: unit of zero");
  if (k > n_) throw PrecisionError("PAdic: unit digits exhausted");
  return u_ % ipow(p_, k);
}

u64 PAdic::residue(int k) const {
  if (k <= 0) return 0;
  if (zero_) {
    if (abs_ < k) throw PrecisionError("PAdic: residue beyond precision");
    return 0;
  }
  if (v_ < 0) throw std::domain_error("PAdic: residue of non-integral element");
  if (v_ >= k) return 0;
  if (v_ + n_ < k) throw PrecisionError("PAdic: residue beyond precision");
  u64 m = ipow(p_, k);
  return mulmod(ipow(p_, v_), u_ % ipow(p_, k - v_), m);
}

mpq_class PAdic::lift() const {
  if (zero_) return 0;
  mpz_class pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), p_, std::abs(v_));
  mpq_class r{mpz_class(static_cast<unsigned long>(u_))};
  if (v_ >= 0) r *= pw; else r /= pw;
  r.canonicalize();
  return r;
}

PAdic PAdic::with_precision(int n) const {
  if (zero_) return *this;
  if (n > n_) throw PrecisionError("PAdic: cannot raise precision");
  return make(p_, v_, u_, n);
}

PAdic PAdic::operator-() const {
  if (zero_) return *this;
  PAdic r = *this;
  r.u_ = modulus() - u_;
  return r;
}

PAdic operator+(const PAdic& a, const PAdic& b) {
  if (a.p_ != b.p_) {
    if (a.p_ == 0 && a.is_exact_zero()) return b;
    if (b.p_ == 0 && b.is_exact_zero()) return a;
    throw std::domain_error("PAdic: mismatched primes");
  }
  u64 p = a.p_;
  if (a.zero_ && b.zero_) return PAdic::zero(p, std::min(a.abs_, b.abs_));
  if (a.zero_ || b.zero_) {
    const PAdic& z = a.zero_ ? a : b;
    const PAdic& x = a.zero_ ? b : a;
    if (z.abs_ == PAdic::kInf) return x;
    if (x.v_ >= z.abs_) return PAdic::zero(p, z.abs_);
    return x.with_precision(std::min(x.n_, z.abs_ - x.v_));
  }
  int A = std::min(a.v_ + a.n_, b.v_ + b.n_);
  int v = std::min(a.v_, b.v_);
  int len = A - v;  // >= min(Na, Nb) > 0
  u64 m = ipow(p, len);
  u64 sa = mulmod(a.u_ % m, ipow(p, a.v_ - v) % m, m);
  u64 sb = mulmod(b.u_ % m, ipow(p, b.v_ - v) % m, m);
  u64 s = (sa + sb) % m;
  if (s == 0) return PAdic::zero(p, A);
  int w = 0;
  while (s % p == 0) { s /= p; ++w; }
  return PAdic::make(p, v + w, s, len - w);
}

PAdic operator*(const PAdic& a, const PAdic& b) {
  if (a.p_ != b.p_) throw std::domain_error("PAdic: mismatched primes");
  u64 p = a.p_;
  if (a.zero_ || b.zero_) {
    if (a.is_exact_zero() || b.is_exact_zero()) return PAdic::zero(p);
    if (a.zero_ && b.zero_) return PAdic::zero(p, a.abs_ + b.abs_);
    const PAdic& z = a.zero_ ? a : b;
    const PAdic& x = a.zero_ ? b : a;
    return PAdic::zero(p, z.abs_ + x.v_);
  }
  int n = std::min(a.n_, b.n_);
  u64 m = ipow(p, n);
  return PAdic::make(p, a.v_ + b.v_, mulmod(a.u_ % m, b.u_ % m, m), n);
}

PAdic PAdic::inverse() const {
  if (is_exact_zero()) throw DivisionByZero("PAdic: division by zero");
  if (zero_) throw PrecisionError("PAdic: division by an inexact zero");
  return make(p_, -v_, invmod(u_, modulus()), n_);
}

PAdic operator/(const PAdic& a, const PAdic& b) {
  PAdic bi = b.inverse();
  return a * bi;
}

PAdic PAdic::pow(i64 e) const {
  if (e < 0) return inverse().pow(-e);
  if (zero_) return e == 0 ? from_int(p_, 1) : (abs_ == kInf ? *this : zero(p_, abs_ * (int)e));
  return make(p_, v_ * static_cast<int>(e), powmod(u_, static_cast<u64>(e), modulus()), n_);
}

bool operator==(const PAdic& a, const PAdic& b) { return (a - b).is_zero(); }

std::string PAdic::to_string() const {
  std::ostringstream os;
  if (zero_) {
    if (abs_ == kInf) os << "0";
    else os << "O(" << p_ << "^" << abs_ << ")";
    return os.str();
  }
  os << u_;
  if (v_ != 0) os << "*" << p_ << "^" << v_;
  os << " + O(" << p_ << "^" << (v_ + n_) << ")";
  return os.str();
}

// ---- square classes ----

static int unit_class_bits(u64 p, u64 u) {
  if (p == 2) return static_cast<int>(u % 8);
  return legendre(static_cast<i64>(u % p), p) == 1 ? 0 : 1;
}

SquareClass square_class_of(const PAdic& a, const PAdic& uniformizer) {
  if (a.is_zero()) throw std::domain_error("square_class: zero input");
  u64 p = a.p();
  int need = p == 2 ? 3 : 1;
  int v = a.valuation();
  PAdic w = uniformizer / PAdic::from_int(p, static_cast<i64>(p));
  PAdic u = PAdic::make(p, 0, a.unit(), a.precision()) * w.pow(-v);
  if (u.precision() < need) throw PrecisionError("square_class: not enough digits");
  return {((v % 2) + 2) % 2, unit_class_bits(p, u.unit_mod(need))};
}

static PAdic class_rep(u64 p, const SquareClass& c, const PAdic& uniformizer) {
  i64 r = 1;
  if (p == 2) r = c.unit_class;
  else if (c.unit_class) r = static_cast<i64>(least_nonresidue(p));
  PAdic x = PAdic::from_int(p, r);
  return c.vpar ? x * uniformizer : x;
}

PAdic square_class(const PAdic& a, const PAdic& uniformizer) {
  return class_rep(a.p(), square_class_of(a, uniformizer), uniformizer);
}

PAdic square_class(const PAdic& a) {
  return square_class(a, PAdic::from_int(a.p(), static_cast<i64>(a.p())));
}

std::vector<PAdic> square_class_reps(u64 p, const PAdic& uniformizer) {
  std::vector<PAdic> out;
  for (int vpar = 0; vpar < 2; ++vpar) {
    if (p == 2) {
      for (int u : {1, 3, 5, 7}) out.push_back(class_rep(p, {vpar, u}, uniformizer));
    } else {
      for (int u : {0, 1}) out.push_back(class_rep(p, {vpar, u}, uniformizer));
    }
  }
  return out;
}

// ---- Hilbert symbol ----

static int hilbert_core(u64 p, int al, u64 u, int be, u64 v) {
  if (p == 2) {
    auto eps = [](u64 x) { return static_cast<int>(((x - 1) / 2) & 1); };
    auto om = [](u64 x) { return static_cast<int>(((x * x - 1) / 8) & 1); };
    int e = eps(u) * eps(v) + al * om(v) + be * om(u);
    return (e & 1) ? -1 : 1;
  }
  int s = 1;
  if ((al & 1) && (be & 1) && ((p - 1) / 2) % 2 == 1) s = -s;
  if (be & 1) s *= legendre(static_cast<i64>(u), p);
  if (al & 1) s *= legendre(static_cast<i64>(v), p);
  return s;
}

int hilbert(const PAdic& a, const PAdic& b) {
  if (a.is_zero() || b.is_zero()) throw std::domain_error("hilbert: zero input");
  if (a.p() != b.p()) throw std::domain_error("hilbert: mismatched primes");
  u64 p = a.p();
  int need = p == 2 ? 3 : 1;
  u64 mod = ipow(p, need);
  int al = ((a.valuation() % 2) + 2) % 2, be = ((b.valuation() % 2) + 2) % 2;
  return hilbert_core(p, al, a.unit_mod(need) % mod, be, b.unit_mod(need) % mod);
}

int hilbert_int(u64 p, i64 a, i64 b) {
  if (a == 0 || b == 0) throw std::domain_error("hilbert: zero input");
  i64 P = static_cast<i64>(p);
  int al = 0, be = 0;
  while (a % P == 0) { a /= P; al ^= 1; }
  while (b % P == 0) { b /= P; be ^= 1; }
  i64 mod = p == 2 ? 8 : P;
  return hilbert_core(p, al, static_cast<u64>(mod_floor(a, mod)), be,
                      static_cast<u64>(mod_floor(b, mod)));
}

int hilbert_rat(u64 p, const mpq_class& a, const mpq_class& b) {
  return hilbert(PAdic::from_rational(p, a), PAdic::from_rational(p, b));
}

}  // namespace rsg
