#include "rsg/ratfunc.hpp"

#include <sstream>
#include <stdexcept>

namespace rsg {

namespace poly {

void trim(Poly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (u64 i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] = a[i];
    if (i < b.size()) r[i] = r[i] + b[i];
  }
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (u64 i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (u64 j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

Poly scale(const Poly& a, const Scalar& c) {
  Poly r;
  r.reserve(a.size());
  for (auto& x : a) r.push_back(x * c);
  trim(r);
  return r;
}

void divmod(const Poly& a0, const Poly& b, Poly& q, Poly& r) {
  if (b.empty()) throw std::domain_error("poly: division by zero polynomial");
  Poly a = a0;
  trim(a);
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Scalar());
  Scalar inv = b.back().inverse();
  while (!a.empty() && a.size() >= b.size()) {
    u64 s = a.size() - b.size();
    Scalar c = a.back() * inv;
    q[s] = c;
    for (u64 j = 0; j < b.size(); ++j) a[s + j] -= c * b[j];
    a.back() = Scalar();
    trim(a);
  }
  trim(q);
  r = a;
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
    if (!b.empty()) b = scale(b, b.back().inverse());
  }
  if (a.empty()) return a;
  return scale(a, a.back().inverse());
}

Scalar eval(const Poly& a, const Scalar& x) {
  Scalar s;
  for (u64 i = a.size(); i-- > 0;) s = s * x + a[i];
  return s;
}

int strip_root(Poly& a, const Scalar& x0) {
  int m = 0;
  while (!a.empty()) {
    // synthetic division by (X - x0)
    Poly q(a.size() - 1);
    Scalar acc;
    for (u64 i = a.size(); i-- > 0;) {
      acc = acc * x0 + a[i];
      if (i > 0) q[i - 1] = acc;
    }
    if (!acc.is_zero()) break;
    a = q;
    trim(a);
    ++m;
  }
  return m;
}

std::string to_string(const Poly& a) {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (u64 i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << a[i].to_string() << ")";
    if (i == 1) os << "*X";
    if (i > 1) os << "*X^" << i;
  }
  return os.str();
}

}  // namespace poly

RatFunc::RatFunc(const Scalar& c) : den_{Scalar(1)} {
  if (!c.is_zero()) num_ = {c};
}

RatFunc RatFunc::monomial(const Scalar& c, int k) {
  RatFunc r(c);
  if (!r.is_zero()) r.k_ = k;
  return r;
}

RatFunc RatFunc::from_polys(Poly num, Poly den, int shift) {
  RatFunc r;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  r.k_ = shift;
  r.normalize();
  return r;
}

RatFunc RatFunc::inverse_binomial(const Scalar& a, int k) {
  if (k < 1) throw std::domain_error("inverse_binomial: k < 1");
  Poly d(k + 1);
  d[0] = Scalar(1);
  d[k] = -a;
  return from_polys({Scalar(1)}, d);
}

void RatFunc::normalize() {
  poly::trim(num_);
  poly::trim(den_);
  if (den_.empty()) throw std::domain_error("RatFunc: zero denominator");
  if (num_.empty()) {
    k_ = 0;
    den_ = {Scalar(1)};
    return;
  }
  u64 z = 0;
  while (num_[z].is_zero()) ++z;
  num_.erase(num_.begin(), num_.begin() + z);
  k_ += static_cast<int>(z);
  z = 0;
  while (den_[z].is_zero()) ++z;
  den_.erase(den_.begin(), den_.begin() + z);
  k_ -= static_cast<int>(z);
  if (den_.size() > 1 && num_.size() > 1) {
    Poly g = poly::gcd(num_, den_);
    if (g.size() > 1) {
      Poly q, r;
      poly::divmod(num_, g, q, r);
      num_ = q;
      poly::divmod(den_, g, q, r);
      den_ = q;
    }
  }
  Scalar c = den_[0].inverse();
  if (c != Scalar(1)) {
    num_ = poly::scale(num_, c);
    den_ = poly::scale(den_, c);
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

static Poly shifted(const Poly& a, int s) {
  Poly r(s, Scalar());
  r.insert(r.end(), a.begin(), a.end());
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  int m = std::min(a.k_, b.k_);
  Poly n1 = shifted(a.num_, a.k_ - m), n2 = shifted(b.num_, b.k_ - m), d = a.den_;
  if (a.den_ != b.den_) {
    n1 = poly::mul(n1, b.den_);
    n2 = poly::mul(n2, a.den_);
    d = poly::mul(a.den_, b.den_);
  }
  return RatFunc::from_polys(poly::add(n1, n2), d, m);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  return RatFunc::from_polys(poly::mul(a.num_, b.num_), poly::mul(a.den_, b.den_), a.k_ + b.k_);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw std::domain_error("RatFunc: division by the zero function");
  return from_polys(den_, num_, -k_);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc r(1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

bool operator==(const RatFunc& a, const RatFunc& b) {
  return a.k_ == b.k_ && a.num_ == b.num_ && a.den_ == b.den_;
}

static Poly subst_poly(const Poly& P, int a, const Scalar& c, int& shift) {
  // P(c X^a) as X^shift * polynomial
  int deg = static_cast<int>(P.size()) - 1;
  int A = std::abs(a);
  Poly r(A * deg + 1);
  Scalar ci(1);
  for (int i = 0; i <= deg; ++i) {
    int e = a > 0 ? A * i : A * (deg - i);
    r[e] = P[i] * ci;
    ci = ci * c;
  }
  shift = a > 0 ? 0 : -A * deg;
  poly::trim(r);
  return r;
}

RatFunc RatFunc::substitute(int a, const mpq_class& b, u64 q) const {
  if (a == 0) throw std::domain_error("substitute: a = 0");
  mpq_class tb = 2 * b;
  if (tb.get_den() != 1) throw std::domain_error("substitute: 2b must be integral");
  if (is_zero()) return *this;
  Scalar c = Scalar::sqrt_q_pow(q, -tb.get_num().get_si());
  int sn, sd;
  Poly N = subst_poly(num_, a, c, sn);
  Poly D = subst_poly(den_, a, c, sd);
  RatFunc r = from_polys(N, D, sn - sd + a * k_);
  return r * RatFunc(c.pow(k_));
}

int RatFunc::order_at(const Scalar& x0) const {
  if (x0.is_zero()) throw std::domain_error("order_at: x0 must be nonzero");
  if (is_zero()) throw std::domain_error("order_at: zero function");
  Poly n = num_, d = den_;
  return poly::strip_root(n, x0) - poly::strip_root(d, x0);
}

Scalar RatFunc::leading_coefficient_at(const Scalar& x0) const {
  if (is_zero()) return Scalar();
  Poly n = num_, d = den_;
  poly::strip_root(n, x0);
  poly::strip_root(d, x0);
  return x0.pow(k_) * poly::eval(n, x0) * poly::eval(d, x0).inverse();
}

Scalar RatFunc::eval(const Scalar& x0) const {
  if (is_zero()) return Scalar();
  Scalar d = poly::eval(den_, x0);
  if (d.is_zero()) throw std::domain_error("RatFunc::eval: pole");
  return x0.pow(k_) * poly::eval(num_, x0) * d.inverse();
}

bool RatFunc::is_monomial(Scalar* c, int* k) const {
  if (num_.size() != 1 || den_.size() != 1) return false;
  if (c) *c = num_[0];
  if (k) *k = k_;
  return true;
}

RatFunc RatFunc::map_coeffs(Scalar (*f)(const Scalar&)) const {
  Poly n, d;
  for (auto& x : num_) n.push_back(f(x));
  for (auto& x : den_) d.push_back(f(x));
  return from_polys(n, d, k_);
}

std::string RatFunc::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  if (k_) os << "X^" << k_ << " * ";
  os << "[" << poly::to_string(num_) << "]";
  if (den_.size() > 1) os << " / [" << poly::to_string(den_) << "]";
  return os.str();
}

}  // namespace rsg
