#include "rsg/scalar.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace rsg {

namespace {

std::mutex g_phi_mu;
std::map<u64, std::vector<i64>> g_phi;

struct SparsePoly {
  u64 deg;
  std::vector<std::pair<u64, i64>> low;  // nonzero terms below the leading one
};

std::map<u64, SparsePoly> g_sparse;

using QPoly = std::vector<mpq_class>;

void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

}  // namespace

const std::vector<i64>& cyclotomic_poly(u64 n) {
  {
    std::lock_guard<std::mutex> g(g_phi_mu);
    auto it = g_phi.find(n);
    if (it != g_phi.end()) return it->second;
  }
  // x^n - 1 divided by Phi_d for the proper divisors d
  std::vector<i64> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (u64 d = 1; d < n; ++d) {
    if (n % d) continue;
    const auto& f = cyclotomic_poly(d);
    u64 df = f.size() - 1;
    std::vector<i64> quo(num.size() - df, 0);
    for (u64 i = num.size() - 1; i + 1 > df; --i) {
      i64 c = num[i];
      if (!c) continue;
      quo[i - df] = c;
      for (u64 j = 0; j <= df; ++j) num[i - df + j] -= c * f[j];
      if (i == df) break;
    }
    num = quo;
  }
  std::lock_guard<std::mutex> g(g_phi_mu);
  return g_phi.emplace(n, num).first->second;
}

u64 euler_phi(u64 n) { return cyclotomic_poly(n).size() - 1; }

static const SparsePoly& sparse_phi(u64 n) {
  const auto& f = cyclotomic_poly(n);
  std::lock_guard<std::mutex> g(g_phi_mu);
  auto it = g_sparse.find(n);
  if (it != g_sparse.end()) return it->second;
  SparsePoly s{f.size() - 1, {}};
  for (u64 j = 0; j + 1 < f.size(); ++j)
    if (f[j]) s.low.push_back({j, f[j]});
  return g_sparse.emplace(n, s).first->second;
}

Scalar::Scalar(u64 n, std::vector<mpq_class> c, u64 q) : n_(n), c_(std::move(c)), q_(q) {}

Scalar Scalar::reduce(u64 n, std::vector<mpq_class> d, u64 q) {
  const SparsePoly& f = sparse_phi(n);
  if (d.size() < f.deg) d.resize(f.deg);
  for (u64 i = d.size() - 1; i >= f.deg; --i) {
    if (d[i] != 0) {
      mpq_class c = d[i];
      d[i] = 0;
      for (auto [j, a] : f.low) d[i - f.deg + j] -= c * a;
    }
    if (i == f.deg) break;
  }
  d.resize(f.deg);
  return Scalar(n, std::move(d), q);
}

u64 Scalar::merge_q(u64 a, u64 b) {
  if (a && b && a != b) throw std::domain_error("Scalar: mismatched q");
  return a ? a : b;
}

Scalar Scalar::with_q(u64 q) const {
  Scalar r = *this;
  r.q_ = merge_q(q_, q);
  return r;
}

Scalar Scalar::zeta(u64 n, i64 k) {
  if (n == 0) throw std::domain_error("Scalar::zeta: n = 0");
  u64 e = static_cast<u64>(mod_floor(k, static_cast<i64>(n)));
  std::vector<mpq_class> d(e + 1);
  d[e] = 1;
  return reduce(n, std::move(d), 0);
}

Scalar Scalar::sqrt_prime(u64 p) {
  if (!is_prime(p)) throw std::domain_error("sqrt_prime: not prime");
  if (p == 2) return (zeta(8, 1) + zeta(8, -1)).with_q(2);
  std::vector<mpq_class> d(p);
  for (u64 x = 1; x < p; ++x) d[x] = legendre(static_cast<i64>(x), p);
  Scalar g = reduce(p, std::move(d), 0);
  if (p % 4 == 3) g = g * zeta(4, -1);
  return g.with_q(p);
}

Scalar Scalar::sqrt_q_pow(u64 q, i64 e) {
  i64 h = e >= 0 ? e / 2 : -((-e + 1) / 2);  // floor(e/2)
  mpq_class r = 1;
  mpq_class Q(static_cast<unsigned long>(q));
  for (i64 i = 0; i < std::abs(h); ++i) r *= Q;
  if (h < 0) r = 1 / r;
  Scalar s = Scalar(r).with_q(q);
  if (e - 2 * h == 1) s = s * sqrt_prime(q);
  return s;
}

Scalar Scalar::sqrt_positive_rational(const mpq_class& r) {
  if (r <= 0) throw std::domain_error("sqrt_positive_rational: nonpositive");
  mpz_class m = r.get_num() * r.get_den();
  mpq_class outside = mpq_class(1, 1) / r.get_den();
  Scalar s(1);
  for (unsigned long d = 2; m > 1; ++d) {
    if (mpz_class(d) * d > m) {
      if (!m.fits_ulong_p()) throw std::domain_error("sqrt_positive_rational: factor too large");
      s = s * sqrt_prime(m.get_ui()).without_q();
      break;
    }
    while (m % (d * d) == 0) { m /= d * d; outside *= d; }
    if (m % d == 0) { m /= d; s = s * sqrt_prime(d).without_q(); }
  }
  return Scalar(outside) * s;
}

bool Scalar::is_zero() const {
  for (auto& c : c_)
    if (c != 0) return false;
  return true;
}

bool Scalar::is_rational() const {
  for (u64 i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

mpq_class Scalar::rational_value() const {
  if (!is_rational()) throw std::domain_error("Scalar: not rational");
  return c_.empty() ? mpq_class(0) : c_[0];
}

Scalar Scalar::lifted(u64 m) const {
  if (m == n_) return *this;
  if (m % n_) throw std::domain_error("Scalar::lifted: order does not divide");
  u64 s = m / n_;
  std::vector<mpq_class> d(s * (c_.size() ? c_.size() - 1 : 0) + 1);
  for (u64 i = 0; i < c_.size(); ++i) d[i * s] = c_[i];
  return reduce(m, std::move(d), q_);
}

Scalar Scalar::galois(i64 k) const {
  if (std::gcd(static_cast<u64>(mod_floor(k, static_cast<i64>(n_))), n_) != 1 && n_ > 1)
    throw std::domain_error("Scalar::galois: exponent not prime to n");
  std::vector<mpq_class> d(n_);
  for (u64 i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) d[static_cast<u64>(mod_floor(static_cast<i64>(i) * k, static_cast<i64>(n_)))] += c_[i];
  Scalar r = reduce(n_, std::move(d), q_);
  return r;
}

Scalar Scalar::conj() const { return galois(-1); }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  u64 L = std::lcm(a.n_, b.n_);
  Scalar x = a.lifted(L), y = b.lifted(L);
  for (u64 i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
  x.q_ = Scalar::merge_q(a.q_, b.q_);
  return x;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  u64 q = Scalar::merge_q(a.q_, b.q_);
  if (a.n_ == 1 || b.n_ == 1) {
    const Scalar& r = a.n_ == 1 ? a : b;
    Scalar x = a.n_ == 1 ? b : a;
    mpq_class c = r.c_[0];
    for (auto& v : x.c_) v *= c;
    x.q_ = q;
    return x;
  }
  u64 L = std::lcm(a.n_, b.n_);
  Scalar x = a.lifted(L), y = b.lifted(L);
  std::vector<mpq_class> d(x.c_.size() + y.c_.size() - 1);
  for (u64 i = 0; i < x.c_.size(); ++i) {
    if (x.c_[i] == 0) continue;
    for (u64 j = 0; j < y.c_.size(); ++j)
      if (y.c_[j] != 0) d[i + j] += x.c_[i] * y.c_[j];
  }
  return Scalar::reduce(L, std::move(d), q);
}

bool operator==(const Scalar& a, const Scalar& b) {
  u64 L = std::lcm(a.n_, b.n_);
  return a.lifted(L).c_ == b.lifted(L).c_;
}

static QPoly poly_sub_mul(const QPoly& a, const QPoly& q, const QPoly& b) {
  QPoly r = a;
  if (r.size() < q.size() + b.size()) r.resize(q.size() + b.size());
  for (u64 i = 0; i < q.size(); ++i)
    for (u64 j = 0; j < b.size(); ++j) r[i + j] -= q[i] * b[j];
  trim(r);
  return r;
}

static void poly_divmod(QPoly a, const QPoly& b, QPoly& quo, QPoly& rem) {
  trim(a);
  quo.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  mpq_class lc = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    u64 s = a.size() - b.size();
    mpq_class c = a.back() / lc;
    quo[s] = c;
    for (u64 j = 0; j < b.size(); ++j) a[s + j] -= c * b[j];
    trim(a);
  }
  rem = a;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("Scalar: inversion of zero");
  if (n_ == 1) return Scalar(1 / c_[0]).with_q(q_);
  Scalar nn = *this * conj();
  if (nn.is_rational()) {
    Scalar r = conj();
    mpq_class inv = 1 / nn.rational_value();
    for (auto& c : r.c_) c *= inv;
    return r;
  }
  const auto& f = cyclotomic_poly(n_);
  QPoly r0(f.begin(), f.end()), r1 = c_;
  trim(r1);
  QPoly s0, s1{1};
  while (r1.size() > 1) {
    QPoly qq, rr;
    poly_divmod(r0, r1, qq, rr);
    r0 = r1;
    r1 = rr;
    QPoly ns = poly_sub_mul(s0, qq, s1);
    s0 = s1;
    s1 = ns;
  }
  mpq_class c = r1.at(0);
  for (auto& v : s1) v /= c;
  return reduce(n_, s1, q_);
}

Scalar Scalar::pow(i64 e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar r = Scalar(1).with_q(q_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

std::complex<double> Scalar::embed() const {
  std::complex<double> s = 0;
  for (u64 i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) s += c_[i].get_d() * std::polar(1.0, 2 * M_PI * (double)i / (double)n_);
  return s;
}

int Scalar::root_of_unity_order(int max_order) const {
  Scalar x = *this;
  for (int m = 1; m <= max_order; ++m) {
    if (x == Scalar(1)) return m;
    x = x * *this;
  }
  return 0;
}

std::vector<Scalar::Term> Scalar::terms() const {
  auto collect = [](const Scalar& s, int e) {
    std::vector<Term> t;
    for (u64 i = 0; i < s.c_.size(); ++i)
      if (s.c_[i] != 0) t.push_back({static_cast<i64>(i), e, s.c_[i]});
    return t;
  };
  std::vector<Term> plain = collect(*this, 0);
  if (q_ && is_prime(q_) && !plain.empty()) {
    Scalar y = *this * sqrt_prime(q_).inverse();
    if (y.n_ == n_) {
      std::vector<Term> t = collect(y, 1);
      if (t.size() < plain.size()) return t;
    }
  }
  return plain;
}

std::string Scalar::to_string() const {
  auto ts = terms();
  if (ts.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : ts) {
    mpq_class c = t.c;
    bool neg = c < 0;
    if (neg) c = -c;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    bool unit = (c == 1);
    bool bare = t.k == 0 && t.e == 0;
    if (!unit || bare) os << c.get_str();
    std::string sep = (!unit || bare) ? "*" : "";
    if (t.k) { os << sep << "z" << n_ << "^" << t.k; sep = "*"; }
    if (t.e) os << sep << "sqrt" << q_;
  }
  return os.str();
}

Scalar Scalar::from_dense(u64 n, std::vector<mpq_class> d) {
  if (d.size() > n) {
    for (u64 i = n; i < d.size(); ++i) d[i % n] += d[i];
    d.resize(n);
  }
  return reduce(n, std::move(d), 0);
}

Scalar CycVec::to_scalar() const {
  std::vector<mpq_class> d(v.size());
  for (u64 i = 0; i < v.size(); ++i)
    if (v[i]) d[i] = mpq_class(static_cast<long>(v[i]));
  return Scalar::from_dense(L, std::move(d));
}

}  // namespace rsg
