#include "rsg/weilrep.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace rsg {

namespace {

int v2(u64 p) { return p == 2 ? 1 : 0; }

int ceil_half(int n) { return n >= 0 ? (n + 1) / 2 : -((-n) / 2); }

PAdic pw(u64 p, int k) { return PAdic::from_int(p, static_cast<i64>(p), PAdic::max_precision(p)).pow(k); }

// Phi_L(x) = Phi_R(x^m) with R the radical of L and m = L / R, so the
// reduction acts on each residue class of exponents mod m on its own
struct CycRing {
  u64 R, m, deg;
  std::vector<i64> phi;  // Phi_R, monic, length deg + 1
};

const CycRing& ring(u64 L) {
  static std::mutex mu;
  static std::map<u64, CycRing> cache;
  std::lock_guard<std::mutex> g(mu);
  auto it = cache.find(L);
  if (it != cache.end()) return it->second;
  u64 R = 1;
  for (u64 l : prime_factors(L)) R *= l;
  const auto& c = cyclotomic_poly(R);
  return cache.emplace(L, CycRing{R, L / R, c.size() - 1, c}).first->second;
}

// canonical form of the terms in buf (any order, repeats allowed); clears buf
CycElt canon(u64 L, std::vector<CycTerm>& buf) {
  const CycRing& cr = ring(L);
  const u64 m = cr.m;
  thread_local std::vector<i64> acc;
  thread_local std::vector<char> mark;
  thread_local std::vector<u64> classes;
  if (acc.size() < L) acc.assign(L, 0);
  if (mark.size() < m) mark.assign(m, 0);
  classes.clear();
  for (auto& t : buf) {
    acc[t.e] += t.c;
    u64 r = t.e % m;
    if (!mark[r]) {
      mark[r] = 1;
      classes.push_back(r);
    }
  }
  buf.clear();
  CycElt out;
  std::vector<i64> y(cr.R);
  for (u64 r : classes) {
    mark[r] = 0;
    for (u64 s = 0; s < cr.R; ++s) {
      y[s] = acc[r + m * s];
      acc[r + m * s] = 0;
    }
    for (u64 s = cr.R; s-- > cr.deg;) {
      i64 c = y[s];
      if (!c) continue;
      for (u64 k = 0; k < cr.deg; ++k) y[s - cr.deg + k] -= c * cr.phi[k];
    }
    for (u64 s = 0; s < cr.deg; ++s)
      if (y[s]) out.push_back({static_cast<u32>(r + m * s), y[s]});
  }
  std::sort(out.begin(), out.end(), [](const CycTerm& x, const CycTerm& y) { return x.e < y.e; });
  return out;
}

void add_shifted(std::vector<CycTerm>& buf, const CycElt& x, u64 shift, u64 L) {
  for (auto& t : x) buf.push_back({static_cast<u32>((t.e + shift) % L), t.c});
}

// sqrt(p) as an integer combination of zeta_L; matches Scalar::sqrt_prime
CycElt sqrt_p_elt(u64 p, u64 L) {
  std::vector<CycTerm> buf;
  if (p == 2) {
    buf.push_back({static_cast<u32>(L / 8), 1});
    buf.push_back({static_cast<u32>(7 * L / 8), 1});
  } else {
    u64 off = p % 4 == 3 ? L - L / 4 : 0;
    for (u64 x = 1; x < p; ++x)
      buf.push_back({static_cast<u32>((x * (L / p) + off) % L), legendre(static_cast<i64>(x), p)});
  }
  return canon(L, buf);
}

CycElt mul_elt(const CycElt& a, const CycElt& b, u64 L, std::vector<CycTerm>& buf) {
  for (auto& s : a)
    for (auto& t : b) buf.push_back({static_cast<u32>((static_cast<u64>(s.e) + t.e) % L), s.c * t.c});
  return canon(L, buf);
}

// out[j] = sum_i a[i] zeta_L^{w i j} for a of size p^k, radix-p
// decimation in time: the p interleaved subsequences use zeta_L^{w p}
std::vector<CycElt> dft(std::vector<CycElt> a, u64 w, u64 p, u64 L) {
  u64 s = a.size();
  if (s == 1) return a;
  if (std::all_of(a.begin(), a.end(), [](const CycElt& x) { return x.empty(); })) return a;
  u64 sub = s / p;
  std::vector<std::vector<CycElt>> part(p);
  for (u64 r = 0; r < p; ++r) {
    std::vector<CycElt> ar(sub);
    for (u64 i = 0; i < sub; ++i) ar[i] = std::move(a[r + p * i]);
    part[r] = dft(std::move(ar), mulmod(w, p, L), p, L);
  }
  std::vector<CycElt> out(s);
  std::vector<CycTerm> buf;
  for (u64 j = 0; j < s; ++j) {
    u64 wj = mulmod(w, j, L);
    for (u64 r = 0; r < p; ++r) add_shifted(buf, part[r][j % sub], mulmod(wj, r, L), L);
    out[j] = canon(L, buf);
  }
  return out;
}

}  // namespace

SchwartzFn SchwartzFn::indicator(u64 p, int k) {
  SchwartzFn f;
  f.p_ = p;
  f.M_ = -k;
  f.N_ = k;
  f.vals_.assign(1, CycElt{{0, 1}});
  return f;
}

SchwartzFn SchwartzFn::from_values(u64 p, int M, int N, const std::vector<i64>& v) {
  if (M + N < 0 || v.size() != ipow(p, M + N)) throw std::domain_error("SchwartzFn: grid size mismatch");
  SchwartzFn f;
  f.p_ = p;
  f.M_ = M;
  f.N_ = N;
  f.vals_.resize(v.size());
  for (u64 i = 0; i < v.size(); ++i)
    if (v[i]) f.vals_[i] = {{0, v[i]}};
  return f;
}

bool SchwartzFn::is_zero() const {
  return std::all_of(vals_.begin(), vals_.end(), [](const CycElt& x) { return x.empty(); });
}

Scalar SchwartzFn::cell_value(u64 i) const {
  if (vals_[i].empty()) return Scalar(0).with_q(p_);
  // zeta_L^e = zeta_{L/g}^{e/g}: convert in the smallest field that works
  u64 g = L_;
  for (auto& t : vals_[i]) g = std::gcd(g, static_cast<u64>(t.e));
  CycVec acc(L_ / g);
  for (auto& t : vals_[i]) acc.add(t.e / g, t.c);
  return (acc.to_scalar() * Scalar::sqrt_q_pow(p_, e_)).with_q(p_);
}

std::optional<u64> SchwartzFn::cell_index(const PAdic& x) const {
  if (x.is_zero()) return 0;
  if (x.valuation() < -M_) return std::nullopt;
  int k = M_ + N_;
  return k == 0 ? 0 : (x * pw(p_, M_)).residue(k);
}

Scalar SchwartzFn::value_at(const PAdic& x) const {
  auto i = cell_index(x);
  return i ? cell_value(*i) : Scalar(0).with_q(p_);
}

PAdic SchwartzFn::cell_point(u64 i) const {
  return PAdic::from_int(p_, static_cast<i64>(i), PAdic::max_precision(p_)) * pw(p_, -M_);
}

SchwartzFn SchwartzFn::refined(int M, int N) const {
  if (M < M_ || N < N_) throw std::domain_error("SchwartzFn::refined: grid must grow");
  if (M == M_ && N == N_) return *this;
  SchwartzFn f = *this;
  f.M_ = M;
  f.N_ = N;
  u64 n = ipow(p_, M + N), step = ipow(p_, M - M_), old = ipow(p_, M_ + N_);
  f.vals_.assign(n, CycElt{});
  for (u64 i = 0; i < n; i += step) f.vals_[i] = vals_[(i / step) % old];
  return f;
}

SchwartzFn SchwartzFn::tightened() const {
  SchwartzFn f = *this;
  for (bool changed = true; changed;) {
    changed = false;
    u64 n = f.vals_.size();
    if (n == 1) break;
    // support inside p^{-M+1}: only cells divisible by p are nonzero
    bool inner = true;
    for (u64 i = 0; i < n && inner; ++i)
      if (i % f.p_ && !f.vals_[i].empty()) inner = false;
    if (inner) {
      for (u64 i = 1; i < n / f.p_; ++i) f.vals_[i] = std::move(f.vals_[i * f.p_]);
      f.vals_.resize(n / f.p_);
      --f.M_;
      changed = true;
      continue;
    }
    // constant mod p^{N-1}: cell i agrees with cell i mod p^{M+N-1}
    u64 m = n / f.p_;
    bool coarse = true;
    for (u64 i = m; i < n && coarse; ++i)
      if (f.vals_[i] != f.vals_[i % m]) coarse = false;
    if (coarse) {
      f.vals_.resize(m);
      --f.N_;
      changed = true;
    }
  }
  return f;
}

SchwartzFn SchwartzFn::with_root_order(u64 L) const {
  if (L == L_) return *this;
  if (L % L_) throw std::domain_error("SchwartzFn: root order must be a multiple");
  SchwartzFn f = *this;
  f.L_ = L;
  u64 m = L / L_;
  std::vector<CycTerm> acc;
  for (auto& v : f.vals_) {
    if (v.empty()) continue;
    for (auto& t : v) acc.push_back({static_cast<u32>(t.e * m), t.c});
    v = canon(L, acc);
  }
  return f;
}

SchwartzFn SchwartzFn::times_root(u64 n, i64 k) const {
  SchwartzFn f = with_root_order(std::lcm(L_, n));
  u64 L = f.L_;
  u64 shift = static_cast<u64>(mod_floor(k, static_cast<i64>(n))) * (L / n) % L;
  if (shift == 0) return f;
  std::vector<CycTerm> acc;
  for (auto& v : f.vals_) {
    if (v.empty()) continue;
    add_shifted(acc, v, shift, L);
    v = canon(L, acc);
  }
  return f;
}

SchwartzFn SchwartzFn::times_sqrt_q(int k) const {
  SchwartzFn f = *this;
  f.e_ += k;
  return f;
}

SchwartzFn SchwartzFn::modulated(const AdditiveCharacter& psi, const PAdic& u) const {
  if (u.is_zero()) return *this;
  int vu = u.valuation();
  // psi(2u x h) and psi(u h^2) trivial for x in p^{-M}, h in p^N
  int N = std::max({N_, 1 - v2(p_) - vu + M_, ceil_half(1 - vu)});
  SchwartzFn f = refined(M_, N);
  // psi(u x^2) at x = p^{-M} i equals e({U i^2}) with U = c u p^{-2M}
  PAdic U = psi.multiplier() * u * pw(p_, -2 * M_);
  int w = U.valuation();
  if (w >= 0) return f;
  u64 P = ipow(p_, -w);
  f = f.with_root_order(std::lcm(f.L_, P));
  u64 L = f.L_, Uu = U.unit_mod(-w);
  std::vector<CycTerm> acc;
  for (u64 i = 0; i < f.vals_.size(); ++i) {
    auto& v = f.vals_[i];
    if (v.empty()) continue;
    u64 r = i % P;
    u64 t = mulmod(Uu, mulmod(r, r, P), P);
    if (t == 0) continue;
    add_shifted(acc, v, t * (L / P), L);
    v = canon(L, acc);
  }
  return f;
}

SchwartzFn SchwartzFn::dilated(const PAdic& a) const {
  int v = a.valuation();
  SchwartzFn f = *this;
  f.M_ = M_ + v;
  f.N_ = N_ - v;
  int k = M_ + N_;
  if (k == 0) return f;
  u64 n = ipow(p_, k), au = a.unit_mod(k);
  // cell i of the result is p^{-M'} i; times a it lands in cell a_u i
  for (u64 i = 0; i < n; ++i) f.vals_[i] = vals_[mulmod(au, i, n)];
  return f;
}

SchwartzFn SchwartzFn::fourier(const AdditiveCharacter& psi) const {
  int k = M_ + N_;
  u64 n = ipow(p_, k);
  SchwartzFn f = with_root_order(std::lcm(L_, n));
  u64 L = f.L_;
  SchwartzFn out;
  out.p_ = p_;
  out.L_ = L;
  out.M_ = N_ + v2(p_) - 1;
  out.N_ = M_ + 1 - v2(p_);
  out.e_ = e_ + 1 - 2 * N_ - v2(p_);
  // psi(2 x_i y_j) = zeta_n^{kappa i j}, kappa the unit part of 2c
  PAdic twoc = PAdic::from_int(p_, 2, PAdic::max_precision(p_)) * psi.multiplier();
  u64 kappa = k ? twoc.unit_mod(k) : 0;
  out.vals_ = dft(std::move(f.vals_), k ? mulmod(kappa, L / n, L) : 0, p_, L);
  return out;
}

bool operator==(const SchwartzFn& a, const SchwartzFn& b) {
  if (a.p_ != b.p_) return false;
  u64 p = a.p_;
  int M = std::max(a.M_, b.M_), N = std::max(a.N_, b.N_);
  u64 L = std::lcm(a.L_, b.L_);
  if (a.e_ != b.e_) L = std::lcm(L, p == 2 ? u64{8} : 8 * p);
  SchwartzFn x = a.refined(M, N).with_root_order(L), y = b.refined(M, N).with_root_order(L);
  if (x.e_ < y.e_) std::swap(x, y);
  // bring x down to y's scale: multiply by sqrt(q)^d, d >= 0
  int d = x.e_ - y.e_;
  if (d) {
    i64 m = static_cast<i64>(ipow(p, d / 2));
    CycElt s = d % 2 ? sqrt_p_elt(p, L) : CycElt{{0, 1}};
    for (auto& t : s) t.c *= m;
    std::vector<CycTerm> acc;
    for (auto& v : x.vals_)
      if (!v.empty()) v = mul_elt(v, s, L, acc);
  }
  return x.vals_ == y.vals_;
}

std::string SchwartzFn::describe() const {
  std::ostringstream os;
  os << "SchwartzFn[p=" << p_ << ",supp=p^" << -M_ << ",const mod p^" << N_ << ",scale=sqrt(q)^" << e_
     << ",L=" << L_ << ",cells=" << vals_.size() << "]";
  return os.str();
}

Scalar weil_beta(const AdditiveCharacter& psi) { return weil_index(psi).inverse(); }

int eighth_root_exponent(const Scalar& x) {
  // hot path: compare power-basis coefficients in Q(zeta_8) directly
  static const std::vector<std::vector<mpq_class>> roots = [] {
    std::vector<std::vector<mpq_class>> r;
    for (int k = 0; k < 8; ++k) r.push_back(Scalar::zeta(8, k).lifted(8).coeffs());
    return r;
  }();
  if (8 % x.order() == 0) {
    const std::vector<mpq_class> c = x.order() == 8 ? x.coeffs() : x.lifted(8).coeffs();
    for (int k = 0; k < 8; ++k)
      if (c == roots[static_cast<size_t>(k)]) return k;
    throw std::domain_error("eighth_root_exponent: not an eighth root of unity");
  }
  // other fields: memoized, the same few Weil factors recur
  static std::mutex mu;
  static std::map<std::pair<u64, std::vector<mpq_class>>, int> seen;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(x.order(), x.coeffs());
  if (auto it = seen.find(key); it != seen.end()) return it->second;
  for (int k = 0; k < 8; ++k)
    if (x == Scalar::zeta(8, k)) return seen[key] = k;
  throw std::domain_error("eighth_root_exponent: not an eighth root of unity");
}

namespace {

SchwartzFn act_upper(const AdditiveCharacter& psi, const PAdic& u, const SchwartzFn& f) {
  return f.modulated(psi, u);
}

SchwartzFn act_diag(const AdditiveCharacter& psi, const PAdic& a, const SchwartzFn& f) {
  int k = eighth_root_exponent(weil_factor(psi, a).inverse());
  return f.dilated(a).times_root(8, k).times_sqrt_q(-a.valuation());
}

SchwartzFn act_w1(const AdditiveCharacter& psi, const SchwartzFn& f, int beta_sign) {
  // beta^{-1} = beta_sign * gamma(psi)
  SchwartzFn g = f.fourier(psi).tightened().times_root(8, eighth_root_exponent(weil_index(psi)));
  return beta_sign < 0 ? g.negated() : g;
}

}  // namespace

SchwartzFn weil_act(const MpElement& x, const SchwartzFn& f, const AdditiveCharacter& psi, int beta_sign) {
  const Mat2& g = x.g;
  u64 p = g.p();
  int sign = x.eps;
  SchwartzFn r;
  if (g.c.is_zero()) {
    PAdic u = g.b / g.a;
    sign *= mp_mul({Mat2::diag(g.a), 1}, {Mat2::upper(u), 1}).eps;
    r = act_diag(psi, g.a, act_upper(psi, u, f));
  } else {
    PAdic A = g.a / g.c, D = g.d / g.c, T = -g.c.inverse();
    MpElement prod = mp_mul(mp_mul(mp_mul({Mat2::upper(A), 1}, {Mat2::diag(T), 1}), {Mat2::w1(p), 1}),
                            {Mat2::upper(D), 1});
    sign *= prod.eps;
    r = act_upper(psi, A, act_diag(psi, T, act_w1(psi, act_upper(psi, D, f), beta_sign)));
  }
  r = r.tightened();
  return sign < 0 ? r.negated() : r;
}

SchwartzFn weil_lower_closed(const PAdic& a, const PAdic& c, const SchwartzFn& f, const AdditiveCharacter& psi) {
  SchwartzFn inner = f.fourier(psi.inverse());  // y -> int f(z) psi(-2yz) dz
  SchwartzFn outer = inner.modulated(psi, -c).fourier(psi).dilated(a);
  Scalar k = weil_beta(psi).pow(-2) * weil_factor(psi, a).inverse() * weil_factor(psi, -1);
  if (!c.is_zero()) k = k * Scalar(hilbert(a.inverse(), c));
  return outer.times_root(8, eighth_root_exponent(k));
}

CheckReport genuineness_check(u64 p, int samples, u64 seed, int beta_sign) {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed);
  CheckReport rep;
  auto sample = [&]() {
    Mat2 g = random_sl2_int(p, rng, 2, 40);
    u64 r = rng() % 6;
    if (r < 2) g = Mat2::diag(pw(p, r == 0 ? 1 : -1)) * g;
    else if (r < 4) g = g * Mat2::diag(pw(p, r == 2 ? 1 : -1));
    return g;
  };
  for (int s = 0; s < samples; ++s) {
    auto psi = AdditiveCharacter::standard(p, s % 2 ? -1 : 1);
    std::vector<i64> v(p);
    for (auto& x : v) x = static_cast<i64>(rng() % 5) - 2;
    v[0] = 1;
    SchwartzFn phi = SchwartzFn::from_values(p, 0, 1, v);
    MpElement g{sample(), 1}, h{sample(), 1};
    SchwartzFn lhs = weil_act(g, weil_act(h, phi, psi, beta_sign), psi, beta_sign);
    SchwartzFn rhs = weil_act(mp_mul(g, h), phi, psi, beta_sign);
    ++rep.checked;
    if (!(lhs == rhs) && rep.ok) {
      rep.ok = false;
      rep.first_violation = g.g.to_string() + " * " + h.g.to_string() + " " + psi.describe();
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace rsg
