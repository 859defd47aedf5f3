#pragma once
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace rsg {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

inline u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// inverse of a mod m; a must be coprime to m
inline u64 invmod(u64 a, u64 m) {
  __int128 t = 0, nt = 1, r = m, nr = a % m;
  while (nr) {
    __int128 qq = r / nr, tmp = t - qq * nt;
    t = nt; nt = tmp;
    tmp = r - qq * nr; r = nr; nr = tmp;
  }
  if (r != 1) throw std::domain_error("invmod: not invertible");
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

inline u64 ipow(u64 b, int e) {
  u64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline i64 mod_floor(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Legendre symbol (a/p) for odd prime p; returns 0 when p | a
inline int legendre(i64 a, u64 p) {
  u64 r = static_cast<u64>(mod_floor(a, static_cast<i64>(p)));
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

inline u64 least_nonresidue(u64 p) {
  for (u64 u = 2; u < p; ++u)
    if (legendre(static_cast<i64>(u), p) == -1) return u;
  throw std::domain_error("least_nonresidue: p must be an odd prime");
}

inline std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> f;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      f.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) f.push_back(n);
  return f;
}

inline u64 primitive_root(u64 p) {
  if (p == 2) return 1;
  auto fs = prime_factors(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (u64 f : fs)
      if (powmod(g, (p - 1) / f, p) == 1) { ok = false; break; }
    if (ok) return g;
  }
  throw std::domain_error("primitive_root: no generator");
}

// discrete log of u (unit mod p) to base g, by table
inline std::vector<int> dlog_table(u64 p, u64 g) {
  std::vector<int> t(p, -1);
  u64 x = 1;
  for (u64 k = 0; k + 1 < p || (p == 2 && k == 0); ++k) {
    t[x] = static_cast<int>(k);
    x = x * g % p;
  }
  return t;
}

// v_p(n), n != 0
inline int vp(i64 n, u64 p) {
  int v = 0;
  while (n % static_cast<i64>(p) == 0) { n /= static_cast<i64>(p); ++v; }
  return v;
}

}  // namespace rsg
