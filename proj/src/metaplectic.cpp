#include "rsg/metaplectic.hpp"

#include <chrono>
#include <sstream>

namespace rsg {

// constants carry full word precision so that products keep their digits
static PAdic K(u64 p, i64 n) { return PAdic::from_int(p, n, PAdic::max_precision(p)); }

Mat2 Mat2::identity(u64 p) { return from_ints(p, 1, 0, 0, 1); }

Mat2 Mat2::from_ints(u64 p, i64 a, i64 b, i64 c, i64 d) {
  return {K(p, a), K(p, b), K(p, c), K(p, d)};
}

Mat2 Mat2::w1(u64 p) { return from_ints(p, 0, 1, -1, 0); }

Mat2 Mat2::upper(const PAdic& u) {
  u64 p = u.p();
  return {K(p, 1), u, PAdic::zero(p), K(p, 1)};
}

Mat2 Mat2::lower(const PAdic& c) {
  u64 p = c.p();
  return {K(p, 1), PAdic::zero(p), c, K(p, 1)};
}

Mat2 Mat2::diag(const PAdic& a) {
  u64 p = a.p();
  return {a, PAdic::zero(p), PAdic::zero(p), a.inverse()};
}

Mat2 Mat2::inverse() const { return {d, -b, -c, a}; }

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

bool operator==(const Mat2& x, const Mat2& y) { return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d; }

std::string Mat2::to_string() const {
  std::ostringstream os;
  os << "(" << a.lift().get_str() << ", " << b.lift().get_str() << "; " << c.lift().get_str() << ", "
     << d.lift().get_str() << ")";
  return os.str();
}

// an inexact zero in the c-slot is read as c = 0: every sampled matrix is
// built from exact rationals, so a cancelled c is a true zero
PAdic kubota_x(const Mat2& g) { return g.c.is_zero() ? g.d : g.c; }

int cocycle(const Mat2& g, const Mat2& h) {
  PAdic xgh = kubota_x(g * h);
  return hilbert(xgh / kubota_x(g), xgh / kubota_x(h));
}

MpElement mp_mul(const MpElement& x, const MpElement& y) {
  return {x.g * y.g, x.eps * y.eps * cocycle(x.g, y.g)};
}

MpElement mp_inverse(const MpElement& x) {
  Mat2 gi = x.g.inverse();
  // <g,e><g^{-1},e'> = <1, e e' sigma(g, g^{-1})>
  return {gi, x.eps * cocycle(x.g, gi)};
}

int theta_section(const Mat2& g) {
  if (g.c.is_zero() || g.c.valuation() == 0) return 1;
  return hilbert(g.c, g.d);
}

// ---- sampling ----

static i64 rand_unit(u64 p, std::mt19937_64& rng, i64 bound) {
  std::uniform_int_distribution<i64> d(1, bound);
  for (;;) {
    i64 u = d(rng);
    if (u % static_cast<i64>(p)) return rng() & 1 ? u : -u;
  }
}

static i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
  if (b == 0) { x = a >= 0 ? 1 : -1; y = 0; return std::abs(a); }
  i64 x1, y1;
  i64 g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

Mat2 random_sl2_int(u64 p, std::mt19937_64& rng, int max_cval, i64 bound) {
  std::uniform_int_distribution<i64> any(-bound, bound);
  if (rng() % 4 == 0) {
    i64 s = rng() & 1 ? 1 : -1;
    return Mat2::from_ints(p, s, any(rng), 0, s);
  }
  int j = static_cast<int>(rng() % (max_cval + 1));
  i64 c = static_cast<i64>(ipow(p, j)) * rand_unit(p, rng, bound);
  for (;;) {
    i64 d = any(rng), x, y;
    if (ext_gcd(d, c, x, y) != 1) continue;
    // a d - b c = 1 with a = x, b = -y
    return Mat2::from_ints(p, x, -y, c, d);
  }
}

Mat2 random_sl2(u64 p, std::mt19937_64& rng) {
  auto coord = [&]() {
    i64 num = rand_unit(p, rng, 500) * static_cast<i64>(ipow(p, static_cast<int>(rng() % 2)));
    return PAdic::from_rational(p, mpq_class(num, static_cast<long>(ipow(p, static_cast<int>(rng() % 3)))),
                                PAdic::max_precision(p));
  };
  Mat2 g = Mat2::upper(coord());
  if (rng() % 5) g = g * Mat2::lower(coord());
  PAdic t = K(p, rand_unit(p, rng, 50)) * K(p, static_cast<i64>(p)).pow(static_cast<i64>(rng() % 5) - 2);
  g = g * Mat2::diag(t);
  if (rng() % 3) g = g * Mat2::upper(coord());
  if (rng() % 4 == 0) g = g * Mat2::w1(p);
  return g;
}

// ---- exhaustive splitting sweep ----

namespace {

// square-class code: bit 0 valuation parity; higher bits the unit class
template <u64 P>
struct ClassCode {
  int unit[P == 2 ? 8 : P];
  ClassCode() {
    if constexpr (P == 2) {
      static constexpr int bits[8] = {0, 0, 0, 1, 0, 2, 0, 3};
      for (int i = 0; i < 8; ++i) unit[i] = bits[i] << 1;
    } else {
      for (u64 r = 0; r < P; ++r) unit[r] = r && legendre(static_cast<i64>(r), P) == -1 ? 2 : 0;
    }
  }
  int of(i64 y) const {
    if (y < 0) y = -y;
    int v = 0;
    while (y % static_cast<i64>(P) == 0) { y /= static_cast<i64>(P); v ^= 1; }
    return v | unit[y % (P == 2 ? 8 : static_cast<i64>(P))];
  }
};

struct Dyn {
  u64 p;
  int of(i64 y) const {
    if (y < 0) y = -y;
    int v = 0;
    while (y % static_cast<i64>(p) == 0) { y /= static_cast<i64>(p); v ^= 1; }
    if (p == 2) {
      static constexpr int unit_bits[8] = {0, 0, 0, 1, 0, 2, 0, 3};
      return v | (unit_bits[y % 8] << 1);
    }
    return v | ((legendre(y, p) == 1 ? 0 : 1) << 1);
  }
};

i64 class_rep(u64 p, int code) {
  i64 u;
  if (p == 2) u = std::vector<i64>{1, 3, 5, 7}[code >> 1];
  else u = (code >> 1) ? static_cast<i64>(least_nonresidue(p)) : 1;
  return (code & 1) ? u * static_cast<i64>(p) : u;
}

template <class Code>
CheckReport sweep(u64 p, int D, const Code& code) {
  CheckReport rep;
  int cdep = p == 2 ? 3 : 2, udep = p == 2 ? 3 : 1, bdep = p == 2 ? 2 : 1;
  if (D <= cdep) throw std::domain_error("splitting_check: depth too small");
  i64 nc = static_cast<i64>(ipow(p, D - cdep)), nu = static_cast<i64>(ipow(p, D - udep));
  i64 nb = static_cast<i64>(ipow(p, D - bdep));
  i64 pc = static_cast<i64>(ipow(p, cdep)), pu = static_cast<i64>(ipow(p, udep));
  int H[8][8];
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      H[i][j] = (p != 2 && (i > 3 || j > 3)) ? 0 : hilbert_int(p, class_rep(p, i), class_rep(p, j));
  auto fail = [&](i64 c, i64 d, i64 a2, i64 c2) {
    if (!rep.ok) return;
    rep.ok = false;
    std::ostringstream os;
    os << "v=(*,*;" << c << "," << d << ") v'=(" << a2 << ",*;" << c2 << ",*)";
    rep.first_violation = os.str();
  };
  std::vector<int> cls_c(nc);
  for (i64 k = 1; k < nc; ++k) cls_c[k] = code.of(k * pc);
  for (i64 kc = 0; kc < nc; ++kc) {
    i64 c = kc * pc;
    for (i64 kd = 0; kd < nu; ++kd) {
      i64 d = 1 + kd * pu;
      int C = c ? code.of(c) : code.of(d);  // class of x(v)
      for (i64 ka = 0; ka < nu; ++ka) {
        i64 a2 = 1 + ka * pu;
        int A = code.of(a2);
        i64 y = c * a2, step = d * pc;
        rep.checked += static_cast<u64>(nc);
        for (i64 kc2 = 0; kc2 < nc; ++kc2, y += step) {
          if (y != 0) {
            int Y = code.of(y);
            int C2 = kc2 ? cls_c[kc2] : A;  // d' = 1/a' when c' = 0
            if (H[Y ^ C][Y ^ C2] != 1) fail(c, d, a2, kc2 * pc);
            continue;
          }
          // y = 0 forces c = c' = 0; then d' = 1/a' for every b', x(vv') = d/a'
          // and sigma = (1/a', d) = (a', d)
          rep.checked += static_cast<u64>(nb) - 1;
          if (H[A][code.of(d)] != 1) fail(c, d, a2, 0);
        }
      }
    }
  }
  return rep;
}

}  // namespace

CheckReport splitting_check(u64 p, int depth) {
  if (depth < 4) throw std::domain_error("splitting_check: depth must be >= 4");
  auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  switch (p) {
    case 2: r = sweep(p, depth, ClassCode<2>()); break;
    case 3: r = sweep(p, depth, ClassCode<3>()); break;
    case 5: r = sweep(p, depth, ClassCode<5>()); break;
    case 7: r = sweep(p, depth, ClassCode<7>()); break;
    default: r = sweep(p, depth, Dyn{p});
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

CheckReport theta_section_check(u64 p, int samples, u64 seed) {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed);
  CheckReport r;
  for (int i = 0; i < samples; ++i) {
    Mat2 g = random_sl2_int(p, rng), h = random_sl2_int(p, rng);
    ++r.checked;
    if (theta_section(g) * theta_section(h) * cocycle(g, h) != theta_section(g * h) && r.ok) {
      r.ok = false;
      r.first_violation = g.to_string() + " * " + h.to_string();
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

CheckReport cocycle_identity_check(u64 p, int samples, u64 seed) {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed);
  CheckReport r;
  for (int i = 0; i < samples; ++i) {
    Mat2 g = random_sl2(p, rng), h = random_sl2(p, rng), k = random_sl2(p, rng);
    ++r.checked;
    if (cocycle(g, h) * cocycle(g * h, k) != cocycle(g, h * k) * cocycle(h, k) && r.ok) {
      r.ok = false;
      r.first_violation = g.to_string() + " | " + h.to_string() + " | " + k.to_string();
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace rsg
