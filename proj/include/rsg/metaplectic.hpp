#pragma once
#include <cstdint>
#include <random>
#include <string>

#include "rsg/padic.hpp"

namespace rsg {

struct Mat2 {
  PAdic a, b, c, d;

  static Mat2 identity(u64 p);
  static Mat2 from_ints(u64 p, i64 a, i64 b, i64 c, i64 d);
  static Mat2 w1(u64 p);                    // (0 1; -1 0)
  static Mat2 upper(const PAdic& u);        // (1 u; 0 1)
  static Mat2 lower(const PAdic& c);        // (1 0; c 1)
  static Mat2 diag(const PAdic& a);         // (a 0; 0 a^{-1})
  u64 p() const { return a.p(); }
  PAdic det() const { return a * d - b * c; }
  Mat2 inverse() const;  // of a determinant-one matrix
  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  friend bool operator==(const Mat2& x, const Mat2& y);
  std::string to_string() const;
};

// c if c != 0, else d
PAdic kubota_x(const Mat2& g);
int cocycle(const Mat2& g, const Mat2& h);

struct MpElement {
  Mat2 g;
  int eps = 1;
  friend bool operator==(const MpElement& x, const MpElement& y) { return x.eps == y.eps && x.g == y.g; }
};
MpElement mp_mul(const MpElement& x, const MpElement& y);
MpElement mp_inverse(const MpElement& x);

// 1 if c = 0 or |c| = 1, else (c, d)
int theta_section(const Mat2& g);

// random determinant-one integer matrix; with probability ~1/4 upper
// triangular, otherwise c = p^j * unit for j in [0, max_cval]
Mat2 random_sl2_int(u64 p, std::mt19937_64& rng, int max_cval = 3, i64 bound = 200);
// random element of SL2(Q_p) with entries of valuation >= -2
Mat2 random_sl2(u64 p, std::mt19937_64& rng);

struct CheckReport {
  bool ok = true;
  u64 checked = 0;
  std::string first_violation;
  double seconds = 0;
};

// sigma(v, v') = 1 for all integer representatives of N mod p^depth, where
// N = (1+p, p; p^2, 1+p) for odd p and (1+p^3, p^2; p^3, 1+p^3) for p = 2
CheckReport splitting_check(u64 p, int depth);
// theta(g) theta(h) sigma(g, h) = theta(gh) on sampled SL2(Z_p) pairs
CheckReport theta_section_check(u64 p, int samples, u64 seed);
// sigma(g,h) sigma(gh,k) = sigma(g,hk) sigma(h,k) on random triples
CheckReport cocycle_identity_check(u64 p, int samples, u64 seed);

}  // namespace rsg
