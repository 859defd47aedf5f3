#pragma once
#include <gmpxx.h>

#include <complex>
#include <string>
#include <vector>

#include "rsg/arith.hpp"

namespace rsg {

// integer coefficients of the n-th cyclotomic polynomial, low degree first
const std::vector<i64>& cyclotomic_poly(u64 n);
u64 euler_phi(u64 n);

// Exact element of Q(zeta_n), kept as the reduced power basis mod Phi_n.
// sqrt(q) lives in the same field (n divisible by 8 and p); q is only
// remembered so that rendering can factor it out again.
class Scalar {
 public:
  Scalar() : n_(1), c_(1) {}
  Scalar(long v) : n_(1), c_(1, mpq_class(v)) {}
  Scalar(const mpq_class& r) : n_(1), c_(1, r) {}

  static Scalar zeta(u64 n, i64 k);
  // sum d[j] zeta_n^j for any length of d
  static Scalar from_dense(u64 n, std::vector<mpq_class> d);
  // sqrt(p) for a prime p, realized through a quadratic Gauss sum
  static Scalar sqrt_prime(u64 p);
  // sqrt(q)^e for any integer e
  static Scalar sqrt_q_pow(u64 q, i64 e);
  // square root of a positive rational of the form square * 2^i * p^j
  static Scalar sqrt_positive_rational(const mpq_class& r);

  u64 order() const { return n_; }
  u64 q() const { return q_; }
  Scalar with_q(u64 q) const;
  Scalar without_q() const { Scalar r = *this; r.q_ = 0; return r; }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  mpq_class rational_value() const;  // requires is_rational()

  Scalar lifted(u64 m) const;  // m divisible by order()
  Scalar conj() const;
  Scalar inverse() const;
  Scalar pow(i64 e) const;
  Scalar abs2() const { return *this * conj(); }
  // apply zeta -> zeta^k, k prime to n
  Scalar galois(i64 k) const;
  std::complex<double> embed() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // order-k root of unity test: returns smallest m with x^m = 1, or 0
  int root_of_unity_order(int max_order = 48) const;

  struct Term {
    i64 k;
    int e;
    mpq_class c;
  };
  // rendering terms sum c zeta_n^k sqrt(q)^e, with e = 1 chosen when it
  // needs fewer terms (requires q known)
  std::vector<Term> terms() const;
  std::string to_string() const;

 private:
  Scalar(u64 n, std::vector<mpq_class> c, u64 q);
  static Scalar reduce(u64 n, std::vector<mpq_class> dense, u64 q);
  static u64 merge_q(u64 a, u64 b);

  u64 n_;
  std::vector<mpq_class> c_;  // length phi(n)
  u64 q_ = 0;
};

// accumulator sum c_j zeta_L^j with machine-integer weights; the workhorse
// of exponential sums. Converted to a Scalar once at the end.
struct CycVec {
  u64 L = 1;
  std::vector<i64> v;
  CycVec() : v(1, 0) {}
  explicit CycVec(u64 len) : L(len), v(len, 0) {}
  void add(u64 j, i64 w) { v[j % L] += w; }
  Scalar to_scalar() const;
};

}  // namespace rsg
