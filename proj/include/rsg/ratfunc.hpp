#pragma once
#include <string>
#include <vector>

#include "rsg/scalar.hpp"

namespace rsg {

using Poly = std::vector<Scalar>;  // low degree first, no trailing zeros

// Rational function of X = q^{-s}: X^k * N(X)/D(X) with N(0), D(0) nonzero,
// D(0) = 1 and gcd(N, D) = 1. The zero function has N empty and k = 0.
class RatFunc {
 public:
  RatFunc() : den_{Scalar(1)} {}
  RatFunc(const Scalar& c);
  RatFunc(long c) : RatFunc(Scalar(c)) {}
  static RatFunc monomial(const Scalar& c, int k);
  static RatFunc from_polys(Poly num, Poly den, int shift = 0);
  // 1/(1 - a X^k)
  static RatFunc inverse_binomial(const Scalar& a, int k = 1);

  bool is_zero() const { return num_.empty(); }
  int shift() const { return k_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
  RatFunc inverse() const;
  RatFunc pow(int e) const;
  friend bool operator==(const RatFunc& a, const RatFunc& b);
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  // f(s) -> f(a s + b): X -> q^{-b} X^a; 2b must be an integer
  RatFunc substitute(int a, const mpq_class& b, u64 q) const;
  // order of vanishing at X = x0 (negative for a pole); x0 nonzero
  int order_at(const Scalar& x0) const;
  Scalar leading_coefficient_at(const Scalar& x0) const;
  Scalar eval(const Scalar& x0) const;
  // c X^k
  bool is_monomial(Scalar* c = nullptr, int* k = nullptr) const;
  RatFunc map_coeffs(Scalar (*f)(const Scalar&)) const;
  std::string to_string() const;

 private:
  void normalize();
  int k_ = 0;
  Poly num_;
  Poly den_;
};

namespace poly {
void trim(Poly& a);
Poly add(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, const Scalar& c);
void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly gcd(Poly a, Poly b);  // monic
Scalar eval(const Poly& a, const Scalar& x);
// number of times (X - x0) divides a; a is replaced by the cofactor
int strip_root(Poly& a, const Scalar& x0);
std::string to_string(const Poly& a);
}  // namespace poly

}  // namespace rsg
