#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsg/characters.hpp"
#include "rsg/metaplectic.hpp"
#include "rsg/scalar.hpp"

namespace rsg {

// sum c * zeta_L^e, reduced mod Phi_L so that equal values have equal
// term lists; sorted by exponent, no zero coefficients
struct CycTerm {
  u32 e;
  i64 c;
  bool operator==(const CycTerm&) const = default;
};
using CycElt = std::vector<CycTerm>;

// Schwartz function on F (r = 1) supported on p^{-M}, constant on cosets of
// p^N. Cell i (0 <= i < p^{M+N}) is the coset p^{-M} i + p^N. The value on
// cell i is sqrt(q)^e * vals[i], vals[i] in Z[zeta_L].
class SchwartzFn {
 public:
  // indicator of p^k
  static SchwartzFn indicator(u64 p, int k);
  // integer values on the cells of the (M, N) grid
  static SchwartzFn from_values(u64 p, int M, int N, const std::vector<i64>& v);

  u64 p() const { return p_; }
  int support_exp() const { return M_; }    // support p^{-M}
  int constancy_exp() const { return N_; }  // constant mod p^N
  int scale_exp() const { return e_; }
  u64 root_order() const { return L_; }
  u64 cells() const { return vals_.size(); }
  const CycElt& cell(u64 i) const { return vals_[i]; }
  bool is_zero() const;

  Scalar cell_value(u64 i) const;
  Scalar value_at(const PAdic& x) const;
  // cell holding x, none outside the support
  std::optional<u64> cell_index(const PAdic& x) const;
  // representative p^{-M} i of cell i
  PAdic cell_point(u64 i) const;

  SchwartzFn refined(int M, int N) const;
  // the smallest grid that still carries the function
  SchwartzFn tightened() const;
  SchwartzFn with_root_order(u64 L) const;
  // times zeta_n^k
  SchwartzFn times_root(u64 n, i64 k) const;
  SchwartzFn negated() const { return times_root(2, 1); }
  // times sqrt(q)^k
  SchwartzFn times_sqrt_q(int k) const;
  // xi -> psi(u xi^2) f(xi)
  SchwartzFn modulated(const AdditiveCharacter& psi, const PAdic& u) const;
  // xi -> f(xi a)
  SchwartzFn dilated(const PAdic& a) const;
  // y -> int f(x) psi(2 x y) dx, dx self-dual for x -> psi(2x)
  SchwartzFn fourier(const AdditiveCharacter& psi) const;

  friend bool operator==(const SchwartzFn& a, const SchwartzFn& b);
  friend bool operator!=(const SchwartzFn& a, const SchwartzFn& b) { return !(a == b); }
  std::string describe() const;

 private:
  u64 p_ = 0;
  int M_ = 0, N_ = 0, e_ = 0;
  u64 L_ = 8;
  std::vector<CycElt> vals_;
};

// the constant relating Fourier transform and w1: f^ = beta * omega(w1) f;
// beta = gamma(psi)^{-1}, and beta^2 = gamma_psi(-1)
Scalar weil_beta(const AdditiveCharacter& psi);

// exponent k with x = zeta_8^k; throws unless x^8 = 1
int eighth_root_exponent(const Scalar& x);

// omega_psi(<g, eps>) f through the Bruhat factorization
//   c != 0: g = n(A/C) t(-1/C) w1 n(D/C)
//   c == 0: g = t(A) n(B/A)
// with the metaplectic sign of the factorization read off mp_mul.
// beta_sign = -1 uses -beta instead, which breaks the representation; it
// exists for the test that checks the sign is forced.
SchwartzFn weil_act(const MpElement& g, const SchwartzFn& f, const AdditiveCharacter& psi, int beta_sign = 1);

// (omega(b) f)(x) for b = (a 0; a^{-1}c a^{-1}) through the closed double
// integral: (a^{-1}, c) beta^{-2} gamma_psi^{-1}(a) gamma_psi(-1) times
// int int psi(2axy) psi(-c y^2) f(z) psi(-2yz) dz dy
SchwartzFn weil_lower_closed(const PAdic& a, const PAdic& c, const SchwartzFn& f, const AdditiveCharacter& psi);

// omega(g) omega(h) f = sigma(g, h) omega(gh) f on random pairs
CheckReport genuineness_check(u64 p, int samples, u64 seed, int beta_sign = 1);

}  // namespace rsg
