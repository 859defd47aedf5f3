#pragma once
#include <utility>

#include "rsg/padic.hpp"
#include "rsg/scalar.hpp"

namespace rsg {

// psi(x) = exp(2 pi i {sign * t * x / d}_p) with d = varpi (odd p) or 2
// (p = 2, where psi(x) = e^{sign pi i x}). Level one for every unit t.
struct AdditiveCharacter {
  u64 p = 0;
  PAdic varpi;
  int sign = 1;
  PAdic twist;  // unit

  static AdditiveCharacter standard(u64 p, int sign = 1);
  static AdditiveCharacter with_uniformizer(const PAdic& varpi, int sign = 1);
  // psi_a : x -> psi(a x), a a unit
  AdditiveCharacter twisted(const PAdic& a) const;
  AdditiveCharacter inverse() const { return twisted(PAdic::from_int(p, -1)); }
  // the multiplier c with psi(x) = e({c x})
  PAdic multiplier() const;
  // psi(x) = zeta_{p^j}^e; returns (p^j, e)
  std::pair<u64, u64> exponent(const PAdic& x) const;
  Scalar eval(const PAdic& x) const;
  Scalar eval(i64 x) const { return eval(PAdic::from_int(p, x)); }
  std::string describe() const;
};

// tau(varpi^v u) = value^v * zeta_{q-1}^{r * log_g(u mod p)}, g the least
// primitive root; trivial on 1 + p by construction
struct TameCharacter {
  u64 p = 0;
  PAdic varpi;
  Scalar value;  // tau(varpi)
  i64 residue_exponent = 0;

  static TameCharacter make(const PAdic& varpi, const Scalar& value, i64 residue_exponent);
  static TameCharacter trivial(const PAdic& varpi) { return make(varpi, Scalar(1), 0); }
  u64 generator() const { return primitive_root(p); }
  bool is_unramified() const { return residue_exponent == 0; }
  bool is_quadratic() const;
  // value on a unit residue u (1 <= u < p)
  Scalar on_residue(u64 u) const;
  Scalar eval(const PAdic& x) const;
  Scalar eval(i64 x) const { return eval(PAdic::from_int(p, x)); }
  TameCharacter inverse() const;
  TameCharacter pow(i64 k) const;
  friend TameCharacter operator*(const TameCharacter& a, const TameCharacter& b);
  friend bool operator==(const TameCharacter& a, const TameCharacter& b);
  std::string describe() const;
};

// sum over x in kappa^x of psi(x) eta(x), eta = zeta_{q-1}^{r log x}
Scalar gauss_sum(const AdditiveCharacter& psi, i64 residue_exponent);
// sum over kappa^x of psi(x) (varpi, x), using the Hilbert symbol
Scalar gauss_sum_varpi(const AdditiveCharacter& psi);

// Weil index of x -> psi(a x^2): the normalized exponential sum over
// p^{-k}/p^m, with k raised until two successive values agree
Scalar weil_index(const AdditiveCharacter& psi, const PAdic& a);
Scalar weil_index_uncached(const AdditiveCharacter& psi, const PAdic& a, int* k_used = nullptr);
inline Scalar weil_index(const AdditiveCharacter& psi) { return weil_index(psi, PAdic::from_int(psi.p, 1)); }
// gamma_psi(a) = gamma(psi_a) / gamma(psi)
Scalar weil_factor(const AdditiveCharacter& psi, const PAdic& a);
inline Scalar weil_factor(const AdditiveCharacter& psi, i64 a) {
  return weil_factor(psi, PAdic::from_int(psi.p, a));
}

struct StabilizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rsg
