#pragma once
#include <string>
#include <vector>

#include "rsg/characters.hpp"
#include "rsg/ratfunc.hpp"
#include "rsg/shimura.hpp"

namespace rsg {

// the quadratic tau with tau = gamma_psi on units and
// tau(varpi) = gamma_psi^{-1}(varpi) sqrt(q) / G(psi^{-1}); p odd
TameCharacter tau_alpha(const AdditiveCharacter& psi_alpha);

// varpi_{alpha,l} = varpi / ((-1)^{l+1} 4 alpha); p odd
PAdic pi1_uniformizer(int l, i64 alpha, const PAdic& varpi);

// E = F(zeta), zeta^n = w with v(w) = 1; totally ramified of degree n.
// Elements are coefficient vectors of 1, zeta, ..., zeta^{n-1}.
class RamifiedExt {
 public:
  using Elt = std::vector<PAdic>;

  RamifiedExt(int n, const PAdic& w);
  int degree() const { return n_; }
  u64 p() const { return w_.p(); }
  const PAdic& root_power() const { return w_; }

  Elt from_base(const PAdic& a) const;
  Elt one() const { return from_base(PAdic::from_int(p(), 1, PAdic::max_precision(p()))); }
  Elt zeta() const;
  Elt add(const Elt& x, const Elt& y) const;
  // product, reduced with zeta^n = w
  Elt mul(const Elt& x, const Elt& y) const;
  // v_E with v_E(zeta) = 1; v_E(0) throws
  int valuation(const Elt& x) const;
  // matrix of y -> x y in the basis zeta^{n-1}, ..., zeta, 1 (column convention)
  std::vector<std::vector<PAdic>> regular_matrix(const Elt& x) const;
  // determinant of the regular matrix
  PAdic norm(const Elt& x) const;
  // discriminant of T^n - w through the Sylvester resultant of f and f',
  // with w replaced by its rational lift
  mpq_class discriminant() const;

 private:
  int n_;
  PAdic w_;
};

// psi(sum_i iota(x)_{i,i+1} + w^{-1} iota(x)_{n,1}) for x in 1 + p_E
Scalar xi_principal_units(const RamifiedExt& E, const RamifiedExt::Elt& x, const AdditiveCharacter& psi);

// the character b -> (disc, b) on units, as a residue exponent (0 or (q-1)/2)
i64 det_induction_residue_exponent(const RamifiedExt& E);

struct ParamRecord {
  u64 p = 0;
  int l = 2;
  i64 alpha = 1;
  int omega_sign = 1;
  int psi_sign = 1;
  TameCharacter tau_alpha;
  PAdic pi1_uniformizer;
  i64 xi_residue_exponent = 0;  // mod q - 1
  // xi(zeta) = delta * lambda^{-1}, lambda = lambda_{E/F}(psi_alpha) kept symbolic
  Scalar xi_zeta;             // delta, the coefficient of q^{1/2-s}
  RatFunc xi_zeta_monomial;   // the same factor read with gamma(s, tau_alpha, psi_alpha)^{-1} in full
  std::vector<std::string> xi_zeta_tokens{"lambda_{E/F}(psi_alpha)^{-1}"};
  bool induction_applies = true;  // false when p | 2l
};

// throws std::domain_error for p = 2, std::logic_error when gamma(s, pi) /
// gamma(s, tau_alpha) is not a multiple of q^{1/2-s}
ParamRecord build_parameter(const SSParams& params);

}  // namespace rsg
