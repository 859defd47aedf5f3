#include "rsg/tate.hpp"

namespace rsg {

RatFunc l_factor(const TameCharacter& tau) {
  if (!tau.is_unramified()) return RatFunc(1);
  return RatFunc::inverse_binomial(tau.value);
}

RatFunc epsilon_factor(const TameCharacter& tau, const AdditiveCharacter& psi) {
  u64 q = tau.p;
  if (tau.is_unramified()) return RatFunc::monomial(tau.value.inverse() * Scalar::sqrt_q_pow(q, -1), -1);
  TameCharacter ti = tau.inverse();
  Scalar s;
  for (u64 x = 1; x < q; ++x) s += ti.on_residue(x) * psi.eval(static_cast<i64>(x));
  return RatFunc(s * Scalar::sqrt_q_pow(q, -1));
}

RatFunc reflect(const RatFunc& f, u64 q) { return f.substitute(-1, 1, q); }

RatFunc tate_gamma(const TameCharacter& tau, const AdditiveCharacter& psi) {
  if (tau.p != psi.p) throw std::domain_error("tate_gamma: mismatched primes");
  return epsilon_factor(tau, psi) * reflect(l_factor(tau.inverse()), tau.p) / l_factor(tau);
}

RatFunc twist_gamma(const RatFunc& f, const TameCharacter& sigma, const PAdic& a) {
  int v = a.valuation();
  // |a|^{s-1/2} = q^{v/2} X^{v}
  return f * RatFunc::monomial(sigma.eval(a) * Scalar::sqrt_q_pow(sigma.p, v), v);
}

RatFunc gamma_doubled(const TameCharacter& tau, const AdditiveCharacter& psi) {
  u64 q = tau.p;
  TameCharacter t2 = tau.pow(2);
  RatFunc g = q == 2 ? twist_gamma(tate_gamma(t2, psi), t2, PAdic::from_int(2, 2))
                     : tate_gamma(t2, psi.twisted(PAdic::from_int(q, 2)));
  return g.substitute(2, -1, q);
}

RatFunc local_coefficient(const TameCharacter& tau, const AdditiveCharacter& psi) {
  Scalar c = weil_factor(psi, -1) * weil_index(psi);
  return RatFunc(c) * gamma_doubled(tau, psi) / tate_gamma(tau, psi);
}

Scalar point_s_equals_one(u64 q) { return Scalar(mpq_class(1, static_cast<long>(q))); }

}  // namespace rsg
