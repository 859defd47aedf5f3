#pragma once
#include "rsg/characters.hpp"
#include "rsg/ratfunc.hpp"

namespace rsg {

RatFunc l_factor(const TameCharacter& tau);
// unramified: tau(varpi)^{-1} q^{s-1/2}; ramified tame: the s-independent
// q^{-1/2} sum over kappa^x of tau^{-1}(x) psi(x)
RatFunc epsilon_factor(const TameCharacter& tau, const AdditiveCharacter& psi);
RatFunc tate_gamma(const TameCharacter& tau, const AdditiveCharacter& psi);
// sigma(a) |a|^{s-1/2} f
RatFunc twist_gamma(const RatFunc& f, const TameCharacter& sigma, const PAdic& a);
// f(1 - s)
RatFunc reflect(const RatFunc& f, u64 q);
// gamma(2s - 1, tau^2, psi_2); through the twist formula when 2 is not a unit
RatFunc gamma_doubled(const TameCharacter& tau, const AdditiveCharacter& psi);
// gamma_psi(-1) gamma(psi) gamma(2s-1, tau^2, psi_2) / gamma(s, tau, psi)
RatFunc local_coefficient(const TameCharacter& tau, const AdditiveCharacter& psi);

// X = q^{-1}, the point s = 1
Scalar point_s_equals_one(u64 q);

}  // namespace rsg
