#include "weil_oracle.hpp"

namespace rsg::oracle {

Scalar weil_index_naive(const AdditiveCharacter& psi, const PAdic& a, int k, int m) {
  u64 p = psi.p;
  u64 count = ipow(p, k + m);
  PAdic base = PAdic::from_int(p, static_cast<i64>(p)).pow(-k);
  // psi(a x^2) has denominator at most p^{2k - v(a) + 1}
  int depth = std::max(1, 2 * k - a.valuation() + 2);
  u64 L = ipow(p, depth);
  CycVec acc(L);
  for (u64 i = 0; i < count; ++i) {
    PAdic x = PAdic::from_int(p, static_cast<i64>(i)) * base;
    auto [P, e] = psi.exponent(a * x * x);
    acc.add(e * (L / P), 1);
  }
  Scalar S = acc.to_scalar();
  Scalar n2 = S.abs2();
  return (S * Scalar::sqrt_positive_rational(n2.rational_value()).inverse()).with_q(p);
}

}  // namespace rsg::oracle
