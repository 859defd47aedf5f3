#pragma once
#include <map>
#include <string>
#include <vector>

#include "rsg/characters.hpp"
#include "rsg/metaplectic.hpp"
#include "rsg/ratfunc.hpp"

namespace rsg {

// the simple supercuspidal pi_alpha^omega of Sp_2l and its Whittaker data
struct SSParams {
  u64 p = 0;
  int l = 2;
  i64 alpha = 1;       // 1 or the least non-residue; always 1 for p = 2
  int omega_sign = 1;  // omega(-I); always 1 for p = 2 since -1 is in 1 + p
  PAdic varpi;
  AdditiveCharacter psi;  // psi_alpha, level one

  static SSParams make(u64 p, int l, i64 alpha = 1, int omega_sign = 1, int psi_sign = 1);
  SSParams with_psi(const AdditiveCharacter& other) const;
};

// f_s: supported on B1~ N, transforming on the left by
// eps |b|^{s+1/2} gamma_psi(b) tau(b), equal to 1 on <N, 1>.
// N = (1+p, p; p^2, 1+p) for odd p, (1+p^3, p^2; p^3, 1+p^3) for p = 2.
struct SectionData {
  TameCharacter tau;
  AdditiveCharacter psi;
  // the lower-left entry of N ranges over p^depth
  int depth() const { return tau.p == 2 ? 3 : 2; }
};

// W on rxb with b = (a 0; a^{-1}c a^{-1}) and r the l - 2 coordinates of
// the unipotent block: psi^{-1}(a^{-1} c / varpi) on a in 1+p, c, x, r in p;
// zero elsewhere. Only this family is supported.
Scalar whittaker_eval(const SSParams& params, const PAdic& a, const PAdic& c, const PAdic& x,
                      const std::vector<PAdic>& r);

// f_s(<g, eps>, 1) as c X^k. Throws PrecisionError when membership in B1~ N
// cannot be decided.
RatFunc section_eval(const SectionData& data, const MpElement& g);

// A(tau, psi, s); defined when tau on units is gamma_psi or (varpi, .) gamma_psi
// (odd p), or for unramified tau (p = 2)
RatFunc intertwine_A(const SectionData& data);

// [M(tau,s) f_s](b, 1) for a in 1 + p and c in p, c != 0, in closed form
RatFunc intertwine_closed(const SectionData& data, const PAdic& c, const PAdic& a);

// sum_k head[k] X^k + (sum_k tail[k] X^k) / (1 - ratio X^2)
struct ShellSeries {
  std::map<int, Scalar> head, tail;
  Scalar ratio;
  void add_scaled(const ShellSeries& o, const Scalar& w);
  RatFunc to_ratfunc() const;
};

// the same value integrated shell by shell over u in varpi^{-k} o^x straight
// from the definition int f_s(<w1,1>^{-1} <n(u),1> <b,1>, -1) du; from k = depth
// on, the shells repeat with period two up to q tau(varpi)^2, which is checked
// on two more shells before the tail is summed in closed form. c = 0 allowed.
ShellSeries intertwine_shell_series(const SectionData& data, const PAdic& c, const PAdic& a);
inline RatFunc intertwine_shells(const SectionData& data, const PAdic& c, const PAdic& a) {
  return intertwine_shell_series(data, c, a).to_ratfunc();
}

// Psi(W, phi, f_s) or Psi(W, phi, M(tau,s) f_s) in closed form; phi is 1_p for
// odd p, 1_o for p = 2
RatFunc psi_closed(const SSParams& params, const SectionData& data, bool intertwined);

struct BruteStats {
  u64 points = 0;  // (a, c, x, r) grid points visited
  double seconds = 0;
};

// the same integral as a finite sum over b in B1-bar, x and r: a over
// (1+p)/(1+p^depth), c over p/p^depth (zero cell at varpi^depth), x over the
// support of phi mod p^depth, r over (p/p^depth)^{l-2}. omega(b) phi comes from
// weil_act; the intertwined section from intertwine_shell_series. Throws
// std::runtime_error when a point budget is exceeded or the grid is too coarse.
RatFunc psi_bruteforce(const SSParams& params, const SectionData& data, int depth, bool intertwined,
                       int beta_sign = 1, BruteStats* stats = nullptr, u64 budget = 400000000);

// tau(2)^{-2} |2|^{-2(s-1/2)}
RatFunc c_factor(const TameCharacter& tau);

// gamma(s, pi x tau, psi) from the ratio of the two Shimura integrals.
// brute_depth = 0 takes both integrals in closed form.
RatFunc gamma_assemble(const SSParams& params, const TameCharacter& tau, const AdditiveCharacter& psi,
                       int brute_depth = 0);

// the four tamely ramified characters with tau^2 = 1
std::vector<TameCharacter> quadratic_tame_characters(const PAdic& varpi);

struct PoleScan {
  std::vector<TameCharacter> candidates;
  std::vector<int> orders;  // order at s = 1 of each gamma
  int pole_index = -1;
  bool unit_condition = false;   // tau on units is gamma_psi_alpha
  bool varpi_condition = false;  // tau(varpi) = gamma^{-1}(varpi) sqrt(q) / G(psi_alpha^{-1})
  TameCharacter tau() const { return candidates.at(static_cast<size_t>(pole_index)); }
};
// throws std::logic_error unless exactly one candidate has a pole
PoleScan pole_scan(const SSParams& params);

}  // namespace rsg
