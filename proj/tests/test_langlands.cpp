#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hilbert_oracle.hpp"
#include "rsg/langlands.hpp"
#include "rsg/serialize.hpp"
#include "rsg/tate.hpp"

using namespace rsg;

namespace {

PAdic P(u64 p, i64 n) { return PAdic::from_int(p, n, PAdic::max_precision(p)); }
PAdic pp(u64 p, int k) { return P(p, static_cast<i64>(p)).pow(k); }
i64 nonresidue(u64 p) { return static_cast<i64>(least_nonresidue(p)); }

constexpr int kPrec = 12;

// a random element of o_E (or 1 + p_E) with coefficients known to kPrec digits
RamifiedExt::Elt random_elt(const RamifiedExt& E, std::mt19937_64& rng, bool principal) {
  u64 p = E.p();
  u64 mod = ipow(p, kPrec);
  RamifiedExt::Elt x;
  for (int j = 0; j < E.degree(); ++j) {
    i64 v = static_cast<i64>(rng() % mod);
    if (principal && j == 0) v = 1 + static_cast<i64>(p) * (v / static_cast<i64>(p));
    x.push_back(PAdic::from_int(p, v, kPrec));
  }
  return x;
}

// T^n + a has discriminant (-1)^{n(n-1)/2} n^n a^{n-1}
mpq_class binomial_disc(int n, const mpq_class& a) {
  mpq_class r = 1;
  for (int i = 0; i < n; ++i) r *= n;
  for (int i = 0; i < n - 1; ++i) r *= a;
  return (n * (n - 1) / 2) % 2 ? -r : r;
}

}  // namespace

TEST_CASE("uniformizer of the GL side") {
  for (u64 p : {3, 5, 7, 11}) {
    PAdic w = pp(p, 1);
    CHECK(pi1_uniformizer(2, 1, w) == PAdic::from_rational(p, mpq_class(-static_cast<long>(p), 4)));
    CHECK(pi1_uniformizer(3, 1, w) == PAdic::from_rational(p, mpq_class(static_cast<long>(p), 4)));
    CHECK(pi1_uniformizer(4, 1, w) == pi1_uniformizer(2, 1, w));
    i64 a = nonresidue(p);
    CHECK(pi1_uniformizer(2, a, w) == PAdic::from_rational(p, mpq_class(-static_cast<long>(p), 4 * a)));
    for (int l : {2, 3, 4}) CHECK(pi1_uniformizer(l, a, w).valuation() == 1);
  }
}

TEST_CASE("tau_alpha is the quadratic character found by the pole scan") {
  for (u64 p : {3, 5, 7, 11, 13}) {
    for (i64 alpha : {i64{1}, nonresidue(p)}) {
      for (int sign : {1, -1}) {
        auto prm = SSParams::make(p, 2, alpha, 1, sign);
        TameCharacter t = tau_alpha(prm.psi);
        CHECK(t.residue_exponent == static_cast<i64>(p - 1) / 2);
        CHECK(t.value.pow(2) == Scalar(1));
        for (u64 u = 1; u < p; ++u) CHECK(t.on_residue(u) == weil_factor(prm.psi, static_cast<i64>(u)));
        // G(psi^{-1}) tau(varpi) gamma_psi(varpi) = sqrt(q)
        CHECK(t.value * weil_factor(prm.psi, prm.varpi) * gauss_sum_varpi(prm.psi.inverse()) ==
              Scalar::sqrt_q_pow(p, 1));
        if (p <= 7) {
          for (int om : {1, -1}) CHECK(pole_scan(SSParams::make(p, 2, alpha, om, sign)).tau() == t);
        }
      }
    }
  }
  CHECK_THROWS_AS(tau_alpha(AdditiveCharacter::standard(2)), std::domain_error);
}

TEST_CASE("ramified extension arithmetic") {
  std::mt19937_64 rng(7);
  for (u64 p : {3, 5, 7}) {
    for (int l : {2, 3}) {
      RamifiedExt E(2 * l, pi1_uniformizer(l, 1, pp(p, 1)));
      int n = E.degree();
      // zeta^n = w
      RamifiedExt::Elt z = E.one();
      for (int i = 0; i < n; ++i) z = E.mul(z, E.zeta());
      CHECK(z == E.from_base(E.root_power()));
      for (int k = 0; k < n + 3; ++k) {
        RamifiedExt::Elt zk = E.one();
        for (int i = 0; i < k; ++i) zk = E.mul(zk, E.zeta());
        CHECK(E.valuation(zk) == k);
      }
      // iota(zeta): ones on the superdiagonal, w in the corner
      auto M = E.regular_matrix(E.zeta());
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (j == i + 1) CHECK(M[i][j] == P(p, 1));
          else if (i == n - 1 && j == 0) CHECK(M[i][j] == E.root_power());
          else CHECK(M[i][j].is_zero());
        }
      CHECK(E.norm(E.zeta()) == (n % 2 ? E.root_power() : -E.root_power()));
      PAdic a = P(p, 1 + 2 * static_cast<i64>(p));
      CHECK(E.norm(E.from_base(a)) == a.pow(n));
      for (int t = 0; t < 12; ++t) {
        auto x = random_elt(E, rng, false), y = random_elt(E, rng, false);
        CHECK(E.mul(x, y) == E.mul(y, x));
        auto w3 = random_elt(E, rng, false);
        CHECK(E.mul(E.mul(x, y), w3) == E.mul(x, E.mul(y, w3)));
        CHECK(E.norm(E.mul(x, y)) == E.norm(x) * E.norm(y));
        // v_E agrees with v_F of the norm
        auto xz = E.mul(x, E.mul(E.zeta(), E.zeta()));
        CHECK(E.valuation(xz) == E.norm(xz).valuation());
      }
      CHECK_THROWS(E.valuation(E.from_base(PAdic::zero(p))));
    }
  }
}

TEST_CASE("degree-two norms") {
  for (u64 p : {3, 5}) {
    PAdic w = pi1_uniformizer(2, 1, pp(p, 1));
    RamifiedExt E(2, w);
    for (i64 a : {1, 2, 7})
      for (i64 b : {0, 1, 3}) {
        RamifiedExt::Elt x{P(p, a), P(p, b)};
        CHECK(E.norm(x) == P(p, a) * P(p, a) - w * P(p, b) * P(p, b));
      }
  }
}

TEST_CASE("discriminant and its quadratic character") {
  for (u64 p : {3, 5, 7, 11}) {
    for (int l : {1, 2, 3}) {
      for (i64 alpha : {i64{1}, nonresidue(p)}) {
        PAdic w = pi1_uniformizer(l, alpha, pp(p, 1));
        RamifiedExt E(2 * l, w);
        mpq_class D = E.discriminant();
        CHECK(D == binomial_disc(2 * l, -w.lift()));
        i64 r = det_induction_residue_exponent(E);
        PAdic Dp = PAdic::from_rational(p, D);
        PAdic g = P(p, static_cast<i64>(primitive_root(p)));
        CHECK(r == (oracle::hilbert_solvable(Dp, g) > 0 ? 0 : static_cast<i64>(p - 1) / 2));
        CHECK((2 * r) % static_cast<i64>(p - 1) == 0);
        if (l == 1) {
          // degree two: the discriminant character is (w, .), killing the norms
          for (i64 b = 1; b < static_cast<i64>(p); ++b) CHECK(hilbert(Dp, P(p, b)) == hilbert(w, P(p, b)));
          for (i64 a : {1, 2, 5})
            for (i64 b : {1, 4}) CHECK(hilbert(Dp, P(p, a) * P(p, a) - w * P(p, b) * P(p, b)) == 1);
        }
      }
    }
  }
}

TEST_CASE("xi on principal units") {
  std::mt19937_64 rng(11);
  for (u64 p : {3, 5, 7}) {
    for (int l : {2, 3}) {
      auto prm = SSParams::make(p, l);
      RamifiedExt E(2 * l, pi1_uniformizer(l, 1, prm.varpi));
      CHECK(xi_principal_units(E, E.one(), prm.psi) == Scalar(1));
      auto zz = E.mul(E.zeta(), E.zeta());
      for (int t = 0; t < 25; ++t) {
        auto x = random_elt(E, rng, true), y = random_elt(E, rng, true);
        Scalar xx = xi_principal_units(E, x, prm.psi);
        // iota contributes (n - 1) c_1 on the superdiagonal and w c_1 in the corner
        CHECK(xx == prm.psi.eval(P(p, 2 * l) * x[1]));
        CHECK(xi_principal_units(E, E.mul(x, y), prm.psi) == xx * xi_principal_units(E, y, prm.psi));
        // level: trivial on 1 + p_E^2 and constant on its cosets
        auto z = E.add(E.one(), E.mul(zz, random_elt(E, rng, false)));
        CHECK(xi_principal_units(E, z, prm.psi) == Scalar(1));
        CHECK(xi_principal_units(E, E.mul(x, z), prm.psi) == xx);
      }
      CHECK_THROWS(xi_principal_units(E, E.zeta(), prm.psi));
    }
  }
}

TEST_CASE("parameter record") {
  for (u64 p : {3, 5, 7}) {
    for (int l : {2, 3}) {
      for (i64 alpha : {i64{1}, nonresidue(p)}) {
        for (int sign : {1, -1}) {
          auto prm = SSParams::make(p, l, alpha, 1, sign);
          ParamRecord r = build_parameter(prm);
          CHECK(r.tau_alpha == tau_alpha(prm.psi));
          CHECK(r.pi1_uniformizer == pi1_uniformizer(l, alpha, prm.varpi));
          CHECK(r.xi_zeta.abs2() == Scalar(1));
          CHECK(r.induction_applies == (l % static_cast<int>(p) != 0));
          if (r.induction_applies) CHECK(r.xi_residue_exponent == 0);

          // omega(-I) gamma(psi)^{-1} gamma_psi(varpi)^{-1} times the inverse
          // of the constant epsilon factor of tau_alpha
          Scalar eps = Scalar::sqrt_q_pow(p, -1) * gauss_sum(prm.psi, r.tau_alpha.residue_exponent);
          Scalar lead = weil_index(prm.psi).inverse() * weil_factor(prm.psi, prm.varpi).inverse();
          CHECK(r.xi_zeta == lead * eps.inverse());
          CHECK(r.xi_zeta_monomial == RatFunc(lead) * tate_gamma(r.tau_alpha, prm.psi).inverse());
          CHECK(r.xi_zeta_monomial == RatFunc(r.xi_zeta));
          CHECK(r.xi_zeta_tokens == std::vector<std::string>{"lambda_{E/F}(psi_alpha)^{-1}"});

          ParamRecord m = build_parameter(SSParams::make(p, l, alpha, -1, sign));
          CHECK(m.xi_zeta == -r.xi_zeta);
          CHECK(m.xi_zeta_monomial == -r.xi_zeta_monomial);
          CHECK(m.tau_alpha == r.tau_alpha);
          CHECK(m.pi1_uniformizer == r.pi1_uniformizer);
          CHECK(m.xi_residue_exponent == r.xi_residue_exponent);
        }
      }
    }
  }
  CHECK_THROWS_AS(build_parameter(SSParams::make(2, 2)), std::domain_error);
}

TEST_CASE("parameter record round-trips through JSON") {
  for (u64 p : {3, 5}) {
    for (int om : {1, -1}) {
      ParamRecord r = build_parameter(SSParams::make(p, 2, nonresidue(p), om, -1));
      nlohmann::json j = to_json(r);
      ParamRecord back = param_record_from_json(j);
      CHECK(back.p == r.p);
      CHECK(back.l == r.l);
      CHECK(back.alpha == r.alpha);
      CHECK(back.omega_sign == r.omega_sign);
      CHECK(back.psi_sign == r.psi_sign);
      CHECK(back.tau_alpha == r.tau_alpha);
      CHECK(back.pi1_uniformizer == r.pi1_uniformizer);
      CHECK(back.pi1_uniformizer.precision() == r.pi1_uniformizer.precision());
      CHECK(back.xi_residue_exponent == r.xi_residue_exponent);
      CHECK(back.xi_zeta == r.xi_zeta);
      CHECK(back.xi_zeta_monomial == r.xi_zeta_monomial);
      CHECK(back.xi_zeta_tokens == r.xi_zeta_tokens);
      CHECK(back.induction_applies == r.induction_applies);
      CHECK(to_json(back).dump() == j.dump());
    }
  }
}

TEST_CASE("scalar and rational function JSON") {
  std::vector<Scalar> xs{Scalar(0), Scalar(mpq_class(-3, 7)), Scalar::zeta(8, 3), Scalar::sqrt_q_pow(5, 3),
                         Scalar::zeta(12, 5) * Scalar::sqrt_q_pow(3, -1) + Scalar(2)};
  for (const Scalar& x : xs) {
    nlohmann::json j = to_json(x);
    CHECK(j.contains("n"));
    CHECK(j["coeffs"].is_array());
    CHECK(scalar_from_json(j) == x);
  }
  RatFunc f = RatFunc::monomial(Scalar::zeta(8, 1), 2) * RatFunc::inverse_binomial(Scalar(3), 2);
  CHECK(ratfunc_from_json(to_json(f)) == f);
  CHECK(ratfunc_from_json(to_json(RatFunc())) == RatFunc());
  PAdic z = PAdic::zero(5, 4);
  CHECK(padic_from_json(to_json(z)).abs_precision() == 4);
}
