#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles/schwartz_oracle.hpp"
#include "rsg/weilrep.hpp"

using namespace rsg;

namespace {

PAdic P(u64 p, i64 n) { return PAdic::from_int(p, n, PAdic::max_precision(p)); }
PAdic Q(u64 p, i64 num, i64 den) {
  return PAdic::from_rational(p, mpq_class(static_cast<long>(num), static_cast<unsigned long>(den)),
                              PAdic::max_precision(p));
}

// unit * p^k with a random unit below 40
PAdic rand_elt(u64 p, int k, std::mt19937_64& rng) {
  i64 u;
  do u = static_cast<i64>(rng() % 40) + 1;
  while (u % static_cast<i64>(p) == 0);
  return P(p, rng() & 1 ? u : -u) * P(p, static_cast<i64>(p)).pow(k);
}

SchwartzFn random_fn(u64 p, int M, int N, std::mt19937_64& rng) {
  std::vector<i64> v(ipow(p, M + N));
  for (auto& x : v) x = static_cast<i64>(rng() % 7) - 3;
  return SchwartzFn::from_values(p, M, N, v);
}

oracle::PointFn as_points(const SchwartzFn& f) {
  return {f.p(), f.support_exp(), f.constancy_exp(), [f](const PAdic& x) { return f.value_at(x); }};
}

// every cell of g agrees with the pointwise oracle value
template <class F>
void check_cells(const SchwartzFn& g, F&& expected) {
  for (u64 i = 0; i < g.cells(); ++i) {
    PAdic x = g.cell_point(i);
    CHECK_MESSAGE(g.cell_value(i) == expected(x), "cell " << i << " of " << g.describe());
  }
}

}  // namespace

TEST_CASE("beta squared is gamma_psi(-1)") {
  for (u64 p : {2, 3, 5, 7, 11, 13}) {
    for (int s : {1, -1}) {
      auto psi = AdditiveCharacter::standard(p, s);
      Scalar b = weil_beta(psi);
      CHECK(b * b == weil_factor(psi, -1));
      CHECK(b.pow(8) == Scalar(1));
    }
  }
}

TEST_CASE("eighth roots of unity are recognized") {
  for (int k = 0; k < 8; ++k) CHECK(eighth_root_exponent(Scalar::zeta(8, k)) == k);
  CHECK_THROWS(eighth_root_exponent(Scalar::zeta(3, 1)));
}

TEST_CASE("indicator transforms") {
  for (u64 p : {3, 5, 7}) {
    auto psi = AdditiveCharacter::standard(p);
    SchwartzFn one = SchwartzFn::indicator(p, 0);
    SchwartzFn hat = one.fourier(psi);
    // vol(O) = sqrt q, and the transform of 1_O is vol(O) 1_P
    CHECK(hat == SchwartzFn::indicator(p, 1).times_sqrt_q(1));
    CHECK(hat.fourier(psi) == one);
  }
  // p = 2: psi(2x) has level zero, so 1_O is self-dual
  auto psi2 = AdditiveCharacter::standard(2);
  CHECK(SchwartzFn::indicator(2, 0).fourier(psi2) == SchwartzFn::indicator(2, 0));
}

TEST_CASE("grid operations agree with pointwise evaluation") {
  std::mt19937_64 rng(11);
  for (u64 p : {2, 3, 5}) {
    for (int s : {1, -1}) {
      auto psi = AdditiveCharacter::standard(p, s);
      for (int trial = 0; trial < 6; ++trial) {
        int M = static_cast<int>(rng() % 3) - 1, N = static_cast<int>(rng() % 2) + 1;
        if (p == 5 && M + N > 2) M = 2 - N;
        SchwartzFn f = random_fn(p, M, N, rng);
        auto pf = as_points(f);

        check_cells(f.fourier(psi), [&](const PAdic& y) { return oracle::fourier_point(pf, psi, y); });

        PAdic u = Q(p, static_cast<i64>(rng() % 40) + 1, static_cast<i64>(ipow(p, static_cast<int>(rng() % 3))));
        check_cells(f.modulated(psi, u), [&](const PAdic& x) { return psi.eval(u * x * x) * f.value_at(x); });

        PAdic a = rand_elt(p, static_cast<int>(rng() % 3) - 1, rng);
        check_cells(f.dilated(a), [&](const PAdic& x) { return f.value_at(x * a); });
      }
    }
  }
}

TEST_CASE("Fourier inversion gives f(-x)") {
  std::mt19937_64 rng(5);
  for (u64 p : {2, 3, 5, 7}) {
    auto psi = AdditiveCharacter::standard(p);
    for (int trial = 0; trial < 8; ++trial) {
      int M = static_cast<int>(rng() % 4) - 1, N = static_cast<int>(rng() % 3);
      if (M + N < 0) N = -M;
      if (p >= 5 && M + N > 3) N = 3 - M;
      SchwartzFn f = random_fn(p, M, N, rng);
      CHECK(f.fourier(psi).fourier(psi) == f.dilated(P(p, -1)));
    }
  }
}

TEST_CASE("elementary generators act by their defining formulas") {
  std::mt19937_64 rng(9);
  for (u64 p : {2, 3, 5}) {
    for (int s : {1, -1}) {
      auto psi = AdditiveCharacter::standard(p, s);
      SchwartzFn f = random_fn(p, 1, 1, rng);
      PAdic u = Q(p, 7, static_cast<i64>(p));
      check_cells(weil_act({Mat2::upper(u), 1}, f, psi), [&](const PAdic& x) {
        return psi.eval(u * x * x) * f.value_at(x);
      });
      PAdic a = rand_elt(p, -1, rng);
      check_cells(weil_act({Mat2::diag(a), -1}, f, psi), [&](const PAdic& x) {
        return -(weil_factor(psi, a).inverse() * Scalar::sqrt_q_pow(p, -a.valuation()) * f.value_at(x * a));
      });
      // omega(w1) = beta^{-1} times the Fourier transform
      check_cells(weil_act({Mat2::w1(p), 1}, f, psi), [&](const PAdic& y) {
        return weil_beta(psi).inverse() * oracle::fourier_point(as_points(f), psi, y);
      });
    }
  }
}

TEST_CASE("w1 squared acts as -I") {
  std::mt19937_64 rng(3);
  for (u64 p : {2, 3, 5}) {
    for (int s : {1, -1}) {
      auto psi = AdditiveCharacter::standard(p, s);
      SchwartzFn f = random_fn(p, 1, 1, rng);
      MpElement w{Mat2::w1(p), 1};
      MpElement w2 = mp_mul(w, w);
      SchwartzFn twice = weil_act(w, weil_act(w, f, psi), psi);
      CHECK(twice == weil_act(w2, f, psi));
      // omega(<-I, 1>) f(x) = gamma_psi(-1)^{-1} f(-x)
      int k = eighth_root_exponent(weil_factor(psi, -1).inverse());
      CHECK(weil_act({Mat2::from_ints(p, -1, 0, 0, -1), 1}, f, psi) == f.dilated(P(p, -1)).times_root(8, k));
    }
  }
}

TEST_CASE("the representation is genuine") {
  for (u64 p : {2, 3, 5}) {
    CheckReport r = genuineness_check(p, 1000, 100 + p);
    CHECK_MESSAGE(r.ok, r.first_violation);
    CHECK(r.checked == 1000);
  }
  CheckReport r7 = genuineness_check(7, 150, 107);
  CHECK_MESSAGE(r7.ok, r7.first_violation);
}

TEST_CASE("the opposite beta breaks the representation") {
  for (u64 p : {2, 3}) CHECK_FALSE(genuineness_check(p, 200, 17, -1).ok);
}

TEST_CASE("lower triangular closed form agrees with the Bruhat action") {
  std::mt19937_64 rng(21);
  for (u64 p : {2, 3, 5}) {
    for (int s : {1, -1}) {
      auto psi = AdditiveCharacter::standard(p, s);
      SchwartzFn phi = SchwartzFn::indicator(p, 1);
      for (int trial = 0; trial < 6; ++trial) {
        PAdic a = P(p, 1 + static_cast<i64>(p) * static_cast<i64>(rng() % 9));
        int j = 1 + static_cast<int>(rng() % 3);
        PAdic c = P(p, static_cast<i64>(ipow(p, j)) * (1 + static_cast<i64>(p) * static_cast<i64>(rng() % 5)));
        if (rng() & 1) c = -c;
        Mat2 b{a, PAdic::zero(p), c / a, a.inverse()};
        SchwartzFn direct = weil_act({b, 1}, phi, psi);
        SchwartzFn closed = weil_lower_closed(a, c, phi, psi);
        CHECK(direct == closed);
      }
      // and the closed form against nested Riemann sums at a few points
      PAdic a = P(p, 1 + static_cast<i64>(p)), c = P(p, static_cast<i64>(p * p));
      SchwartzFn closed = weil_lower_closed(a, c, phi, psi);
      Scalar k = hilbert(a.inverse(), c) * weil_beta(psi).pow(-2) * weil_factor(psi, a).inverse() *
                 weil_factor(psi, -1);
      for (i64 xi : {i64{0}, i64{1}, i64{2}, static_cast<i64>(p) + 1}) {
        PAdic x = P(p, xi) * P(p, static_cast<i64>(p)).pow(-1);
        CHECK(closed.value_at(x) == k * oracle::lower_double_integral(as_points(phi), psi, a, c, x));
      }
    }
  }
}
