#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hilbert_oracle.hpp"
#include "rsg/padic.hpp"

using namespace rsg;

TEST_CASE("valuation of a uniformizer power times a unit") {
  for (u64 p : {2, 3, 5, 7}) {
    PAdic x = PAdic::from_int(p, (i64)(p * p * (p + 1 == 3 ? 3 : 2 + (p == 2))));
    CHECK(x.valuation() == 2);
    CHECK(PAdic::from_int(p, (i64)p).abs_exponent() == 1);
  }
}

TEST_CASE("ring identity (1+p)(1-p) = 1-p^2") {
  for (u64 p : {2, 3, 5, 13}) {
    PAdic one = PAdic::from_int(p, 1), P = PAdic::from_int(p, (i64)p);
    CHECK((one + P) * (one - P) == one - P * P);
  }
}

TEST_CASE("inexact zero and division errors") {
  PAdic a = PAdic::from_int(3, 5);
  PAdic z = a - a;
  CHECK(z.is_zero());
  CHECK_FALSE(z.is_exact_zero());
  CHECK(z.abs_precision() == 12);
  CHECK_THROWS_AS(a / z, PrecisionError);
  CHECK_THROWS_AS(a / PAdic::zero(3), DivisionByZero);
  CHECK_THROWS(z.valuation());
}

TEST_CASE("rational round trip and inverse") {
  PAdic x = PAdic::from_rational(5, mpq_class(7, 25));
  CHECK(x.valuation() == -2);
  CHECK(x * x.inverse() == PAdic::from_int(5, 1));
  CHECK(PAdic::from_rational(5, x.lift()) == x);
}

TEST_CASE("precision tracks through cancellation") {
  PAdic a = PAdic::from_int(3, 1 + 9 * 4), b = PAdic::from_int(3, 1);
  PAdic d = a - b;
  CHECK(d.valuation() == 2);
  CHECK(d.abs_precision() == 12);
  CHECK(d.precision() == 10);
}

TEST_CASE("square classes") {
  SUBCASE("1+p lands in the class of 1 for odd p") {
    for (u64 p : {3, 5, 7, 13})
      for (i64 t = 1; t < 20; ++t)
        CHECK(square_class(PAdic::from_int(p, 1 + (i64)p * t)) == PAdic::from_int(p, 1));
  }
  SUBCASE("1+8Z_2 is the class of 1") {
    for (i64 t = 0; t < 16; ++t) CHECK(square_class(PAdic::from_int(2, 1 + 8 * t)) == PAdic::from_int(2, 1));
  }
  SUBCASE("2 is a non-residue class mod 5") { CHECK(square_class(PAdic::from_int(5, 2)) == PAdic::from_int(5, 2)); }
  SUBCASE("idempotent on representatives") {
    for (u64 p : {2, 3, 5, 7}) {
      PAdic w = PAdic::from_int(p, (i64)p);
      for (auto& r : square_class_reps(p, w)) CHECK(square_class(r, w) == r);
    }
  }
  SUBCASE("non-default uniformizer") {
    PAdic w = PAdic::from_int(5, 10);
    auto reps = square_class_reps(5, w);
    CHECK(reps.size() == 4);
    for (i64 a : {1, 2, 3, 5, 10, 15, 50, 7 * 25})
      CHECK(square_class_of(PAdic::from_int(5, a), w) == square_class_of(square_class(PAdic::from_int(5, a), w), w));
  }
}

TEST_CASE("Hilbert symbol examples") {
  CHECK(hilbert(PAdic::from_int(2, -1), PAdic::from_int(2, -1)) == -1);
  for (u64 p : {3, 5, 7})
    for (i64 u = 1; u < (i64)p; ++u)
      for (i64 v = 1; v < (i64)p; ++v) CHECK(hilbert(PAdic::from_int(p, u), PAdic::from_int(p, v)) == 1);
  for (u64 p : {2, 3, 5})
    for (i64 z : {1, 2, 3, 6, 10, 12, 75})
      CHECK(hilbert(PAdic::from_int(p, z), PAdic::from_int(p, -z)) == 1);
  CHECK(hilbert_int(5, 2, 5) == -1);
  CHECK(hilbert_int(3, -1, 3) == -1);
}

TEST_CASE("Hilbert symbol laws against the solvability oracle") {
  for (u64 p : {2, 3, 5, 7, 13}) {
    PAdic w = PAdic::from_int(p, (i64)p);
    std::vector<PAdic> xs;
    for (auto& r : square_class_reps(p, w))
      for (int j = -2; j <= 2; ++j) xs.push_back(r * w.pow(j));
    for (auto& a : xs)
      for (auto& b : xs) {
        int h = hilbert(a, b);
        CHECK(h == oracle::hilbert_solvable(a, b));
        CHECK(h == hilbert(b, a));
        for (auto& c : xs) CHECK(hilbert(a * b, c) == h * hilbert(b, c) * hilbert(a, c) * h);
      }
    for (i64 t = 2; t < 40; ++t) {
      if (t % (i64)p == 1 % (i64)p && p != 2) continue;
      PAdic a = PAdic::from_rational(p, mpq_class(t, 7 * (i64)p));
      PAdic b = PAdic::from_int(p, 1) - a;
      if (b.is_zero()) continue;
      CHECK(hilbert(a, b) == 1);
    }
  }
}

TEST_CASE("hilbert_int agrees with the PAdic version") {
  for (u64 p : {2, 3, 5, 7})
    for (i64 a = -30; a <= 30; ++a)
      for (i64 b = -30; b <= 30; ++b)
        if (a && b) CHECK(hilbert_int(p, a, b) == hilbert(PAdic::from_int(p, a), PAdic::from_int(p, b)));
}
