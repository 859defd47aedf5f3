#pragma once
#include <gmpxx.h>

#include <climits>
#include <stdexcept>
#include <string>

#include "rsg/arith.hpp"

namespace rsg {

struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DivisionByZero : std::domain_error {
  using std::domain_error::domain_error;
};

// x = p^v * u with u a unit known mod p^N. Zero carries an absolute
// precision instead (kInf for an exact zero, k for O(p^k)).
class PAdic {
 public:
  static constexpr int kInf = INT_MAX;
  static constexpr int kDefaultPrecision = 12;

  PAdic() = default;  // exact zero with p = 0; only useful as a placeholder

  static int max_precision(u64 p);
  static int default_precision(u64 p);

  static PAdic zero(u64 p, int abs_prec = kInf);
  static PAdic from_int(u64 p, i64 n, int prec = 0);
  static PAdic from_rational(u64 p, const mpq_class& r, int prec = 0);
  // p^v * unit, unit reduced mod p^prec; unit must be prime to p
  static PAdic make(u64 p, int v, u64 unit, int prec);

  u64 p() const { return p_; }
  bool is_zero() const { return zero_; }
  bool is_exact_zero() const { return zero_ && abs_ == kInf; }
  int valuation() const;
  // |x| = q^{-abs_exponent()}
  int abs_exponent() const { return valuation(); }
  u64 unit() const;
  int precision() const { return zero_ ? 0 : n_; }
  int abs_precision() const { return zero_ ? abs_ : v_ + n_; }
  u64 modulus() const { return ipow(p_, n_); }

  // unit part mod p^k, k <= precision()
  u64 unit_mod(int k) const;
  // x mod p^k for integral x, needs abs_precision() >= k
  u64 residue(int k) const;
  // rational lift p^v * u with 0 <= u < p^N
  mpq_class lift() const;
  PAdic with_precision(int n) const;

  PAdic operator-() const;
  friend PAdic operator+(const PAdic& a, const PAdic& b);
  friend PAdic operator-(const PAdic& a, const PAdic& b) { return a + (-b); }
  friend PAdic operator*(const PAdic& a, const PAdic& b);
  friend PAdic operator/(const PAdic& a, const PAdic& b);
  PAdic inverse() const;
  PAdic pow(i64 e) const;
  // equality up to the shared precision
  friend bool operator==(const PAdic& a, const PAdic& b);
  friend bool operator!=(const PAdic& a, const PAdic& b) { return !(a == b); }

  bool in_ideal(int k) const { return zero_ ? abs_ >= k : v_ >= k; }
  std::string to_string() const;

 private:
  u64 p_ = 0;
  bool zero_ = true;
  int v_ = 0;
  u64 u_ = 0;
  int n_ = 0;
  int abs_ = kInf;
};

// canonical square-class data: parity of the valuation and the class of the
// unit part after removing the uniformizer; unit_class is the Legendre bit
// (0 square, 1 non-square) for odd p and u mod 8 for p = 2
struct SquareClass {
  int vpar = 0;
  int unit_class = 0;
  bool operator==(const SquareClass&) const = default;
  auto operator<=>(const SquareClass&) const = default;
};

SquareClass square_class_of(const PAdic& a, const PAdic& uniformizer);
// representative among {1,u0,w,u0 w} (odd p) or {u, u w : u in 1,3,5,7}
PAdic square_class(const PAdic& a, const PAdic& uniformizer);
PAdic square_class(const PAdic& a);  // uniformizer p
std::vector<PAdic> square_class_reps(u64 p, const PAdic& uniformizer);

int hilbert(const PAdic& a, const PAdic& b);
// same symbol for nonzero integers, without allocation
int hilbert_int(u64 p, i64 a, i64 b);
int hilbert_rat(u64 p, const mpq_class& a, const mpq_class& b);

}  // namespace rsg
