#pragma once

#include <iosfwd>
#include <string>

#include <mpfr.h>

#include "relab/numeric/rational.hpp"

namespace relab {

/// Binary floating-point number with an explicit precision in bits.
///
/// Thin RAII value type over MPFR. Every arithmetic and transcendental
/// operation is correctly rounded (round-to-nearest) at the result
/// precision, which is the larger of the operand precisions. That is
/// within half an ulp and so inside the 4-ulp contract the rest of the
/// library relies on. Comparisons between values of differing precision
/// round the finer operand to the coarser precision first.
class BigFloat {
 public:
  using Precision = mpfr_prec_t;

  explicit BigFloat(Precision bits = 128);
  BigFloat(long value, Precision bits);
  BigFloat(const Rational& value, Precision bits, mpfr_rnd_t rounding = MPFR_RNDN);
  /// Decimal or scientific literal ("3.14", "-1e-20").
  static BigFloat parse(const std::string& text, Precision bits);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  Precision precision() const { return mpfr_get_prec(value_); }
  /// Copy rounded to `bits`.
  BigFloat rounded(Precision bits) const;

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Base-2 exponent e with 2^(e-1) <= |x| < 2^e; requires a nonzero value.
  long exponent2() const { return mpfr_get_exp(value_); }

  /// `significant` digits in d.ddddde[+-]xx form.
  std::string to_scientific(int significant) const;
  /// Fixed notation with `decimals` digits after the point (round to nearest).
  std::string to_fixed(int decimals) const;

  BigFloat operator-() const;
  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);
  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);

  friend int compare(const BigFloat& a, const BigFloat& b);
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return compare(a, b) == 0; }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return compare(a, b) < 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return compare(a, b) > 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return compare(a, b) >= 0; }

 private:
  mpfr_t value_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat log1p(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat pow(const BigFloat& x, long exponent);
BigFloat pi(BigFloat::Precision bits);
/// sin(pi * r) for rational r.
BigFloat sin_pi(const Rational& r, BigFloat::Precision bits);

/// Compares a BigFloat against an exact rational without rounding the rational.
int compare(const BigFloat& a, const Rational& b);

/// |a - b| / |b| as a double; b must be nonzero.
double relative_difference(const BigFloat& a, const BigFloat& b);

std::ostream& operator<<(std::ostream& os, const BigFloat& x);

/// Bits needed to represent `digits` decimal digits.
BigFloat::Precision bits_for_digits(long digits);

}  // namespace relab
