#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace relab {

using BigInt = mpz_class;

/// Exact rational number in lowest terms with a positive denominator.
///
/// Backed by GMP's mpq; every operation canonicalizes, so equality is
/// structural. Division by zero throws std::domain_error.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& numerator, const BigInt& denominator = 1);
  explicit Rational(const mpq_class& value);

  /// Parses "p/q" or "p" (decimal, optional leading '-').
  static Rational parse(std::string_view text);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  Rational abs() const;
  Rational reciprocal() const;
  /// Integer power; negative exponents invert (zero base then throws).
  Rational pow(long exponent) const;

  /// Always "p/q", including integers ("3/1").
  std::string str() const;
  double to_double() const { return value_.get_d(); }
  /// floor(log2 |x|) estimate, accurate to +-1; requires x != 0.
  long log2_magnitude() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Binomial coefficient C(n, k) as an exact integer (0 when k > n).
BigInt binomial(unsigned long n, unsigned long k);

}  // namespace relab
