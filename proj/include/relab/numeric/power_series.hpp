#pragma once

#include <cstddef>
#include <vector>

#include "relab/numeric/rational.hpp"

namespace relab {

/// Truncated formal power series in the variable x = 1/n:
///   c_0 + c_1/n + ... + c_order/n^order.
///
/// Coefficients beyond `order` are always dropped, so every operation on
/// two series requires them to share an order.
class PowerSeries {
 public:
  /// Zero series of the given order.
  explicit PowerSeries(std::size_t order);
  /// Order becomes coefficients.size() - 1; the list must be nonempty.
  explicit PowerSeries(std::vector<Rational> coefficients);

  static PowerSeries constant(const Rational& c, std::size_t order);
  /// x^power, i.e. 1/n^power.
  static PowerSeries monomial(std::size_t power, std::size_t order, const Rational& c = 1);

  std::size_t order() const { return coeffs_.size() - 1; }
  const Rational& operator[](std::size_t j) const { return coeffs_.at(j); }
  Rational& operator[](std::size_t j) { return coeffs_.at(j); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  /// Same series cut (or zero-padded) to a new order.
  PowerSeries with_order(std::size_t order) const;
  /// Exact value of the truncated sum at 1/n.
  Rational evaluate_at_inverse(const Rational& n) const;

  PowerSeries& operator+=(const PowerSeries& rhs);
  PowerSeries& operator-=(const PowerSeries& rhs);
  PowerSeries& operator*=(const Rational& scalar);
  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
  friend PowerSeries operator*(PowerSeries a, const Rational& s) { return a *= s; }
  friend PowerSeries operator*(const Rational& s, PowerSeries a) { return a *= s; }
  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

 private:
  std::vector<Rational> coeffs_;
};

/// Cauchy product truncated at the common order; throws std::invalid_argument
/// when the orders differ.
PowerSeries ps_mul(const PowerSeries& a, const PowerSeries& b);

/// Re-expands a(n) evaluated at n-1 in powers of 1/n:
///   [N] = sum_{k=1..N} a_k * C(N-1, k-1), constant term unchanged.
PowerSeries ps_shift_expand(const PowerSeries& a);

/// log(1 + a) for a series with zero constant term.
PowerSeries ps_log1p(const PowerSeries& a);

/// exp(a) for a series with zero constant term.
PowerSeries ps_exp(const PowerSeries& a);

}  // namespace relab
