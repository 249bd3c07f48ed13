#include "relab/numeric/power_series.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace relab {

namespace {

void require_same_order(const PowerSeries& a, const PowerSeries& b) {
  if (a.order() != b.order()) {
    throw std::invalid_argument("power series order mismatch: " + std::to_string(a.order()) + " vs " +
                                std::to_string(b.order()));
  }
}

void require_zero_constant(const PowerSeries& a, const char* op) {
  if (!a[0].is_zero()) {
    throw std::invalid_argument(std::string(op) + " requires a zero constant term");
  }
}

}  // namespace

PowerSeries::PowerSeries(std::size_t order) : coeffs_(order + 1) {}

PowerSeries::PowerSeries(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) {
    throw std::invalid_argument("power series needs at least a constant term");
  }
}

PowerSeries PowerSeries::constant(const Rational& c, std::size_t order) {
  PowerSeries out(order);
  out.coeffs_[0] = c;
  return out;
}

PowerSeries PowerSeries::monomial(std::size_t power, std::size_t order, const Rational& c) {
  PowerSeries out(order);
  if (power <= order) {
    out.coeffs_[power] = c;
  }
  return out;
}

PowerSeries PowerSeries::with_order(std::size_t order) const {
  PowerSeries out(order);
  for (std::size_t j = 0; j <= std::min(order, this->order()); ++j) {
    out.coeffs_[j] = coeffs_[j];
  }
  return out;
}

Rational PowerSeries::evaluate_at_inverse(const Rational& n) const {
  // Horner in x = 1/n.
  const Rational x = n.reciprocal();
  Rational acc = coeffs_.back();
  for (std::size_t j = coeffs_.size() - 1; j-- > 0;) {
    acc = acc * x + coeffs_[j];
  }
  return acc;
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& rhs) {
  require_same_order(*this, rhs);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    coeffs_[j] += rhs.coeffs_[j];
  }
  return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& rhs) {
  require_same_order(*this, rhs);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    coeffs_[j] -= rhs.coeffs_[j];
  }
  return *this;
}

PowerSeries& PowerSeries::operator*=(const Rational& scalar) {
  for (auto& c : coeffs_) {
    c *= scalar;
  }
  return *this;
}

PowerSeries ps_mul(const PowerSeries& a, const PowerSeries& b) {
  require_same_order(a, b);
  PowerSeries out(a.order());
  for (std::size_t j = 0; j <= a.order(); ++j) {
    Rational acc;
    for (std::size_t i = 0; i <= j; ++i) {
      if (!a[i].is_zero() && !b[j - i].is_zero()) {
        acc += a[i] * b[j - i];
      }
    }
    out[j] = std::move(acc);
  }
  return out;
}

PowerSeries ps_shift_expand(const PowerSeries& a) {
  PowerSeries out(a.order());
  out[0] = a[0];
  for (std::size_t N = 1; N <= a.order(); ++N) {
    Rational acc;
    for (std::size_t k = 1; k <= N; ++k) {
      if (!a[k].is_zero()) {
        acc += a[k] * Rational(binomial(N - 1, k - 1));
      }
    }
    out[N] = std::move(acc);
  }
  return out;
}

// Both transcendental ops use the derivative identities in x:
//   (1 + a) L' = a'   and   E' = a' E,
// which give O(order^2) coefficient recurrences.

PowerSeries ps_log1p(const PowerSeries& a) {
  require_zero_constant(a, "ps_log1p");
  PowerSeries out(a.order());
  for (std::size_t j = 1; j <= a.order(); ++j) {
    Rational acc = Rational(static_cast<long>(j)) * a[j];
    for (std::size_t i = 1; i < j; ++i) {
      acc -= Rational(static_cast<long>(i)) * out[i] * a[j - i];
    }
    out[j] = acc / Rational(static_cast<long>(j));
  }
  return out;
}

PowerSeries ps_exp(const PowerSeries& a) {
  require_zero_constant(a, "ps_exp");
  PowerSeries out(a.order());
  out[0] = 1;
  for (std::size_t j = 1; j <= a.order(); ++j) {
    Rational acc;
    for (std::size_t i = 1; i <= j; ++i) {
      acc += Rational(static_cast<long>(i)) * a[i] * out[j - i];
    }
    out[j] = acc / Rational(static_cast<long>(j));
  }
  return out;
}

}  // namespace relab
