#include "relab/numeric/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace relab {

namespace {

BigInt parse_integer(std::string_view text) {
  if (text.empty()) {
    throw std::invalid_argument("empty integer in rational literal");
  }
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) {
    throw std::invalid_argument("malformed integer: " + std::string(text));
  }
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9') {
      throw std::invalid_argument("malformed integer: " + std::string(text));
    }
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return BigInt(digits, 10);
}

}  // namespace

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(const mpq_class& value) : value_(value) {
  if (value_.get_den() == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text));
  }
  return Rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::reciprocal() const {
  if (is_zero()) {
    throw std::domain_error("reciprocal of zero");
  }
  Rational out;
  mpq_inv(out.value_.get_mpq_t(), value_.get_mpq_t());
  return out;
}

Rational Rational::pow(long exponent) const {
  if (exponent < 0) {
    return reciprocal().pow(-exponent);
  }
  Rational out;
  const auto e = static_cast<unsigned long>(exponent);
  mpz_pow_ui(out.value_.get_num_mpz_t(), value_.get_num_mpz_t(), e);
  mpz_pow_ui(out.value_.get_den_mpz_t(), value_.get_den_mpz_t(), e);
  return out;
}

std::string Rational::str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

long Rational::log2_magnitude() const {
  if (is_zero()) {
    throw std::domain_error("log2 of zero");
  }
  return static_cast<long>(mpz_sizeinbase(value_.get_num_mpz_t(), 2)) -
         static_cast<long>(mpz_sizeinbase(value_.get_den_mpz_t(), 2));
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) {
    throw std::domain_error("rational division by zero");
  }
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt out;
  if (k > n) {
    return out;
  }
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

}  // namespace relab
