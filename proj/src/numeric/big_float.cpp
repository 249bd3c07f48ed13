#include "relab/numeric/big_float.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>
#include <stdexcept>

namespace relab {

namespace {

using Precision = BigFloat::Precision;

Precision joint(const BigFloat& a, const BigFloat& b) { return std::max(a.precision(), b.precision()); }

struct MpfrString {
  char* text = nullptr;
  ~MpfrString() {
    if (text != nullptr) {
      mpfr_free_str(text);
    }
  }
};

}  // namespace

BigFloat::BigFloat(Precision bits) {
  if (bits < MPFR_PREC_MIN) {
    throw std::invalid_argument("BigFloat precision too small");
  }
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(long value, Precision bits) : BigFloat(bits) { mpfr_set_si(value_, value, MPFR_RNDN); }

BigFloat::BigFloat(const Rational& value, Precision bits, mpfr_rnd_t rounding) : BigFloat(bits) {
  mpfr_set_q(value_, value.raw().get_mpq_t(), rounding);
}

BigFloat BigFloat::parse(const std::string& text, Precision bits) {
  BigFloat out(bits);
  if (mpfr_set_str(out.value_, text.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("malformed float literal: " + text);
  }
  return out;
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::rounded(Precision bits) const {
  BigFloat out(bits);
  mpfr_set(out.value_, value_, MPFR_RNDN);
  return out;
}

std::string BigFloat::to_scientific(int significant) const {
  if (!is_finite()) {
    return mpfr_nan_p(value_) ? "nan" : (sign() < 0 ? "-inf" : "inf");
  }
  if (is_zero()) {
    return "0";
  }
  mpfr_exp_t exp10 = 0;
  MpfrString s;
  s.text = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(significant), value_, MPFR_RNDN);
  std::string digits(s.text);
  std::string sign_part;
  if (digits[0] == '-') {
    sign_part = "-";
    digits.erase(0, 1);
  }
  std::string out = sign_part + digits.substr(0, 1);
  if (digits.size() > 1) {
    out += "." + digits.substr(1);
  }
  const long e = static_cast<long>(exp10) - 1;
  out += (e < 0 ? "e-" : "e+");
  const long ae = e < 0 ? -e : e;
  if (ae < 10) {
    out += "0";
  }
  out += std::to_string(ae);
  return out;
}

std::string BigFloat::to_fixed(int decimals) const {
  const int n = mpfr_snprintf(nullptr, 0, "%.*RNf", decimals, value_);
  std::string out(static_cast<std::size_t>(n) + 1, '\0');
  mpfr_snprintf(out.data(), out.size(), "%.*RNf", decimals, value_);
  out.resize(static_cast<std::size_t>(n));
  return out;
}

BigFloat BigFloat::operator-() const {
  BigFloat out(precision());
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

BigFloat& BigFloat::operator+=(const BigFloat& rhs) { return *this = *this + rhs; }
BigFloat& BigFloat::operator-=(const BigFloat& rhs) { return *this = *this - rhs; }
BigFloat& BigFloat::operator*=(const BigFloat& rhs) { return *this = *this * rhs; }
BigFloat& BigFloat::operator/=(const BigFloat& rhs) { return *this = *this / rhs; }

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat out(joint(a, b));
  mpfr_add(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat out(joint(a, b));
  mpfr_sub(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat out(joint(a, b));
  mpfr_mul(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  if (b.is_zero()) {
    throw std::domain_error("BigFloat division by zero");
  }
  BigFloat out(joint(a, b));
  mpfr_div(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

int compare(const BigFloat& a, const BigFloat& b) {
  if (a.precision() == b.precision()) {
    return mpfr_cmp(a.value_, b.value_);
  }
  const Precision coarse = std::min(a.precision(), b.precision());
  return mpfr_cmp(a.rounded(coarse).get(), b.rounded(coarse).get());
}

namespace {

template <typename Fn>
BigFloat unary(const BigFloat& x, Fn fn) {
  BigFloat out(x.precision());
  fn(out.get(), x.get(), MPFR_RNDN);
  return out;
}

}  // namespace

BigFloat abs(const BigFloat& x) { return unary(x, mpfr_abs); }
BigFloat sqrt(const BigFloat& x) {
  if (x.sign() < 0) {
    throw std::domain_error("sqrt of negative BigFloat");
  }
  return unary(x, mpfr_sqrt);
}
BigFloat log(const BigFloat& x) {
  if (x.sign() <= 0) {
    throw std::domain_error("log of non-positive BigFloat");
  }
  return unary(x, mpfr_log);
}
BigFloat log1p(const BigFloat& x) { return unary(x, mpfr_log1p); }
BigFloat exp(const BigFloat& x) { return unary(x, mpfr_exp); }
BigFloat sin(const BigFloat& x) { return unary(x, mpfr_sin); }

BigFloat pow(const BigFloat& x, long exponent) {
  BigFloat out(x.precision());
  mpfr_pow_si(out.get(), x.get(), exponent, MPFR_RNDN);
  return out;
}

BigFloat pi(Precision bits) {
  BigFloat out(bits);
  mpfr_const_pi(out.get(), MPFR_RNDN);
  return out;
}

BigFloat sin_pi(const Rational& r, Precision bits) {
  // Reduce r modulo 2 exactly so the angle never exceeds 2*pi.
  const BigInt two_den = 2 * r.denominator();
  BigInt reduced = r.numerator() % two_den;
  if (reduced < 0) {
    reduced += two_den;
  }
  const Precision work = bits + 32;
  BigFloat angle = pi(work) * BigFloat(Rational(reduced, r.denominator()), work);
  return sin(angle).rounded(bits);
}

int compare(const BigFloat& a, const Rational& b) { return mpfr_cmp_q(a.get(), b.raw().get_mpq_t()); }

double relative_difference(const BigFloat& a, const BigFloat& b) {
  const Precision p = std::max(a.precision(), b.precision());
  BigFloat diff = abs(a.rounded(p) - b.rounded(p)) / abs(b.rounded(p));
  return diff.to_double();
}

std::ostream& operator<<(std::ostream& os, const BigFloat& x) { return os << x.to_scientific(20); }

Precision bits_for_digits(long digits) {
  return static_cast<Precision>(std::ceil(static_cast<double>(digits) * 3.3219280948873623)) + 1;
}

}  // namespace relab
