#include "relab/numeric/surd.hpp"

#include <stdexcept>

namespace relab {

namespace {

constexpr std::uint64_t kTrialLimit = 1'000'000;

std::uint64_t isqrt_exact(std::uint64_t v, bool& is_square) {
  const mpz_class z(static_cast<unsigned long>(v));
  is_square = mpz_perfect_square_p(z.get_mpz_t()) != 0;
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
  return r.get_ui();
}

}  // namespace

RadicandSplit split_square_free(std::uint64_t value) {
  if (value == 0) {
    throw std::invalid_argument("radicand must be positive");
  }
  RadicandSplit out;
  std::uint64_t rest = value;
  std::uint64_t p = 2;
  for (; p <= kTrialLimit && p * p <= rest; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (unsigned i = 0; i < e / 2; ++i) {
      out.square_root_part *= p;
    }
    if (e % 2 == 1) {
      out.radicand *= p;
    }
  }
  if (rest > 1) {
    // Either the loop ran out because p*p > rest (rest is prime) or we hit the trial limit.
    bool is_square = false;
    const std::uint64_t root = isqrt_exact(rest, is_square);
    if (is_square) {
      out.square_root_part *= root;
    } else {
      out.radicand *= rest;
      out.certified = p * p > rest;
    }
  }
  return out;
}

Surd::Surd(const Rational& coeff, std::uint64_t radicand) {
  const auto split = split_square_free(radicand);
  coeff_ = coeff * Rational(static_cast<long>(split.square_root_part));
  radicand_ = split.radicand;
  certified_ = split.certified;
}

BigFloat Surd::evaluate(BigFloat::Precision bits) const {
  const BigFloat root = sqrt(BigFloat(static_cast<long>(radicand_), bits));
  return BigFloat(coeff_, bits) * root;
}

std::string Surd::str() const {
  if (radicand_ == 1) {
    return coeff_.str();
  }
  return coeff_.str() + "*sqrt(" + std::to_string(radicand_) + ")";
}

Surd operator*(const Surd& a, const Surd& b) {
  // The product of two square-free radicands may carry squares again; the constructor re-splits.
  return Surd(a.coeff_ * b.coeff_, a.radicand_ * b.radicand_);
}

SurdPiConstant::SurdPiConstant(const Rational& coeff, std::uint64_t radicand) {
  const auto split = split_square_free(radicand);
  coeff_ = coeff * Rational(static_cast<long>(split.square_root_part));
  radicand_ = split.radicand;
  certified_ = split.certified;
}

BigFloat SurdPiConstant::evaluate(BigFloat::Precision bits) const {
  const BigFloat root = sqrt(BigFloat(static_cast<long>(radicand_), bits) * pi(bits));
  return BigFloat(coeff_, bits) * root;
}

std::string SurdPiConstant::str() const {
  const std::string inner = radicand_ == 1 ? "pi" : std::to_string(radicand_) + "*pi";
  return coeff_.str() + "*sqrt(" + inner + ")";
}

}  // namespace relab
