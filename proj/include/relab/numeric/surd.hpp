#pragma once

#include <cstdint>
#include <string>

#include "relab/numeric/big_float.hpp"
#include "relab/numeric/rational.hpp"

namespace relab {

/// Square-free part of a positive integer: value = square^2 * radicand.
///
/// Trial division runs over primes up to 10^6; a cofactor that survives
/// is accepted when it is prime-sized (< 10^12) or a perfect square, and
/// otherwise left in place with `certified == false`.
struct RadicandSplit {
  std::uint64_t square_root_part = 1;
  std::uint64_t radicand = 1;
  bool certified = true;
};
RadicandSplit split_square_free(std::uint64_t value);

/// coeff * sqrt(radicand), radicand square-free after construction.
class Surd {
 public:
  Surd() = default;
  Surd(const Rational& coeff, std::uint64_t radicand);

  const Rational& coeff() const { return coeff_; }
  std::uint64_t radicand() const { return radicand_; }
  bool square_free_certified() const { return certified_; }

  /// Exact square, coeff^2 * radicand.
  Rational squared() const { return coeff_ * coeff_ * Rational(static_cast<long>(radicand_)); }
  BigFloat evaluate(BigFloat::Precision bits) const;
  std::string str() const;

  friend Surd operator*(const Surd& a, const Surd& b);
  friend Surd operator*(const Surd& a, const Rational& r) { return Surd(a.coeff_ * r, a.radicand_); }
  friend bool operator==(const Surd& a, const Surd& b) {
    return a.coeff_ == b.coeff_ && a.radicand_ == b.radicand_;
  }

 private:
  Rational coeff_{0};
  std::uint64_t radicand_ = 1;
  bool certified_ = true;
};

/// coeff * sqrt(radicand * pi), radicand square-free after construction.
class SurdPiConstant {
 public:
  SurdPiConstant() = default;
  SurdPiConstant(const Rational& coeff, std::uint64_t radicand);
  /// The surd s times sqrt(pi).
  static SurdPiConstant from_surd(const Surd& s) { return SurdPiConstant(s.coeff(), s.radicand()); }

  const Rational& coeff() const { return coeff_; }
  std::uint64_t radicand() const { return radicand_; }
  bool square_free_certified() const { return certified_; }

  BigFloat evaluate(BigFloat::Precision bits) const;
  /// e.g. "106720/1672209*sqrt(10005*pi)".
  std::string str() const;

  friend SurdPiConstant operator*(const SurdPiConstant& a, const Rational& r) {
    return SurdPiConstant(a.coeff_ * r, a.radicand_);
  }
  friend bool operator==(const SurdPiConstant& a, const SurdPiConstant& b) {
    return a.coeff_ == b.coeff_ && a.radicand_ == b.radicand_;
  }

 private:
  Rational coeff_{0};
  std::uint64_t radicand_ = 1;
  bool certified_ = true;
};

}  // namespace relab
