#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "relab/catalog.hpp"
#include "relab/numeric/big_float.hpp"
#include "relab/numeric/power_series.hpp"
#include "relab/numeric/surd.hpp"

namespace relab {

/// sum_k b_k / n^k with t_n / (Z t_{n-1}) = sum_k b_k / n^k.
PowerSeries ratio_coeffs(const SeriesParams& series, std::size_t order);

/// sum_k a_k / n^k, a_0 = 1, describing the tail sum_{k>=n} t_k = t_n/(1-Z) * sum_k a_k/n^k.
/// Computed exactly from
///   (1-Z) a_N = Z sum_{k<N} a_k b_{N-k} - sum_{k=1}^{N-1} a_k C(N-1, k-1).
PowerSeries tail_coeffs(const SeriesParams& series, std::size_t order);

/// a_0..a_order from the same recursion in floating point at `bits` precision.
/// Cancellation is mild (a few dozen digits for the Chudnovsky series up to
/// order 2000), so a couple of hundred bits carries several correct digits.
std::vector<BigFloat> tail_coeffs_float(const SeriesParams& series, std::size_t order, BigFloat::Precision bits);

/// Correction terms of
///   ln[(1/2)_n (R)_n (1-R)_n / n!^3 * (pi n)^(3/2) / sin(pi R)] ~ sigma_1/n + sigma_3/n^3 + sigma_5/n^5 + ...
struct PochhammerSigma {
  Rational sigma1;
  Rational sigma3;
  Rational sigma5;
};

/// Closed forms in r = R(1-R); throws std::domain_error unless 0 < R < 1.
PochhammerSigma pochhammer_sigma(const Rational& R);

/// Coefficients sigma_0..sigma_order of the same expansion (sigma_0 = 0),
/// generated from Bernoulli polynomials; valid for any order.
std::vector<Rational> pochhammer_sigma_series(const Rational& R, std::size_t order);

/// Bernoulli number B_k with B_1 = -1/2.
Rational bernoulli_number(std::size_t k);

/// Bracket of r_n in n! = sqrt(2 pi n) (n/e)^n exp(r_n):
///   1/(12n) - 1/(360n^3) + 1/(1260n^5) - 1/(1680n^7) < r_n < 1/(12n) - 1/(360n^3) + 1/(1260n^5).
struct StirlingEnvelope {
  Rational lower_exact;
  Rational upper_exact;
  BigFloat lower;  ///< rounded down
  BigFloat upper;  ///< rounded up
};
StirlingEnvelope stirling_envelope(unsigned long n, BigFloat::Precision bits = 128);

/// pi_i(n) - pi = Z^n A0/sqrt(n) exp(A_1/n + ... + A_m/n^m Theta), or the same
/// for 1/pi - 1/pi_i(n) when the output form is reciprocal.
struct ExpansionReport {
  int series_id = 0;
  /// Multiplies sqrt(pi); see `a0_pi_power`.
  SurdPiConstant A0;
  /// Exponent of pi in A0: 1/2 normally, -3/2 for the reciprocal form.
  Rational a0_pi_power;
  /// A_1..A_order.
  std::vector<Rational> exponent_coeffs;
  int order = 0;
  /// The catalog's order m; coefficients past it are extensions.
  int catalog_order = 0;
  Rational base;
  OutputForm output_form = OutputForm::PiDifference;

  /// A0 as a number, including its power of pi.
  BigFloat a0_value(BigFloat::Precision bits) const;
  /// e.g. "106720/1672209*sqrt(10005*pi)" or "1/1*pi^(-3/2)".
  std::string a0_str() const;
};

/// sin(pi R) as a surd for R in {1/6, 1/4, 1/3, 1/2, 2/3, 3/4, 5/6}.
Surd sin_pi_surd(const Rational& R);

/// Exact expansion up to `order` (default: the catalog order m).
ExpansionReport expansion(const SeriesParams& series, std::optional<int> order = std::nullopt);

nlohmann::json expansion_json(const ExpansionReport& report);
/// Header "j,A_j,beyond_catalog" preceded by comment-free metadata rows.
std::string expansion_csv(const ExpansionReport& report);

}  // namespace relab
