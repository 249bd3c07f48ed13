#pragma once

#include "relab/catalog.hpp"
#include "relab/numeric/big_float.hpp"
#include "relab/numeric/rational.hpp"

namespace relab {

/// (1/2)_k (R)_k (1-R)_k / k!^3, exact.
Rational pochhammer_weight(const Rational& R, unsigned long k);

/// t_k / t_{k-1} = Z (k-1/2)(k-R)(k-1+R)(k+S) / (k^3 (k-1+S)) for k >= 1.
Rational term_ratio(const SeriesParams& series, unsigned long k);

/// Signed term t_k = pochhammer_weight(R, k) (k + S) Z^k; t_0 = S.
Rational term(const SeriesParams& series, unsigned long k);

/// sum_{k=0}^{n-1} t_k by binary splitting over the term-ratio recurrence.
/// Requires n >= 1.
Rational partial_sum(const SeriesParams& series, unsigned long n);

/// pi_n for the first n terms, or 1/pi_n for series whose expansion is only
/// stated in reciprocal form (`reciprocal` is then set and the bound is on
/// |1/pi - 1/pi_n|).
struct ApproxResult {
  unsigned long n = 0;
  BigFloat value;
  BigFloat certified_error_bound;
  bool reciprocal = false;
  unsigned digits = 0;
};

/// Evaluates pi_n = 1 / (P * partial_sum) correct to `digits` significant
/// decimal digits of pi_n itself. The working precision is verified by a
/// second evaluation 64 bits finer, doubling the guard on disagreement.
///
/// The certificate is the 11.315/sqrt(n) * 53360^(-3n) bound for the
/// Chudnovsky series and a next-term tail bound otherwise.
ApproxResult pi_approx(const SeriesParams& series, unsigned long n, unsigned digits);

/// Smallest n with 11.315/sqrt(n) * 53360^(-3n) < 10^(-digits); sufficient
/// for the Chudnovsky series. Decided in exact integer arithmetic.
unsigned long terms_needed(unsigned digits);

/// Smallest n whose next-term tail bound for `series` is below
/// 10^(-digits). Requires |Z| < 1.
unsigned long terms_needed_for(const SeriesParams& series, unsigned digits);

/// Upper bound on |pi_n - pi| (or |1/pi - 1/pi_n| for reciprocal series)
/// from |t_n|, using that |t_{k+1}/t_k| < |Z| for every k >= 1.
BigFloat next_term_error_bound(const SeriesParams& series, unsigned long n, const BigFloat& pi_n);

}  // namespace relab
