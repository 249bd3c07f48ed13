#pragma once

#include <string>
#include <vector>

#include "relab/catalog.hpp"
#include "relab/numeric/big_float.hpp"
#include "relab/numeric/rational.hpp"

namespace relab {

/// pi to `digits` significant digits from the Chudnovsky series, confirmed
/// against an independently planned Ramanujan-396 evaluation. Results are
/// cached process-wide; throws PrecisionError if the two disagree.
BigFloat reference_pi(unsigned digits);

/// One measured residual together with the interval it is supposed to lie in.
struct VerificationRow {
  int series_id = 0;
  unsigned long n = 0;
  std::string quantity;  ///< "e", "delta", "theta", "d", "h"
  BigFloat measured;
  Rational lower;
  Rational upper;
  /// lower < measured < upper at both working precisions.
  bool in_bounds = false;
  /// Whether a miss counts as a violation (Theta rows below the catalog n0 do not).
  bool enforced = true;
  /// |measured(D) - measured(D + 20)| / |measured(D + 20)|.
  double dual_rel_diff = 0.0;
};

/// e_n = [(1+eps) |sum_{k>=n} (-1)^k s_k| / s_n - 1 - a_1/n - a_2/n^2] n^3 / eps
/// for the Chudnovsky series, expected in (0.3216, 0.6704).
VerificationRow measure_e(unsigned long n, unsigned digits = 30);

/// delta_n = n^3 [ln(|pi_n - pi| 53360^(3n) sqrt(n) / A0) - A_1/n - A_2/n^2],
/// expected in (0.006907, 0.008429).
VerificationRow measure_delta(unsigned long n, unsigned digits = 30);

/// Theta_i(n) = [ln(|diff| |Z|^(-n) sqrt(n) / A0) - sum_{j<m} A_j/n^j] n^m / A_m,
/// where diff is pi_i(n) - pi, or 1/pi - 1/pi_i(n) for the reciprocal form.
/// Expected in (0, 1) for n >= n0.
VerificationRow measure_theta(const SeriesParams& series, unsigned long n, unsigned digits = 30);

/// d_n = n^3/eps [ln((1+eps) tail / s_n) - a_1/n - (a_2 - a_1^2/2)/n^2], expected in (0.321, 0.671).
VerificationRow check_dn(unsigned long n, unsigned digits = 30);

/// h_n = n^4 [ln(s_n 2 pi^(3/2) sqrt(n) / eps^n) - (S - 19/72)/n + (S^2/2)/n^2 - (131/15552 + S^3/3)/n^3],
/// expected in (-0.0024, -0.0005).
VerificationRow check_lemma_stirling_form(unsigned long n, unsigned digits = 30);

/// Outcome of an inequality check; `detail` names the first failing case.
struct CheckResult {
  bool ok = true;
  std::string detail;
  explicit operator bool() const { return ok; }
};

/// phi_n from its closed form in (0.05, 2.19), below 0.11 for n >= 2, and for
/// n >= 2 the exponential upper bound on s_n / (eps s_{n-1}).
CheckResult check_lemma_ratio(unsigned long n);

/// s_{n+k}/(eps^k s_n) < 1 - k/(2n) + (3k^2/8 + (19/72 - S)k)/n^2 + 1.2k^6/n^3, exactly.
CheckResult check_lemma_qnk(unsigned long n, unsigned long k);

/// sigma_1/n + sigma_3/n^3 + sigma_5/n^5 < ln[(1/2)_n (R)_n (1-R)_n / n!^3 (pi n)^(3/2) / sin(pi R)]
///   < sigma_1/n + sigma_3/n^3.
CheckResult check_pochhammer_bounds(const Rational& R, unsigned long n, unsigned digits = 40);

/// rho_k > 0 for 6 <= k <= k_max and rho~_k < 0 for 8 <= k <= k_max at each
/// grid value of R, plus the closed forms of rho_6..rho_9 and rho~_8..rho~_11.
CheckResult check_rho_signs(unsigned long k_max, const std::vector<Rational>& R_grid);
/// The grid used by default: R in {1/10, 1/6, 1/5, 1/4, 1/3, 2/5, 1/2}.
std::vector<Rational> default_rho_grid();

/// rho_k and rho~_k as exact rationals.
Rational rho(const Rational& R, unsigned long k);
Rational rho_tilde(const Rational& R, unsigned long k);

/// |pi_n - pi| < 11.315/sqrt(n) 53360^(-3n) and < A0/sqrt(n) 53360^(-3n) for n = 1..n_max.
CheckResult check_weak_bound(unsigned long n_max, unsigned digits = 30);

/// |ln(pi_n / pi)| n^10 / eps < 4.
CheckResult check_pin_over_pi(unsigned long n, unsigned digits = 30);

/// Smallest n* with Theta in (0, 1) on n* <= n <= n_max. Throws BoundViolation
/// when n* exceeds the catalog n0.
unsigned long scan_theta_threshold(const SeriesParams& series, unsigned long n_max, unsigned digits = 30);

/// Bounds used for each quantity, exposed for reporting.
struct QuantityBounds {
  Rational lower;
  Rational upper;
};
QuantityBounds bounds_for(const std::string& quantity);

}  // namespace relab
