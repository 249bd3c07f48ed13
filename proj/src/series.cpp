#include "relab/series.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "relab/errors.hpp"

namespace relab {

namespace {

// Integer form of the term recurrence. With R = rn/rd, S = sn/sd, Z = zn/zd:
//   t_k = (sd k + sn)/sd * prod_{j=1..k} p(j)/q(j),
//   p(j) = zn (2j-1)(rd j - rn)(rd j - rd + rn),   q(j) = 2 zd rd^2 j^3.
struct Recurrence {
  BigInt rn, rd, sn, sd, zn, zd;

  explicit Recurrence(const SeriesParams& s)
      : rn(s.R.numerator()),
        rd(s.R.denominator()),
        sn(s.S.numerator()),
        sd(s.S.denominator()),
        zn(s.Z.numerator()),
        zd(s.Z.denominator()) {}

  BigInt p(unsigned long j) const {
    const BigInt jj(j);
    return zn * (2 * jj - 1) * (rd * jj - rn) * (rd * jj - rd + rn);
  }
  BigInt q(unsigned long j) const {
    const BigInt jj(j);
    return 2 * zd * rd * rd * jj * jj * jj;
  }
  BigInt weight(unsigned long k) const { return sd * BigInt(k) + sn; }
};

struct Split {
  BigInt P, Q, T;
};

Split split(const Recurrence& rec, unsigned long a, unsigned long b) {
  if (b - a == 1) {
    Split leaf;
    if (a == 0) {
      leaf.P = 1;
      leaf.Q = 1;
    } else {
      leaf.P = rec.p(a);
      leaf.Q = rec.q(a);
    }
    leaf.T = leaf.P * rec.weight(a);
    return leaf;
  }
  const unsigned long mid = a + (b - a) / 2;
  Split left = split(rec, a, mid);
  Split right = split(rec, mid, b);
  Split out;
  out.T = left.T * right.Q + left.P * right.T;
  out.P = left.P * right.P;
  out.Q = left.Q * right.Q;
  return out;
}

constexpr long kWeakBoundNumerator = 11315;  // 11.315 = 11315/1000
constexpr long kWeakBoundDenominator = 1000;

/// 11.315/sqrt(n) * 53360^(-3n), rounded upward.
BigFloat chudnovsky_weak_bound(unsigned long n, BigFloat::Precision bits) {
  const Rational scaled =
      Rational(kWeakBoundNumerator, kWeakBoundDenominator) * Rational(BigInt(1), BigInt(53360)).pow(3 * static_cast<long>(n));
  BigFloat numerator(scaled, bits, MPFR_RNDU);
  BigFloat root(bits);
  mpfr_sqrt_ui(root.get(), n, MPFR_RNDD);
  BigFloat out(bits);
  mpfr_div(out.get(), numerator.get(), root.get(), MPFR_RNDU);
  return out;
}

BigFloat evaluate_pi_n(const SeriesParams& series, const Rational& sum, BigFloat::Precision bits) {
  // pi_n = 1 / (P_coeff * sum * sqrt(P_radicand)).
  const BigFloat scaled(series.P.coeff() * sum, bits);
  const BigFloat root = sqrt(BigFloat(static_cast<long>(series.P.radicand()), bits));
  return BigFloat(1, bits) / (scaled * root);
}

}  // namespace

Rational pochhammer_weight(const Rational& R, unsigned long k) {
  const BigInt rn = R.numerator();
  const BigInt rd = R.denominator();
  BigInt num = 1;
  BigInt den = 1;
  for (unsigned long j = 0; j < k; ++j) {
    const BigInt jj(j);
    num *= (2 * jj + 1) * (rd * jj + rn) * (rd * jj + rd - rn);
    den *= 2 * rd * rd * (jj + 1) * (jj + 1) * (jj + 1);
  }
  return Rational(num, den);
}

Rational term_ratio(const SeriesParams& series, unsigned long k) {
  if (k == 0) {
    throw std::invalid_argument("term_ratio needs k >= 1");
  }
  const Rational kk(static_cast<long>(k));
  const Rational& R = series.R;
  const Rational& S = series.S;
  return series.Z * (kk - Rational(1, 2)) * (kk - R) * (kk - 1 + R) * (kk + S) /
         (kk * kk * kk * (kk - 1 + S));
}

Rational term(const SeriesParams& series, unsigned long k) {
  return pochhammer_weight(series.R, k) * (Rational(static_cast<long>(k)) + series.S) *
         series.Z.pow(static_cast<long>(k));
}

Rational partial_sum(const SeriesParams& series, unsigned long n) {
  if (n == 0) {
    throw std::invalid_argument("partial_sum needs n >= 1");
  }
  const Recurrence rec(series);
  const Split s = split(rec, 0, n);
  return Rational(s.T, s.Q * rec.sd);
}

BigFloat next_term_error_bound(const SeriesParams& series, unsigned long n, const BigFloat& pi_n) {
  const BigFloat::Precision bits = 64;
  Rational tail = term(series, n).abs();
  if (series.Z.sign() > 0) {
    // Geometric majorant: t_{k+1}/t_k < Z for k >= 1.
    tail /= (Rational(1) - series.Z);
  }
  BigFloat bound(tail, bits, MPFR_RNDU);
  BigFloat p_up(series.P.squared(), bits, MPFR_RNDU);
  mpfr_sqrt(p_up.get(), p_up.get(), MPFR_RNDU);
  mpfr_mul(bound.get(), bound.get(), p_up.get(), MPFR_RNDU);
  if (series.output_form == OutputForm::ReciprocalDifference) {
    return bound;
  }
  // |pi_n - pi| = pi * pi_n * |1/pi - 1/pi_n|.
  BigFloat pi_up(Rational(31416, 10000), bits, MPFR_RNDU);
  BigFloat pin_up(bits);
  mpfr_set(pin_up.get(), pi_n.get(), MPFR_RNDU);
  mpfr_nextabove(pin_up.get());
  mpfr_mul(bound.get(), bound.get(), pi_up.get(), MPFR_RNDU);
  mpfr_mul(bound.get(), bound.get(), pin_up.get(), MPFR_RNDU);
  return bound;
}

ApproxResult pi_approx(const SeriesParams& series, unsigned long n, unsigned digits) {
  if (n == 0 || digits == 0) {
    throw std::invalid_argument("pi_approx needs n >= 1 and digits >= 1");
  }
  const Rational sum = partial_sum(series, n);
  if (sum.is_zero()) {
    throw std::domain_error("partial sum vanished");
  }
  const bool reciprocal = series.output_form == OutputForm::ReciprocalDifference;
  auto evaluate = [&](BigFloat::Precision bits) {
    return reciprocal ? BigFloat(series.P.coeff() * sum, bits) * sqrt(BigFloat(static_cast<long>(series.P.radicand()), bits))
                      : evaluate_pi_n(series, sum, bits);
  };

  BigFloat::Precision guard = 64 + static_cast<BigFloat::Precision>(std::ceil(std::log2(static_cast<double>(n) + 1)));
  const BigFloat::Precision base = bits_for_digits(digits);
  for (int attempt = 0; attempt < 8; ++attempt, guard *= 2) {
    const BigFloat coarse = evaluate(base + guard);
    const BigFloat fine = evaluate(base + guard + 64);
    if (coarse.to_scientific(static_cast<int>(digits)) != fine.to_scientific(static_cast<int>(digits))) {
      continue;
    }
    ApproxResult out;
    out.n = n;
    out.digits = digits;
    out.reciprocal = reciprocal;
    out.value = fine;
    out.certified_error_bound = series.id == kChudnovskyId ? chudnovsky_weak_bound(n, 64)
                                                           : next_term_error_bound(series, n, fine);
    return out;
  }
  throw PrecisionError("pi_approx: dual evaluation did not settle for series " + std::to_string(series.id));
}

unsigned long terms_needed(unsigned digits) {
  if (digits == 0) {
    throw std::invalid_argument("terms_needed needs digits >= 1");
  }
  // 11.315/sqrt(n) * 53360^(-3n) < 10^(-d)  <=>  11315^2 * 10^(2d) < 10^6 * n * 53360^(6n).
  BigInt lhs = BigInt(kWeakBoundNumerator) * kWeakBoundNumerator;
  BigInt ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, 2UL * digits);
  lhs *= ten_pow;
  BigInt step;
  mpz_ui_pow_ui(step.get_mpz_t(), 53360, 6);
  const double per_term = 3.0 * std::log10(53360.0);
  unsigned long n = std::max(1L, static_cast<long>(digits / per_term) - 1);
  BigInt power;
  mpz_pow_ui(power.get_mpz_t(), step.get_mpz_t(), n);
  while (true) {
    const BigInt rhs = BigInt(1000000) * BigInt(n) * power;
    if (lhs < rhs) {
      return n;
    }
    ++n;
    power *= step;
  }
}

unsigned long terms_needed_for(const SeriesParams& series, unsigned digits) {
  if (series.Z.abs() >= Rational(1)) {
    throw std::invalid_argument("series " + std::to_string(series.id) + " has |Z| = 1; no term plan exists");
  }
  // Coarse scan in double logarithms, then confirmation with the certified bound.
  const double target = -static_cast<double>(digits) * std::log(10.0);
  const double prefactor = std::log(3.1416 * 3.3 * std::sqrt(series.P.squared().to_double())) -
                           (series.Z.sign() > 0 ? std::log1p(-series.Z.to_double()) : 0.0);
  double log_term = std::log(series.S.to_double());
  unsigned long n = 0;
  while (log_term + prefactor > target - 2.0) {
    ++n;
    log_term += std::log(std::fabs(term_ratio(series, n).to_double()));
  }
  n = std::max(1UL, n);
  const Rational limit = Rational(1) / Rational(10).pow(digits);
  auto certified = [&](unsigned long k) {
    const BigFloat pi_k = evaluate_pi_n(series, partial_sum(series, k), 64);
    return compare(next_term_error_bound(series, k, pi_k), limit) < 0;
  };
  while (!certified(n)) ++n;
  // The coarse scan may overshoot; step back to the smallest certified n.
  while (n > 1 && certified(n - 1)) --n;
  return n;
}

}  // namespace relab
