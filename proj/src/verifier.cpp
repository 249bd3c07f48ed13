#include "relab/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "relab/asymptotics.hpp"
#include "relab/errors.hpp"
#include "relab/series.hpp"

namespace relab {

namespace {

constexpr unsigned kDualExtraDigits = 20;  // at least 64 bits finer

const SeriesParams& chudnovsky() { return get_series(kChudnovskyId); }
Rational epsilon() { return chudnovsky().Z.abs(); }

Rational ten_pow_neg(long digits) { return Rational(1) / Rational(10).pow(digits); }

unsigned ceil_unsigned(double x) { return static_cast<unsigned>(std::max(0.0, std::ceil(x))); }

BigFloat from_rational(const Rational& q, BigFloat::Precision bits) { return BigFloat(q, bits); }

bool strictly_inside(const BigFloat& x, const Rational& lower, const Rational& upper) {
  return compare(x, lower) > 0 && compare(x, upper) < 0;
}

// Runs `compute` at `digits` and `digits + 20`, escalating while the two
// disagree beyond half of the requested digits.
VerificationRow dual_measure(const std::function<BigFloat(unsigned)>& compute, unsigned digits, VerificationRow row) {
  const QuantityBounds b = bounds_for(row.quantity);
  row.lower = b.lower;
  row.upper = b.upper;
  unsigned d = digits;
  for (int attempt = 0; attempt < 4; ++attempt, d *= 2) {
    const BigFloat coarse = compute(d);
    const BigFloat fine = compute(d + kDualExtraDigits);
    if (fine.is_zero()) {
      if (!coarse.is_zero()) continue;
      row.measured = fine;
      row.dual_rel_diff = 0.0;
      row.in_bounds = strictly_inside(fine, row.lower, row.upper);
      return row;
    }
    // Compared in working precision; 10^(-d/2) underflows a double for large d.
    const BigFloat::Precision p = std::max(coarse.precision(), fine.precision());
    const BigFloat rel = abs(coarse.rounded(p) - fine.rounded(p)) / abs(fine.rounded(p));
    if (compare(rel, ten_pow_neg(static_cast<long>(d / 2))) < 0) {
      row.measured = fine;
      row.dual_rel_diff = rel.to_double();
      row.in_bounds = strictly_inside(coarse, row.lower, row.upper) && strictly_inside(fine, row.lower, row.upper);
      return row;
    }
  }
  throw PrecisionError("dual evaluation of " + row.quantity + " at n=" + std::to_string(row.n) +
                       " did not settle");
}

// Exact tail of the Chudnovsky series relative to its first term:
//   sum_{j=0}^{T-1} prod_{i=1..j} t_{n+i}/t_{n+i-1},
// along with |prod_{i=1..T}|, which bounds the omitted part up to 1/(1-eps).
struct RelativeTail {
  Rational sum;
  Rational cut;
};

class TailBuilder {
 public:
  explicit TailBuilder(unsigned long n) : n_(n), sum_(1), prod_(1) { extend(); }
  void extend() {
    ++T_;
    prod_ *= term_ratio(chudnovsky(), n_ + T_);
  }
  // Adds the current product to the sum and steps to the next one.
  void advance() {
    sum_ += prod_;
    extend();
  }
  RelativeTail state() const { return {sum_, prod_.abs()}; }

 private:
  unsigned long n_;
  unsigned long T_ = 0;
  Rational sum_;
  Rational prod_;
};

// Builds (1+eps) tail / s_n to the cut rule and then until `residual` (the
// quantity derived from it) is not dominated by the cut.
template <typename Residual>
Rational normalized_tail(unsigned long n, unsigned digits, Residual residual_scale) {
  const Rational eps = epsilon();
  const Rational threshold = ten_pow_neg(static_cast<long>(digits) + 10);
  TailBuilder tail(n);
  while (tail.state().cut >= threshold) {
    tail.advance();
  }
  for (int guard = 0; guard < 1000; ++guard) {
    const RelativeTail st = tail.state();
    const Rational f = (Rational(1) + eps) * st.sum;
    // The omitted part changes f by at most (1+eps) cut/(1-eps).
    const Rational f_err = (Rational(1) + eps) * st.cut / (Rational(1) - eps);
    if (residual_scale(f, f_err)) {
      return f;
    }
    tail.advance();
  }
  throw PrecisionError("tail cut kept dominating at n=" + std::to_string(n));
}

BigFloat::Precision residual_bits(unsigned digits, unsigned long n) {
  return bits_for_digits(static_cast<long>(digits) + 20) + 64 +
         static_cast<BigFloat::Precision>(4 * std::log2(static_cast<double>(n) + 1));
}

// ln(|diff| |Z|^(-n) sqrt(n) / A0), where diff is the signed error of the
// order-n approximation. `extra_digits` covers the amplification applied by
// the caller afterwards.
BigFloat log_residual(const SeriesParams& series, const ExpansionReport& report, unsigned long n, unsigned digits,
                      unsigned extra_digits) {
  const double log10_inv_z = -std::log10(std::fabs(series.Z.to_double()));
  const unsigned working = ceil_unsigned(static_cast<double>(n) * log10_inv_z) + digits + extra_digits + 10;
  const BigFloat::Precision bits = bits_for_digits(working) + 32;
  const ApproxResult approx = pi_approx(series, n, working);
  const BigFloat ref = reference_pi(working + 5).rounded(bits);
  BigFloat diff(bits);
  if (approx.reciprocal) {
    diff = BigFloat(1, bits) / ref - approx.value.rounded(bits);
  } else {
    diff = approx.value.rounded(bits) - ref;
  }
  if (diff.is_zero()) {
    throw PrecisionError("approximation error vanished at working precision for series " +
                         std::to_string(series.id));
  }
  const BigFloat scale(series.Z.abs().reciprocal().pow(static_cast<long>(n)), bits);
  const BigFloat root_n = sqrt(BigFloat(static_cast<long>(n), bits));
  return log(abs(diff) * scale * root_n / report.a0_value(bits));
}

unsigned log10_ceil(double x) { return ceil_unsigned(std::log10(std::max(x, 1.0))); }

}  // namespace

QuantityBounds bounds_for(const std::string& quantity) {
  if (quantity == "e") return {Rational(3216, 10000), Rational(6704, 10000)};
  if (quantity == "delta") return {Rational(6907, 1000000), Rational(8429, 1000000)};
  if (quantity == "theta") return {Rational(0), Rational(1)};
  if (quantity == "d") return {Rational(321, 1000), Rational(671, 1000)};
  if (quantity == "h") return {Rational(-24, 10000), Rational(-5, 10000)};
  throw std::invalid_argument("unknown quantity: " + quantity);
}

BigFloat reference_pi(unsigned digits) {
  if (digits == 0) {
    throw std::invalid_argument("reference_pi needs digits >= 1");
  }
  static std::mutex guard;
  static BigFloat cached;
  static unsigned cached_digits = 0;
  std::lock_guard<std::mutex> lock(guard);
  if (cached_digits < digits) {
    const unsigned target = std::max(digits, cached_digits + cached_digits / 2);
    const SeriesParams& primary = get_series(kChudnovskyId);
    const SeriesParams& secondary = get_series(kRamanujan396Id);
    const BigFloat a = pi_approx(primary, terms_needed(target + 10), target + 10).value;
    const BigFloat b = pi_approx(secondary, terms_needed_for(secondary, target + 10), target + 10).value;
    if (compare(abs(a - b), ten_pow_neg(static_cast<long>(target))) >= 0) {
      throw PrecisionError("reference pi: Chudnovsky and Ramanujan-396 evaluations disagree at " +
                           std::to_string(target) + " digits");
    }
    cached = a;
    cached_digits = target;
  }
  return cached.rounded(bits_for_digits(digits) + 16);
}

VerificationRow measure_e(unsigned long n, unsigned digits) {
  if (n == 0) throw std::invalid_argument("measure_e needs n >= 1");
  const Rational eps = epsilon();
  const PowerSeries a = tail_coeffs(chudnovsky(), 2);
  const Rational nn(static_cast<long>(n));
  const Rational amplification = nn * nn * nn / eps;
  const Rational expansion_part = Rational(1) + a[1] / nn + a[2] / (nn * nn);
  auto compute = [&](unsigned d) {
    const Rational f = normalized_tail(n, d, [&](const Rational& f, const Rational& f_err) {
      const Rational value = (f - expansion_part) * amplification;
      return f_err * amplification < ten_pow_neg(d) * value.abs();
    });
    return from_rational((f - expansion_part) * amplification, bits_for_digits(d) + 16);
  };
  VerificationRow row;
  row.series_id = kChudnovskyId;
  row.n = n;
  row.quantity = "e";
  return dual_measure(compute, digits, row);
}

VerificationRow check_dn(unsigned long n, unsigned digits) {
  if (n == 0) throw std::invalid_argument("check_dn needs n >= 1");
  const Rational eps = epsilon();
  const PowerSeries a = tail_coeffs(chudnovsky(), 2);
  const Rational nn(static_cast<long>(n));
  const Rational amplification = nn * nn * nn / eps;
  const Rational exponent_part = a[1] / nn + (a[2] - a[1] * a[1] / 2) / (nn * nn);
  auto compute = [&](unsigned d) {
    // log1p is 1-Lipschitz near 0, so the exact-f cut criterion carries over.
    const Rational f = normalized_tail(n, d, [&](const Rational& f, const Rational& f_err) {
      const Rational approx = (f - 1 - exponent_part) * amplification;
      return f_err * amplification * 2 < ten_pow_neg(d) * approx.abs();
    });
    const BigFloat::Precision bits = residual_bits(d, n);
    const BigFloat log_f = log1p(from_rational(f - 1, bits));
    return (log_f - from_rational(exponent_part, bits)) * from_rational(amplification, bits);
  };
  VerificationRow row;
  row.series_id = kChudnovskyId;
  row.n = n;
  row.quantity = "d";
  return dual_measure(compute, digits, row);
}

VerificationRow measure_delta(unsigned long n, unsigned digits) {
  if (n == 0) throw std::invalid_argument("measure_delta needs n >= 1");
  const SeriesParams& s = chudnovsky();
  const ExpansionReport report = expansion(s, 3);
  const Rational nn(static_cast<long>(n));
  const Rational known = report.exponent_coeffs[0] / nn + report.exponent_coeffs[1] / (nn * nn);
  auto compute = [&](unsigned d) {
    const unsigned extra = 3 * log10_ceil(static_cast<double>(n) + 1) + 3;
    const BigFloat L = log_residual(s, report, n, d, extra);
    const BigFloat::Precision bits = L.precision();
    return (L - from_rational(known, bits)) * from_rational(nn * nn * nn, bits);
  };
  VerificationRow row;
  row.series_id = s.id;
  row.n = n;
  row.quantity = "delta";
  return dual_measure(compute, digits, row);
}

VerificationRow measure_theta(const SeriesParams& series, unsigned long n, unsigned digits) {
  if (n == 0) throw std::invalid_argument("measure_theta needs n >= 1");
  const ExpansionReport report = expansion(series);
  const std::size_t m = static_cast<std::size_t>(report.order);
  const Rational nn(static_cast<long>(n));
  Rational known(0);
  Rational inv_pow(1);
  for (std::size_t j = 1; j < m; ++j) {
    inv_pow /= nn;
    known += report.exponent_coeffs[j - 1] * inv_pow;
  }
  const Rational a_m = report.exponent_coeffs[m - 1];
  const Rational amplification = (nn.pow(static_cast<long>(m))) / a_m;
  auto compute = [&](unsigned d) {
    const double amp = std::fabs(amplification.to_double());
    const unsigned extra = log10_ceil(amp) + 3;
    const BigFloat L = log_residual(series, report, n, d, extra);
    const BigFloat::Precision bits = L.precision();
    return (L - from_rational(known, bits)) * from_rational(amplification, bits);
  };
  VerificationRow row;
  row.series_id = series.id;
  row.n = n;
  row.quantity = "theta";
  row.enforced = static_cast<long>(n) >= series.theta_threshold;
  return dual_measure(compute, digits, row);
}

VerificationRow check_lemma_stirling_form(unsigned long n, unsigned digits) {
  if (n == 0) throw std::invalid_argument("check_lemma_stirling_form needs n >= 1");
  const SeriesParams& s = chudnovsky();
  const Rational nn(static_cast<long>(n));
  // s_n / eps^n, exact.
  const Rational scaled = pochhammer_weight(s.R, n) * (nn + s.S);
  const Rational S = s.S;
  const Rational known = (S - Rational(19, 72)) / nn - (S * S / 2) / (nn * nn) +
                         (Rational(131, 15552) + S * S * S / 3) / (nn * nn * nn);
  auto compute = [&](unsigned d) {
    const BigFloat::Precision bits = residual_bits(d, n);
    const BigFloat p = pi(bits);
    // ln(2 pi^(3/2) sqrt(n) s_n / eps^n)
    const BigFloat L = log(from_rational(scaled * 2, bits) * p * sqrt(p * BigFloat(static_cast<long>(n), bits)));
    return (L - from_rational(known, bits)) * from_rational(nn.pow(4), bits);
  };
  VerificationRow row;
  row.series_id = s.id;
  row.n = n;
  row.quantity = "h";
  return dual_measure(compute, digits, row);
}

CheckResult check_lemma_ratio(unsigned long n) {
  if (n == 0) throw std::invalid_argument("check_lemma_ratio needs n >= 1");
  const SeriesParams& s = chudnovsky();
  const Rational S = s.S;
  const Rational nn(static_cast<long>(n));
  const Rational K = Rational(5, 72) - Rational(23, 36) * S + Rational(3, 2) * S * S - S * S * S;
  const Rational phi = K / (Rational(1) - (Rational(1) - S) / nn);
  std::ostringstream why;
  // The closed form must reproduce the actual ratio exactly.
  const Rational ratio = term_ratio(s, n).abs() / epsilon();
  const Rational expanded = Rational(1) - Rational(1, 2) / nn + (Rational(5, 36) - S) / (nn * nn) +
                            (Rational(5, 72) - S / 2 + S * S) / nn.pow(3) + phi / nn.pow(4);
  if (ratio != expanded) {
    why << "n=" << n << ": closed form of phi_n does not reproduce the term ratio";
    return {false, why.str()};
  }
  if (!(phi > Rational(5, 100) && phi < Rational(219, 100))) {
    why << "n=" << n << ": phi_n=" << phi.to_double() << " outside (0.05, 2.19)";
    return {false, why.str()};
  }
  if (n >= 2) {
    if (!(phi < Rational(11, 100))) {
      why << "n=" << n << ": phi_n=" << phi.to_double() << " not below 0.11";
      return {false, why.str()};
    }
    const Rational exponent =
        -Rational(1, 2) / nn - (S - Rational(1, 72)) / (nn * nn) + Rational(67, 100) / nn.pow(3);
    for (BigFloat::Precision bits : {192L, 256L}) {
      const BigFloat gap = from_rational(exponent, bits) - log(from_rational(ratio, bits));
      if (gap.sign() <= 0) {
        why << "n=" << n << ": exponential bound fails, gap " << gap.to_double();
        return {false, why.str()};
      }
    }
  }
  return {true, ""};
}

CheckResult check_lemma_qnk(unsigned long n, unsigned long k) {
  if (n == 0 || k == 0) throw std::invalid_argument("check_lemma_qnk needs n, k >= 1");
  const SeriesParams& s = chudnovsky();
  const Rational eps = epsilon();
  Rational q(1);
  for (unsigned long j = 1; j <= k; ++j) {
    q *= term_ratio(s, n + j).abs() / eps;
  }
  const Rational nn(static_cast<long>(n));
  const Rational kk(static_cast<long>(k));
  const Rational bound = Rational(1) - kk / (2 * nn) +
                         (Rational(3, 8) * kk * kk + (Rational(19, 72) - s.S) * kk) / (nn * nn) +
                         Rational(6, 5) * kk.pow(6) / nn.pow(3);
  if (q < bound) {
    return {true, ""};
  }
  std::ostringstream why;
  why << "n=" << n << " k=" << k << ": ratio " << q.to_double() << " >= bound " << bound.to_double();
  return {false, why.str()};
}

CheckResult check_pochhammer_bounds(const Rational& R, unsigned long n, unsigned digits) {
  if (n == 0) throw std::invalid_argument("check_pochhammer_bounds needs n >= 1");
  const PochhammerSigma sig = pochhammer_sigma(R);
  const Rational nn(static_cast<long>(n));
  const Rational upper = sig.sigma1 / nn + sig.sigma3 / nn.pow(3);
  const Rational lower = upper + sig.sigma5 / nn.pow(5);
  const Rational weight = pochhammer_weight(R, n);
  std::ostringstream why;
  const BigFloat::Precision base = bits_for_digits(static_cast<long>(digits)) +
                                   static_cast<BigFloat::Precision>(7 * std::log2(static_cast<double>(n) + 1));
  for (BigFloat::Precision bits : {base, base + 64}) {
    const BigFloat L = log(from_rational(weight, bits)) +
                       log(pi(bits) * BigFloat(static_cast<long>(n), bits)) * from_rational(Rational(3, 2), bits) -
                       log(sin_pi(R, bits));
    if (!(compare(L, lower) > 0 && compare(L, upper) < 0)) {
      why << "R=" << R << " n=" << n << ": log value " << L << " outside (" << lower.to_double() << ", "
          << upper.to_double() << ")";
      return {false, why.str()};
    }
  }
  return {true, ""};
}

Rational rho(const Rational& R, unsigned long k) {
  // The closed forms in r also cover the endpoints R = 0 and R = 1.
  const Rational r = R * (Rational(1) - R);
  const Rational sigma1 = Rational(-1, 8) - r;
  const Rational sigma3 = Rational(1, 192) + r * r / 6;
  const Rational kk(static_cast<long>(k));
  const long kl = static_cast<long>(k);
  const Rational half(1, 2);
  const Rational q = Rational(1) - R;
  Rational value = (half - half.pow(kl)) / kk + (R - R.pow(kl)) / kk + (q - q.pow(kl)) / kk + sigma1;
  if (k >= 3) {
    value += Rational(binomial(k - 1, 2)) * sigma3;
  }
  return value;
}

Rational rho_tilde(const Rational& R, unsigned long k) {
  const Rational r = R * (Rational(1) - R);
  const Rational sigma5 = Rational(-1, 640) - r * r / 30 - r * r * r / 15;
  Rational value = rho(R, k);
  if (k >= 5) {
    value += Rational(binomial(k - 1, 4)) * sigma5;
  }
  return value;
}

std::vector<Rational> default_rho_grid() {
  return {Rational(1, 10), Rational(1, 6), Rational(1, 5), Rational(1, 4),
          Rational(1, 3), Rational(2, 5), Rational(1, 2)};
}

CheckResult check_rho_signs(unsigned long k_max, const std::vector<Rational>& R_grid) {
  if (k_max < 9) throw std::invalid_argument("check_rho_signs needs k_max >= 9");
  std::ostringstream why;
  for (const Rational& R : R_grid) {
    if (R < Rational(0) || R > Rational(1)) {
      throw std::invalid_argument("rho grid value outside [0, 1]: " + R.str());
    }
    for (unsigned long k = 6; k <= k_max; ++k) {
      if (rho(R, k).sign() <= 0) {
        why << "rho_" << k << " at R=" << R << " is not positive";
        return {false, why.str()};
      }
      if (k >= 8 && rho_tilde(R, k).sign() >= 0) {
        why << "rho~_" << k << " at R=" << R << " is not negative";
        return {false, why.str()};
      }
    }
  }
  // Closed forms in r = R(1-R).
  using Form = Rational (*)(const Rational&);
  struct ClosedForm {
    unsigned long k;
    bool tilde;
    Form f;
  };
  static const ClosedForm forms[] = {
      {6, false, [](const Rational& r) { return Rational(1, 128) + r * r / 6 + r.pow(3) / 3; }},
      {7, false, [](const Rational& r) { return Rational(3, 128) + r * r / 2 + r.pow(3); }},
      {8, false, [](const Rational& r) { return Rational(95, 2048) + r * r + 2 * r.pow(3) - r.pow(4) / 4; }},
      {9, false,
       [](const Rational& r) { return Rational(39, 512) + Rational(5, 3) * r * r + Rational(10, 3) * r.pow(3) - r.pow(4); }},
      {8, true, [](const Rational& r) { return Rational(-17, 2048) - r * r / 6 - r.pow(3) / 3 - r.pow(4) / 4; }},
      {9, true,
       [](const Rational& r) { return Rational(-17, 512) - Rational(2, 3) * r * r - Rational(4, 3) * r.pow(3) - r.pow(4); }},
      {10, true,
       [](const Rational& r) {
         return Rational(-173, 2048) - Rational(17, 10) * r * r - Rational(17, 5) * r.pow(3) - Rational(5, 2) * r.pow(4) +
                r.pow(5) / 5;
       }},
      {11, true,
       [](const Rational& r) {
         return Rational(-355, 2048) - Rational(7, 2) * r * r - 7 * r.pow(3) - 5 * r.pow(4) + r.pow(5);
       }},
  };
  const Rational samples[] = {Rational(0), Rational(1, 10), Rational(1, 6), Rational(1, 3), Rational(1, 2)};
  for (const Rational& R : samples) {
    const Rational r = R * (Rational(1) - R);
    for (const ClosedForm& form : forms) {
      const Rational direct = form.tilde ? rho_tilde(R, form.k) : rho(R, form.k);
      if (direct != form.f(r)) {
        why << (form.tilde ? "rho~_" : "rho_") << form.k << " closed form differs at R=" << R;
        return {false, why.str()};
      }
    }
  }
  return {true, ""};
}

CheckResult check_weak_bound(unsigned long n_max, unsigned digits) {
  if (n_max == 0) throw std::invalid_argument("check_weak_bound needs n_max >= 1");
  const SeriesParams& s = chudnovsky();
  const ExpansionReport report = expansion(s);
  const Rational eps = epsilon();
  std::ostringstream why;
  for (unsigned long n = 1; n <= n_max; ++n) {
    const unsigned working = ceil_unsigned(static_cast<double>(n) * -std::log10(eps.to_double())) + digits + 10;
    const BigFloat::Precision bits = bits_for_digits(working) + 32;
    const BigFloat pi_n = pi_approx(s, n, working).value.rounded(bits);
    const BigFloat err = abs(pi_n - reference_pi(working + 5).rounded(bits));
    const BigFloat scale = from_rational(eps.pow(static_cast<long>(n)), bits) / sqrt(BigFloat(static_cast<long>(n), bits));
    const BigFloat weak = from_rational(Rational(11315, 1000), bits) * scale;
    const BigFloat tight = report.a0_value(bits) * scale;
    if (!(err < tight && tight < weak)) {
      why << "n=" << n << ": |pi_n - pi|=" << err << " tight=" << tight << " weak=" << weak;
      return {false, why.str()};
    }
  }
  return {true, ""};
}

CheckResult check_pin_over_pi(unsigned long n, unsigned digits) {
  if (n == 0) throw std::invalid_argument("check_pin_over_pi needs n >= 1");
  const SeriesParams& s = chudnovsky();
  const Rational eps = epsilon();
  const unsigned working = ceil_unsigned(static_cast<double>(n) * -std::log10(eps.to_double())) + digits + 10;
  const BigFloat::Precision bits = bits_for_digits(working) + 32;
  const BigFloat pi_n = pi_approx(s, n, working).value.rounded(bits);
  const BigFloat ratio = pi_n / reference_pi(working + 5).rounded(bits);
  const BigFloat f = abs(log(ratio)) * from_rational(Rational(static_cast<long>(n)).pow(10) / eps, bits);
  if (compare(f, Rational(4)) < 0) {
    return {true, ""};
  }
  std::ostringstream why;
  why << "n=" << n << ": |f_n|=" << f << " not below 4";
  return {false, why.str()};
}

unsigned long scan_theta_threshold(const SeriesParams& series, unsigned long n_max, unsigned digits) {
  if (static_cast<long>(n_max) < series.theta_threshold) {
    throw std::invalid_argument("scan_theta_threshold needs n_max >= n0");
  }
  unsigned long n = n_max;
  while (n >= 1) {
    const VerificationRow row = measure_theta(series, n, digits);
    if (!row.in_bounds) {
      break;
    }
    --n;
  }
  const unsigned long threshold = n + 1;
  if (static_cast<long>(threshold) > series.theta_threshold) {
    throw BoundViolation("series " + std::to_string(series.id) + ": Theta leaves (0, 1) at n=" + std::to_string(n) +
                         " although the catalog threshold is " + std::to_string(series.theta_threshold));
  }
  return threshold;
}

}  // namespace relab
