#include "relab/asymptotics.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

#include "relab/numeric/serialize.hpp"

namespace relab {

namespace {

// b_k for k >= 0 without building the product series: with g_0 = 1 and
// g_k = (1-S)^(k-1), b = (1 - e1 x + e2 x^2 - e3 x^3) * g where e1, e2, e3 are
// the elementary symmetric functions of {1/2, R, 1-R}.
template <typename Num, typename Make>
std::vector<Num> ratio_coeff_values(const SeriesParams& s, std::size_t order, Make make) {
  const Rational r = s.R * (Rational(1) - s.R);
  const Num e1 = make(Rational(3, 2));
  const Num e2 = make(Rational(1, 2) + r);
  const Num e3 = make(r / 2);
  const Num one_minus_s = make(Rational(1) - s.S);
  std::vector<Num> g(order + 1, make(Rational(1)));
  for (std::size_t k = 2; k <= order; ++k) {
    g[k] = g[k - 1] * one_minus_s;
  }
  std::vector<Num> b(order + 1, make(Rational(0)));
  for (std::size_t k = 0; k <= order; ++k) {
    Num v = g[k];
    if (k >= 1) v = v - e1 * g[k - 1];
    if (k >= 2) v = v + e2 * g[k - 2];
    if (k >= 3) v = v - e3 * g[k - 3];
    b[k] = v;
  }
  return b;
}

// Bernoulli polynomial B_n(x).
Rational bernoulli_poly(std::size_t n, const Rational& x) {
  Rational sum(0);
  Rational xp(1);
  // sum_k C(n,k) B_k x^(n-k), accumulated from k = n downwards.
  for (std::size_t k = n + 1; k-- > 0;) {
    sum += Rational(binomial(n, k)) * bernoulli_number(k) * xp;
    xp *= x;
  }
  return sum;
}

}  // namespace

PowerSeries ratio_coeffs(const SeriesParams& series, std::size_t order) {
  return PowerSeries(ratio_coeff_values<Rational>(series, order, [](const Rational& q) { return q; }));
}

PowerSeries tail_coeffs(const SeriesParams& series, std::size_t order) {
  const PowerSeries b = ratio_coeffs(series, order);
  // Integer scaling: b_j = B_j / Db^j and a_N = A_N / (Dz Db)^N.
  const BigInt rd = series.R.denominator();
  const BigInt Db = 2 * rd * rd * series.S.denominator();
  const BigInt zn = series.Z.numerator();
  const BigInt zd = series.Z.denominator();
  const BigInt Dz = zd - zn;
  const BigInt W = Dz * Db;

  std::vector<BigInt> B(order + 1);
  BigInt db_pow = 1;
  for (std::size_t j = 0; j <= order; ++j) {
    const Rational scaled = b[j] * Rational(db_pow);
    if (!scaled.is_integer()) {
      throw std::logic_error("ratio coefficient denominator does not divide the scale");
    }
    B[j] = scaled.numerator();
    db_pow *= Db;
  }

  std::vector<BigInt> A(order + 1);
  A[0] = 1;
  std::vector<BigInt> row{1};  // C(N-1, 0..N-1)
  for (std::size_t N = 1; N <= order; ++N) {
    BigInt s1 = 0;
    for (std::size_t k = 0; k < N; ++k) {
      s1 = s1 * Dz + A[k] * B[N - k];
    }
    BigInt s2 = 0;
    for (std::size_t k = 1; k < N; ++k) {
      s2 = s2 * W + A[k] * row[k - 1];
    }
    A[N] = zn * s1 - zd * Db * s2;
    // Advance the binomial row to C(N, .).
    row.push_back(1);
    for (std::size_t k = row.size() - 2; k >= 1; --k) {
      row[k] += row[k - 1];
    }
  }

  std::vector<Rational> a(order + 1);
  BigInt scale = 1;
  for (std::size_t N = 0; N <= order; ++N) {
    a[N] = Rational(A[N], scale);
    scale *= W;
  }
  return PowerSeries(std::move(a));
}

std::vector<BigFloat> tail_coeffs_float(const SeriesParams& series, std::size_t order, BigFloat::Precision bits) {
  auto make = [bits](const Rational& q) { return BigFloat(q, bits); };
  const std::vector<BigFloat> b = ratio_coeff_values<BigFloat>(series, order, make);
  const BigFloat Z = make(series.Z);
  const BigFloat one_minus_z = make(Rational(1) - series.Z);

  std::vector<BigFloat> a(order + 1, BigFloat(bits));
  a[0] = BigFloat(1, bits);
  std::vector<BigFloat> row{BigFloat(1, bits)};
  BigFloat s1(bits), s2(bits);
  for (std::size_t N = 1; N <= order; ++N) {
    mpfr_set_zero(s1.get(), 1);
    for (std::size_t k = 0; k < N; ++k) {
      mpfr_fma(s1.get(), a[k].get(), b[N - k].get(), s1.get(), MPFR_RNDN);
    }
    mpfr_set_zero(s2.get(), 1);
    for (std::size_t k = 1; k < N; ++k) {
      mpfr_fma(s2.get(), a[k].get(), row[k - 1].get(), s2.get(), MPFR_RNDN);
    }
    a[N] = (Z * s1 - s2) / one_minus_z;
    row.push_back(BigFloat(1, bits));
    for (std::size_t k = row.size() - 2; k >= 1; --k) {
      row[k] += row[k - 1];
    }
  }
  return a;
}

PochhammerSigma pochhammer_sigma(const Rational& R) {
  if (R <= Rational(0) || R >= Rational(1)) {
    throw std::domain_error("pochhammer_sigma needs 0 < R < 1, got " + R.str());
  }
  const Rational r = R * (Rational(1) - R);
  const Rational r2 = r * r;
  return {Rational(-1, 8) - r, Rational(1, 192) + r2 / 6, Rational(-1, 640) - r2 / 30 - r2 * r / 15};
}

Rational bernoulli_number(std::size_t k) {
  static std::vector<Rational> cache{Rational(1)};
  static std::mutex guard;
  std::lock_guard<std::mutex> lock(guard);
  while (cache.size() <= k) {
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    const std::size_t m = cache.size();
    Rational sum(0);
    for (std::size_t j = 0; j < m; ++j) {
      sum += Rational(binomial(m + 1, j)) * cache[j];
    }
    cache.push_back(-sum / Rational(static_cast<long>(m + 1)));
  }
  return cache[k];
}

std::vector<Rational> pochhammer_sigma_series(const Rational& R, std::size_t order) {
  if (R <= Rational(0) || R >= Rational(1)) {
    throw std::domain_error("pochhammer_sigma_series needs 0 < R < 1, got " + R.str());
  }
  // ln Gamma(n+a) - ln Gamma(n+1) ~ (a-1) ln n + sum_k (-1)^(k+1) (B_{k+1}(a) - B_{k+1}(1)) / (k(k+1) n^k)
  std::vector<Rational> sigma(order + 1, Rational(0));
  const Rational shifts[] = {Rational(1, 2), R, Rational(1) - R};
  for (std::size_t k = 1; k <= order; ++k) {
    Rational acc(0);
    const Rational at_one = bernoulli_poly(k + 1, Rational(1));
    for (const Rational& a : shifts) {
      acc += bernoulli_poly(k + 1, a) - at_one;
    }
    const long kk = static_cast<long>(k);
    acc /= Rational(kk * (kk + 1));
    sigma[k] = (k % 2 == 1) ? acc : -acc;
  }
  return sigma;
}

StirlingEnvelope stirling_envelope(unsigned long n, BigFloat::Precision bits) {
  if (n == 0) {
    throw std::invalid_argument("stirling_envelope needs n >= 1");
  }
  const Rational x(BigInt(1), BigInt(n));
  const Rational x2 = x * x;
  const Rational upper = x / 12 - x * x2 / 360 + x * x2 * x2 / 1260;
  const Rational lower = upper - x * x2 * x2 * x2 / 1680;
  return {lower, upper, BigFloat(lower, bits, MPFR_RNDD), BigFloat(upper, bits, MPFR_RNDU)};
}

Surd sin_pi_surd(const Rational& R) {
  Rational reduced = R;
  if (reduced > Rational(1, 2)) {
    reduced = Rational(1) - reduced;
  }
  if (reduced == Rational(1, 6)) return Surd(Rational(1, 2), 1);
  if (reduced == Rational(1, 4)) return Surd(Rational(1, 2), 2);
  if (reduced == Rational(1, 3)) return Surd(Rational(1, 2), 3);
  if (reduced == Rational(1, 2)) return Surd(Rational(1), 1);
  throw std::domain_error("sin(pi*" + R.str() + ") is not a supported surd");
}

BigFloat ExpansionReport::a0_value(BigFloat::Precision bits) const {
  BigFloat value = A0.evaluate(bits + 16);
  // A0 already carries pi^(1/2); multiply the remaining integer power of pi.
  const Rational extra = a0_pi_power - Rational(1, 2);
  if (!extra.is_zero()) {
    value *= pow(pi(bits + 16), extra.numerator().get_si());
  }
  return value.rounded(bits);
}

std::string ExpansionReport::a0_str() const {
  if (a0_pi_power == Rational(1, 2)) {
    return A0.str();
  }
  std::string out = A0.coeff().str();
  if (A0.radicand() != 1) {
    out += "*sqrt(" + std::to_string(A0.radicand()) + ")";
  }
  const Rational p = a0_pi_power;
  return out + "*pi^(" + (p.is_integer() ? p.numerator().get_str() : p.str()) + ")";
}

ExpansionReport expansion(const SeriesParams& series, std::optional<int> order) {
  const int m = order.value_or(series.expansion_order);
  if (m < 1) {
    throw std::invalid_argument("expansion order must be at least 1");
  }
  const std::size_t M = static_cast<std::size_t>(m);
  ExpansionReport report;
  report.series_id = series.id;
  report.order = m;
  report.catalog_order = series.expansion_order;
  report.base = series.Z;
  report.output_form = series.output_form;

  const Surd prefactor = series.P * sin_pi_surd(series.R) * (Rational(1) / (Rational(1) - series.Z));
  report.A0 = SurdPiConstant::from_surd(prefactor);
  report.a0_pi_power = Rational(1, 2);
  if (series.output_form == OutputForm::ReciprocalDifference) {
    // 1/pi - 1/pi_n = (pi_n - pi)/(pi pi_n), and pi pi_n ~ pi^2.
    report.a0_pi_power = Rational(-3, 2);
  }

  PowerSeries tail = tail_coeffs(series, M);
  tail[0] = Rational(0);
  const PowerSeries log_tail = ps_log1p(tail);
  const std::vector<Rational> sigma = pochhammer_sigma_series(series.R, M);
  Rational s_pow(1);
  for (std::size_t j = 1; j <= M; ++j) {
    s_pow *= series.S;
    // ln(1 + S/n) contributes (-1)^(j+1) S^j / j.
    Rational log_s = s_pow / Rational(static_cast<long>(j));
    if (j % 2 == 0) log_s = -log_s;
    report.exponent_coeffs.push_back(log_tail[j] + sigma[j] + log_s);
  }
  return report;
}

nlohmann::json expansion_json(const ExpansionReport& report) {
  nlohmann::json beyond = nlohmann::json::array();
  for (int j = 1; j <= report.order; ++j) {
    beyond.push_back(j > report.catalog_order);
  }
  return {{"series_id", report.series_id},
          {"A0",
           {{"coeff", report.A0.coeff().str()},
            {"radicand", report.A0.radicand()},
            {"pi_power", report.a0_pi_power.str()}}},
          {"A0_str", report.a0_str()},
          {"exponent_coeffs", report.exponent_coeffs},
          {"m", report.order},
          {"catalog_m", report.catalog_order},
          {"beyond_catalog", beyond},
          {"base", report.base.str()},
          {"output_form", to_string(report.output_form)}};
}

std::string expansion_csv(const ExpansionReport& report) {
  std::ostringstream out;
  out << "key,value,beyond_catalog\n";
  out << "series_id," << report.series_id << ",false\n";
  out << "A0," << report.a0_str() << ",false\n";
  out << "base," << report.base.str() << ",false\n";
  out << "output_form," << to_string(report.output_form) << ",false\n";
  for (int j = 1; j <= report.order; ++j) {
    out << "A_" << j << ',' << report.exponent_coeffs[static_cast<std::size_t>(j - 1)].str() << ','
        << (j > report.catalog_order ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace relab
