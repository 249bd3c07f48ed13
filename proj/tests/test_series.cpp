#include <doctest.h>

#include <cmath>

#include "relab/catalog.hpp"
#include "relab/series.hpp"

using namespace relab;

namespace {

Rational naive_partial_sum(const SeriesParams& s, unsigned long n) {
  Rational sum(0);
  for (unsigned long k = 0; k < n; ++k) sum += term(s, k);
  return sum;
}

BigFloat mpfr_pi(BigFloat::Precision bits) {
  BigFloat p(bits);
  mpfr_const_pi(p.get(), MPFR_RNDN);
  return p;
}

Rational ten_pow_neg(long d) { return Rational(1) / Rational(10).pow(d); }

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("individual terms") {
    const SeriesParams& c = get_series(7);
    CHECK(term(c, 0) == c.S);
    // Factorial form: -(6!/(3! 1!^3)) (1 + S) / 640320^3
    CHECK(term(c, 1) == -Rational(120) * (Rational(1) + c.S) / Rational(640320).pow(3));
    CHECK(term(c, 1) == -Rational(1, 2) * Rational(1, 6) * Rational(5, 6) * (Rational(1) + c.S) * c.Z.abs());
    // (1/2)_2^3 / 2!^3 * (2 + 1/4) * (-1)^2
    CHECK(term(get_series(33), 2) == Rational(243, 2048));
    CHECK_THROWS(term_ratio(c, 0));
  }

  TEST_CASE("telescoping for all series") {
    for (const auto& s : list_series()) {
      CAPTURE(s.id);
      Rational t = term(s, 0);
      bool ok = true;
      for (unsigned long k = 1; k <= 200; ++k) {
        t *= term_ratio(s, k);
        if (k % 50 == 0 && t != term(s, k)) ok = false;
      }
      CHECK(ok);
      CHECK(t == term(s, 200));
    }
  }

  TEST_CASE("Chudnovsky terms decrease strictly") {
    const SeriesParams& c = get_series(7);
    Rational prev = term(c, 0).abs();
    for (unsigned long k = 1; k <= 200; ++k) {
      const Rational cur = (prev * term_ratio(c, k)).abs();
      CHECK(cur < prev);
      prev = cur;
    }
  }

  TEST_CASE("binary splitting equals naive summation") {
    for (const auto& s : list_series()) {
      CAPTURE(s.id);
      for (unsigned long n : {1UL, 2UL, 17UL, 64UL}) {
        CHECK(partial_sum(s, n) == naive_partial_sum(s, n));
      }
    }
    for (int id : {1, 7, 23, 33}) {
      CHECK(partial_sum(get_series(id), 50) == naive_partial_sum(get_series(id), 50));
    }
    CHECK(partial_sum(get_series(7), 1) == get_series(7).S);
    CHECK(partial_sum(get_series(7), 2) == get_series(7).S + term(get_series(7), 1));
    CHECK_THROWS(partial_sum(get_series(7), 0));
  }

  TEST_CASE("gaps shrink at rate |Z|") {
    for (const auto& s : list_series()) {
      if (s.output_form == OutputForm::ReciprocalDifference) continue;
      CAPTURE(s.id);
      const double gap40 = log(abs(BigFloat(term(s, 40), 128))).to_double();
      const double gap41 = log(abs(BigFloat(term(s, 41), 128))).to_double();
      const double rate = std::log(std::fabs(s.Z.to_double()));
      CHECK(std::fabs((gap41 - gap40) - rate) < 0.1 * std::fabs(rate));
    }
  }

  TEST_CASE("pi_1 of the Chudnovsky series") {
    const ApproxResult r = pi_approx(get_series(7), 1, 30);
    // sqrt(640320^3) / (12 * 13591409)
    BigFloat oracle(Rational(BigInt(BigInt(640320) * 640320 * 640320)), 256);
    oracle = sqrt(oracle) / BigFloat(Rational(12 * 13591409L), 256);
    CHECK(r.value.to_scientific(30) == oracle.to_scientific(30));
    CHECK(!r.reciprocal);
    CHECK(r.n == 1);
  }

  TEST_CASE("pi_3 error size") {
    const ApproxResult r = pi_approx(get_series(7), 3, 50);
    const BigFloat err = abs(r.value - mpfr_pi(300));
    CHECK(compare(err, ten_pow_neg(41)) < 0);
    CHECK(compare(err, ten_pow_neg(44)) > 0);
  }

  TEST_CASE("Ramanujan-396 error follows its leading factor") {
    const ApproxResult r = pi_approx(get_series(23), 2, 30);
    const BigFloat err = abs(r.value - mpfr_pi(200));
    // 99^-8 * 9801 sqrt(pi) / (1820 sqrt(2))
    BigFloat lead = BigFloat(Rational(9801, 1820) / Rational(99).pow(8), 200) * sqrt(mpfr_pi(200)) /
                    sqrt(BigFloat(2, 200));
    const double ratio = (err / lead).to_double();
    CHECK(ratio > 0.7);
    CHECK(ratio < 1.0);
  }

  TEST_CASE("terms_needed") {
    CHECK(terms_needed(14) == 2);
    CHECK_THROWS(terms_needed(0));
    // Scan of the bound in floating point, far from any tie.
    auto bound_log10 = [](unsigned long n) {
      return std::log10(11.315) - 0.5 * std::log10(static_cast<double>(n)) - 3.0 * n * std::log10(53360.0);
    };
    for (unsigned d : {14U, 30U, 100U, 300U}) {
      unsigned long n = 1;
      while (bound_log10(n) >= -static_cast<double>(d)) ++n;
      CHECK(terms_needed(d) == n);
    }
    for (unsigned d : {20U, 50U, 100U, 500U}) {
      CAPTURE(d);
      const unsigned long n = terms_needed(d);
      const ApproxResult r = pi_approx(get_series(7), n, d + 5);
      CHECK(compare(abs(r.value - mpfr_pi(bits_for_digits(d + 20))), ten_pow_neg(d)) < 0);
    }
  }

  TEST_CASE("certified bounds hold") {
    const BigFloat p = mpfr_pi(1500);
    for (const auto& s : list_series()) {
      CAPTURE(s.id);
      for (unsigned long n : {1UL, 5UL, 20UL}) {
        const ApproxResult r = pi_approx(s, n, 400);
        CHECK(r.certified_error_bound.sign() >= 0);
        const BigFloat actual = r.reciprocal ? abs(BigFloat(1, 1500) / p - r.value) : abs(r.value - p);
        CHECK(actual <= r.certified_error_bound);
      }
    }
    CHECK(pi_approx(get_series(33), 10, 20).reciprocal);
  }

  TEST_CASE("per-series term planner") {
    for (const auto& s : list_series()) {
      if (s.output_form == OutputForm::ReciprocalDifference) {
        CHECK_THROWS(terms_needed_for(s, 10));
        continue;
      }
      CAPTURE(s.id);
      const unsigned long n = terms_needed_for(s, 40);
      const ApproxResult r = pi_approx(s, n, 50);
      CHECK(compare(abs(r.value - mpfr_pi(400)), ten_pow_neg(40)) < 0);
      if (n > 1) {
        const ApproxResult before = pi_approx(s, n - 1, 50);
        CHECK(compare(before.certified_error_bound, ten_pow_neg(40)) >= 0);
      }
    }
  }

  TEST_CASE("argument checks") {
    CHECK_THROWS(pi_approx(get_series(7), 0, 10));
    CHECK_THROWS(pi_approx(get_series(7), 1, 0));
  }
}
