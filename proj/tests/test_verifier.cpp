#include <doctest.h>

#include <cmath>
#include <string>

#include "relab/asymptotics.hpp"
#include "relab/catalog.hpp"
#include "relab/errors.hpp"
#include "relab/series.hpp"
#include "relab/verifier.hpp"
#include "test_util.hpp"

using namespace relab;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST_SUITE("verifier") {
  TEST_CASE("reference pi") {
    CHECK(reference_pi(15).to_fixed(14) == "3.14159265358979");
    for (unsigned digits : {50u, 400u, 1000u}) {
      const BigFloat ref = reference_pi(digits);
      const BigFloat mp = pi(bits_for_digits(digits) + 16);
      CHECK(relative_difference(ref, mp) < std::pow(10.0, -static_cast<double>(std::min(digits, 300u))));
      CHECK(ref.to_scientific(static_cast<int>(digits) - 2) == mp.to_scientific(static_cast<int>(digits) - 2));
    }
    // A third, unrelated series at a large n.
    const ApproxResult one = pi_approx(get_series(1), terms_needed_for(get_series(1), 60), 60);
    CHECK(relative_difference(one.value, reference_pi(60)) < 1e-55);
  }

  TEST_CASE("e_n and delta_n against the published sweep") {
    const auto rows = testing::read_csv(testing::data_path("e_delta_sweep.csv"));
    REQUIRE(rows.size() == 100);
    double prev_e = 0, prev_d = 0;
    for (const auto& row : rows) {
      const unsigned long n = std::stoul(row[0]);
      CAPTURE(n);
      const VerificationRow e = measure_e(n);
      const VerificationRow d = measure_delta(n);
      CHECK(std::fabs(e.measured.to_double() - std::stod(row[1])) < 1e-9);
      CHECK(std::fabs(d.measured.to_double() - std::stod(row[2])) < 1e-9);
      CHECK(e.in_bounds);
      CHECK(d.in_bounds);
      CHECK(e.enforced);
      CHECK(e.dual_rel_diff < 1e-6);
      CHECK(d.dual_rel_diff < 1e-6);
      CHECK(e.measured.to_double() > prev_e);
      CHECK(d.measured.to_double() > prev_d);
      prev_e = e.measured.to_double();
      prev_d = d.measured.to_double();
    }
    CHECK(rel(measure_e(1).measured.to_double(), 0.3216291292755558) < 1e-12);
    CHECK(rel(measure_delta(100).measured.to_double(), 0.008428280470434838) < 1e-12);
  }

  TEST_CASE("Theta for series 1 against the published curve") {
    const auto rows = testing::read_csv(testing::data_path("theta_series1.csv"));
    REQUIRE(rows.size() == 150);
    const SeriesParams& s = get_series(1);
    for (const auto& row : rows) {
      const unsigned long n = std::stoul(row[0]);
      CAPTURE(n);
      const VerificationRow t = measure_theta(s, n);
      const double expected = std::stod(row[1]);
      CHECK(std::fabs(t.measured.to_double() - expected) <= 1e-6 * std::max(1.0, std::fabs(expected)));
      CHECK(t.enforced == (n >= 25));
      if (n >= 25) CHECK(t.in_bounds);
    }
    CHECK(measure_theta(s, 24).measured.to_double() > 1.0);
  }

  TEST_CASE("Theta for the Chudnovsky series stays in (0, 1)") {
    for (unsigned long n = 1; n <= 60; ++n) {
      const VerificationRow t = measure_theta(get_series(7), n);
      CHECK(t.in_bounds);
      CHECK(t.dual_rel_diff < 1e-6);
    }
  }

  TEST_CASE("Theta thresholds") {
    CHECK(scan_theta_threshold(get_series(1), 80) <= 25);
    CHECK(scan_theta_threshold(get_series(7), 40) == 1);
    CHECK(scan_theta_threshold(get_series(27), 100) <= 31);
    for (const auto& s : list_series()) {
      CAPTURE(s.id);
      const unsigned long n0 = static_cast<unsigned long>(s.theta_threshold);
      const double near = std::fabs(measure_theta(s, n0).measured.to_double() - 1.0);
      const VerificationRow far = measure_theta(s, 4 * n0 + 100);
      CHECK(far.in_bounds);
      CHECK(std::fabs(far.measured.to_double() - 1.0) < near);
    }
  }

  TEST_CASE("lemma inequalities") {
    for (unsigned long n = 1; n <= 100; ++n) {
      CAPTURE(n);
      CHECK(check_lemma_ratio(n).ok);
      for (unsigned long k = 1; k <= 5; ++k) CHECK(check_lemma_qnk(n, k).ok);
      for (const Rational& R : default_rho_grid()) CHECK(check_pochhammer_bounds(R, n).ok);
    }
    CHECK(check_lemma_qnk(1, 1).ok);
    CHECK(check_rho_signs(100, default_rho_grid()).ok);
    CHECK_THROWS(check_rho_signs(8, default_rho_grid()));
    CHECK(check_weak_bound(100).ok);
    for (unsigned long n = 1; n <= 50; ++n) CHECK(check_pin_over_pi(n).ok);
  }

  TEST_CASE("rho is symmetric in R and 1 - R") {
    for (const Rational& R : default_rho_grid()) {
      for (unsigned long k = 6; k <= 30; ++k) {
        CHECK(rho(R, k) == rho(Rational(1) - R, k));
        CHECK(rho(R, k) > Rational(0));
      }
      for (unsigned long k = 8; k <= 30; ++k) CHECK(rho_tilde(R, k) < Rational(0));
    }
  }

  TEST_CASE("d_n tracks e_n") {
    const VerificationRow d1 = check_dn(1);
    CHECK(rel(d1.measured.to_double(), 0.3216291293) < 1e-9);
    for (unsigned long n = 1; n <= 100; ++n) {
      const VerificationRow d = check_dn(n);
      CHECK(d.in_bounds);
      CHECK(std::fabs(d.measured.to_double() - measure_e(n).measured.to_double()) < 1e-12);
    }
  }

  TEST_CASE("h_n from the Stirling form") {
    // Oracle values computed independently with arbitrary precision Pochhammer symbols.
    const std::pair<unsigned long, double> oracle[] = {
        {1, -0.0015207569783609},   {2, -0.00102171766517329}, {3, -0.000737082246224699},
        {4, -0.000570391961825851}, {5, -0.000463374445894751}, {10, -0.000236746753804457},
        {100, -2.39359560713232e-5},
    };
    for (const auto& [n, value] : oracle) {
      CAPTURE(n);
      const VerificationRow h = check_lemma_stirling_form(n);
      CHECK(rel(h.measured.to_double(), value) < 1e-12);
      // The stated interval (-0.0024, -0.0005) holds only while h_n stays below -0.0005.
      CHECK(h.in_bounds == (value < -0.0005));
    }
  }

  TEST_CASE("bounds table") {
    CHECK(bounds_for("e").lower == Rational(3216, 10000));
    CHECK(bounds_for("delta").upper == Rational(8429, 1000000));
    CHECK(bounds_for("theta").upper == Rational(1));
    CHECK_THROWS(bounds_for("nope"));
  }
}
