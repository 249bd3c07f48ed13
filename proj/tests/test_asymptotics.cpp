#include <doctest.h>

#include <cmath>
#include <iostream>

#include "relab/asymptotics.hpp"
#include "relab/catalog.hpp"
#include "relab/numeric/serialize.hpp"
#include "relab/series.hpp"
#include "test_util.hpp"

using namespace relab;

namespace {

const Rational kS(13591409, 545140134);
const Rational kEps = Rational(1) / Rational(53360).pow(3);

}  // namespace

TEST_SUITE("asymptotics") {
  TEST_CASE("ratio coefficients of the Chudnovsky series") {
    const PowerSeries b = ratio_coeffs(get_series(7), 4);
    const Rational S = kS;
    CHECK(b == PowerSeries({1, Rational(-1, 2), Rational(5, 36) - S, Rational(5, 72) - S / 2 + S * S,
                            Rational(5, 72) - Rational(23, 36) * S + Rational(3, 2) * S * S - S * S * S}));
    // Square at order 3 by explicit convolution.
    const PowerSeries b3 = b.with_order(3);
    const PowerSeries sq = ps_mul(b3, b3);
    CHECK(sq[0] == 1);
    CHECK(sq[1] == 2 * b3[1]);
    CHECK(sq[2] == 2 * b3[2] + b3[1] * b3[1]);
    CHECK(sq[3] == 2 * b3[3] + 2 * b3[1] * b3[2]);
  }

  TEST_CASE("b_0 = 1 and b_1 = -1/2 for every series") {
    for (const auto& s : list_series()) {
      const PowerSeries b = ratio_coeffs(s, 6);
      CHECK(b[0] == 1);
      CHECK(b[1] == Rational(-1, 2));
    }
  }

  TEST_CASE("ratio coefficients match the exact term ratio at large n") {
    const SeriesParams& s = get_series(23);
    const PowerSeries b = ratio_coeffs(s, 4);
    for (long n : {1000L, 10000L, 1000000L}) {
      const Rational exact = term_ratio(s, static_cast<unsigned long>(n)) / s.Z;
      const Rational nn(n);
      const Rational approx = b.with_order(3).evaluate_at_inverse(nn);
      // Remainder is b_4/n^4 + O(n^-5).
      const Rational rem = (exact - approx) * nn.pow(4);
      CHECK(std::fabs(rem.to_double() - b[4].to_double()) < 1.0 / static_cast<double>(n));
    }
  }

  TEST_CASE("tail coefficients of the Chudnovsky series") {
    const PowerSeries a2 = tail_coeffs(get_series(7), 2);
    CHECK(a2[0] == 1);
    CHECK(a2[1] == Rational::parse("1/303862746112002"));
    CHECK(a2[2] == Rational::parse("-62186213362465/15388761412454497761254741334"));
    const PowerSeries a4 = tail_coeffs(get_series(7), 4);
    CHECK(a4[3] == Rational::parse("20630598257083699331942595295/4676071302050834345503446765524996702890668"));
    CHECK(a4[4] == Rational::parse("-1933230018398723806508418321549998750727169/"
                                   "405966819101911798225167895714948764118181484848996742096"));
    // Closed forms in S and eps.
    CHECK(a2[1] == kEps / (2 * (Rational(1) + kEps)));
    CHECK(a2[2] == kS * kEps / (Rational(1) + kEps) -
                       (23 * kEps - 4 * kEps * kEps) / (36 * (Rational(1) + kEps) * (Rational(1) + kEps)));
    // log(1 + a_1/n + a_2/n^2) = a_1/n + (a_2 - a_1^2/2)/n^2 + ...
    PowerSeries x = a2;
    x[0] = 0;
    CHECK(ps_log1p(x) == PowerSeries({0, a2[1], a2[2] - a2[1] * a2[1] / 2}));
    PowerSeries x3 = tail_coeffs(get_series(7), 3);
    x3[0] = 0;
    PowerSeries back = ps_exp(ps_log1p(x3));
    CHECK(back == tail_coeffs(get_series(7), 3));
  }

  TEST_CASE("tail recursion is the shift identity") {
    // tail(n-1) = t_{n-1} + tail(n)  <=>  shift(a) = (1 - Z) + Z b a
    for (const auto& s : list_series()) {
      CAPTURE(s.id);
      const PowerSeries a = tail_coeffs(s, 8);
      const PowerSeries b = ratio_coeffs(s, 8);
      const PowerSeries rhs = PowerSeries::constant(Rational(1) - s.Z, 8) + ps_mul(b, a) * s.Z;
      CHECK(ps_shift_expand(a) == rhs);
    }
  }

  TEST_CASE("tail coefficients against an exact tail at n = 10^4") {
    const SeriesParams& s = get_series(7);
    const PowerSeries a = tail_coeffs(s, 7);
    const unsigned long n = 10000;
    Rational sum(1), prod(1);
    for (unsigned long j = 1; j <= 20; ++j) {
      prod *= term_ratio(s, n + j);
      sum += prod;
    }
    const Rational measured = (Rational(1) + kEps) * sum;
    const Rational predicted = a.with_order(6).evaluate_at_inverse(Rational(static_cast<long>(n)));
    const Rational tolerance = 2 * a[7].abs() / Rational(static_cast<long>(n)).pow(7);
    CHECK((measured - predicted).abs() < tolerance);
  }

  TEST_CASE("a_k magnitudes and growth") {
    const SeriesParams& s = get_series(7);
    const std::vector<BigFloat> f = tail_coeffs_float(s, 1000, 256);
    CHECK(abs(f[10]).to_scientific(5) == "6.6157e-15");
    CHECK(f[100].to_scientific(5) == "-1.4296e+05");
    CHECK(abs(f[1000]).to_scientific(5) == "1.3214e+1049");
    const PowerSeries exact = tail_coeffs(s, 200);
    const std::vector<BigFloat> fine = tail_coeffs_float(s, 200, 320);
    const double log_q = std::log(3 * std::log(53360.0));
    std::vector<unsigned long> exceptions;
    std::vector<unsigned long> dips;
    for (unsigned long k = 1; k <= 200; ++k) {
      CHECK(relative_difference(BigFloat(exact[k], 256), f[k]) < 1e-40);
      CHECK(relative_difference(fine[k], f[k]) < 1e-40);
      if (exact[k].sign() * exact[k - 1].sign() >= 0) exceptions.push_back(k);
      if (k >= 50) {
        // |a_k| q^k / k!
        const double log_ratio = std::log(std::fabs(f[k].to_double())) + k * log_q - std::lgamma(k + 1.0);
        CHECK(log_ratio > std::log(1e-4));
        CHECK(log_ratio < std::log(1e-1));
        if (log_ratio < std::log(1e-2)) dips.push_back(k);
      }
    }
    CHECK(exceptions.size() < 20);
    // The ratio drops below 1e-2 only near a break in the sign alternation.
    for (unsigned long k : dips) {
      CAPTURE(k);
      bool near = k <= 52;
      for (unsigned long e : exceptions) near = near || (k + 6 >= e && k <= e + 6);
      CHECK(near);
    }
    MESSAGE("sign alternation exceptions for k <= 200: " << exceptions.size() << ", ratio dips below 1e-2: "
                                                          << dips.size());
  }

  TEST_CASE("Pochhammer sigma") {
    const PochhammerSigma a = pochhammer_sigma(Rational(1, 6));
    CHECK(a.sigma1 == Rational(-19, 72));
    CHECK(a.sigma3 == Rational(131, 15552));
    CHECK(a.sigma5 == Rational(-3337, 1399680));
    const PochhammerSigma h = pochhammer_sigma(Rational(1, 2));
    CHECK(h.sigma1 == Rational(-3, 8));
    CHECK(h.sigma3 == Rational(1, 64));
    CHECK(h.sigma5 == Rational(-3, 640));
    for (const Rational& R : {Rational(1, 10), Rational(1, 3), Rational(2, 7)}) {
      const PochhammerSigma x = pochhammer_sigma(R);
      const PochhammerSigma y = pochhammer_sigma(Rational(1) - R);
      CHECK(x.sigma1 == y.sigma1);
      CHECK(x.sigma3 == y.sigma3);
      CHECK(x.sigma5 == y.sigma5);
      const std::vector<Rational> gen = pochhammer_sigma_series(R, 8);
      CHECK(gen[1] == x.sigma1);
      CHECK(gen[2] == 0);
      CHECK(gen[3] == x.sigma3);
      CHECK(gen[4] == 0);
      CHECK(gen[5] == x.sigma5);
      CHECK(gen[6] == 0);
      CHECK(gen[8] == 0);
    }
    CHECK_THROWS(pochhammer_sigma(Rational(0)));
    CHECK_THROWS(pochhammer_sigma(Rational(1)));
    CHECK_THROWS(pochhammer_sigma(Rational(3, 2)));
    CHECK(bernoulli_number(1) == Rational(-1, 2));
    CHECK(bernoulli_number(12) == Rational(-691, 2730));
  }

  TEST_CASE("Stirling envelope") {
    const StirlingEnvelope one = stirling_envelope(1, 128);
    // r_1 = ln(e / sqrt(2 pi))
    BigFloat two_pi = pi(128) * BigFloat(2, 128);
    const BigFloat r1 = BigFloat(1, 128) - log(two_pi) * BigFloat(Rational(1, 2), 128);
    CHECK(one.lower < r1);
    CHECK(r1 < one.upper);
    const StirlingEnvelope ten = stirling_envelope(10, 128);
    const Rational width = ten.upper_exact - ten.lower_exact;
    CHECK(width == Rational(1) / (Rational(1680) * Rational(10).pow(7)));
    CHECK(width > Rational(0));
    CHECK(width < Rational(2, 10000000000L));
    for (unsigned long n = 1; n <= 60; ++n) {
      BigFloat lg(192);
      mpfr_lngamma(lg.get(), BigFloat(static_cast<long>(n + 1), 192).get(), MPFR_RNDN);
      const BigFloat nn(static_cast<long>(n), 192);
      const BigFloat r = lg - (log(pi(192) * BigFloat(2, 192) * nn) * BigFloat(Rational(1, 2), 192) +
                               nn * (log(nn) - BigFloat(1, 192)));
      const StirlingEnvelope env = stirling_envelope(n, 192);
      CHECK(env.lower < r);
      CHECK(r < env.upper);
    }
    CHECK_THROWS(stirling_envelope(0));
  }

  TEST_CASE("expansion constants") {
    const ExpansionReport c = expansion(get_series(7));
    CHECK(c.A0 == SurdPiConstant(Rational(106720, 1672209), 10005));
    CHECK(c.a0_str() == "106720/1672209*sqrt(10005*pi)");
    REQUIRE(c.exponent_coeffs.size() == 3);
    CHECK(c.exponent_coeffs[0] == Rational::parse("-1781843197433/7456754505816"));
    CHECK(c.exponent_coeffs[1] == Rational::parse("-1080096011925710088395/3475199235000451148614116"));
    CHECK(c.exponent_coeffs[2] ==
          Rational::parse("1310485187935583963485460802564780329/155482245325187582131326612761170191936"));
    // A_1 = a_1 - 19/72 + S
    const PowerSeries a = tail_coeffs(get_series(7), 2);
    CHECK(c.exponent_coeffs[0] == a[1] - Rational(19, 72) + kS);
    CHECK(c.exponent_coeffs[1] == a[2] - a[1] * a[1] / 2 - kS * kS / 2);

    const ExpansionReport one = expansion(get_series(1));
    CHECK(one.A0 == SurdPiConstant(Rational(5, 18), 15));
    CHECK(one.exponent_coeffs ==
          std::vector<Rational>{Rational(7, 216), Rational(-80, 729), Rational(23129, 3779136), Rational(47168, 531441)});

    const ExpansionReport r = expansion(get_series(23));
    CHECK(r.A0 == SurdPiConstant(Rational(9801, 1820), 1));
    CHECK(r.exponent_coeffs[0] == Rational(-1793359, 6624800));
    CHECK(r.exponent_coeffs[1] == Rational::parse("-15333610991/17555190016000"));

    CHECK(expansion(get_series(30)).exponent_coeffs[0] == Rational(-49, 72));

    const ExpansionReport h = expansion(get_series(33));
    CHECK(h.a0_pi_power == Rational(-3, 2));
    CHECK(h.A0 == SurdPiConstant(Rational(1), 1));
    CHECK(h.output_form == OutputForm::ReciprocalDifference);
    BigFloat p = pi(128);
    CHECK(relative_difference(h.a0_value(128), BigFloat(1, 128) / (p * sqrt(p))) < 1e-35);
  }

  TEST_CASE("all catalog expansions equal the published coefficients") {
    const nlohmann::json golden = nlohmann::json::parse(testing::read_file(testing::data_path("expansion_golden.json")));
    REQUIRE(golden.size() == 36);
    for (const auto& row : golden) {
      const int id = row.at("id").get<int>();
      CAPTURE(id);
      const ExpansionReport rep = expansion(get_series(id));
      CHECK(rep.A0.coeff() == Rational::parse(row.at("A0").at("coeff").get<std::string>()));
      CHECK(rep.A0.radicand() == row.at("A0").at("radicand").get<std::uint64_t>());
      CHECK(rep.a0_pi_power == Rational::parse(row.at("A0").at("pi_power").get<std::string>()));
      const auto coeffs = row.at("coeffs").get<std::vector<std::string>>();
      REQUIRE(coeffs.size() == rep.exponent_coeffs.size());
      for (std::size_t j = 0; j < coeffs.size(); ++j) {
        CHECK(rep.exponent_coeffs[j] == Rational::parse(coeffs[j]));
      }
      CHECK(get_series(id).theta_threshold == row.at("n0").get<int>());
      CHECK(to_string(rep.output_form) == row.at("output_form").get<std::string>());
    }
  }

  TEST_CASE("order override and report encodings") {
    const ExpansionReport six = expansion(get_series(7), 6);
    CHECK(six.exponent_coeffs.size() == 6);
    CHECK(six.catalog_order == 3);
    const nlohmann::json j = expansion_json(six);
    CHECK(j.at("beyond_catalog")[2] == false);
    CHECK(j.at("beyond_catalog")[3] == true);
    CHECK(j.at("exponent_coeffs")[0] == "-1781843197433/7456754505816");
    CHECK(j.at("A0").at("pi_power") == "1/2");
    const std::string csv = expansion_csv(six);
    CHECK(csv.rfind("key,value,beyond_catalog\n", 0) == 0);
    CHECK(csv.find("A_4,") != std::string::npos);
    CHECK(csv.find("A0,106720/1672209*sqrt(10005*pi),false") != std::string::npos);
    // The first m coefficients do not depend on the requested order.
    for (int j2 = 0; j2 < 3; ++j2) CHECK(six.exponent_coeffs[j2] == expansion(get_series(7)).exponent_coeffs[j2]);
    CHECK(expansion(get_series(33)).a0_str() == "1/1*pi^(-3/2)");
    CHECK_THROWS(expansion(get_series(7), 0));
  }
}
