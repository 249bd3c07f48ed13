#include "relab/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "relab/asymptotics.hpp"
#include "relab/catalog.hpp"
#include "relab/errors.hpp"
#include "relab/numeric/serialize.hpp"
#include "relab/series.hpp"
#include "relab/verifier.hpp"

namespace relab {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr unsigned long kAkTableMax = 2000;
constexpr unsigned long kAkExactBelow = 440;

std::string g15(const BigFloat& x) {
  char buf[128];
  mpfr_snprintf(buf, sizeof buf, "%.15Rg", x.get());
  return buf;
}

std::string g15(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string sci15(const BigFloat& x) {
  char buf[128];
  mpfr_snprintf(buf, sizeof buf, "%.14Re", x.get());
  return buf;
}

// Runs task(i) for i in [0, count) on `jobs` threads. Exceptions are rethrown
// in index order so the reported failure does not depend on scheduling.
void run_pool(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void require_format(const std::string& format) {
  if (format != "csv" && format != "json") {
    throw UsageError("--format must be csv or json");
  }
}

const SeriesParams& select_series(const std::string& selector) {
  try {
    return resolve_series(selector);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

std::string cmd_catalog(const std::string& format) {
  if (format == "json") {
    return catalog_json().dump(1) + "\n";
  }
  std::ostringstream out;
  out << "id,R,S,Z,P_coeff,P_radicand,m,n0,output_form\n";
  for (const auto& s : list_series()) {
    out << s.id << ',' << s.R.str() << ',' << s.S.str() << ',' << s.Z.str() << ',' << s.P.coeff().str() << ','
        << s.P.radicand() << ',' << s.expansion_order << ',' << s.theta_threshold << ',' << to_string(s.output_form)
        << '\n';
  }
  return out.str();
}

std::string cmd_pi(const SeriesParams& s, std::optional<unsigned long> n_opt, std::optional<unsigned> digits_opt,
                   std::optional<unsigned> print_digits, const std::string& format) {
  if (n_opt.has_value() == digits_opt.has_value()) {
    throw UsageError("pi needs exactly one of --n and --digits");
  }
  if (s.output_form == OutputForm::ReciprocalDifference) {
    throw UsageError("series " + std::to_string(s.id) +
                     " (Z = -1) converges too slowly to certify digits of pi; it only has a reciprocal-side expansion");
  }
  unsigned long n = 0;
  unsigned decimals = 0;
  if (digits_opt) {
    if (*digits_opt == 0) throw UsageError("--digits must be positive");
    decimals = *digits_opt;
    n = s.id == kChudnovskyId ? terms_needed(decimals) : terms_needed_for(s, decimals);
  } else {
    if (*n_opt == 0) throw UsageError("--n must be positive");
    n = *n_opt;
    decimals = print_digits.value_or(default_digits());
  }
  const ApproxResult r = pi_approx(s, n, decimals + 2);
  const std::string value = r.value.to_fixed(static_cast<int>(decimals));
  const std::string bound = r.certified_error_bound.to_scientific(6);
  if (format == "json") {
    nlohmann::json j{{"series_id", s.id}, {"n", n}, {"decimals", decimals}, {"pi_n", value},
                     {"certified_error_bound", bound}};
    return j.dump(1) + "\n";
  }
  std::ostringstream out;
  out << "series: " << s.id << "\n"
      << "n: " << n << "\n"
      << "pi_n: " << value << "\n"
      << "certified_error_bound: " << bound << "\n";
  return out.str();
}

std::string cmd_expand(const SeriesParams& s, std::optional<int> order, const std::string& format) {
  if (order && *order < 1) throw UsageError("--order must be at least 1");
  const ExpansionReport report = expansion(s, order);
  if (format == "csv") {
    return expansion_csv(report);
  }
  return expansion_json(report).dump(1) + "\n";
}

struct VerifyOutcome {
  std::string text;
  bool violation = false;
};

VerifyOutcome cmd_verify(const SeriesParams& s, const std::string& quantity, unsigned long n_min, unsigned long n_max,
                         unsigned digits, unsigned jobs, const std::string& format) {
  if (quantity != "e" && quantity != "delta" && quantity != "theta" && quantity != "d" && quantity != "h") {
    throw UsageError("--quantity must be one of e, delta, theta, d, h");
  }
  if (quantity != "theta" && s.id != kChudnovskyId) {
    throw UsageError("quantity " + quantity + " is defined for the Chudnovsky series (7) only");
  }
  if (n_min == 0 || n_max < n_min) throw UsageError("need 1 <= --n-min <= --n-max");
  std::vector<VerificationRow> rows(n_max - n_min + 1);
  run_pool(rows.size(), jobs, [&](std::size_t i) {
    const unsigned long n = n_min + i;
    if (quantity == "e") rows[i] = measure_e(n, digits);
    else if (quantity == "delta") rows[i] = measure_delta(n, digits);
    else if (quantity == "d") rows[i] = check_dn(n, digits);
    else if (quantity == "h") rows[i] = check_lemma_stirling_form(n, digits);
    else rows[i] = measure_theta(s, n, digits);
  });
  VerifyOutcome outcome;
  for (const auto& r : rows) {
    if (r.enforced && !r.in_bounds) outcome.violation = true;
  }
  std::ostringstream out;
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      arr.push_back({{"series_id", r.series_id},
                     {"n", r.n},
                     {"quantity", r.quantity},
                     {"value", g15(r.measured)},
                     {"lower", r.lower.str()},
                     {"upper", r.upper.str()},
                     {"in_bounds", r.in_bounds},
                     {"enforced", r.enforced},
                     {"dual_rel_diff", r.dual_rel_diff}});
    }
    out << arr.dump(1) << "\n";
  } else {
    out << "n,value,lower,upper,in_bounds\n";
    for (const auto& r : rows) {
      out << r.n << ',' << g15(r.measured) << ',' << g15(r.lower.to_double()) << ',' << g15(r.upper.to_double()) << ','
          << (r.in_bounds ? "true" : "false") << '\n';
    }
  }
  outcome.text = out.str();
  return outcome;
}

VerifyOutcome cmd_check_lemmas(unsigned long k_max, unsigned digits, unsigned jobs) {
  struct Suite {
    std::string name;
    std::size_t count;
    std::function<CheckResult(std::size_t)> check;
  };
  auto row_check = [](const VerificationRow& r) {
    if (r.in_bounds) return CheckResult{true, ""};
    std::ostringstream why;
    why << r.quantity << "_" << r.n << "=" << g15(r.measured) << " outside (" << g15(r.lower.to_double()) << ", "
        << g15(r.upper.to_double()) << ")";
    return CheckResult{false, why.str()};
  };
  const Rational pochhammer_R[] = {Rational(1, 6), Rational(1, 4), Rational(1, 3), Rational(1, 2)};
  const std::vector<Suite> suites = {
      {"lemma_ratio (n=1..200)", 200, [](std::size_t i) { return check_lemma_ratio(i + 1); }},
      {"lemma_qnk (n,k=1..30)", 900, [](std::size_t i) { return check_lemma_qnk(i / 30 + 1, i % 30 + 1); }},
      {"lemma_stirling_form (n=1..100)", 100,
       [&](std::size_t i) { return row_check(check_lemma_stirling_form(i + 1, digits)); }},
      {"pochhammer_bounds (R=1/6,1/4,1/3,1/2; n=1..50)", 200,
       [&](std::size_t i) { return check_pochhammer_bounds(pochhammer_R[i / 50], i % 50 + 1, digits + 10); }},
      {"rho_signs (k<=" + std::to_string(k_max) + ", 7-point R grid)", 1,
       [&](std::size_t) { return check_rho_signs(k_max, default_rho_grid()); }},
      {"weak_bound (n=1..50)", 1, [&](std::size_t) { return check_weak_bound(50, digits); }},
      {"pin_over_pi (n=1..20)", 20, [&](std::size_t i) { return check_pin_over_pi(i + 1, digits); }},
      {"dn (n=1..100)", 100, [&](std::size_t i) { return row_check(check_dn(i + 1, digits)); }},
  };
  VerifyOutcome outcome;
  std::ostringstream out;
  for (const auto& suite : suites) {
    std::vector<CheckResult> results(suite.count);
    run_pool(suite.count, jobs, [&](std::size_t i) { results[i] = suite.check(i); });
    std::size_t failures = 0;
    const CheckResult* first = nullptr;
    for (const auto& r : results) {
      if (!r.ok) {
        ++failures;
        if (!first) first = &r;
      }
    }
    if (first) {
      outcome.violation = true;
      out << "FAIL " << suite.name << ": " << failures << " of " << suite.count << " cases; first: " << first->detail
          << "\n";
    } else {
      out << "PASS " << suite.name << "\n";
    }
  }
  outcome.text = out.str();
  return outcome;
}

std::string cmd_ak_table(unsigned long k_max, const std::string& format) {
  if (k_max < 1 || k_max > kAkTableMax) {
    throw UsageError("--k-max must be in 1..2000");
  }
  const SeriesParams& s = get_series(kChudnovskyId);
  const bool json = format == "json";
  // JSON carries every a_k exactly; CSV only the rows printed as rationals.
  const std::size_t exact_order = json ? k_max : std::min<unsigned long>(k_max, kAkExactBelow - 1);
  const PowerSeries exact = tail_coeffs(s, exact_order);
  const std::vector<BigFloat> coarse = tail_coeffs_float(s, k_max, 256);
  const std::vector<BigFloat> fine = tail_coeffs_float(s, k_max, 320);
  const BigFloat::Precision bits = 128;
  // growth = |a_k| q^k / k! with q = ln(53360^3)
  const BigFloat log_q = log(log(BigFloat(53360, bits)) * BigFloat(3, bits));

  nlohmann::json arr = nlohmann::json::array();
  std::ostringstream out;
  if (!json) out << "k,a_k,abs_a_k,sign_alternates,growth_ratio\n";
  BigFloat log_k_fact(0, bits);
  for (unsigned long k = 1; k <= k_max; ++k) {
    log_k_fact += log(BigFloat(static_cast<long>(k), bits));
    if (relative_difference(coarse[k], fine[k]) > 1e-30) {
      throw PrecisionError("a_" + std::to_string(k) + " unstable between 256 and 320 bits");
    }
    // Exact values take precedence for sign and magnitude where available.
    const BigFloat value = k <= exact_order ? BigFloat(exact[k], bits) : fine[k].rounded(bits);
    const int prev_sign = k - 1 <= exact_order ? exact[k - 1].sign() : fine[k - 1].sign();
    const bool alternates = value.sign() * prev_sign < 0;
    const BigFloat magnitude = abs(value);
    const BigFloat growth = exp(log(magnitude) + log_q * BigFloat(static_cast<long>(k), bits) - log_k_fact);
    if (json) {
      arr.push_back({{"k", k},
                     {"a_k", exact[k].str()},
                     {"abs_a_k", sci15(magnitude)},
                     {"sign_alternates", alternates},
                     {"growth_ratio", g15(growth)}});
    } else {
      out << k << ',' << (k < kAkExactBelow ? exact[k].str() : sci15(value)) << ',' << sci15(magnitude) << ','
          << (alternates ? "true" : "false") << ',' << g15(growth) << '\n';
    }
  }
  if (json) return arr.dump(1) + "\n";
  return out.str();
}

std::string cmd_terms_needed(const SeriesParams& s, unsigned digits) {
  if (digits == 0) throw UsageError("--digits must be positive");
  if (s.output_form == OutputForm::ReciprocalDifference) {
    throw UsageError("series " + std::to_string(s.id) + " has |Z| = 1; no finite term plan exists");
  }
  const unsigned long n = s.id == kChudnovskyId ? terms_needed(digits) : terms_needed_for(s, digits);
  return std::to_string(n) + "\n";
}

}  // namespace

unsigned default_digits() {
  if (const char* env = std::getenv("RELAB_DEFAULT_DIGITS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 1000000) {
      return static_cast<unsigned>(v);
    }
  }
  return 30;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ramanujan-type series for 1/pi: evaluation, expansions and bound verification", "relab"};
  app.require_subcommand(1);

  std::string format;
  std::string output;
  unsigned jobs = 1;
  std::string selector;

  // Subcommands share `format`, so defaults are filled in after parsing.
  std::vector<std::pair<CLI::App*, std::string>> default_formats;
  auto add_common = [&](CLI::App* sub, const std::string& default_format) {
    sub->add_option("--format", format, "output format (default " + default_format + ")");
    default_formats.emplace_back(sub, default_format);
    sub->add_option("--output", output, "write to this file instead of stdout");
  };

  auto* catalog = app.add_subcommand("catalog", "list the 36 catalogued series");
  add_common(catalog, "csv");

  std::optional<unsigned long> pi_n;
  std::optional<unsigned> pi_digits;
  std::optional<unsigned> print_digits;
  auto* pi_cmd = app.add_subcommand("pi", "evaluate pi_n with a certified error bound");
  pi_cmd->add_option("--series", selector, "id 1..36, chudnovsky or ramanujan-396")->default_val("chudnovsky");
  pi_cmd->add_option("--n", pi_n, "number of terms");
  pi_cmd->add_option("--digits", pi_digits, "decimal places wanted; picks n");
  pi_cmd->add_option("--print-digits", print_digits, "decimal places to print with --n");
  add_common(pi_cmd, "text");

  std::optional<int> order;
  auto* expand = app.add_subcommand("expand", "exact truncation-error expansion of a series");
  expand->add_option("--series", selector, "id 1..36, chudnovsky or ramanujan-396")->required();
  expand->add_option("--order", order, "number of exponent coefficients (default: catalog m)");
  add_common(expand, "json");

  std::string quantity;
  unsigned long n_min = 1;
  unsigned long n_max = 0;
  std::optional<unsigned> digits_opt;
  auto* verify = app.add_subcommand("verify", "measure e, delta, d, h or theta over a range of n");
  verify->add_option("--series", selector, "id 1..36, chudnovsky or ramanujan-396")->default_val("chudnovsky");
  verify->add_option("--quantity", quantity, "e, delta, theta, d or h")->required();
  verify->add_option("--n-min", n_min, "first n")->default_val(1);
  verify->add_option("--n-max", n_max, "last n")->required();
  verify->add_option("--digits", digits_opt, "working digits of the measured values");
  verify->add_option("--jobs", jobs, "worker threads")->default_val(1);
  add_common(verify, "csv");

  unsigned long k_max = 100;
  auto* lemmas = app.add_subcommand("check-lemmas", "run every inequality check");
  lemmas->add_option("--k-max", k_max, "largest k for the rho sign checks")->default_val(100);
  lemmas->add_option("--digits", digits_opt, "working digits");
  lemmas->add_option("--jobs", jobs, "worker threads")->default_val(1);
  lemmas->add_option("--output", output, "write to this file instead of stdout");

  unsigned long ak_max = 200;
  auto* ak = app.add_subcommand("ak-table", "tail coefficients a_k of the Chudnovsky series");
  ak->add_option("--k-max", ak_max, "largest k (at most 2000)")->default_val(200);
  add_common(ak, "csv");

  unsigned tn_digits = 0;
  auto* tn = app.add_subcommand("terms-needed", "number of terms for a given accuracy");
  tn->add_option("--digits", tn_digits, "decimal digits")->required();
  tn->add_option("--series", selector, "id 1..36, chudnovsky or ramanujan-396")->default_val("chudnovsky");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  for (const auto& [sub, fallback] : default_formats) {
    if (sub->parsed() && format.empty()) format = fallback;
  }
  const unsigned digits = digits_opt.value_or(default_digits());
  std::string text;
  bool violation = false;
  try {
    if (catalog->parsed()) {
      require_format(format);
      text = cmd_catalog(format);
    } else if (pi_cmd->parsed()) {
      if (format != "text" && format != "json") throw UsageError("--format must be text or json");
      text = cmd_pi(select_series(selector), pi_n, pi_digits, print_digits, format);
    } else if (expand->parsed()) {
      require_format(format);
      text = cmd_expand(select_series(selector), order, format);
    } else if (verify->parsed()) {
      require_format(format);
      const VerifyOutcome o = cmd_verify(select_series(selector), quantity, n_min, n_max, digits, jobs, format);
      text = o.text;
      violation = o.violation;
    } else if (lemmas->parsed()) {
      if (k_max < 9) throw UsageError("--k-max must be at least 9");
      const VerifyOutcome o = cmd_check_lemmas(k_max, digits, jobs);
      text = o.text;
      violation = o.violation;
    } else if (ak->parsed()) {
      require_format(format);
      text = cmd_ak_table(ak_max, format);
    } else if (tn->parsed()) {
      text = cmd_terms_needed(select_series(selector), tn_digits);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BoundViolation& e) {
    err << "bound violation: " << e.what() << "\n";
    return kExitBoundViolation;
  } catch (const PrecisionError& e) {
    err << "precision failure: " << e.what() << "\n";
    return kExitPrecisionFailure;
  } catch (const std::logic_error& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (output.empty()) {
    out << text;
  } else {
    std::ofstream file(output, std::ios::binary);
    if (!file) {
      err << "usage error: cannot write " << output << "\n";
      return kExitUsage;
    }
    file << text;
  }
  if (violation) {
    err << "bound violation: at least one checked value is out of bounds\n";
    return kExitBoundViolation;
  }
  return kExitOk;
}

}  // namespace relab
