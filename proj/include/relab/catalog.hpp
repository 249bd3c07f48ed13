#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "relab/numeric/rational.hpp"
#include "relab/numeric/surd.hpp"

namespace relab {

/// Which quantity the expansion of a series describes.
enum class OutputForm {
  PiDifference,          ///< pi_i(n) - pi
  ReciprocalDifference,  ///< 1/pi - 1/pi_i(n); the Z = -1 series converges too slowly for the other form.
};

std::string to_string(OutputForm form);

/// One rational hypergeometric series for 1/pi:
///
///   1/pi = P * sum_k [(1/2)_k (R)_k (1-R)_k / k!^3] (k + S) Z^k
///
/// together with the order m of its published exponent expansion and the
/// index n0 from which the last coefficient's factor Theta(n) lies in (0, 1).
struct SeriesParams {
  int id = 0;
  Rational R;
  Rational S;
  Rational Z;
  Surd P;
  int expansion_order = 0;
  int theta_threshold = 0;
  OutputForm output_form = OutputForm::PiDifference;
};

inline constexpr int kSeriesCount = 36;
inline constexpr int kChudnovskyId = 7;
inline constexpr int kRamanujan396Id = 23;

/// Catalog row for 1 <= id <= 36; throws std::out_of_range otherwise.
const SeriesParams& get_series(int id);

/// All rows in id order.
const std::vector<SeriesParams>& list_series();

/// Accepts a numeric id or one of the aliases "chudnovsky" and "ramanujan-396".
const SeriesParams& resolve_series(std::string_view selector);

/// Array of {id, R, S, Z, P_coeff, P_radicand, m, n0, output_form}.
nlohmann::json catalog_json();
SeriesParams series_from_json(const nlohmann::json& row);

}  // namespace relab
