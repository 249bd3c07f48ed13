#pragma once

// JSON encodings for the exact numeric types:
//   Rational        -> "p/q"
//   PowerSeries     -> ["p/q", ...]
//   SurdPiConstant  -> {"coeff": "p/q", "radicand": d}

#include <json.hpp>

#include "relab/numeric/power_series.hpp"
#include "relab/numeric/rational.hpp"
#include "relab/numeric/surd.hpp"

namespace relab {

inline void to_json(nlohmann::json& j, const Rational& r) { j = r.str(); }
inline void from_json(const nlohmann::json& j, Rational& r) { r = Rational::parse(j.get<std::string>()); }

inline void to_json(nlohmann::json& j, const PowerSeries& s) { j = s.coefficients(); }
inline void from_json(const nlohmann::json& j, PowerSeries& s) {
  s = PowerSeries(j.get<std::vector<Rational>>());
}

inline void to_json(nlohmann::json& j, const SurdPiConstant& c) {
  j = nlohmann::json{{"coeff", c.coeff().str()}, {"radicand", c.radicand()}};
}
inline void from_json(const nlohmann::json& j, SurdPiConstant& c) {
  c = SurdPiConstant(Rational::parse(j.at("coeff").get<std::string>()), j.at("radicand").get<std::uint64_t>());
}

}  // namespace relab
