#include "relab/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace relab {

namespace {

struct Row {
  int id;
  const char* R;
  const char* S;
  const char* Z;
  const char* p_coeff;
  std::uint64_t p_radicand;
  int m;
  int n0;
  OutputForm form;
};

// Grouped by R: 1/6 (1-11), 1/4 (12-23), 1/3 (24-32), 1/2 (33-36).
constexpr Row kRows[] = {
    {1, "1/6", "8/63", "-64/125", "21/25", 15, 4, 25, OutputForm::PiDifference},
    {2, "1/6", "15/154", "-27/512", "77/32", 2, 4, 4, OutputForm::PiDifference},
    {3, "1/6", "25/342", "-1/512", "57/32", 6, 3, 1, OutputForm::PiDifference},
    {4, "1/6", "31/506", "-9/64000", "759/800", 30, 3, 1, OutputForm::PiDifference},
    {5, "1/6", "263/5418", "-1/512000", "2709/1600", 15, 3, 1, OutputForm::PiDifference},
    {6, "1/6", "10177/261702", "-1/85184000", "43617/96800", 330, 3, 1, OutputForm::PiDifference},
    {7, "1/6", "13591409/545140134", "-1/151931373056000", "90856689/711822400", 10005, 3, 1,
     OutputForm::PiDifference},
    {8, "1/6", "3/28", "27/125", "28/25", 5, 5, 4, OutputForm::PiDifference},
    {9, "1/6", "1/11", "4/125", "22/25", 15, 5, 2, OutputForm::PiDifference},
    {10, "1/6", "5/63", "8/1331", "84/121", 33, 5, 2, OutputForm::PiDifference},
    {11, "1/6", "8/133", "64/614125", "2394/7225", 255, 5, 1, OutputForm::PiDifference},
    {12, "1/4", "3/20", "-1/4", "5/2", 1, 5, 12, OutputForm::PiDifference},
    {13, "1/4", "23/260", "-1/324", "65/18", 1, 3, 1, OutputForm::PiDifference},
    {14, "1/4", "1123/21460", "-1/777924", "5365/882", 1, 3, 1, OutputForm::PiDifference},
    {15, "1/4", "8/65", "-256/3969", "65/63", 7, 5, 5, OutputForm::PiDifference},
    {16, "1/4", "3/28", "-1/48", "7/4", 3, 5, 3, OutputForm::PiDifference},
    {17, "1/4", "41/644", "-1/25920", "161/72", 5, 3, 1, OutputForm::PiDifference},
    {18, "1/4", "1/7", "32/81", "14/9", 1, 5, 1, OutputForm::PiDifference},
    {19, "1/4", "1/8", "1/9", "4/3", 3, 5, 3, OutputForm::PiDifference},
    {20, "1/4", "1/10", "1/81", "20/9", 2, 5, 2, OutputForm::PiDifference},
    {21, "1/4", "3/40", "1/2401", "120/49", 3, 5, 1, OutputForm::PiDifference},
    {22, "1/4", "19/280", "1/9801", "140/99", 11, 5, 1, OutputForm::PiDifference},
    {23, "1/4", "1103/26390", "1/96059601", "52780/9801", 2, 5, 1, OutputForm::PiDifference},
    {24, "1/3", "7/51", "-1/16", "17/12", 3, 5, 5, OutputForm::PiDifference},
    {25, "1/3", "53/615", "-1/1024", "205/96", 3, 3, 1, OutputForm::PiDifference},
    {26, "1/3", "827/14151", "-1/250000", "4717/1500", 3, 3, 1, OutputForm::PiDifference},
    {27, "1/3", "1/5", "-9/16", "5/4", 3, 4, 31, OutputForm::PiDifference},
    {28, "1/3", "1/9", "-1/80", "3/4", 15, 5, 3, OutputForm::PiDifference},
    {29, "1/3", "13/165", "-1/3024", "55/36", 7, 3, 1, OutputForm::PiDifference},
    {30, "1/3", "1/6", "1/2", "2/3", 3, 5, 1, OutputForm::PiDifference},
    {31, "1/3", "2/15", "2/27", "20/9", 1, 5, 3, OutputForm::PiDifference},
    {32, "1/3", "4/33", "4/125", "22/15", 3, 5, 3, OutputForm::PiDifference},
    {33, "1/2", "1/4", "-1/1", "2/1", 1, 5, 2, OutputForm::ReciprocalDifference},
    {34, "1/2", "1/6", "-1/8", "3/2", 2, 5, 6, OutputForm::PiDifference},
    {35, "1/2", "1/6", "1/4", "3/2", 1, 5, 4, OutputForm::PiDifference},
    {36, "1/2", "5/42", "1/64", "21/8", 1, 5, 2, OutputForm::PiDifference},
};

std::vector<SeriesParams> build_catalog() {
  std::vector<SeriesParams> out;
  out.reserve(std::size(kRows));
  for (const Row& row : kRows) {
    SeriesParams s;
    s.id = row.id;
    s.R = Rational::parse(row.R);
    s.S = Rational::parse(row.S);
    s.Z = Rational::parse(row.Z);
    s.P = Surd(Rational::parse(row.p_coeff), row.p_radicand);
    s.expansion_order = row.m;
    s.theta_threshold = row.n0;
    s.output_form = row.form;
    out.push_back(std::move(s));
  }
  return out;
}

OutputForm output_form_from_string(const std::string& s) {
  if (s == "PI_DIFFERENCE") {
    return OutputForm::PiDifference;
  }
  if (s == "RECIPROCAL_DIFFERENCE") {
    return OutputForm::ReciprocalDifference;
  }
  throw std::invalid_argument("unknown output form: " + s);
}

}  // namespace

std::string to_string(OutputForm form) {
  return form == OutputForm::PiDifference ? "PI_DIFFERENCE" : "RECIPROCAL_DIFFERENCE";
}

const std::vector<SeriesParams>& list_series() {
  static const std::vector<SeriesParams> catalog = build_catalog();
  return catalog;
}

const SeriesParams& get_series(int id) {
  if (id < 1 || id > kSeriesCount) {
    throw std::out_of_range("series id must be in 1..36, got " + std::to_string(id));
  }
  return list_series()[static_cast<std::size_t>(id - 1)];
}

const SeriesParams& resolve_series(std::string_view selector) {
  std::string key(selector);
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
  if (key == "chudnovsky") {
    return get_series(kChudnovskyId);
  }
  if (key == "ramanujan-396") {
    return get_series(kRamanujan396Id);
  }
  if (key.empty() || !std::all_of(key.begin(), key.end(), [](unsigned char c) { return std::isdigit(c); }) ||
      key.size() > 3) {
    throw std::invalid_argument("unknown series selector: " + std::string(selector));
  }
  return get_series(std::stoi(key));
}

nlohmann::json catalog_json() {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : list_series()) {
    rows.push_back({{"id", s.id},
                    {"R", s.R.str()},
                    {"S", s.S.str()},
                    {"Z", s.Z.str()},
                    {"P_coeff", s.P.coeff().str()},
                    {"P_radicand", s.P.radicand()},
                    {"m", s.expansion_order},
                    {"n0", s.theta_threshold},
                    {"output_form", to_string(s.output_form)}});
  }
  return rows;
}

SeriesParams series_from_json(const nlohmann::json& row) {
  SeriesParams s;
  s.id = row.at("id").get<int>();
  s.R = Rational::parse(row.at("R").get<std::string>());
  s.S = Rational::parse(row.at("S").get<std::string>());
  s.Z = Rational::parse(row.at("Z").get<std::string>());
  s.P = Surd(Rational::parse(row.at("P_coeff").get<std::string>()), row.at("P_radicand").get<std::uint64_t>());
  s.expansion_order = row.at("m").get<int>();
  s.theta_threshold = row.at("n0").get<int>();
  s.output_form = output_form_from_string(row.at("output_form").get<std::string>());
  return s;
}

}  // namespace relab
