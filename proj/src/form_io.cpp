#include "kohnen/form_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kohnen/error.hpp"

namespace kohnen::forms {

using Json = nlohmann::ordered_json;

std::string to_json(const HalfIntegralForm& form) {
  Json doc;
  doc["ell"] = form.ell();
  doc["weight"] = form.weight();
  doc["level"] = HalfIntegralForm::level();
  doc["precision"] = form.precision();
  Json coeffs = Json::array();
  for (std::size_t n = 0; n < form.precision(); ++n) {
    if (sgn(form.c(n)) != 0) coeffs.push_back(Json::array({n, form.c(n).get_str()}));
  }
  doc["coeffs"] = std::move(coeffs);
  return doc.dump() + "\n";
}

HalfIntegralForm from_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("malformed form JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("form JSON must be an object");
  for (const char* key : {"ell", "weight", "level", "precision", "coeffs"}) {
    if (!doc.contains(key)) throw ValidationError(std::string("form JSON missing field '") + key + "'");
  }
  if (!doc["ell"].is_number_integer()) throw ValidationError("'ell' must be an integer");
  if (!doc["precision"].is_number_unsigned()) throw ValidationError("'precision' must be a positive integer");
  if (!doc["level"].is_number_integer() || doc["level"].get<int>() != 4) {
    throw ValidationError("only level 4 forms are supported");
  }
  const int ell = doc["ell"].get<int>();
  if (ell < 2) throw ValidationError("'ell' must be at least 2");
  const auto precision = doc["precision"].get<std::uint64_t>();
  if (precision == 0) throw ValidationError("'precision' must be positive");
  const std::string weight = std::to_string(2 * ell + 1) + "/2";
  if (!doc["weight"].is_string() || doc["weight"].get<std::string>() != weight) {
    throw ValidationError("'weight' does not match ell (expected " + weight + ")");
  }
  if (!doc["coeffs"].is_array()) throw ValidationError("'coeffs' must be an array");

  std::vector<Integer> c(precision);
  bool have_previous = false;
  std::uint64_t previous = 0;
  for (const auto& entry : doc["coeffs"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_unsigned() || !entry[1].is_string()) {
      throw ValidationError("each coefficient entry must be [n, \"decimal\"]");
    }
    const auto n = entry[0].get<std::uint64_t>();
    if (n >= precision) throw ValidationError("coefficient index " + std::to_string(n) + " >= precision");
    if (have_previous && n <= previous) throw ValidationError("coefficient indices must be strictly increasing");
    const auto digits = entry[1].get<std::string>();
    Integer value;
    if (digits.empty() || value.set_str(digits, 10) != 0) {
      throw ValidationError("coefficient at n = " + std::to_string(n) + " is not a decimal integer");
    }
    if (sgn(value) == 0) throw ValidationError("zero coefficients must be omitted");
    c[n] = std::move(value);
    previous = n;
    have_previous = true;
  }
  return HalfIntegralForm(ell, std::move(c));
}

void save_form(const HalfIntegralForm& form, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open " + path.string() + " for writing");
  out << to_json(form);
  if (!out) throw ValidationError("failed writing " + path.string());
}

HalfIntegralForm load_form(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open form file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

}  // namespace kohnen::forms
