#include "reeb/body_io.hpp"

#include <cmath>
#include <fstream>

#include "reeb/errors.hpp"

namespace reeb {

ConvexBody body_from_json(const nlohmann::json& spec) {
  if (!spec.is_object()) throw Error(ErrorKind::ParseError, "body spec must be a JSON object");
  if (!spec.contains("kind") || !spec["kind"].is_string()) {
    throw Error(ErrorKind::ParseError, "body spec needs a string field 'kind'");
  }
  if (!spec.contains("a") || !spec["a"].is_array() || spec["a"].empty()) {
    throw Error(ErrorKind::ParseError, "body spec needs a non-empty array 'a'");
  }
  const std::string kind = spec["kind"].get<std::string>();

  bool exact = !(spec.contains("exact") && spec["exact"].is_boolean() && !spec["exact"].get<bool>());
  std::vector<Rational> rationals;
  std::vector<double> reals;
  for (const auto& entry : spec["a"]) {
    if (entry.is_string()) {
      Rational r = parse_rational(entry.get<std::string>());
      rationals.push_back(r);
      reals.push_back(to_double(r));
    } else if (entry.is_number_integer()) {
      rationals.emplace_back(entry.get<long long>());
      reals.push_back(static_cast<double>(entry.get<long long>()));
    } else if (entry.is_number()) {
      const double x = entry.get<double>();
      if (std::isfinite(x) && std::floor(x) == x && std::fabs(x) < 1e15) {
        rationals.emplace_back(static_cast<long long>(x));
      } else {
        exact = false;
      }
      reals.push_back(x);
    } else {
      throw Error(ErrorKind::ParseError, "entries of 'a' must be numbers or rational strings");
    }
  }

  if (kind == "ellipsoid") {
    if (exact) return ConvexBody::ellipsoid(std::move(rationals));
    return ConvexBody::ellipsoid(std::move(reals));
  }
  if (kind == "dual_power") {
    if (!spec.contains("q")) throw Error(ErrorKind::ParseError, "dual_power body needs 'q'");
    double q = 0.0;
    if (spec["q"].is_number()) q = spec["q"].get<double>();
    else if (spec["q"].is_string()) q = to_double(parse_rational(spec["q"].get<std::string>()));
    else throw Error(ErrorKind::ParseError, "'q' must be a number");
    return ConvexBody::dual_power(std::move(reals), q);
  }
  throw Error(ErrorKind::ParseError, "unknown body kind '" + kind + "'");
}

ConvexBody load_body(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open body file " + path.string());
  nlohmann::json spec;
  try {
    in >> spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, "invalid JSON in " + path.string() + ": " + e.what());
  }
  return body_from_json(spec);
}

nlohmann::json body_to_json(const ConvexBody& body) {
  nlohmann::json j;
  j["kind"] = body.kind() == BodyKind::Ellipsoid ? "ellipsoid" : "dual_power";
  nlohmann::json a = nlohmann::json::array();
  if (body.exact_params()) {
    for (const auto& r : *body.exact_params()) a.push_back(format_rational(r));
  } else {
    for (double x : body.params()) a.push_back(x);
  }
  j["a"] = a;
  if (body.kind() == BodyKind::DualPower) j["q"] = body.exponent();
  return j;
}

}  // namespace reeb
