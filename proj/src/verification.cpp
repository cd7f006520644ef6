#include "qdede/verification.hpp"

#include <sstream>

#include "qdede/errors.hpp"

namespace qdede {

nlohmann::json rat_to_json(const Rat& x) {
  return {{"num", x.get_num().get_str()}, {"den", x.get_den().get_str()}};
}

nlohmann::json padic_to_json(const PAdic& x) {
  nlohmann::json j;
  j["p"] = x.prime();
  if (x.is_zero())
    j["valuation"] = "inf";
  else
    j["valuation"] = *x.valuation();
  j["unit_digits"] = x.unit_digits();
  j["precision"] = x.precision();
  return j;
}

nlohmann::json scalar_to_json(const Scalar& x) {
  return x.is_rat() ? rat_to_json(x.rat()) : padic_to_json(x.padic());
}

Rat rat_from_json(const nlohmann::json& j) {
  Rat num = parse_rat(j.at("num").get<std::string>());
  Rat den = parse_rat(j.at("den").get<std::string>());
  if (den == 0) raise(errc::config_error, "zero denominator");
  return num / den;
}

PAdic padic_from_json(const nlohmann::json& j) {
  const unsigned long p = j.at("p").get<unsigned long>();
  const long precision = j.at("precision").get<long>();
  if (j.at("valuation").is_string()) return PAdic::zero(p, precision);
  const long val = j.at("valuation").get<long>();
  const auto digits = j.at("unit_digits").get<std::vector<unsigned long>>();
  Int unit = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) unit = unit * static_cast<long>(p) + static_cast<long>(*it);
  return PAdic(p, val, unit, precision);
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json jp = nlohmann::json::object();
  for (const auto& [k, v] : params) jp[k] = v;
  nlohmann::json j;
  j["suite"] = suite;
  j["params"] = jp;
  j["residual"] = scalar_to_json(residual);
  j["pass"] = pass;
  j["notes"] = notes;
  if (tolerance_exponent) j["tolerance_exponent"] = *tolerance_exponent;
  return j;
}

std::string VerificationReport::params_str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first) os << " ";
    os << k << "=" << v;
    first = false;
  }
  return os.str();
}

}  // namespace qdede
