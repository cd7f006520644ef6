#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qdede/scalar.hpp"

namespace qdede {

/// Outcome of one identity check: exact residual (or p-adic residual with its
/// norm), the parameter set it was evaluated at, and a pass flag.
/// pass means residual is exactly zero (rational mode) or its norm is within
/// the stated tolerance (padic mode). Informational entries always pass.
struct VerificationReport {
  std::string suite;
  std::vector<std::pair<std::string, std::string>> params;
  Scalar residual;
  bool pass = false;
  std::string notes;
  /// Present when the check compared p-adically: pass iff |residual|_p <= p^-tol.
  std::optional<long> tolerance_exponent;

  nlohmann::json to_json() const;
  std::string params_str() const;
};

nlohmann::json rat_to_json(const Rat& x);
nlohmann::json padic_to_json(const PAdic& x);
nlohmann::json scalar_to_json(const Scalar& x);
Rat rat_from_json(const nlohmann::json& j);
PAdic padic_from_json(const nlohmann::json& j);

using VerificationOutcome = VerificationReport;

}  // namespace qdede
