#pragma once

#include <stdexcept>
#include <string>

namespace qdede {

/// Error classes surfaced by the library. The CLI maps all of these to
/// exit code 2 (parameter/config error); verification failures are not
/// errors and are reported, not thrown.
enum class errc {
  divide_by_zero,
  prime_mismatch,
  not_a_unit,
  not_one_unit,
  degenerate_q,
  mode_error,
  out_of_range,
  no_convergence,
  not_coprime,
  even_modulus,
  base_not_multiple,
  residue_divisible_by_p,
  series_divergence,
  config_error,
};

const char* errc_name(errc c) noexcept;

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(errc c) noexcept {
  switch (c) {
    case errc::divide_by_zero: return "DivideByZero";
    case errc::prime_mismatch: return "PrimeMismatch";
    case errc::not_a_unit: return "NotAUnit";
    case errc::not_one_unit: return "NotOneUnit";
    case errc::degenerate_q: return "DegenerateQ";
    case errc::mode_error: return "ModeError";
    case errc::out_of_range: return "OutOfRange";
    case errc::no_convergence: return "NoConvergence";
    case errc::not_coprime: return "NotCoprime";
    case errc::even_modulus: return "EvenModulus";
    case errc::base_not_multiple: return "BaseNotMultiple";
    case errc::residue_divisible_by_p: return "ResidueDivisibleByP";
    case errc::series_divergence: return "SeriesDivergence";
    case errc::config_error: return "ConfigError";
  }
  return "Error";
}

}  // namespace qdede
