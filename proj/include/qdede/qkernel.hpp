#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "qdede/scalar.hpp"

namespace qdede {

/// Weighted q-number [x] with base Q = q^base_exponent and the context's
/// weight: (1 - Q^(alpha x)) / (1 - Q^alpha). [0] = 0 and [1] = 1 exactly.
Scalar q_int(long x, const QContext& ctx, unsigned long base_exponent = 1);

/// Fermionic q-measure of the coset a + p^n Z_p: (-q)^a (1+q)/(1+q^(p^n)).
Scalar measure_value(const Int& a, unsigned long n, const QContext& ctx);
/// Same, with the base supplied directly (lets tests probe the q -> 1 limit
/// that QContext construction rejects).
Scalar measure_value_base(const Int& a, unsigned long n, unsigned long p, const Scalar& q);

/// The integrands of this artifact are q-power kernels
///   f(xi) = q^(-twist xi) * ((1 - q^(alpha (scale xi + offset))) / (1 - q^(alpha scale)))^power
/// evaluated at integer sample points. power = 0 drops the bracket.
struct KernelSpec {
  unsigned long power = 0;
  unsigned long scale = 1;
  long offset = 0;
  unsigned long twist = 0;
};

/// Map from sample points to Scalar values, plus the base-change exponent l
/// selecting the measure mu_{q^l}. Kernel-shaped integrands carry their spec
/// so the level sum can run incrementally on the exact backbone.
class Integrand {
public:
  static Integrand kernel(const KernelSpec& spec, unsigned long base_exponent);
  static Integrand one();
  static Integrand from_function(std::function<Scalar(long, const QContext&)> f,
                                 unsigned long base_exponent);

  Scalar eval(long a, const QContext& ctx) const;
  unsigned long base_exponent() const { return base_exponent_; }
  const std::optional<KernelSpec>& spec() const { return spec_; }

private:
  std::optional<KernelSpec> spec_;
  std::function<Scalar(long, const QContext&)> fn_;
  unsigned long base_exponent_ = 1;
};

/// Level-n Riemann-type sum of the defining limit:
///   I_level(f) = (1+Q)/(1+Q^(p^level)) * sum_{a < p^level} f(a) (-Q)^a,
/// Q = q^base_exponent. padic mode only; when q is rational the whole sum is
/// exact rational arithmetic (reduction to Q_p happens at comparison time).
Scalar fermionic_integral(const Integrand& f, const QContext& ctx, unsigned long level);

struct IntegralResult {
  PAdic value;
  unsigned long level_used = 0;
  /// v_p of the last level-to-level delta; nullopt when the delta was exactly 0.
  std::optional<long> last_delta_valuation;
};

/// Smallest n with p^n > 2^21 (worst-case desk runtime guard).
unsigned long default_level_cap(unsigned long p);

/// Raises the level until |I_level - I_{level-1}|_p <= p^-target_exponent.
/// Throws NoConvergence at the level cap.
IntegralResult integral_adaptive(const Integrand& f, const QContext& ctx, long target_exponent);

/// v_p of a scalar delta; nullopt for an exact zero (or p-adic zero at bound).
std::optional<long> delta_valuation(const Scalar& d, unsigned long p);

}  // namespace qdede
