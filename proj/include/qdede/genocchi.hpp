#pragma once

#include "qdede/qkernel.hpp"
#include "qdede/scalar.hpp"
#include "qdede/verification.hpp"

namespace qdede {

/// Classical Genocchi number G_n: 2t e^(xt)/(e^t+1) at x = 0, via the
/// recurrence 2 G_n = 2[n=1] - sum_{k<n} C(n,k) G_k. Values are cached.
Rat classical_genocchi(unsigned long n);

/// Modified weighted q-Genocchi number of order n at base q^N. Indexed by the
/// order itself: value 0 at n = 0, and for n >= 1
///   n (1+Q)/(1-Q^alpha)^(n-1) sum_{l<n} C(n-1,l) (-1)^l / (1+Q^(alpha l)),
/// Q = q^N. Results are memoized per (q, N, alpha).
Scalar g_number_scaled(unsigned long n, unsigned long N, const QContext& ctx);
Scalar g_number(unsigned long n, const QContext& ctx);

/// The polynomial value at argument a/N in the base-compensated form (base
/// q^N), so every exponent q^(alpha l a) stays integral:
///   n (1+Q)/(1-Q^alpha)^(n-1) sum_{l<n} C(n-1,l) (-1)^l q^(alpha l a) / (1+Q^(alpha l)).
/// a = 0 coincides with g_number_scaled; n = 1 is independent of a.
Scalar g_poly_scaled(unsigned long n, long a, unsigned long N, const QContext& ctx);

/// Truncated-limit oracles through the fermionic integral (padic mode).
PAdic g_number_integral(unsigned long n, const QContext& ctx, unsigned long level);
/// General weight-(alpha, beta) number via the defining integral; no closed
/// form exists for beta != 1, the integral is the only route.
PAdic g_number_ab_integral(unsigned long n, unsigned long beta, const QContext& ctx,
                           unsigned long level);
PAdic g_poly_integral(unsigned long n, long a, unsigned long N, const QContext& ctx,
                      unsigned long level);

/// Binomial-translation identity for the scaled polynomials, checked exactly.
VerificationReport check_identity5(unsigned long n, long a, unsigned long N, const QContext& ctx);

struct DistributionCheck {
  VerificationReport corrected;             // base q^d on the multiplied side; exact
  std::optional<Scalar> literal_residual;   // printed-subscript variant, when evaluable (d | N)
};

/// Multiplication/distribution identity for odd d, argument x = a/N:
///   G(n, base q^N)(d a/N) vs (1+q^N)/(1+q^(Nd)) [d]^(n-1) alternating sum of
///   G(n, base q^(Nd)) at (a d + i N)/(N d). The literal printed-base variant
///   is evaluated alongside when its exponents are integral.
DistributionCheck check_distribution_full(unsigned long n, unsigned long d, long a,
                                          unsigned long N, const QContext& ctx);
VerificationReport check_distribution(unsigned long n, unsigned long d, long a, unsigned long N,
                                      const QContext& ctx);

/// Cache introspection (tests spot-check cached vs fresh values).
std::size_t genocchi_cache_entries();
void genocchi_cache_clear();
/// Closed-form recomputation that bypasses the cache.
Scalar g_number_scaled_fresh(unsigned long n, unsigned long N, const QContext& ctx);

}  // namespace qdede
