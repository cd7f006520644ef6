#pragma once

#include <vector>

#include "qdede/genocchi.hpp"
#include "qdede/scalar.hpp"
#include "qdede/verification.hpp"

namespace qdede {

/// <x : q> = w^(-1)(x) (1 - q^x)/(1 - q) for a unit x; always == 1 (mod p).
PAdic angle(long x, const QContext& ctx);

/// w(x)^(-e). Exact rational 1 when e == 0 (mod p-1) or x == 1 (mod p),
/// so exact-backbone computations stay exact in those regimes.
Scalar teichmuller_inv_pow(long x, unsigned long e, const QContext& ctx);

/// Finite interpolation sum at integer order m, argument pair (a, N), a >= 1:
///   [a]^m sum_{j<=m} C(m,j) q^(alpha a j) ([N]/[a])^j G(j+1, base q^N)/(j+1)
/// which equals [N]^m G(m+1, base q^N)(a/N) / (m+1) identically. With
/// ctx.literal_paper_mode the printed summand (q^(-alpha a), G_j, no 1/(j+1))
/// is used instead, for residual reporting. twist multiplies by w^(-(m+1))(a)
/// and requires padic mode and gcd(a, p) = 1.
Scalar a_tilde_integer(unsigned long m, long a, unsigned long N, const QContext& ctx, bool twist);

/// Binomial-series interpolation at s in Z_p. Requires p | N (the j-th term
/// has valuation >= j v_p(N), asserted during summation) and gcd(a, p) = 1.
PAdic a_tilde_series(const PAdic& s, long a, unsigned long N, const QContext& ctx,
                     long truncation);
/// Convenience wrapper embedding an integer s with guard digits.
PAdic a_tilde_series_int(long m, long a, unsigned long N, const QContext& ctx, long truncation);

struct YParams {
  unsigned long m = 0;
  unsigned long h = 1;
  unsigned long k = 1;  // gcd(h, k) = 1
  unsigned long l = 1;  // base exponent; k | l keeps exponents integral
};

/// Weighted q-analogue of the higher-order Dedekind-type sum:
///   sum_{M=1}^{k-1} (-1)^(M-1) [M]/[k] * G(m+1, base q^l)((l/k)(hM mod k) / l)/(m+1).
Scalar y_tilde(const YParams& params, const QContext& ctx);

enum class PDivisiblePolicy { reject, skip };

/// Definition-1 sum: sum_M (-1)^(M-1) [M] Atilde(m, (hM)_k, k), reduced
/// residues, Teichmuller twist applied in padic mode (it is identically 1
/// when m+1 == 0 mod p-1, in which case the value stays exact). Requires
/// p not dividing k and every residue (hM)_k coprime to p (policy decides
/// whether an offending term rejects or is skipped).
Scalar dc_padic(unsigned long m, unsigned long h, unsigned long k, const QContext& ctx,
                PDivisiblePolicy policy = PDivisiblePolicy::reject);

/// [k]^(m+1) y_tilde(m,h,k,l=k) == sum_M (-1)^(M-1) [M] Atilde(m,(hM)_k,k),
/// two independent evaluation routes, exact residual.
VerificationReport check_eq7(unsigned long m, unsigned long h, unsigned long k,
                             const QContext& ctx);

/// Descent from level N to level pN through the integer-m form:
///   Atilde(m,a,N) vs (1+q^N)/(1+q^(Np)) sum over i with a+iN != 0 (mod p)
/// of (-1)^i Atilde(m, (a+iN)_(pN), pN). When p | N the exclusion is vacuous
/// (noted in the report).
VerificationReport check_descent(unsigned long m, long a, unsigned long N, const QContext& ctx,
                                 std::optional<long> tolerance_exponent = std::nullopt);
/// Same comparison through the binomial series on both sides.
VerificationReport check_descent_series(long m, long a, unsigned long N, const QContext& ctx,
                                        long truncation,
                                        std::optional<long> tolerance_exponent = std::nullopt);

struct Theorem21Quantities {
  Scalar dc;                // (i): the Definition-1 sum
  Scalar paper_rhs;         // (ii): compact two-Ytilde form as printed
  Scalar split_sum;         // (iii): per-M modulus-p distribution split, base q^(pk)
  Scalar deprived_sum;      // split_sum minus the p-divisible branches
  Scalar corrected_second;  // signed, unit-factor-weighted branch total
  Scalar paper_second;      // [k]^(m+1) ([kp]/[k]) y_tilde at (p^(-1)h), base q^(pk)
  unsigned long h_desc = 0;  // (p^(-1) h)_k
};

/// Requires m+1 == 0 (mod p-1), p not dividing k, gcd(h,k) = 1.
Theorem21Quantities theorem21_quantities(unsigned long m, unsigned long h, unsigned long k,
                                         const QContext& ctx);

/// Reports: the exact (i)-(iii) decomposition residual (pass iff zero), the
/// informational (i)-(ii) compact-form residual, and the second-term gap.
std::vector<VerificationReport> check_theorem21(unsigned long m, unsigned long h, unsigned long k,
                                                const QContext& ctx);

}  // namespace qdede
