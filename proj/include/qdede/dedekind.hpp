#pragma once

#include <vector>

#include "qdede/rational.hpp"

namespace qdede {

/// Coefficients of the Euler polynomial E_m, ascending powers, from
/// E_m(x) = x^m - (1/2) sum_{k<m} C(m,k) E_k(x). Cached.
std::vector<Rat> euler_poly_coeffs(unsigned long m);

Rat euler_poly(unsigned long m, const Rat& x);

/// Antiperiodic extension from [0,1): (-1)^floor(x) E_m({x}).
/// Total on all rationals; satisfies E_m(x+1) = -E_m(x).
Rat periodic_euler(unsigned long m, const Rat& x);

struct DCSumParams {
  unsigned long m = 0;
  unsigned long h = 1;
  unsigned long k = 1;  // gcd(h, k) = 1
};

/// Dedekind-type Daehee-Changhee sum
///   S_m(h,k) = sum_{M=1}^{k-1} (-1)^(M-1) (M/k) E_m(hM/k),
/// with the periodic Euler function. Exact; S_m(h,1) = 0.
Rat dc_sum(const DCSumParams& params);

/// Gauss symbol and fractional part of a rational.
Int rat_floor(const Rat& x);
Rat rat_frac(const Rat& x);

}  // namespace qdede
