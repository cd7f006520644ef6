#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace qdede {

using Int = mpz_class;
/// Exact rational, always canonical (positive denominator, gcd(num, den) = 1).
/// mpq_class maintains the canonical form after every operation.
using Rat = mpq_class;

Int pow_int(const Int& base, unsigned long e);

/// base^e for possibly negative e; base must be nonzero when e < 0.
Rat pow_rat(const Rat& base, long e);

Int binomial_int(unsigned long n, unsigned long k);
Int factorial_int(unsigned long n);

/// Exponent of p in x (x != 0).
long vp_int(const Int& x, unsigned long p);
/// v_p(num) - v_p(den) (x != 0).
long vp_rat(const Rat& x, unsigned long p);
/// Legendre's formula: v_p(n!).
long vp_factorial(unsigned long n, unsigned long p);

bool is_odd_prime(unsigned long p);

/// Parses "a", "-a", or "a/b". Throws ConfigError on malformed input or b = 0.
Rat parse_rat(const std::string& s);

/// Canonical "a/b" (or "a" when b = 1).
std::string rat_str(const Rat& x);

}  // namespace qdede
