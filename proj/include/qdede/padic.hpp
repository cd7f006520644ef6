#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qdede/rational.hpp"

namespace qdede {

/// Element of Q_p at finite precision, odd prime p.
///
/// A nonzero value is  unit * p^valuation  with the unit known modulo
/// p^precision (so the value itself is known modulo p^(valuation+precision)).
/// The unit is kept in [1, p^precision) and coprime to p.
///
/// An exact zero is a value indistinguishable from 0 at the precision of the
/// computation that produced it: it carries the bound M meaning "0 modulo p^M".
/// known_mod() returns that modulus exponent uniformly for both cases; it is
/// the quantity all arithmetic precision rules are stated in.
///
/// Addition is cancellation-aware: the valuation of the sum is recomputed and
/// the significant digits shrink accordingly, so equality-at-precision claims
/// stay truthful.
class PAdic {
public:
  /// Exact zero known modulo p^bound.
  static PAdic zero(unsigned long p, long bound);
  /// 1 with `precision` significant digits.
  static PAdic one(unsigned long p, long precision);
  /// Image of a rational in Q_p; every rational embeds. precision >= 1.
  static PAdic from_rat(const Rat& x, unsigned long p, long precision);
  static PAdic from_int(long x, unsigned long p, long precision);
  /// Normalizing constructor from raw parts (reduces the unit, strips p-factors,
  /// collapses to an exact zero when the unit vanishes mod p^precision).
  PAdic(unsigned long p, long valuation, Int unit, long precision);

  unsigned long prime() const { return p_; }
  bool is_zero() const { return zero_; }
  /// Valuation of a nonzero value; nullopt encodes +infinity (exact zero).
  std::optional<long> valuation() const;
  const Int& unit() const { return unit_; }
  /// Significant base-p digits of the unit (nonzero), or the zero bound.
  long precision() const { return prec_; }
  /// The represented value is known modulo p^known_mod().
  long known_mod() const { return zero_ ? prec_ : val_ + prec_; }
  bool is_unit() const { return !zero_ && val_ == 0; }
  /// u == 1 (mod p)?
  bool is_one_unit() const;

  /// |x|_p <= p^-e ?
  bool norm_le(long e) const { return zero_ ? prec_ >= e : val_ >= e; }
  /// Forget knowledge beyond p^m.
  PAdic truncated(long m) const;
  /// Same value as far as the shared knowledge goes.
  bool agrees_with(const PAdic& other) const;

  PAdic operator-() const;
  PAdic inverse() const;
  PAdic pow(long e) const;

  /// Exact-operand arithmetic: the rational is exactly known, so it costs no
  /// precision beyond the interval rules (e.g. x*r is known mod p^(M+v_p(r))).
  PAdic add_exact(const Rat& r) const;
  PAdic mul_exact(const Rat& r) const;  // r != 0
  PAdic div_exact(const Rat& r) const;  // r != 0

  /// Base-p digits of the unit, least significant first, length precision().
  /// Empty for an exact zero.
  std::vector<unsigned long> unit_digits() const;
  std::string str() const;

  friend PAdic operator+(const PAdic& a, const PAdic& b);
  friend PAdic operator-(const PAdic& a, const PAdic& b);
  friend PAdic operator*(const PAdic& a, const PAdic& b);
  friend PAdic operator/(const PAdic& a, const PAdic& b);

private:
  PAdic() = default;

  unsigned long p_ = 3;
  bool zero_ = true;
  long val_ = 0;   // meaningful when !zero_
  Int unit_ = 0;   // in [1, p^prec_), coprime to p, when !zero_
  long prec_ = 1;  // digits of unit_, or the zero bound

  Int modulus(long digits) const;  // p^digits (digits >= 0)
  static void check_same_prime(const PAdic& a, const PAdic& b);
};

/// Teichmuller character: the unique w with w^p = w, w == x (mod p).
/// Requires a unit argument.
PAdic teichmuller(const PAdic& x);

/// C(s, j) = s(s-1)...(s-j+1)/j! for s in Z_p; a p-adic integer.
/// Precision follows the interval rules; the division by j! costs v_p(j!)
/// digits, so supply s with that many guard digits for full accuracy.
PAdic padic_binomial(const PAdic& s, unsigned long j);

/// u^s = sum_j C(s,j)(u-1)^j for a 1-unit u and s in Z_p.
PAdic unit_power(const PAdic& u, const PAdic& s);

}  // namespace qdede
