#pragma once

#include <optional>
#include <string>
#include <variant>

#include "qdede/padic.hpp"
#include "qdede/rational.hpp"

namespace qdede {

/// Number in whichever backbone the context selected: an exact rational or a
/// finite-precision p-adic. Mixed operations treat the rational operand as
/// exactly known (no embedding loss); the result is p-adic. Rational zero is
/// the exact zero and never silently becomes a bounded p-adic zero.
class Scalar {
public:
  Scalar() : v_(Rat(0)) {}
  Scalar(Rat r) : v_(std::move(r)) {}
  Scalar(PAdic x) : v_(std::move(x)) {}
  Scalar(long n) : v_(Rat(n)) {}

  bool is_rat() const { return std::holds_alternative<Rat>(v_); }
  const Rat& rat() const;
  const PAdic& padic() const;

  bool is_exact_zero() const { return is_rat() && rat() == 0; }

  Scalar pow(long e) const;
  /// Rational values embed at the given precision; p-adic values pass through.
  PAdic embedded(unsigned long p, long precision) const;

  /// |x|_p <= p^-e, with exact rationals measured exactly.
  bool norm_le(unsigned long p, long e) const;
  /// v_p for a nonzero value; nullopt means exact zero (rational 0) or a
  /// p-adic zero at its bound.
  std::optional<long> valuation(unsigned long p) const;

  std::string str() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar operator-() const;

private:
  std::variant<Rat, PAdic> v_;
};

enum class Mode { rational, padic };

/// Bundle of evaluation parameters threaded through every computation.
///
/// rational mode: archimedean semantics, exact arithmetic, q a rational
/// outside {0, 1, -1}. padic mode: p-adic semantics with odd prime p and
/// |1 - q|_p < 1; q may still be a rational, in which case everything that
/// can stay exact does, and reduction to Q_p happens at comparison time.
struct QContext {
  Mode mode = Mode::rational;
  unsigned long p = 0;  // odd prime; required in padic mode
  Scalar q = Scalar(Rat(2));
  unsigned long alpha = 1;
  long precision = 8;  // base-p digits, padic mode
  bool literal_paper_mode = false;

  static QContext rational(Rat q, unsigned long alpha = 1, unsigned long p = 0);
  static QContext padic(unsigned long p, Scalar q, unsigned long alpha = 1, long precision = 8);

  void validate() const;

  bool q_rational() const { return q.is_rat(); }
  Scalar q_pow(long e) const { return q.pow(e); }
  /// Requires an odd prime p to be set (measure/integral/interp operations).
  unsigned long require_p(const char* who) const;
};

}  // namespace qdede
