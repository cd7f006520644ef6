#include "qdede/scalar.hpp"

#include "qdede/errors.hpp"

namespace qdede {

const Rat& Scalar::rat() const {
  if (!is_rat()) raise(errc::mode_error, "expected an exact rational value");
  return std::get<Rat>(v_);
}

const PAdic& Scalar::padic() const {
  if (is_rat()) raise(errc::mode_error, "expected a p-adic value");
  return std::get<PAdic>(v_);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_rat() && b.is_rat()) return Scalar(Rat(a.rat() + b.rat()));
  if (a.is_rat()) return Scalar(b.padic().add_exact(a.rat()));
  if (b.is_rat()) return Scalar(a.padic().add_exact(b.rat()));
  return Scalar(a.padic() + b.padic());
}

Scalar Scalar::operator-() const {
  if (is_rat()) return Scalar(Rat(-rat()));
  return Scalar(-padic());
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_rat() && b.is_rat()) return Scalar(Rat(a.rat() * b.rat()));
  if (a.is_rat()) {
    if (a.rat() == 0) return Scalar(Rat(0));
    return Scalar(b.padic().mul_exact(a.rat()));
  }
  if (b.is_rat()) {
    if (b.rat() == 0) return Scalar(Rat(0));
    return Scalar(a.padic().mul_exact(b.rat()));
  }
  return Scalar(a.padic() * b.padic());
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_rat()) {
    if (b.rat() == 0) raise(errc::divide_by_zero, "division by zero");
    if (a.is_rat()) return Scalar(Rat(a.rat() / b.rat()));
    return Scalar(a.padic().div_exact(b.rat()));
  }
  if (a.is_rat()) {
    if (a.rat() == 0) return Scalar(Rat(0));
    return Scalar(b.padic().inverse().mul_exact(a.rat()));
  }
  return Scalar(a.padic() / b.padic());
}

Scalar Scalar::pow(long e) const {
  if (is_rat()) return Scalar(pow_rat(rat(), e));
  return Scalar(padic().pow(e));
}

PAdic Scalar::embedded(unsigned long p, long precision) const {
  if (is_rat()) return PAdic::from_rat(rat(), p, precision);
  if (padic().prime() != p) raise(errc::prime_mismatch, "value lives in another Q_p");
  return padic();
}

bool Scalar::norm_le(unsigned long p, long e) const {
  if (is_rat()) {
    if (rat() == 0) return true;
    return vp_rat(rat(), p) >= e;
  }
  return padic().norm_le(e);
}

std::optional<long> Scalar::valuation(unsigned long p) const {
  if (is_rat()) {
    if (rat() == 0) return std::nullopt;
    return vp_rat(rat(), p);
  }
  return padic().valuation();
}

std::string Scalar::str() const {
  if (is_rat()) return rat_str(rat());
  return padic().str();
}

QContext QContext::rational(Rat q, unsigned long alpha, unsigned long p) {
  QContext ctx;
  ctx.mode = Mode::rational;
  ctx.p = p;
  ctx.q = Scalar(std::move(q));
  ctx.alpha = alpha;
  ctx.validate();
  return ctx;
}

QContext QContext::padic(unsigned long p, Scalar q, unsigned long alpha, long precision) {
  QContext ctx;
  ctx.mode = Mode::padic;
  ctx.p = p;
  ctx.q = std::move(q);
  ctx.alpha = alpha;
  ctx.precision = precision;
  ctx.validate();
  return ctx;
}

void QContext::validate() const {
  if (alpha < 1) raise(errc::config_error, "alpha must be a positive integer");
  if (mode == Mode::rational) {
    if (!q.is_rat()) raise(errc::config_error, "rational mode requires a rational q");
    const Rat& r = q.rat();
    if (r == 0 || r == 1 || r == -1)
      raise(errc::degenerate_q, "rational mode needs q outside {0, 1, -1}");
    if (p != 0 && !is_odd_prime(p)) raise(errc::config_error, "p must be an odd prime");
    return;
  }
  if (!is_odd_prime(p)) raise(errc::config_error, "padic mode requires an odd prime p");
  if (precision < 1) raise(errc::config_error, "precision must be >= 1");
  if (q.is_rat()) {
    const Rat& r = q.rat();
    if (r == 0 || r == 1 || r == -1)
      raise(errc::degenerate_q, "q in {0, 1, -1} degenerates every denominator");
    Rat q1 = r - 1;
    if (vp_rat(q1, p) < 1)
      raise(errc::config_error, "standing assumption |1-q|_p < 1 violated");
  } else {
    const PAdic& x = q.padic();
    if (x.prime() != p) raise(errc::prime_mismatch, "q lives in another Q_p");
    PAdic q1 = x.add_exact(Rat(-1));
    if (q1.is_zero())
      raise(errc::degenerate_q, "q indistinguishable from 1 at its precision");
    if (q1.valuation().value() < 1)
      raise(errc::config_error, "standing assumption |1-q|_p < 1 violated");
  }
}

unsigned long QContext::require_p(const char* who) const {
  if (!is_odd_prime(p)) raise(errc::config_error, std::string(who) + " needs an odd prime p in the context");
  return p;
}

}  // namespace qdede
