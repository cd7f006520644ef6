#include "qdede/padic.hpp"

#include <algorithm>
#include <sstream>

#include "qdede/errors.hpp"

namespace qdede {

namespace {

Int pow_p(unsigned long p, long digits) {
  if (digits < 0) raise(errc::out_of_range, "negative modulus exponent");
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(digits));
  return r;
}

// num/den mod p^digits for den coprime to p.
Int mod_inv_mul(const Int& num, const Int& den, unsigned long p, long digits) {
  Int m = pow_p(p, digits);
  Int d = den % m;
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t()) == 0)
    raise(errc::not_a_unit, "denominator not invertible mod p^k");
  Int r = (num % m) * inv % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

Int PAdic::modulus(long digits) const { return pow_p(p_, digits); }

PAdic PAdic::zero(unsigned long p, long bound) {
  if (!is_odd_prime(p)) raise(errc::config_error, "p must be an odd prime");
  PAdic x;
  x.p_ = p;
  x.zero_ = true;
  x.prec_ = bound;
  return x;
}

PAdic PAdic::one(unsigned long p, long precision) {
  return PAdic(p, 0, Int(1), precision);
}

PAdic::PAdic(unsigned long p, long valuation, Int unit, long precision) {
  if (!is_odd_prime(p)) raise(errc::config_error, "p must be an odd prime");
  if (precision < 1) raise(errc::config_error, "precision must be >= 1");
  p_ = p;
  Int m = pow_p(p, precision);
  unit %= m;
  if (unit < 0) unit += m;
  if (unit == 0) {
    zero_ = true;
    prec_ = valuation + precision;
    return;
  }
  long t = mpz_divisible_ui_p(unit.get_mpz_t(), p) ? vp_int(unit, p) : 0;
  if (t > 0) {
    // p-part of the unit is genuine value information: shift it into the
    // valuation and drop the digits it consumed.
    valuation += t;
    precision -= t;
    mpz_divexact(unit.get_mpz_t(), unit.get_mpz_t(), pow_p(p, t).get_mpz_t());
    unit %= pow_p(p, precision);
  }
  zero_ = false;
  val_ = valuation;
  unit_ = unit;
  prec_ = precision;
}

PAdic PAdic::from_rat(const Rat& x, unsigned long p, long precision) {
  if (precision < 1) raise(errc::config_error, "precision must be >= 1");
  if (!is_odd_prime(p)) raise(errc::config_error, "p must be an odd prime");
  if (x == 0) return zero(p, precision);
  long vn = mpz_divisible_ui_p(x.get_num().get_mpz_t(), p) ? vp_int(x.get_num(), p) : 0;
  long vd = mpz_divisible_ui_p(x.get_den().get_mpz_t(), p) ? vp_int(x.get_den(), p) : 0;
  Int n = x.get_num() / pow_p(p, vn);
  Int d = x.get_den() / pow_p(p, vd);
  PAdic r;
  r.p_ = p;
  r.zero_ = false;
  r.val_ = vn - vd;
  r.prec_ = precision;
  r.unit_ = mod_inv_mul(n, d, p, precision);
  return r;
}

PAdic PAdic::from_int(long x, unsigned long p, long precision) {
  return from_rat(Rat(x), p, precision);
}

std::optional<long> PAdic::valuation() const {
  if (zero_) return std::nullopt;
  return val_;
}

bool PAdic::is_one_unit() const {
  if (zero_ || val_ != 0) return false;
  return mpz_congruent_ui_p(unit_.get_mpz_t(), 1, p_);
}

PAdic PAdic::truncated(long m) const {
  if (known_mod() <= m) return *this;
  if (zero_) {
    PAdic r = *this;
    r.prec_ = m;
    return r;
  }
  if (val_ >= m) return zero(p_, m);
  return PAdic(p_, val_, unit_, m - val_);
}

bool PAdic::agrees_with(const PAdic& other) const {
  if (p_ != other.p_) return false;
  long m = std::min(known_mod(), other.known_mod());
  PAdic a = truncated(m), b = other.truncated(m);
  if (a.zero_ != b.zero_) return false;
  if (a.zero_) return true;
  return a.val_ == b.val_ && a.unit_ == b.unit_;
}

void PAdic::check_same_prime(const PAdic& a, const PAdic& b) {
  if (a.p_ != b.p_) raise(errc::prime_mismatch, "operands live in different Q_p");
}

PAdic operator+(const PAdic& a, const PAdic& b) {
  PAdic::check_same_prime(a, b);
  const long m = std::min(a.known_mod(), b.known_mod());
  if (a.zero_ && b.zero_) return PAdic::zero(a.p_, m);
  if (a.zero_) return b.truncated(m);
  if (b.zero_) return a.truncated(m);
  const long v = std::min(a.val_, b.val_);
  const long digits = m - v;
  if (digits <= 0) return PAdic::zero(a.p_, m);
  Int mm = pow_p(a.p_, digits);
  Int s = (a.unit_ * pow_p(a.p_, a.val_ - v) + b.unit_ * pow_p(a.p_, b.val_ - v)) % mm;
  if (s < 0) s += mm;
  if (s == 0) return PAdic::zero(a.p_, m);
  return PAdic(a.p_, v, s, digits);
}

PAdic PAdic::operator-() const {
  if (zero_) return *this;
  PAdic r = *this;
  r.unit_ = modulus(prec_) - unit_;
  return r;
}

PAdic operator-(const PAdic& a, const PAdic& b) { return a + (-b); }

PAdic operator*(const PAdic& a, const PAdic& b) {
  PAdic::check_same_prime(a, b);
  // |xy| <= p^-(Ma+vb) etc.; exact zeros propagate their bound.
  if (a.zero_ || b.zero_) {
    long bound;
    if (a.zero_ && b.zero_) bound = a.prec_ + b.prec_;
    else if (a.zero_) bound = a.prec_ + b.val_;
    else bound = b.prec_ + a.val_;
    return PAdic::zero(a.p_, bound);
  }
  long prec = std::min(a.prec_, b.prec_);
  Int u = a.unit_ * b.unit_ % pow_p(a.p_, prec);
  return PAdic(a.p_, a.val_ + b.val_, u, prec);
}

PAdic PAdic::inverse() const {
  if (zero_) raise(errc::divide_by_zero, "inverse of a value indistinguishable from 0");
  PAdic r = *this;
  r.val_ = -val_;
  Int m = modulus(prec_);
  mpz_invert(r.unit_.get_mpz_t(), unit_.get_mpz_t(), m.get_mpz_t());
  return r;
}

PAdic operator/(const PAdic& a, const PAdic& b) {
  PAdic::check_same_prime(a, b);
  if (b.zero_) raise(errc::divide_by_zero, "division by a value indistinguishable from 0");
  if (a.zero_) return PAdic::zero(a.p_, a.prec_ - b.val_);
  return a * b.inverse();
}

PAdic PAdic::pow(long e) const {
  if (e == 0) return one(p_, zero_ ? prec_ : prec_);
  if (zero_) {
    if (e < 0) raise(errc::divide_by_zero, "negative power of zero");
    return zero(p_, prec_ * e);
  }
  PAdic base = e < 0 ? inverse() : *this;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  PAdic acc = one(p_, prec_);
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

PAdic PAdic::add_exact(const Rat& r) const {
  if (r == 0) return *this;
  const long m = known_mod();
  const long vr = vp_rat(r, p_);
  if (vr >= m) return *this;  // invisible at our knowledge
  if (zero_) return from_rat(r, p_, m - vr);
  const long v = std::min(val_, vr);
  const long digits = m - v;
  Int mm = pow_p(p_, digits);
  // r / p^v is a p-adic integer here; reduce it mod p^digits.
  Int rn = r.get_num(), rd = r.get_den();
  long vn = vr >= 0 ? vr : 0, vd = vr < 0 ? -vr : 0;
  if (vn) mpz_divexact(rn.get_mpz_t(), rn.get_mpz_t(), pow_p(p_, vn).get_mpz_t());
  if (vd) mpz_divexact(rd.get_mpz_t(), rd.get_mpz_t(), pow_p(p_, vd).get_mpz_t());
  Int rpart = mod_inv_mul(rn, rd, p_, digits) * pow_p(p_, vr - v) % mm;
  Int s = (unit_ * pow_p(p_, val_ - v) + rpart) % mm;
  if (s < 0) s += mm;
  if (s == 0) return zero(p_, m);
  return PAdic(p_, v, s, digits);
}

PAdic PAdic::mul_exact(const Rat& r) const {
  if (r == 0) raise(errc::config_error, "mul_exact with rational 0 (handle exact zero upstream)");
  const long vr = vp_rat(r, p_);
  if (zero_) return zero(p_, prec_ + vr);
  Int rn = r.get_num(), rd = r.get_den();
  long vn = vr >= 0 ? vr : 0, vd = vr < 0 ? -vr : 0;
  if (vn) mpz_divexact(rn.get_mpz_t(), rn.get_mpz_t(), pow_p(p_, vn).get_mpz_t());
  if (vd) mpz_divexact(rd.get_mpz_t(), rd.get_mpz_t(), pow_p(p_, vd).get_mpz_t());
  Int u = unit_ * mod_inv_mul(rn, rd, p_, prec_) % pow_p(p_, prec_);
  return PAdic(p_, val_ + vr, u, prec_);
}

PAdic PAdic::div_exact(const Rat& r) const {
  if (r == 0) raise(errc::divide_by_zero, "division by rational 0");
  return mul_exact(Rat(1) / r);
}

std::vector<unsigned long> PAdic::unit_digits() const {
  std::vector<unsigned long> d;
  if (zero_) return d;
  Int u = unit_;
  for (long i = 0; i < prec_; ++i) {
    d.push_back(mpz_fdiv_ui(u.get_mpz_t(), p_));
    mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(), p_);
  }
  return d;
}

std::string PAdic::str() const {
  std::ostringstream os;
  if (zero_) {
    os << "O(" << p_ << "^" << prec_ << ")";
    return os.str();
  }
  os << unit_.get_str();
  if (val_ != 0) os << "*" << p_ << "^" << val_;
  os << " + O(" << p_ << "^" << known_mod() << ")";
  return os.str();
}

PAdic teichmuller(const PAdic& x) {
  if (!x.is_unit()) raise(errc::not_a_unit, "Teichmuller character needs a unit");
  const unsigned long p = x.prime();
  const long prec = x.precision();
  Int m = pow_p(p, prec);
  Int w = x.unit() % m;
  // w <- w^p gains at least one digit of stability per step.
  for (long i = 0; i <= prec + 1; ++i) {
    Int next;
    mpz_powm_ui(next.get_mpz_t(), w.get_mpz_t(), p, m.get_mpz_t());
    if (next == w) break;
    w = next;
  }
  return PAdic(p, 0, w, prec);
}

PAdic padic_binomial(const PAdic& s, unsigned long j) {
  if (!s.is_zero() && s.valuation().value() < 0)
    raise(errc::out_of_range, "binomial coefficient needs s in Z_p");
  const unsigned long p = s.prime();
  if (j == 0) return PAdic::one(p, std::max<long>(1, s.known_mod()));
  PAdic acc = s;
  for (unsigned long i = 1; i < j; ++i) acc = acc * s.add_exact(Rat(-static_cast<long>(i)));
  return acc.div_exact(Rat(factorial_int(j)));
}

PAdic unit_power(const PAdic& u, const PAdic& s) {
  if (!u.is_one_unit()) raise(errc::not_one_unit, "unit_power base must be == 1 (mod p)");
  if (u.prime() != s.prime()) raise(errc::prime_mismatch, "base and exponent in different Q_p");
  if (!s.is_zero() && s.valuation().value() < 0)
    raise(errc::out_of_range, "exponent must lie in Z_p");
  const unsigned long p = u.prime();
  const long target = u.known_mod();
  PAdic x = u.add_exact(Rat(-1));  // u - 1, valuation >= 1
  if (x.is_zero()) return PAdic::one(p, target);
  const long t = x.valuation().value();
  PAdic sum = PAdic::one(p, target);
  PAdic xj = PAdic::one(p, target);
  for (unsigned long j = 1; static_cast<long>(j) * t < target; ++j) {
    xj = xj * x;
    PAdic c = padic_binomial(s, j);
    if (c.is_zero()) continue;
    sum = sum + c * xj;
  }
  return sum;
}

}  // namespace qdede
