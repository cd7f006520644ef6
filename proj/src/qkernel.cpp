#include "qdede/qkernel.hpp"

#include <sstream>

#include "qdede/errors.hpp"

namespace qdede {

namespace {

void check_denominator(const Scalar& d) {
  if (d.is_rat()) {
    if (d.rat() == 0) raise(errc::degenerate_q, "denominator 1 - Q^alpha vanishes");
  } else if (d.padic().is_zero()) {
    raise(errc::degenerate_q, "denominator 1 - Q^alpha indistinguishable from 0");
  }
}

// Unreduced fraction accumulator. Denominators in the level sums form a
// divisibility chain, so additions stay integer-only; gcd reduction happens
// once, at the end.
struct RawFrac {
  Int num{0};
  Int den{1};

  void add(const Int& n2, const Int& d2) {
    if (d2 == den) {
      num += n2;
      return;
    }
    if (mpz_divisible_p(d2.get_mpz_t(), den.get_mpz_t())) {
      Int f;
      mpz_divexact(f.get_mpz_t(), d2.get_mpz_t(), den.get_mpz_t());
      num = num * f + n2;
      den = d2;
      return;
    }
    if (mpz_divisible_p(den.get_mpz_t(), d2.get_mpz_t())) {
      Int f;
      mpz_divexact(f.get_mpz_t(), den.get_mpz_t(), d2.get_mpz_t());
      num += n2 * f;
      return;
    }
    num = num * d2 + n2 * den;
    den = den * d2;
  }

  Rat to_rat() const {
    Rat r;
    r.get_num() = num;
    r.get_den() = den;
    r.canonicalize();
    return r;
  }
};

unsigned long pow_ul_checked(unsigned long base, unsigned long e, const char* who) {
  unsigned long r = 1;
  for (unsigned long i = 0; i < e; ++i) {
    if (r > (1ul << 40) / base) raise(errc::config_error, std::string(who) + ": level too large");
    r *= base;
  }
  return r;
}

// Exact rational level sum for a kernel integrand. One small multiplication
// per sample point; the constant denominator (1 - q^(alpha scale))^power and
// the measure factor are applied once at the end.
Rat kernel_level_sum_rational(const KernelSpec& k, unsigned long l, const QContext& ctx,
                              unsigned long points) {
  const Rat& q = ctx.q.rat();
  const Int& e = q.get_num();
  const Int& d = q.get_den();
  const unsigned long alpha = ctx.alpha;
  if (static_cast<long>(l) < static_cast<long>(k.twist))
    raise(errc::config_error, "kernel twist exceeding the measure base is unsupported");
  const unsigned long w = l - k.twist;  // residual q^(w a) factor per point

  RawFrac acc;
  if (k.power == 0) {
    // f(a)(-Q)^a = (-1)^a q^(w a)
    Int num_state = 1, den_state = 1;
    Int estep = pow_int(e, w), dstep = pow_int(d, w);
    for (unsigned long a = 0; a < points; ++a) {
      acc.add(a % 2 == 0 ? num_state : Int(-num_state), den_state);
      num_state *= estep;
      den_state *= dstep;
    }
    return acc.to_rat();
  }

  // bracket numerator state: q^(alpha(scale a + offset)) = pe/pd
  if (k.offset < 0) raise(errc::config_error, "kernel offset must be >= 0");
  const unsigned long boff = alpha * static_cast<unsigned long>(k.offset);
  const unsigned long bstep = alpha * k.scale;
  Int pe = pow_int(e, boff), pd = pow_int(d, boff);
  Int es = pow_int(e, bstep), ds = pow_int(d, bstep);
  // term denominator: d^(power*(boff + bstep a) + w a), maintained incrementally
  Int den_state = pow_int(d, k.power * boff);
  Int den_step = pow_int(d, k.power * bstep + w);
  Int tw = 1;  // e^(w a)
  Int ew = pow_int(e, w);
  Int t, num;
  for (unsigned long a = 0; a < points; ++a) {
    t = pd - pe;
    mpz_pow_ui(num.get_mpz_t(), t.get_mpz_t(), k.power);
    if (w != 0) num *= tw;
    acc.add(a % 2 == 0 ? num : Int(-num), den_state);
    pe *= es;
    pd *= ds;
    den_state *= den_step;
    if (w != 0) tw *= ew;
  }

  // restore the constant bracket denominator (1 - q^(alpha scale))^power
  Rat sum = acc.to_rat();
  Rat bden = Rat(1) - pow_rat(q, static_cast<long>(bstep));
  if (bden == 0) raise(errc::degenerate_q, "denominator 1 - q^(alpha scale) vanishes");
  return Rat(sum / pow_rat(bden, static_cast<long>(k.power)));
}

}  // namespace

Scalar q_int(long x, const QContext& ctx, unsigned long base_exponent) {
  if (x == 0) return Scalar(Rat(0));
  if (x == 1) return Scalar(Rat(1));
  Scalar Q = ctx.q_pow(static_cast<long>(base_exponent));
  Scalar den = Scalar(Rat(1)) - Q.pow(static_cast<long>(ctx.alpha));
  check_denominator(den);
  Scalar num = Scalar(Rat(1)) - Q.pow(static_cast<long>(ctx.alpha) * x);
  return num / den;
}

Scalar measure_value_base(const Int& a, unsigned long n, unsigned long p, const Scalar& q) {
  if (n < 1) raise(errc::out_of_range, "measure level must be >= 1");
  Int pn = pow_int(Int(p), n);
  if (a < 0 || a >= pn) raise(errc::out_of_range, "coset representative outside [0, p^n)");
  if (!a.fits_slong_p() || !pn.fits_slong_p())
    raise(errc::out_of_range, "coset representative too large");
  const long al = a.get_si();
  Scalar mq = (-q).pow(al);
  Scalar den = Scalar(Rat(1)) + q.pow(pn.get_si());
  check_denominator(den);
  return mq * (Scalar(Rat(1)) + q) / den;
}

Scalar measure_value(const Int& a, unsigned long n, const QContext& ctx) {
  return measure_value_base(a, n, ctx.require_p("measure_value"), ctx.q);
}

Integrand Integrand::kernel(const KernelSpec& spec, unsigned long base_exponent) {
  Integrand f;
  f.spec_ = spec;
  f.base_exponent_ = base_exponent;
  return f;
}

Integrand Integrand::one() {
  Integrand f;
  f.spec_ = KernelSpec{0, 1, 0, 0};
  f.base_exponent_ = 1;
  return f;
}

Integrand Integrand::from_function(std::function<Scalar(long, const QContext&)> f,
                                   unsigned long base_exponent) {
  Integrand g;
  g.fn_ = std::move(f);
  g.base_exponent_ = base_exponent;
  return g;
}

Scalar Integrand::eval(long a, const QContext& ctx) const {
  if (!spec_) return fn_(a, ctx);
  const KernelSpec& k = *spec_;
  Scalar twist = ctx.q_pow(-static_cast<long>(k.twist) * a);
  if (k.power == 0) return twist;
  Scalar den = Scalar(Rat(1)) - ctx.q_pow(static_cast<long>(ctx.alpha * k.scale));
  check_denominator(den);
  Scalar num = Scalar(Rat(1)) -
               ctx.q_pow(static_cast<long>(ctx.alpha) * (static_cast<long>(k.scale) * a + k.offset));
  return twist * (num / den).pow(static_cast<long>(k.power));
}

unsigned long default_level_cap(unsigned long p) {
  unsigned long cap = 0, pn = 1;
  while (pn <= (1ul << 21)) {
    pn *= p;
    ++cap;
  }
  return cap;
}

Scalar fermionic_integral(const Integrand& f, const QContext& ctx, unsigned long level) {
  if (ctx.mode != Mode::padic)
    raise(errc::mode_error, "the defining limit exists only p-adically");
  if (level < 1) raise(errc::config_error, "integral level must be >= 1");
  const unsigned long p = ctx.require_p("fermionic_integral");
  const unsigned long points = pow_ul_checked(p, level, "fermionic_integral");
  const unsigned long l = f.base_exponent();

  if (ctx.q_rational() && f.spec()) {
    Rat sum = kernel_level_sum_rational(*f.spec(), l, ctx, points);
    Rat Q = pow_rat(ctx.q.rat(), static_cast<long>(l));
    Rat mden = Rat(1) + pow_rat(Q, static_cast<long>(points));
    if (mden == 0) raise(errc::degenerate_q, "measure denominator vanishes");
    return Scalar(Rat((1 + Q) / mden * sum));
  }

  // Generic path (p-adic q or a free-form integrand).
  Scalar Q = ctx.q_pow(static_cast<long>(l));
  Scalar mden = Scalar(Rat(1)) + Q.pow(static_cast<long>(points));
  check_denominator(mden);
  Scalar factor = (Scalar(Rat(1)) + Q) / mden;
  Scalar acc = Scalar(Rat(0));
  Scalar qa = Scalar(Rat(1));
  Scalar mQ = -Q;
  for (unsigned long a = 0; a < points; ++a) {
    acc = acc + f.eval(static_cast<long>(a), ctx) * qa;
    if (a + 1 < points) qa = qa * mQ;
  }
  return factor * acc;
}

std::optional<long> delta_valuation(const Scalar& d, unsigned long p) {
  return d.valuation(p);
}

IntegralResult integral_adaptive(const Integrand& f, const QContext& ctx, long target_exponent) {
  if (ctx.mode != Mode::padic)
    raise(errc::mode_error, "the defining limit exists only p-adically");
  const unsigned long p = ctx.require_p("integral_adaptive");
  const unsigned long cap = default_level_cap(p);
  Scalar prev = f.eval(0, ctx);  // level-0 sum collapses to f(0)
  std::optional<long> last;
  for (unsigned long level = 1; level <= cap; ++level) {
    Scalar cur = fermionic_integral(f, ctx, level);
    Scalar delta = cur - prev;
    last = delta_valuation(delta, p);
    if (delta.norm_le(p, target_exponent))
      return IntegralResult{cur.embedded(p, ctx.precision), level, last};
    prev = cur;
  }
  std::ostringstream os;
  os << "no convergence to p^-" << target_exponent << " by level " << cap << "; last delta has v_p ";
  if (last)
    os << *last;
  else
    os << "inf";
  raise(errc::no_convergence, os.str());
}

}  // namespace qdede
