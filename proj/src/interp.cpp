#include "qdede/interp.hpp"

#include <numeric>
#include <sstream>

#include "qdede/errors.hpp"

namespace qdede {

namespace {

void require_padic(const QContext& ctx, const char* who) {
  if (ctx.mode != Mode::padic) raise(errc::mode_error, std::string(who) + " needs padic mode");
}

void require_unit_residue(long x, unsigned long p, const char* who) {
  long r = x % static_cast<long>(p);
  if (r < 0) r += static_cast<long>(p);
  if (r == 0) raise(errc::not_a_unit, std::string(who) + ": argument divisible by p");
}

// [x]_{q^alpha} with base q.
Scalar bracket_alpha(long x, const QContext& ctx) { return q_int(x, ctx, 1); }

unsigned long mod_inverse_small(unsigned long a, unsigned long k) {
  a %= k;
  for (unsigned long x = 1; x < k; ++x)
    if (a * x % k == 1) return x;
  raise(errc::not_coprime, "no inverse modulo k");
}

bool scalar_is_zero(const Scalar& s) {
  return s.is_exact_zero() || (!s.is_rat() && s.padic().is_zero());
}

}  // namespace

PAdic angle(long x, const QContext& ctx) {
  require_padic(ctx, "angle");
  const unsigned long p = ctx.require_p("angle");
  require_unit_residue(x, p, "angle");
  PAdic xe = PAdic::from_int(x, p, ctx.precision);
  PAdic w = teichmuller(xe);
  Scalar den = Scalar(Rat(1)) - ctx.q;
  if (scalar_is_zero(den)) raise(errc::degenerate_q, "1 - q vanishes");
  Scalar bracket = (Scalar(Rat(1)) - ctx.q_pow(x)) / den;
  return (Scalar(w.inverse()) * bracket).embedded(p, ctx.precision);
}

Scalar teichmuller_inv_pow(long x, unsigned long e, const QContext& ctx) {
  require_padic(ctx, "teichmuller_inv_pow");
  const unsigned long p = ctx.require_p("teichmuller_inv_pow");
  require_unit_residue(x, p, "teichmuller_inv_pow");
  if (e % (p - 1) == 0) return Scalar(Rat(1));  // w^(p-1) = 1 exactly
  long r = x % static_cast<long>(p);
  if (r < 0) r += static_cast<long>(p);
  if (r == 1) return Scalar(Rat(1));  // w(1-unit) = 1 exactly
  PAdic w = teichmuller(PAdic::from_int(x, p, ctx.precision));
  return Scalar(w.pow(-static_cast<long>(e)));
}

Scalar a_tilde_integer(unsigned long m, long a, unsigned long N, const QContext& ctx, bool twist) {
  if (a < 1) raise(errc::out_of_range, "a must be a positive integer");
  if (N < 1) raise(errc::out_of_range, "N must be a positive integer");
  Scalar A = bracket_alpha(a, ctx);
  Scalar B = bracket_alpha(static_cast<long>(N), ctx);
  Scalar qa = ctx.q_pow(static_cast<long>(ctx.alpha) * a);  // q^(alpha a)
  Scalar sum = Scalar(Rat(0));
  Scalar qaj = Scalar(Rat(1));  // q^(alpha a j)
  for (unsigned long j = 0; j <= m; ++j) {
    Scalar g = ctx.literal_paper_mode
                   ? g_number_scaled(j, N, ctx)
                   : g_number_scaled(j + 1, N, ctx) / Scalar(Rat(static_cast<long>(j) + 1));
    Scalar term = Scalar(Rat(binomial_int(m, j))) * qaj * g;
    if (m - j > 0) term = term * A.pow(static_cast<long>(m - j));
    if (j > 0) term = term * B.pow(static_cast<long>(j));
    sum = sum + term;
    if (j < m) qaj = qaj * qa;
  }
  if (ctx.literal_paper_mode) sum = sum * ctx.q_pow(-static_cast<long>(ctx.alpha) * a);
  if (twist) {
    require_padic(ctx, "a_tilde_integer(twist)");
    sum = teichmuller_inv_pow(a, m + 1, ctx) * sum;
  }
  return sum;
}

PAdic a_tilde_series(const PAdic& s, long a, unsigned long N, const QContext& ctx,
                     long truncation) {
  require_padic(ctx, "a_tilde_series");
  const unsigned long p = ctx.require_p("a_tilde_series");
  require_unit_residue(a, p, "a_tilde_series");
  if (truncation < 1) raise(errc::config_error, "truncation must be >= 1");
  if (N % p != 0)
    raise(errc::series_divergence,
          "series terms do not decay unless p | N ([N]/[a] is a unit)");
  if (!s.is_zero() && s.valuation().value() < 0)
    raise(errc::out_of_range, "s must lie in Z_p");

  const long vN = vp_int(Int(N), p);
  Scalar A = bracket_alpha(a, ctx);
  Scalar B = bracket_alpha(static_cast<long>(N), ctx);
  Scalar rho = B / A;
  Scalar qa = ctx.q_pow(static_cast<long>(ctx.alpha) * a);

  // enough terms for the working precision; the tail lies below p^-target
  const long target = ctx.precision;
  long jmax = truncation;
  if ((target + vN) / vN < jmax) jmax = (target + vN) / vN + 1;

  PAdic sum = PAdic::zero(p, target + 2);
  Scalar rhoj = Scalar(Rat(1));
  Scalar qaj = Scalar(Rat(1));
  for (long j = 0; j <= jmax; ++j) {
    Scalar r = qaj * rhoj * g_number_scaled(static_cast<unsigned long>(j) + 1, N, ctx) /
               Scalar(Rat(j + 1));
    // term decay guarantee: v_p(term_j) >= j v_p(N)
    if (!scalar_is_zero(r)) {
      auto v = r.valuation(p);
      if (v && *v < j * vN)
        raise(errc::series_divergence, "series term decay violated (internal)");
    }
    PAdic c = padic_binomial(s, static_cast<unsigned long>(j));
    if (!c.is_zero() && !scalar_is_zero(r)) {
      Scalar term = Scalar(c) * r;
      sum = sum + term.embedded(p, ctx.precision + 2);
    }
    rhoj = rhoj * rho;
    qaj = qaj * qa;
  }

  PAdic w = teichmuller(PAdic::from_int(a, p, ctx.precision));
  PAdic w_inv = w.inverse();
  Scalar u = Scalar(w_inv) * A;
  PAdic up = u.embedded(p, ctx.precision);
  if (!up.is_one_unit()) raise(errc::not_one_unit, "<a : q^alpha> is not a 1-unit");
  return ((Scalar(w_inv) * Scalar(unit_power(up, s))) * Scalar(sum)).embedded(p, ctx.precision + 2);
}

PAdic a_tilde_series_int(long m, long a, unsigned long N, const QContext& ctx, long truncation) {
  const unsigned long p = ctx.require_p("a_tilde_series_int");
  if (m < 0) raise(errc::out_of_range, "integer order must be >= 0");
  const long guard = vp_factorial(static_cast<unsigned long>(truncation), p) + 2;
  PAdic s = PAdic::from_int(m, p, ctx.precision + guard);
  return a_tilde_series(s, a, N, ctx, truncation);
}

Scalar y_tilde(const YParams& params, const QContext& ctx) {
  if (params.h < 1 || params.k < 1 || params.l < 1)
    raise(errc::config_error, "h, k, l must be positive");
  if (std::gcd(params.h, params.k) != 1) raise(errc::not_coprime, "gcd(h, k) must be 1");
  if (params.l % params.k != 0)
    raise(errc::base_not_multiple, "k must divide the base exponent l");
  const unsigned long stride = params.l / params.k;
  Scalar denom = bracket_alpha(static_cast<long>(params.k), ctx);
  if (scalar_is_zero(denom)) raise(errc::degenerate_q, "[k] vanishes");
  Scalar acc = Scalar(Rat(0));
  for (unsigned long M = 1; M < params.k; ++M) {
    const unsigned long r = params.h * M % params.k;
    Scalar g = g_poly_scaled(params.m + 1, static_cast<long>(stride * r), params.l, ctx) /
               Scalar(Rat(params.m + 1));
    Scalar term = bracket_alpha(static_cast<long>(M), ctx) / denom * g;
    acc = (M % 2 == 1) ? acc + term : acc - term;
  }
  return acc;
}

Scalar dc_padic(unsigned long m, unsigned long h, unsigned long k, const QContext& ctx,
                PDivisiblePolicy policy) {
  if (h < 1 || k < 1) raise(errc::config_error, "h and k must be positive");
  if (std::gcd(h, k) != 1) raise(errc::not_coprime, "gcd(h, k) must be 1");
  const unsigned long p = ctx.require_p("dc_padic");
  if (k % p == 0) raise(errc::not_coprime, "p must not divide k");
  const bool twist = ctx.mode == Mode::padic;
  Scalar acc = Scalar(Rat(0));
  for (unsigned long M = 1; M < k; ++M) {
    const unsigned long aM = h * M % k;
    if (aM % p == 0) {
      if (policy == PDivisiblePolicy::reject)
        raise(errc::residue_divisible_by_p,
              "residue (hM)_k = " + std::to_string(aM) + " divisible by p at M = " +
                  std::to_string(M));
      continue;
    }
    Scalar term = bracket_alpha(static_cast<long>(M), ctx) *
                  a_tilde_integer(m, static_cast<long>(aM), k, ctx, twist);
    acc = (M % 2 == 1) ? acc + term : acc - term;
  }
  return acc;
}

VerificationReport check_eq7(unsigned long m, unsigned long h, unsigned long k,
                             const QContext& ctx) {
  Scalar lhs = bracket_alpha(static_cast<long>(k), ctx).pow(static_cast<long>(m) + 1) *
               y_tilde(YParams{m, h, k, k}, ctx);
  Scalar rhs = Scalar(Rat(0));
  for (unsigned long M = 1; M < k; ++M) {
    const unsigned long aM = h * M % k;
    Scalar term = bracket_alpha(static_cast<long>(M), ctx) *
                  a_tilde_integer(m, static_cast<long>(aM), k, ctx, false);
    rhs = (M % 2 == 1) ? rhs + term : rhs - term;
  }
  Scalar residual = lhs - rhs;
  VerificationReport rep;
  rep.suite = "eq7";
  rep.params = {{"m", std::to_string(m)},
                {"h", std::to_string(h)},
                {"k", std::to_string(k)},
                {"q", ctx.q.str()},
                {"alpha", std::to_string(ctx.alpha)}};
  rep.residual = residual;
  rep.pass = scalar_is_zero(residual);
  return rep;
}

namespace {

VerificationReport descent_report(const char* variant, unsigned long m, long a, unsigned long N,
                                  const QContext& ctx, Scalar residual, long tol) {
  VerificationReport rep;
  rep.suite = "descent";
  rep.params = {{"m", std::to_string(m)},      {"a", std::to_string(a)},
                {"N", std::to_string(N)},      {"p", std::to_string(ctx.p)},
                {"q", ctx.q.str()},            {"alpha", std::to_string(ctx.alpha)},
                {"variant", variant}};
  rep.residual = residual;
  rep.tolerance_exponent = tol;
  rep.pass = residual.norm_le(ctx.p, tol);
  if (N % ctx.p == 0)
    rep.notes = "p | N: the exclusion a+iN == 0 (mod p) is vacuous, full distribution sum";
  return rep;
}

}  // namespace

VerificationReport check_descent(unsigned long m, long a, unsigned long N, const QContext& ctx,
                                 std::optional<long> tolerance_exponent) {
  require_padic(ctx, "check_descent");
  const unsigned long p = ctx.require_p("check_descent");
  require_unit_residue(a, p, "check_descent");
  const long tol = tolerance_exponent.value_or(ctx.precision - 2);
  Scalar lhs = a_tilde_integer(m, a, N, ctx, true);
  Scalar unit = (Scalar(Rat(1)) + ctx.q_pow(static_cast<long>(N))) /
                (Scalar(Rat(1)) + ctx.q_pow(static_cast<long>(N * p)));
  Scalar rhs = Scalar(Rat(0));
  const long pN = static_cast<long>(p * N);
  for (unsigned long i = 0; i < p; ++i) {
    long arg = (a + static_cast<long>(i * N)) % pN;
    if (arg % static_cast<long>(p) == 0) continue;  // excluded residue class
    Scalar term = a_tilde_integer(m, arg, p * N, ctx, true);
    rhs = (i % 2 == 0) ? rhs + term : rhs - term;
  }
  Scalar residual = lhs - unit * rhs;
  return descent_report("integer", m, a, N, ctx, residual, tol);
}

VerificationReport check_descent_series(long m, long a, unsigned long N, const QContext& ctx,
                                        long truncation,
                                        std::optional<long> tolerance_exponent) {
  require_padic(ctx, "check_descent_series");
  const unsigned long p = ctx.require_p("check_descent_series");
  const long tol = tolerance_exponent.value_or(ctx.precision - 2);
  PAdic lhs = a_tilde_series_int(m, a, N, ctx, truncation);
  Scalar unit = (Scalar(Rat(1)) + ctx.q_pow(static_cast<long>(N))) /
                (Scalar(Rat(1)) + ctx.q_pow(static_cast<long>(N * p)));
  Scalar rhs = Scalar(Rat(0));
  const long pN = static_cast<long>(p * N);
  for (unsigned long i = 0; i < p; ++i) {
    long arg = (a + static_cast<long>(i * N)) % pN;
    if (arg % static_cast<long>(p) == 0) continue;
    Scalar term = Scalar(a_tilde_series_int(m, arg, p * N, ctx, truncation));
    rhs = (i % 2 == 0) ? rhs + term : rhs - term;
  }
  Scalar residual = Scalar(lhs) - unit * rhs;
  return descent_report("series", static_cast<unsigned long>(m), a, N, ctx, residual, tol);
}

Theorem21Quantities theorem21_quantities(unsigned long m, unsigned long h, unsigned long k,
                                         const QContext& ctx) {
  const unsigned long p = ctx.require_p("theorem21");
  if (std::gcd(h, k) != 1) raise(errc::not_coprime, "gcd(h, k) must be 1");
  if (k % p == 0) raise(errc::not_coprime, "p must not divide k");
  if ((m + 1) % (p - 1) != 0)
    raise(errc::config_error, "the theorem needs m+1 == 0 (mod p-1)");

  Scalar bk = bracket_alpha(static_cast<long>(k), ctx);
  Scalar bpk = bracket_alpha(static_cast<long>(p * k), ctx);
  Scalar unit = (Scalar(Rat(1)) + ctx.q_pow(static_cast<long>(k))) /
                (Scalar(Rat(1)) + ctx.q_pow(static_cast<long>(p * k)));
  const Scalar m1 = Scalar(Rat(m + 1));

  // Atilde at level pk through the polynomial route, argument x/(pk).
  auto level_pk = [&](long x) {
    return bpk.pow(static_cast<long>(m)) * g_poly_scaled(m + 1, x, p * k, ctx) / m1;
  };

  Theorem21Quantities out;
  Scalar split = Scalar(Rat(0)), deprived = Scalar(Rat(0)), second = Scalar(Rat(0));
  for (unsigned long M = 1; M < k; ++M) {
    const unsigned long aM = h * M % k;
    if (aM % p == 0)
      raise(errc::residue_divisible_by_p, "residue divisible by p at M = " + std::to_string(M));
    unsigned long iM = p;  // the unique branch index with aM + i k == 0 (mod p)
    Scalar dep_M = Scalar(Rat(0));
    Scalar branch_M = Scalar(Rat(0));
    for (unsigned long i = 0; i < p; ++i) {
      const long arg = static_cast<long>(aM + i * k);
      Scalar term = level_pk(arg);
      if ((aM + i * k) % p == 0) {
        iM = i;
        branch_M = (i % 2 == 0) ? term : -term;
      } else {
        dep_M = (i % 2 == 0) ? dep_M + term : dep_M - term;
      }
    }
    if (iM == p) raise(errc::config_error, "no p-divisible branch found (internal)");
    dep_M = unit * dep_M;
    branch_M = unit * branch_M;
    Scalar weight = bracket_alpha(static_cast<long>(M), ctx);
    if (M % 2 == 0) weight = -weight;
    split = split + weight * (dep_M + branch_M);
    deprived = deprived + weight * dep_M;
    second = second - weight * branch_M;  // second term enters with a minus sign
  }

  out.dc = dc_padic(m, h, k, ctx);
  out.split_sum = split;
  out.deprived_sum = deprived;
  out.corrected_second = -second;

  const unsigned long pinv = mod_inverse_small(p % k, k);
  out.h_desc = pinv * h % k;
  Scalar y1 = y_tilde(YParams{m, h, k, k}, ctx);
  Scalar y2 = y_tilde(YParams{m, out.h_desc, k, p * k}, ctx);
  Scalar bk_m1 = bk.pow(static_cast<long>(m) + 1);
  out.paper_second = bk_m1 * (bpk / bk) * y2;
  out.paper_rhs = bk_m1 * y1 - out.paper_second;
  return out;
}

std::vector<VerificationReport> check_theorem21(unsigned long m, unsigned long h, unsigned long k,
                                                const QContext& ctx) {
  Theorem21Quantities q = theorem21_quantities(m, h, k, ctx);
  auto params = [&](const char* part) {
    std::vector<std::pair<std::string, std::string>> ps = {
        {"m", std::to_string(m)},         {"h", std::to_string(h)},
        {"k", std::to_string(k)},         {"p", std::to_string(ctx.p)},
        {"q", ctx.q.str()},               {"alpha", std::to_string(ctx.alpha)},
        {"part", part}};
    return ps;
  };

  std::vector<VerificationReport> reps;
  {
    VerificationReport r;
    r.suite = "theorem21";
    r.params = params("decomposition");
    r.residual = q.dc - q.split_sum;
    r.pass = scalar_is_zero(r.residual);
    r.notes = "Definition-1 sum vs per-M modulus-p distribution split (base q^(pk))";
    reps.push_back(std::move(r));
  }
  {
    VerificationReport r;
    r.suite = "theorem21";
    r.params = params("paper_form");
    r.residual = q.dc - q.paper_rhs;
    r.pass = true;
    r.notes = "informational: compact two-Ytilde form as printed; its second term "
              "omits the measure unit factor, the per-M branch signs, and the "
              "[p]-power scale of the exact split";
    reps.push_back(std::move(r));
  }
  {
    VerificationReport r;
    r.suite = "theorem21";
    r.params = params("second_term_gap");
    r.residual = q.corrected_second - q.paper_second;
    r.pass = true;
    r.notes = "informational: exact branch total minus the printed second term";
    reps.push_back(std::move(r));
  }
  return reps;
}

}  // namespace qdede
