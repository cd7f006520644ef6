#include "qdede/genocchi.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <tuple>
#include <vector>

#include "qdede/errors.hpp"

namespace qdede {

namespace {

std::mutex classical_mutex;
std::vector<Rat> classical_cache;  // grows monotonically

std::string q_cache_key(const QContext& ctx) {
  std::ostringstream os;
  if (ctx.q_rational()) {
    os << "r:" << rat_str(ctx.q.rat());
  } else {
    os << "p:" << ctx.q.padic().str();
  }
  return os.str();
}

using GCacheKey = std::tuple<std::string, unsigned long, unsigned long>;  // (q, N, alpha)
std::mutex g_mutex;
std::map<GCacheKey, std::vector<Scalar>> g_cache;

Scalar g_number_scaled_impl(unsigned long n, unsigned long N, const QContext& ctx) {
  if (n == 0) return Scalar(Rat(0));
  Scalar Q = ctx.q_pow(static_cast<long>(N));
  Scalar Qa = Q.pow(static_cast<long>(ctx.alpha));
  Scalar den = Scalar(Rat(1)) - Qa;
  if (den.is_exact_zero() || (!den.is_rat() && den.padic().is_zero()))
    raise(errc::degenerate_q, "1 - q^(alpha N) vanishes");
  Scalar sum = Scalar(Rat(0));
  Scalar Qal = Scalar(Rat(1));  // Q^(alpha l)
  for (unsigned long l = 0; l < n; ++l) {
    Rat c(binomial_int(n - 1, l));
    if (l % 2 == 1) c = -c;
    sum = sum + Scalar(c) / (Scalar(Rat(1)) + Qal);
    if (l + 1 < n) Qal = Qal * Qa;
  }
  Scalar lead = Scalar(Rat(n)) * (Scalar(Rat(1)) + Q) / den.pow(static_cast<long>(n - 1));
  return lead * sum;
}

}  // namespace

Rat classical_genocchi(unsigned long n) {
  std::lock_guard<std::mutex> lock(classical_mutex);
  if (classical_cache.empty()) classical_cache.push_back(Rat(0));  // G_0
  while (classical_cache.size() <= n) {
    const unsigned long m = classical_cache.size();
    Rat acc(0);
    for (unsigned long k = 0; k < m; ++k)
      acc += Rat(binomial_int(m, k)) * classical_cache[k];
    Rat g = (m == 1 ? Rat(2) : Rat(0)) - acc;
    g /= 2;
    classical_cache.push_back(g);
  }
  return classical_cache[n];
}

Scalar g_number_scaled(unsigned long n, unsigned long N, const QContext& ctx) {
  if (n == 0) return Scalar(Rat(0));
  GCacheKey key{q_cache_key(ctx), N, ctx.alpha};
  std::lock_guard<std::mutex> lock(g_mutex);
  auto& vec = g_cache[key];
  if (vec.empty()) vec.push_back(Scalar(Rat(0)));
  while (vec.size() <= n)
    vec.push_back(g_number_scaled_impl(static_cast<unsigned long>(vec.size()), N, ctx));
  return vec[n];
}

Scalar g_number_scaled_fresh(unsigned long n, unsigned long N, const QContext& ctx) {
  return g_number_scaled_impl(n, N, ctx);
}

Scalar g_number(unsigned long n, const QContext& ctx) { return g_number_scaled(n, 1, ctx); }

Scalar g_poly_scaled(unsigned long n, long a, unsigned long N, const QContext& ctx) {
  if (n == 0) return Scalar(Rat(0));
  if (a == 0) return g_number_scaled(n, N, ctx);
  Scalar Q = ctx.q_pow(static_cast<long>(N));
  Scalar Qa = Q.pow(static_cast<long>(ctx.alpha));
  Scalar den = Scalar(Rat(1)) - Qa;
  if (den.is_exact_zero() || (!den.is_rat() && den.padic().is_zero()))
    raise(errc::degenerate_q, "1 - q^(alpha N) vanishes");
  Scalar qa_step = ctx.q_pow(static_cast<long>(ctx.alpha) * a);  // q^(alpha a)
  Scalar sum = Scalar(Rat(0));
  Scalar Qal = Scalar(Rat(1));   // Q^(alpha l)
  Scalar qal = Scalar(Rat(1));   // q^(alpha l a)
  for (unsigned long l = 0; l < n; ++l) {
    Rat c(binomial_int(n - 1, l));
    if (l % 2 == 1) c = -c;
    sum = sum + Scalar(c) * qal / (Scalar(Rat(1)) + Qal);
    if (l + 1 < n) {
      Qal = Qal * Qa;
      qal = qal * qa_step;
    }
  }
  Scalar lead = Scalar(Rat(n)) * (Scalar(Rat(1)) + Q) / den.pow(static_cast<long>(n - 1));
  return lead * sum;
}

PAdic g_number_integral(unsigned long n, const QContext& ctx, unsigned long level) {
  const unsigned long p = ctx.require_p("g_number_integral");
  if (n == 0) return PAdic::zero(p, ctx.precision);
  Integrand f = Integrand::kernel(KernelSpec{n - 1, 1, 0, 1}, 1);
  Scalar v = Scalar(Rat(n)) * fermionic_integral(f, ctx, level);
  return v.embedded(p, ctx.precision);
}

PAdic g_number_ab_integral(unsigned long n, unsigned long beta, const QContext& ctx,
                           unsigned long level) {
  const unsigned long p = ctx.require_p("g_number_ab_integral");
  if (beta < 1) raise(errc::config_error, "beta must be >= 1");
  if (n == 0) return PAdic::zero(p, ctx.precision);
  Integrand f = Integrand::kernel(KernelSpec{n - 1, 1, 0, beta}, beta);
  Scalar v = Scalar(Rat(n)) * fermionic_integral(f, ctx, level);
  return v.embedded(p, ctx.precision);
}

PAdic g_poly_integral(unsigned long n, long a, unsigned long N, const QContext& ctx,
                      unsigned long level) {
  const unsigned long p = ctx.require_p("g_poly_integral");
  if (a < 0) raise(errc::out_of_range, "a must be >= 0");
  if (n == 0) return PAdic::zero(p, ctx.precision);
  Integrand f = Integrand::kernel(KernelSpec{n - 1, N, a, N}, N);
  Scalar v = Scalar(Rat(n)) * fermionic_integral(f, ctx, level);
  return v.embedded(p, ctx.precision);
}

VerificationReport check_identity5(unsigned long n, long a, unsigned long N, const QContext& ctx) {
  if (ctx.mode != Mode::rational && !ctx.q_rational())
    raise(errc::mode_error, "exact identity check needs the rational backbone");
  Scalar lhs = g_poly_scaled(n, a, N, ctx);
  // q^(-alpha a) sum_l C(n,l) q^(alpha l a) G_l ((1-q^(alpha a))/(1-q^(alpha N)))^(n-l)
  Scalar bracket_num = Scalar(Rat(1)) - ctx.q_pow(static_cast<long>(ctx.alpha) * a);
  Scalar bracket_den = Scalar(Rat(1)) - ctx.q_pow(static_cast<long>(ctx.alpha * N));
  if (bracket_den.is_exact_zero()) raise(errc::degenerate_q, "1 - q^(alpha N) vanishes");
  Scalar bracket = bracket_num / bracket_den;
  Scalar rhs = Scalar(Rat(0));
  for (unsigned long l = 0; l <= n; ++l) {
    Scalar term = Scalar(Rat(binomial_int(n, l))) *
                  ctx.q_pow(static_cast<long>(ctx.alpha * l) * a) * g_number_scaled(l, N, ctx);
    if (n - l > 0) term = term * bracket.pow(static_cast<long>(n - l));
    rhs = rhs + term;
  }
  rhs = rhs * ctx.q_pow(-static_cast<long>(ctx.alpha) * a);
  Scalar residual = lhs - rhs;

  VerificationReport rep;
  rep.suite = "identity5";
  rep.params = {{"n", std::to_string(n)},
                {"a", std::to_string(a)},
                {"N", std::to_string(N)},
                {"q", ctx.q.str()},
                {"alpha", std::to_string(ctx.alpha)}};
  rep.residual = residual;
  rep.pass = residual.is_exact_zero();
  return rep;
}

DistributionCheck check_distribution_full(unsigned long n, unsigned long d, long a,
                                          unsigned long N, const QContext& ctx) {
  if (d % 2 == 0) raise(errc::even_modulus, "the multiplication identity needs odd d");
  if (a < 0) raise(errc::out_of_range, "a must be >= 0");
  Scalar lhs = g_poly_scaled(n, static_cast<long>(d) * a, N, ctx);

  Scalar unit = (Scalar(Rat(1)) + ctx.q_pow(static_cast<long>(N))) /
                (Scalar(Rat(1)) + ctx.q_pow(static_cast<long>(N * d)));
  Scalar ratio = (Scalar(Rat(1)) - ctx.q_pow(static_cast<long>(ctx.alpha * N * d))) /
                 (Scalar(Rat(1)) - ctx.q_pow(static_cast<long>(ctx.alpha * N)));
  Scalar prefactor = unit;
  if (n >= 1) prefactor = unit * ratio.pow(static_cast<long>(n - 1));

  Scalar rhs = Scalar(Rat(0));
  Scalar rhs_literal = Scalar(Rat(0));
  const bool literal_ok = (N % d == 0);
  for (unsigned long i = 0; i < d; ++i) {
    long arg = static_cast<long>(d) * a + static_cast<long>(i * N);
    Scalar term = g_poly_scaled(n, arg, N * d, ctx);
    rhs = (i % 2 == 0) ? rhs + term : rhs - term;
    if (literal_ok) {
      Scalar lit = g_poly_scaled(n, a + static_cast<long>(i * (N / d)), N, ctx);
      rhs_literal = (i % 2 == 0) ? rhs_literal + lit : rhs_literal - lit;
    }
  }
  Scalar residual = lhs - prefactor * rhs;

  DistributionCheck out;
  out.corrected.suite = "distribution6";
  out.corrected.params = {{"n", std::to_string(n)}, {"d", std::to_string(d)},
                          {"a", std::to_string(a)}, {"N", std::to_string(N)},
                          {"q", ctx.q.str()},       {"alpha", std::to_string(ctx.alpha)}};
  out.corrected.residual = residual;
  out.corrected.pass = residual.is_exact_zero() ||
                       (!residual.is_rat() && residual.padic().is_zero());
  if (literal_ok && d > 1) out.literal_residual = lhs - prefactor * rhs_literal;
  return out;
}

VerificationReport check_distribution(unsigned long n, unsigned long d, long a, unsigned long N,
                                      const QContext& ctx) {
  return check_distribution_full(n, d, a, N, ctx).corrected;
}

std::size_t genocchi_cache_entries() {
  std::lock_guard<std::mutex> lock(g_mutex);
  std::size_t c = 0;
  for (const auto& [k, v] : g_cache) c += v.size();
  return c;
}

void genocchi_cache_clear() {
  std::lock_guard<std::mutex> lock(g_mutex);
  g_cache.clear();
}

}  // namespace qdede
