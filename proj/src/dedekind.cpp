#include "qdede/dedekind.hpp"

#include <mutex>
#include <numeric>

#include "qdede/errors.hpp"

namespace qdede {

namespace {
std::mutex euler_mutex;
std::vector<std::vector<Rat>> euler_cache;  // euler_cache[m] = coeffs of E_m
}  // namespace

std::vector<Rat> euler_poly_coeffs(unsigned long m) {
  std::lock_guard<std::mutex> lock(euler_mutex);
  if (euler_cache.empty()) euler_cache.push_back({Rat(1)});  // E_0 = 1
  while (euler_cache.size() <= m) {
    const unsigned long n = euler_cache.size();
    std::vector<Rat> c(n + 1, Rat(0));
    c[n] = 1;  // x^n
    for (unsigned long k = 0; k < n; ++k) {
      Rat w = Rat(binomial_int(n, k)) / 2;
      const auto& ek = euler_cache[k];
      for (std::size_t i = 0; i < ek.size(); ++i) c[i] -= w * ek[i];
    }
    euler_cache.push_back(std::move(c));
  }
  return euler_cache[m];
}

Rat euler_poly(unsigned long m, const Rat& x) {
  auto c = euler_poly_coeffs(m);
  Rat acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Int rat_floor(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

Rat rat_frac(const Rat& x) { return Rat(x - Rat(rat_floor(x))); }

Rat periodic_euler(unsigned long m, const Rat& x) {
  Int fl = rat_floor(x);
  Rat v = euler_poly(m, rat_frac(x));
  if (mpz_odd_p(fl.get_mpz_t())) v = -v;
  return v;
}

Rat dc_sum(const DCSumParams& params) {
  if (params.h < 1 || params.k < 1) raise(errc::config_error, "h and k must be positive");
  if (std::gcd(params.h, params.k) != 1) raise(errc::not_coprime, "gcd(h, k) must be 1");
  Rat acc(0);
  for (unsigned long M = 1; M < params.k; ++M) {
    Rat mk(M, params.k), hmk(params.h * M, params.k);
    mk.canonicalize();
    hmk.canonicalize();
    Rat term = mk * periodic_euler(params.m, hmk);
    if (M % 2 == 0) term = -term;
    acc += term;
  }
  return acc;
}

}  // namespace qdede
