#include "qdede/rational.hpp"

#include <cctype>

#include "qdede/errors.hpp"

namespace qdede {

Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rat pow_rat(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  if (base == 0) {
    if (e > 0) return Rat(0);
    raise(errc::divide_by_zero, "0 raised to a negative power");
  }
  const unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  Rat r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), a);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), a);
  if (e < 0) {
    mpq_inv(r.get_mpq_t(), r.get_mpq_t());
  }
  // powers of a canonical fraction are canonical; sign fix is all mpq_inv did
  return r;
}

Int binomial_int(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Int factorial_int(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

long vp_int(const Int& x, unsigned long p) {
  if (x == 0) raise(errc::divide_by_zero, "v_p(0) requested");
  Int q, pz(static_cast<unsigned long>(p));
  return static_cast<long>(mpz_remove(q.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t()));
}

long vp_rat(const Rat& x, unsigned long p) {
  if (x == 0) raise(errc::divide_by_zero, "v_p(0) requested");
  long v = 0;
  if (mpz_divisible_ui_p(x.get_num().get_mpz_t(), p)) v += vp_int(x.get_num(), p);
  if (mpz_divisible_ui_p(x.get_den().get_mpz_t(), p)) v -= vp_int(x.get_den(), p);
  return v;
}

long vp_factorial(unsigned long n, unsigned long p) {
  long v = 0;
  while (n > 0) {
    n /= p;
    v += static_cast<long>(n);
  }
  return v;
}

bool is_odd_prime(unsigned long p) {
  if (p < 3 || p % 2 == 0) return false;
  Int z(p);
  return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) raise(errc::config_error, "empty rational literal");
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/' && c != '-' && c != '+')
      raise(errc::config_error, "malformed rational literal '" + s + "'");
  }
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    raise(errc::config_error, "malformed rational literal '" + s + "'");
  if (r.get_den() == 0) raise(errc::config_error, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& x) { return x.get_str(); }

}  // namespace qdede
