#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace orbgw {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long p, long q = 1) {
  if (q == 0) throw std::domain_error("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline Rational parse_rational(const std::string& s) {
  std::string t;
  for (char c : s)
    if (c != ' ' && c != '+') t += c;
  if (t.empty()) throw std::invalid_argument("empty rational");
  Rational r;
  if (r.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (r.get_den() == 0) throw std::domain_error("zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Integer floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Rational frac(const Rational& r) { return r - Rational(floor(r)); }

inline long floor_long(const Rational& r) {
  Integer f = floor(r);
  if (!f.fits_slong_p()) throw std::overflow_error("floor out of range");
  return f.get_si();
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Rational factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

inline Rational binomial(unsigned n, unsigned k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

inline Rational pow(const Rational& r, unsigned e) {
  Rational out(1);
  for (unsigned i = 0; i < e; ++i) out *= r;
  return out;
}

}  // namespace orbgw
