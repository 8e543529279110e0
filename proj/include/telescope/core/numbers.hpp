#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace telescope {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Integer& a) { return sgn(a) == 0; }
inline bool is_one(const Integer& a) { return a == 1; }
inline bool is_negative(const Integer& a) { return sgn(a) < 0; }
inline bool is_compound(const Integer&) { return false; }
inline std::string to_string(const Integer& a) { return a.get_str(); }

inline bool is_zero(const Rational& a) { return sgn(a) == 0; }
inline bool is_one(const Rational& a) { return a == 1; }
inline bool is_negative(const Rational& a) { return sgn(a) < 0; }
inline bool is_compound(const Rational&) { return false; }
inline std::string to_string(const Rational& a) { return a.get_str(); }

inline std::optional<long> as_integer(const Rational& a) {
  if (a.get_den() != 1 || !a.get_num().fits_slong_p()) return std::nullopt;
  return a.get_num().get_si();
}

inline Rational as_rational(const Rational& a) { return a; }

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Rational pow(const Rational& a, long e) {
  Rational base = a;
  if (e < 0) {
    base = 1 / a;
    e = -e;
  }
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace telescope
