#pragma once

#include <gmpxx.h>

#include <string>

namespace ayrel {

using Integer = mpz_class;
/// GMP keeps `mpq_class` values canonical (lowest terms, positive denominator)
/// through every arithmetic operation; constructors from a numerator/denominator
/// pair go through `make_rational` so the invariant holds from the start.
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer floor_q(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_q(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline int sgn(const Rational& q) { return ::sgn(q); }

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Fixed-point decimal with `digits` fractional digits, rounded half away from
/// zero. Computed exactly, so the output never depends on the platform's floats.
inline std::string to_decimal(const Rational& q, int digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rational scaled = abs(q) * scale + Rational(1, 2);
  Integer n = floor_q(scaled);
  std::string s = n.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<size_t>(digits)) s.insert(0, static_cast<size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<size_t>(digits), ".");
  }
  if (q < 0 && n != 0) s.insert(0, "-");
  return s;
}

/// Dyadic rational `num / 2^bits`.
inline Rational dyadic(const Integer& num, unsigned long bits) {
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, bits);
  return make_rational(num, den);
}

}  // namespace ayrel
