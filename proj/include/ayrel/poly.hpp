#pragma once

// Integer/rational univariate polynomials and the certificates built on them:
// Sturm real-root counts, irreducibility modulo a prime, and a numerical
// Pisot test by simultaneous (Durand-Kerner) iteration.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "ayrel/errors.hpp"
#include "ayrel/rational.hpp"

namespace ayrel {

/// Coefficients low degree first; the leading coefficient is nonzero.
struct IntPoly {
  std::vector<Integer> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const Integer& leading() const { return coeffs.back(); }

  static IntPoly from(std::vector<long> low_first) {
    IntPoly p;
    for (long c : low_first) p.coeffs.emplace_back(c);
    p.trim();
    return p;
  }

  void trim() {
    while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
  }

  Rational eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
  }

  friend bool operator==(const IntPoly&, const IntPoly&) = default;
};

/// g(X) = X^n + X^(n-1) + ... + X - 1, whose root in (0,1) is alpha.
inline IntPoly ay_minpoly(int n) {
  IntPoly p;
  p.coeffs.assign(static_cast<size_t>(n) + 1, Integer(1));
  p.coeffs[0] = -1;
  return p;
}

/// h(X) = X^n - X^(n-1) - ... - X - 1, whose largest root is 1/alpha.
inline IntPoly ay_reciprocal_poly(int n) {
  IntPoly p;
  p.coeffs.assign(static_cast<size_t>(n) + 1, Integer(-1));
  p.coeffs[static_cast<size_t>(n)] = 1;
  return p;
}

namespace detail {

using QPoly = std::vector<Rational>;  // low degree first, trimmed

inline void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly to_qpoly(const IntPoly& p) {
  QPoly q(p.coeffs.begin(), p.coeffs.end());
  trim(q);
  return q;
}

inline int deg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

inline QPoly derivative(const QPoly& p) {
  QPoly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

/// Remainder of a by b (b nonzero).
inline QPoly rem(QPoly a, const QPoly& b) {
  while (!a.empty() && deg(a) >= deg(b)) {
    Rational f = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (!a.empty() && deg(a) >= deg(b)) {
    Rational f = a.back() / b.back();
    size_t shift = a.size() - b.size();
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline QPoly gcd(QPoly a, QPoly b) {
  while (!b.empty()) {
    QPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lc = a.back();
    for (auto& c : a) c /= lc;
  }
  return a;
}

inline Rational eval(const QPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline std::vector<QPoly> sturm_chain(const QPoly& p) {
  std::vector<QPoly> chain{p, derivative(p)};
  while (!chain.back().empty() && deg(chain.back()) > 0) {
    QPoly r = rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

inline int sign_changes(const std::vector<QPoly>& chain, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& q : chain) {
    int s = sgn(eval(q, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

inline QPoly squarefree_part(const QPoly& p) {
  QPoly g = gcd(p, derivative(p));
  if (deg(g) <= 0) return p;
  return divmod(p, g).first;
}

}  // namespace detail

/// Cauchy bound 1 + max |a_i / a_n|: every complex root has smaller modulus.
inline Rational cauchy_bound(const IntPoly& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs(Rational(p.coeffs[static_cast<size_t>(i)])) / abs(Rational(p.leading()));
    if (r > m) m = r;
  }
  return m + 1;
}

/// Number of distinct real roots over all of R.
inline int sturm_real_roots(const IntPoly& p) {
  if (p.degree() < 1) throw Error(ErrorKind::InvalidArgument, "Sturm count needs degree >= 1");
  auto sq = detail::squarefree_part(detail::to_qpoly(p));
  auto chain = detail::sturm_chain(sq);
  Rational b = cauchy_bound(p);
  return detail::sign_changes(chain, -b) - detail::sign_changes(chain, b);
}

/// Number of distinct real roots in the half-open interval (lo, hi].
inline int sturm_roots_in(const IntPoly& p, const Rational& lo, const Rational& hi) {
  auto sq = detail::squarefree_part(detail::to_qpoly(p));
  auto chain = detail::sturm_chain(sq);
  return detail::sign_changes(chain, lo) - detail::sign_changes(chain, hi);
}

namespace detail {

using ModPoly = std::vector<int64_t>;  // low degree first, coefficients in [0, q)

inline void trim(ModPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int64_t inv_mod(int64_t a, int64_t q) {
  int64_t r = 1, b = a % q, e = q - 2;
  while (e > 0) {
    if (e & 1) r = r * b % q;
    b = b * b % q;
    e >>= 1;
  }
  return r;
}

inline ModPoly rem_mod(ModPoly a, const ModPoly& b, int64_t q) {
  int64_t inv = inv_mod(b.back(), q);
  while (!a.empty() && a.size() >= b.size()) {
    int64_t f = a.back() * inv % q;
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] = ((a[i + shift] - f * b[i]) % q + q) % q;
    a.pop_back();
    trim(a);
  }
  return a;
}

inline ModPoly mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, int64_t q) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % q;
  trim(r);
  return rem_mod(std::move(r), m, q);
}

inline ModPoly powmod(ModPoly base, int64_t e, const ModPoly& m, int64_t q) {
  ModPoly r{1};
  base = rem_mod(std::move(base), m, q);
  while (e > 0) {
    if (e & 1) r = mulmod(r, base, m, q);
    base = mulmod(base, base, m, q);
    e >>= 1;
  }
  return r;
}

inline ModPoly gcd_mod(ModPoly a, ModPoly b, int64_t q) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ModPoly r = rem_mod(a, b, q);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace detail

inline bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// True iff p is irreducible over F_q (q prime) with no drop in degree, which
/// certifies irreducibility over Q. Distinct-degree test: no factor of degree
/// d <= n/2 divides X^(q^d) - X.
inline bool irreducible_mod_prime(const IntPoly& p, int64_t q) {
  if (!is_prime(q)) throw Error(ErrorKind::InvalidArgument, "modulus must be prime");
  detail::ModPoly f;
  for (const auto& c : p.coeffs) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(q));
    f.push_back(r.get_si());
  }
  detail::trim(f);
  const int n = p.degree();
  if (static_cast<int>(f.size()) - 1 != n || n < 1) return false;
  if (n == 1) return true;
  detail::ModPoly x{0, 1};
  detail::ModPoly h = x;
  for (int d = 1; d <= n / 2; ++d) {
    h = detail::powmod(h, q, f, q);
    detail::ModPoly diff = h;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = ((diff[1] - 1) % q + q) % q;
    detail::trim(diff);
    if (diff.empty()) return false;
    auto g = detail::gcd_mod(f, diff, q);
    if (g.size() > 1) return false;
  }
  return true;
}

/// Smallest prime q <= bound certifying irreducibility, or 0 when none exists.
inline int64_t find_irreducibility_witness(const IntPoly& p, int64_t bound) {
  for (int64_t q = 2; q <= bound; ++q)
    if (is_prime(q) && irreducible_mod_prime(p, q)) return q;
  return 0;
}

/// All complex roots of p by Durand-Kerner iteration.
inline std::vector<std::complex<long double>> complex_roots(const IntPoly& p, int max_iter = 10000,
                                                            int restarts = 4) {
  using C = std::complex<long double>;
  const int n = p.degree();
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "root finding needs degree >= 1");
  std::vector<long double> a(static_cast<size_t>(n) + 1);
  const long double lead = p.leading().get_d();
  for (int i = 0; i <= n; ++i) a[static_cast<size_t>(i)] = p.coeffs[static_cast<size_t>(i)].get_d() / lead;
  auto eval = [&](C z) {
    C acc = 0;
    for (int i = n; i >= 0; --i) acc = acc * z + a[static_cast<size_t>(i)];
    return acc;
  };
  const long double radius = cauchy_bound(p).get_d();
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<long double> jitter(-0.05L, 0.05L);
  for (int attempt = 0; attempt <= restarts; ++attempt) {
    std::vector<C> z(static_cast<size_t>(n));
    const C seed(0.4L, 0.9L);
    for (int i = 0; i < n; ++i) {
      z[static_cast<size_t>(i)] = std::pow(seed, i) * (0.5L * radius);
      if (attempt > 0) z[static_cast<size_t>(i)] += C(jitter(rng), jitter(rng));
    }
    for (int it = 0; it < max_iter; ++it) {
      long double change = 0;
      for (int i = 0; i < n; ++i) {
        C denom = 1;
        for (int j = 0; j < n; ++j)
          if (j != i) denom *= z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
        if (std::abs(denom) == 0) break;
        C step = eval(z[static_cast<size_t>(i)]) / denom;
        z[static_cast<size_t>(i)] -= step;
        change = std::max(change, std::abs(step));
      }
      if (change < 1e-17L) {
        bool ok = true;
        for (const auto& r : z)
          if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) ok = false;
        if (ok) return z;
        break;
      }
    }
  }
  throw Error(ErrorKind::NumericFailure, "Durand-Kerner did not converge");
}

/// Exactly one root of modulus > 1 and every other root of modulus < 1 - tol.
inline bool is_pisot(const IntPoly& p, double tol) {
  if (!(tol > 0)) throw Error(ErrorKind::InvalidArgument, "pisot tolerance must be positive");
  int outside = 0;
  for (const auto& z : complex_roots(p)) {
    long double m = std::abs(z);
    if (m > 1) {
      ++outside;
    } else if (m >= 1 - static_cast<long double>(tol)) {
      return false;
    }
  }
  return outside == 1;
}

}  // namespace ayrel
