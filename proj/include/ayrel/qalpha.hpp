#pragma once

// Exact arithmetic in Q(alpha), alpha the root in (0,1) of
// alpha + alpha^2 + ... + alpha^g = 1.
//
// Elements are coefficient vectors in the power basis 1, alpha, ..., alpha^(g-1).
// Equality is exact coefficient equality. Order comparisons go through `sign`,
// which first tries a floating-point filter with a rigorous error bound and
// otherwise evaluates the element on a certified rational isolating interval
// for alpha, refining that interval on demand.

#include <cctype>
#include <cmath>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "ayrel/errors.hpp"
#include "ayrel/poly.hpp"
#include "ayrel/rational.hpp"

namespace ayrel {

class NFContext;
using Context = std::shared_ptr<const NFContext>;

struct RationalInterval {
  Rational lo;
  Rational hi;
};

class NFContext {
 public:
  static constexpr int kDefaultPrimeBound = 200;

  int degree() const { return g_; }
  const IntPoly& minpoly() const { return minpoly_; }
  /// Certified interval containing alpha and no other real root of the minimal polynomial.
  const RationalInterval& root_interval() const { return root_interval_; }
  /// Prime q for which the minimal polynomial is irreducible over F_q.
  int64_t irreducibility_witness() const { return witness_; }
  /// Floating approximation of alpha^i, 0 <= i < g, correct to one ulp.
  double power_double(int i) const { return pow_double_[static_cast<size_t>(i)]; }

  /// Isolating interval for alpha of width at most 2^-bits, with the powers
  /// lo^i and hi^i precomputed. Refines lazily; safe to call concurrently.
  struct Level {
    unsigned long bits;
    RationalInterval alpha;
    std::vector<Rational> lo_pow;
    std::vector<Rational> hi_pow;
  };
  static constexpr unsigned long kBaseBits = 128;
  static constexpr int kMaxLevels = 7;  // 128 .. 8192 bits

  const Level& level(int k) const {
    std::lock_guard<std::mutex> lock(mu_);
    while (static_cast<int>(levels_.size()) <= k) {
      unsigned long bits = kBaseBits << levels_.size();
      levels_.push_back(std::make_unique<Level>(make_level(bits)));
    }
    return *levels_[static_cast<size_t>(k)];
  }

  NFContext(const NFContext&) = delete;
  NFContext& operator=(const NFContext&) = delete;

  friend Context make_context(int g, int64_t prime_bound);

 private:
  NFContext() = default;

  Level make_level(unsigned long bits) const {
    RationalInterval iv = finest_;
    Rational width_target = dyadic(1, bits);
    while (iv.hi - iv.lo > width_target) {
      Rational mid = (iv.lo + iv.hi) / 2;
      if (sgn(minpoly_.eval(mid)) < 0) iv.lo = mid; else iv.hi = mid;
    }
    finest_ = iv;
    Level l{bits, iv, {}, {}};
    Rational plo = 1, phi = 1;
    for (int i = 0; i < g_; ++i) {
      l.lo_pow.push_back(plo);
      l.hi_pow.push_back(phi);
      plo *= iv.lo;
      phi *= iv.hi;
    }
    return l;
  }

  int g_ = 0;
  IntPoly minpoly_;
  RationalInterval root_interval_;
  int64_t witness_ = 0;
  std::vector<double> pow_double_;
  mutable std::mutex mu_;
  mutable RationalInterval finest_;
  mutable std::vector<std::unique_ptr<Level>> levels_;
};

/// Builds the context for genus g: certifies a unique root in the isolating
/// interval by a Sturm count and irreducibility by a mod-q witness, q <= prime_bound.
inline Context make_context(int g, int64_t prime_bound = NFContext::kDefaultPrimeBound) {
  if (g < 2) throw Error(ErrorKind::InvalidGenus, "genus must be at least 2, got " + std::to_string(g));
  std::shared_ptr<NFContext> ctx(new NFContext());
  ctx->g_ = g;
  ctx->minpoly_ = ay_minpoly(g);

  RationalInterval iv{Rational(0), Rational(1)};
  for (int i = 0; i < 12; ++i) {
    Rational mid = (iv.lo + iv.hi) / 2;
    if (sgn(ctx->minpoly_.eval(mid)) < 0) iv.lo = mid; else iv.hi = mid;
  }
  if (!(sgn(ctx->minpoly_.eval(iv.lo)) < 0 && sgn(ctx->minpoly_.eval(iv.hi)) > 0) || !(iv.lo > 0 && iv.hi < 1))
    throw Error(ErrorKind::InternalError, "root bracketing failed");
  if (sturm_roots_in(ctx->minpoly_, iv.lo, iv.hi) != 1)
    throw Error(ErrorKind::CertificateFailure, "isolating interval does not hold exactly one root");
  ctx->root_interval_ = iv;
  ctx->finest_ = iv;

  ctx->witness_ = find_irreducibility_witness(ctx->minpoly_, prime_bound);
  if (ctx->witness_ == 0)
    throw Error(ErrorKind::CertificateFailure, "no irreducibility witness prime <= " + std::to_string(prime_bound) +
                                                   " for g = " + std::to_string(g));

  const auto& base = ctx->level(0);
  for (int i = 0; i < g; ++i) ctx->pow_double_.push_back(base.lo_pow[static_cast<size_t>(i)].get_d());
  return ctx;
}

class NFElem {
 public:
  NFElem() = default;
  explicit NFElem(Context ctx, const Rational& q = 0) : ctx_(std::move(ctx)), c_(static_cast<size_t>(ctx_->degree())) {
    c_[0] = canon(q);
  }
  NFElem(Context ctx, std::vector<Rational> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    if (c_.size() != static_cast<size_t>(ctx_->degree()))
      throw Error(ErrorKind::InvalidArgument, "coefficient vector length must equal g");
    for (auto& q : c_) q.canonicalize();
  }

  static NFElem alpha(const Context& ctx) {
    NFElem e(ctx);
    if (ctx->degree() > 1) e.c_[1] = 1;
    return e;
  }

  /// alpha^k for any integer k.
  static NFElem alpha_pow(const Context& ctx, int k) {
    NFElem a = alpha(ctx);
    return a.pow(k);
  }

  const Context& context() const { return ctx_; }
  int degree() const { return ctx_->degree(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& coeff(int i) const { return c_[static_cast<size_t>(i)]; }

  bool is_zero() const {
    for (const auto& q : c_)
      if (q != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  NFElem operator-() const {
    NFElem r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
  }

  NFElem& operator+=(const NFElem& o) {
    check(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  NFElem& operator-=(const NFElem& o) {
    check(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  NFElem& operator+=(const Rational& q) {
    c_[0] += canon(q);
    return *this;
  }
  NFElem& operator-=(const Rational& q) {
    c_[0] -= canon(q);
    return *this;
  }
  NFElem& operator*=(const Rational& q) {
    const Rational k = canon(q);
    for (auto& x : c_) x *= k;
    return *this;
  }
  NFElem& operator/=(const Rational& q) {
    if (q == 0) throw Error(ErrorKind::DivisionByZero, "division by rational zero");
    const Rational k = canon(q);
    for (auto& x : c_) x /= k;
    return *this;
  }

  NFElem& operator*=(const NFElem& o) {
    check(o);
    const size_t g = c_.size();
    std::vector<Rational> prod(2 * g - 1, Rational(0));
    for (size_t i = 0; i < g; ++i) {
      if (c_[i] == 0) continue;
      for (size_t j = 0; j < g; ++j)
        if (o.c_[j] != 0) prod[i + j] += c_[i] * o.c_[j];
    }
    reduce(prod, g);
    c_ = std::move(prod);
    return *this;
  }

  NFElem& operator/=(const NFElem& o) { return *this *= o.inverse(); }

  NFElem inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    // Extended Euclid in Q[X]: s*a + t*m = 1 with m the (irreducible) minimal polynomial.
    using detail::QPoly;
    QPoly a(c_.begin(), c_.end());
    detail::trim(a);
    QPoly m = detail::to_qpoly(ctx_->minpoly());
    QPoly r0 = m, r1 = a;
    QPoly s0{}, s1{Rational(1)};
    while (!r1.empty() && detail::deg(r1) > 0) {
      auto [q, r] = detail::divmod(r0, r1);
      QPoly s2 = sub(s0, mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (r1.empty()) throw Error(ErrorKind::InternalError, "element shares a factor with the minimal polynomial");
    Rational c = r1[0];
    std::vector<Rational> out(c_.size(), Rational(0));
    QPoly red = detail::rem(s1, m);
    for (size_t i = 0; i < red.size(); ++i) out[i] = red[i] / c;
    return NFElem(ctx_, std::move(out));
  }

  NFElem pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    NFElem result(ctx_, Rational(1));
    NFElem base = *this;
    while (k > 0) {
      if (k & 1) result *= base;
      base *= base;
      k >>= 1;
    }
    return result;
  }

  /// Exact sign of the real value.
  int sign() const {
    if (is_zero()) return 0;
    if (int s = float_filter(); s != 0) return s;
    for (int k = 0; k < NFContext::kMaxLevels; ++k) {
      auto [lo, hi] = enclose(ctx_->level(k));
      if (lo > 0) return 1;
      if (hi < 0) return -1;
    }
    throw Error(ErrorKind::InternalError, "sign refinement cap reached for a nonzero element");
  }

  /// A rational within eps of the real value.
  Rational approx(const Rational& eps) const {
    if (!(eps > 0)) throw Error(ErrorKind::InvalidArgument, "approx tolerance must be positive");
    if (is_rational()) return c_[0];
    for (int k = 0; k < NFContext::kMaxLevels; ++k) {
      auto [lo, hi] = enclose(ctx_->level(k));
      if (hi - lo <= eps) return (lo + hi) / 2;
    }
    throw Error(ErrorKind::NumericFailure, "requested precision beyond refinement cap");
  }

  double to_double() const {
    double v = 0;
    bool finite = true;
    for (int i = 0; i < degree(); ++i) {
      double d = c_[static_cast<size_t>(i)].get_d();
      if (!std::isfinite(d)) finite = false;
      v += d * ctx_->power_double(i);
    }
    if (finite) return v;
    return approx(Rational(1, 1000000000)).get_d();
  }

  Integer floor() const {
    if (is_rational()) return floor_q(c_[0]);
    Integer n = floor_q(approx(Rational(1, 4)));
    // Adjust against exact comparisons; the approximation is off by at most one.
    while ((*this - Rational(n)).sign() < 0) n -= 1;
    while ((*this - Rational(n + 1)).sign() >= 0) n += 1;
    return n;
  }

  /// Representative of the value modulo `m` in [0, m), m > 0.
  NFElem mod(const NFElem& m) const {
    if (m.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "modulus must be positive");
    NFElem q = *this / m;
    return *this - m * Rational(q.floor());
  }

  /// Representative modulo 1 in [0, 1).
  NFElem frac() const {
    NFElem r = *this;
    r.c_[0] -= Rational(floor());
    return r;
  }

  friend NFElem operator+(NFElem a, const NFElem& b) { return a += b; }
  friend NFElem operator-(NFElem a, const NFElem& b) { return a -= b; }
  friend NFElem operator*(NFElem a, const NFElem& b) { return a *= b; }
  friend NFElem operator/(NFElem a, const NFElem& b) { return a /= b; }
  friend NFElem operator+(NFElem a, const Rational& q) { return a += q; }
  friend NFElem operator-(NFElem a, const Rational& q) { return a -= q; }
  friend NFElem operator*(NFElem a, const Rational& q) { return a *= q; }
  friend NFElem operator/(NFElem a, const Rational& q) { return a /= q; }
  friend NFElem operator+(const Rational& q, NFElem a) { return a += q; }
  friend NFElem operator-(const Rational& q, const NFElem& a) { return -a + q; }
  friend NFElem operator*(const Rational& q, NFElem a) { return a *= q; }
  friend NFElem operator/(const Rational& q, const NFElem& a) { return a.inverse() * q; }

  friend bool operator==(const NFElem& a, const NFElem& b) {
    a.check(b);
    return a.c_ == b.c_;
  }
  friend bool operator<(const NFElem& a, const NFElem& b) { return (a - b).sign() < 0; }
  friend bool operator>(const NFElem& a, const NFElem& b) { return (a - b).sign() > 0; }
  friend bool operator<=(const NFElem& a, const NFElem& b) { return (a - b).sign() <= 0; }
  friend bool operator>=(const NFElem& a, const NFElem& b) { return (a - b).sign() >= 0; }

  /// Lexicographic order on coefficient vectors; a total order used for
  /// canonical forms, unrelated to the real order.
  friend bool coeff_less(const NFElem& a, const NFElem& b) {
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] < b.c_[i]) return true;
      if (b.c_[i] < a.c_[i]) return false;
    }
    return false;
  }

 private:
  void check(const NFElem& o) const {
    if (!ctx_ || !o.ctx_ || ctx_->degree() != o.ctx_->degree())
      throw Error(ErrorKind::ContextMismatch, "operands belong to different fields");
  }

  // mpq_class(num, den) does not reduce; GMP arithmetic assumes reduced inputs.
  static Rational canon(Rational q) {
    q.canonicalize();
    return q;
  }

  static void reduce(std::vector<Rational>& p, size_t g) {
    // alpha^g = 1 - alpha - ... - alpha^(g-1)
    for (size_t d = p.size() - 1; d >= g; --d) {
      if (p[d] != 0) {
        Rational v = p[d];
        p[d] = 0;
        p[d - g] += v;
        for (size_t j = 1; j < g; ++j) p[d - g + j] -= v;
      }
    }
    p.resize(g);
  }

  static detail::QPoly mul(const detail::QPoly& a, const detail::QPoly& b) {
    if (a.empty() || b.empty()) return {};
    detail::QPoly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    detail::trim(r);
    return r;
  }

  static detail::QPoly sub(detail::QPoly a, const detail::QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    detail::trim(a);
    return a;
  }

  int float_filter() const {
    double v = 0, mag = 0;
    for (int i = 0; i < degree(); ++i) {
      const Rational& q = c_[static_cast<size_t>(i)];
      if (q == 0) continue;
      double d = q.get_d();
      if (!std::isfinite(d) || d == 0) return 0;
      double t = d * ctx_->power_double(i);
      v += t;
      mag += std::fabs(t);
    }
    const double bound = mag * (degree() + 8) * 0x1p-52 + 1e-290;
    if (v > bound) return 1;
    if (v < -bound) return -1;
    return 0;
  }

  std::pair<Rational, Rational> enclose(const NFContext::Level& l) const {
    Rational lo = 0, hi = 0;
    for (size_t i = 0; i < c_.size(); ++i) {
      const Rational& q = c_[i];
      if (q > 0) {
        lo += q * l.lo_pow[i];
        hi += q * l.hi_pow[i];
      } else if (q < 0) {
        lo += q * l.hi_pow[i];
        hi += q * l.lo_pow[i];
      }
    }
    return {lo, hi};
  }

  Context ctx_;
  std::vector<Rational> c_;
};

inline NFElem abs(const NFElem& a) { return a.sign() < 0 ? -a : a; }

/// beta = alpha^2 / (1 - alpha) = alpha^2 + alpha^3 + ...
inline NFElem ay_beta(const Context& ctx) {
  NFElem a = NFElem::alpha(ctx);
  return a * a / (Rational(1) - a);
}

/// Coordinates (c_0, ..., c_{g-1}) of the element as a rational vector.
inline std::vector<Rational> coordinates(const NFElem& e) { return e.coeffs(); }

// ---------------------------------------------------------------------------
// Algebraic-number literals: polynomials in the symbol `a` with rational
// coefficients, e.g. "1/2 - 1/2*a + 3*a^2".

inline std::string to_literal(const NFElem& e) {
  std::string out;
  for (int i = 0; i < e.degree(); ++i) {
    Rational c = e.coeff(i);
    if (c == 0) continue;
    bool neg = c < 0;
    Rational m = neg ? Rational(-c) : c;
    std::string mono;
    if (i == 0) {
      mono = to_string(m);
    } else {
      std::string var = i == 1 ? "a" : "a^" + std::to_string(i);
      mono = m == 1 ? var : to_string(m) + "*" + var;
    }
    if (out.empty()) {
      out = neg ? "-" + mono : mono;
    } else {
      out += neg ? " - " : " + ";
      out += mono;
    }
  }
  return out.empty() ? "0" : out;
}

namespace detail {

class LiteralParser {
 public:
  LiteralParser(Context ctx, std::string_view text, bool strict) : ctx_(std::move(ctx)), s_(text), strict_(strict) {}

  NFElem parse() {
    NFElem v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError, msg + " in \"" + std::string(s_) + "\" at column " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NFElem expr() {
    NFElem v(ctx_);
    bool first = true;
    for (;;) {
      skip();
      int sign = 1;
      if (eat('+')) {
      } else if (eat('-')) {
        sign = -1;
      } else if (!first) {
        break;
      }
      NFElem t = term();
      v = sign > 0 ? v + t : v - t;
      first = false;
    }
    return v;
  }

  NFElem term() {
    NFElem v = factor();
    for (;;) {
      if (eat('*')) {
        NFElem f = factor();
        if (strict_ && !v.is_rational() && !f.is_rational() && !allow_monomial_product_) fail("product of two non-constants");
        v *= f;
      } else if (eat('/')) {
        NFElem f = factor();
        if (strict_ && !f.is_rational()) fail("division by a non-constant");
        if (f.is_zero()) throw Error(ErrorKind::DivisionByZero, "literal divides by zero");
        v /= f;
      } else {
        break;
      }
    }
    return v;
  }

  NFElem factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E'))
        fail("decimal literals are not exact; write a fraction");
      return NFElem(ctx_, Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    if (c == '(') {
      if (strict_) fail("parentheses are not part of the literal grammar");
      ++pos_;
      NFElem v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (s_.substr(pos_, 4) == "beta") {
      if (strict_) fail("'beta' is a CLI shorthand, not a literal");
      pos_ += 4;
      return ay_beta(ctx_);
    }
    if (c == 'a') {
      ++pos_;
      int k = 1;
      if (eat('^')) k = exponent();
      if (strict_ && (k < 0 || k >= ctx_->degree()))
        fail("power a^" + std::to_string(k) + " is outside the power basis (degree must be < g)");
      return NFElem::alpha_pow(ctx_, k);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  int exponent() {
    skip();
    bool neg = false;
    if (eat('-')) {
      if (strict_) fail("negative exponents are not part of the literal grammar");
      neg = true;
      skip();
    }
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    int k = std::stoi(std::string(s_.substr(start, pos_ - start)));
    return neg ? -k : k;
  }

  Context ctx_;
  std::string_view s_;
  bool strict_;
  bool allow_monomial_product_ = true;
  size_t pos_ = 0;
};

}  // namespace detail

/// Parses the strict literal grammar (no parentheses, no shorthands, every
/// power of `a` below g). Throws ParseError.
inline NFElem parse_literal(const Context& ctx, std::string_view text) {
  return detail::LiteralParser(ctx, text, true).parse();
}

/// Parses the permissive expression form accepted on the command line: the
/// literal grammar plus `beta`, parentheses, and arbitrary integer powers of `a`.
inline NFElem parse_expression(const Context& ctx, std::string_view text) {
  return detail::LiteralParser(ctx, text, false).parse();
}

}  // namespace ayrel
