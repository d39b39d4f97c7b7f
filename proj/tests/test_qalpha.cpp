#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ayrel/linalg.hpp"
#include "ayrel/poly.hpp"
#include "ayrel/qalpha.hpp"

using namespace ayrel;

namespace {

// Plain double bisection on X^g + ... + X - 1 over (0,1).
double bisect_root(int g) {
  double lo = 0, hi = 1;
  for (int it = 0; it < 200; ++it) {
    double mid = (lo + hi) / 2, v = -1, p = 1;
    for (int i = 1; i <= g; ++i) {
      p *= mid;
      v += p;
    }
    (v < 0 ? lo : hi) = mid;
  }
  return lo;
}

NFElem random_elem(const Context& ctx, std::mt19937_64& rng, int range = 50) {
  std::uniform_int_distribution<int> num(-range, range), den(1, range);
  std::vector<Rational> c;
  for (int i = 0; i < ctx->degree(); ++i) c.push_back(make_rational(num(rng), den(rng)));
  return NFElem(ctx, c);
}

// Gauss-Jordan over Q, pivoting on the last nonzero column first.
int oracle_rank(std::vector<std::vector<Rational>> m) {
  if (m.empty()) return 0;
  int rows = static_cast<int>(m.size()), cols = static_cast<int>(m[0].size()), rank = 0;
  for (int col = cols - 1; col >= 0 && rank < rows; --col) {
    int piv = -1;
    for (int r = rows - 1; r >= rank; --r)
      if (m[r][col] != 0) piv = r;
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      Rational f = m[r][col] / m[rank][col];
      for (int c = 0; c < cols; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST(Context, RejectsSmallGenus) {
  EXPECT_THROW(make_context(1), Error);
  try {
    make_context(1);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidGenus);
  }
}

TEST(Context, GoldenRatioForGenusTwo) {
  auto ctx = make_context(2);
  const auto& iv = ctx->root_interval();
  double phi = (std::sqrt(5.0) - 1) / 2;
  EXPECT_LT(iv.lo.get_d(), phi);
  EXPECT_GT(iv.hi.get_d(), phi);
  EXPECT_NEAR(NFElem::alpha(ctx).to_double(), 0.618034, 1e-6);
  EXPECT_EQ(ctx->minpoly(), IntPoly::from({-1, 1, 1}));
}

TEST(Context, IsolatingIntervalCertified) {
  for (int g = 2; g <= 12; ++g) {
    auto ctx = make_context(g);
    const auto& iv = ctx->root_interval();
    EXPECT_GT(iv.lo, 0);
    EXPECT_LT(iv.hi, 1);
    EXPECT_LT(ctx->minpoly().eval(iv.lo), 0);
    EXPECT_GT(ctx->minpoly().eval(iv.hi), 0);
    EXPECT_EQ(sturm_roots_in(ctx->minpoly(), Rational(0), Rational(1)), 1) << "g=" << g;
    EXPECT_GT(ctx->irreducibility_witness(), 0);
  }
}

TEST(Context, MissingWitnessIsReported) {
  // X^2+X-1 is reducible mod 5 and 11; with only the prime 2 allowed it is
  // irreducible mod 2, so use a bound that excludes every prime.
  try {
    make_context(3, 1);
    FAIL() << "expected certificate failure";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CertificateFailure);
  }
}

TEST(Field, InverseOfAlpha) {
  for (int g = 2; g <= 8; ++g) {
    auto ctx = make_context(g);
    NFElem inv = Rational(1) / NFElem::alpha(ctx) * Rational(1);
    NFElem one(ctx, Rational(1));
    NFElem q = one / NFElem::alpha(ctx);
    for (int i = 0; i < g; ++i) EXPECT_EQ(q.coeff(i), 1) << "g=" << g;
    EXPECT_EQ(q, inv);
    // alpha^{-1} = 2 - alpha^g
    EXPECT_EQ(q, NFElem(ctx, Rational(2)) - NFElem::alpha_pow(ctx, g));
  }
}

TEST(Field, DefiningRelationIsZero) {
  for (int g = 2; g <= 12; ++g) {
    auto ctx = make_context(g);
    NFElem s(ctx, Rational(-1));
    for (int k = 1; k <= g; ++k) s += NFElem::alpha_pow(ctx, k);
    EXPECT_TRUE(s.is_zero()) << "g=" << g;
    EXPECT_EQ(s.sign(), 0);
  }
}

TEST(Field, ApproxMatchesBisection) {
  auto ctx = make_context(3);
  Rational a = NFElem::alpha(ctx).approx(Rational(1, 1000000000));
  EXPECT_NEAR(a.get_d(), bisect_root(3), 1e-9);
  EXPECT_NEAR(a.get_d(), 0.543689012, 1e-9);
}

TEST(Field, MultiplicativeInverseProperty) {
  std::mt19937_64 rng(7);
  for (int g = 2; g <= 7; ++g) {
    auto ctx = make_context(g);
    NFElem one(ctx, Rational(1));
    for (int i = 0; i < 40; ++i) {
      NFElem a = random_elem(ctx, rng);
      if (a.is_zero()) continue;
      EXPECT_EQ(a * a.inverse(), one);
    }
  }
}

TEST(Field, DivisionByZeroAndContextMismatch) {
  auto c3 = make_context(3), c4 = make_context(4);
  NFElem z(c3);
  EXPECT_THROW(NFElem(c3, Rational(1)) / z, Error);
  EXPECT_THROW(NFElem::alpha(c3) + NFElem::alpha(c4), Error);
}

TEST(Field, SignConsistentWithApprox) {
  std::mt19937_64 rng(11);
  auto ctx = make_context(3);
  for (int i = 0; i < 1000; ++i) {
    NFElem a = random_elem(ctx, rng), b = random_elem(ctx, rng);
    EXPECT_EQ((a - b).sign(), -(b - a).sign());
    Rational ap = a.approx(Rational(1, 1000000) / 1000000);
    double d = ap.get_d();
    if (std::fabs(d) > 1e-12) {
      EXPECT_EQ(a.sign(), d > 0 ? 1 : -1);
    }
    EXPECT_NEAR(d, a.to_double(), 1e-9 * (1 + std::fabs(d)));
  }
}

TEST(Field, SignOfTinyElements) {
  // alpha^60 is far below double cancellation thresholds once expanded.
  auto ctx = make_context(3);
  NFElem t = NFElem::alpha_pow(ctx, 60);
  EXPECT_EQ(t.sign(), 1);
  EXPECT_EQ((-t).sign(), -1);
  NFElem u = NFElem::alpha_pow(ctx, 60) - NFElem::alpha_pow(ctx, 61);
  EXPECT_EQ(u.sign(), 1);
  EXPECT_LT(NFElem::alpha_pow(ctx, 61), NFElem::alpha_pow(ctx, 60));
}

TEST(Field, FloorAndMod) {
  auto ctx = make_context(3);
  NFElem inv = NFElem::alpha_pow(ctx, -1);  // ~1.839
  EXPECT_EQ(inv.floor(), 1);
  EXPECT_EQ((-inv).floor(), -2);
  NFElem f = inv.frac();
  EXPECT_EQ(f, inv - Rational(1));
  NFElem a = NFElem::alpha(ctx);
  EXPECT_EQ(NFElem(ctx, Rational(1)).mod(a), NFElem(ctx, Rational(1)) - a);
}

TEST(Literal, FormatAndParseRoundTrip) {
  auto ctx = make_context(3);
  NFElem e(ctx, {Rational(1, 2), Rational(-1, 2), Rational(3)});
  EXPECT_EQ(to_literal(e), "1/2 - 1/2*a + 3*a^2");
  EXPECT_EQ(parse_literal(ctx, "1/2 - 1/2*a + 3*a^2"), e);
  EXPECT_EQ(parse_literal(ctx, " 1/2-1/2 * a+3*a^2 "), e);
  EXPECT_EQ(to_literal(NFElem(ctx)), "0");
  EXPECT_EQ(to_literal(-NFElem::alpha(ctx)), "-a");
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    NFElem r = random_elem(ctx, rng);
    EXPECT_EQ(parse_literal(ctx, to_literal(r)), r);
  }
}

TEST(Literal, StrictGrammarRejections) {
  auto ctx = make_context(3);
  EXPECT_THROW(parse_literal(ctx, "a^3"), Error);
  EXPECT_THROW(parse_literal(ctx, "0.5"), Error);
  EXPECT_THROW(parse_literal(ctx, "beta"), Error);
  EXPECT_THROW(parse_literal(ctx, "(1+a)"), Error);
  EXPECT_THROW(parse_literal(ctx, "1 +"), Error);
  EXPECT_THROW(parse_literal(ctx, "b"), Error);
}

TEST(Literal, ExpressionShorthands) {
  auto ctx = make_context(3);
  NFElem a = NFElem::alpha(ctx);
  NFElem beta = a * a / (Rational(1) - a);
  EXPECT_EQ(parse_expression(ctx, "beta"), beta);
  EXPECT_EQ(parse_expression(ctx, "beta+a/2"), beta + a / Rational(2));
  EXPECT_EQ(parse_expression(ctx, "a^3/4"), a * a * a / Rational(4));
  EXPECT_EQ(parse_expression(ctx, "a^-1"), a.inverse());
  EXPECT_EQ(parse_expression(ctx, "(1+a)*(1-a)"), Rational(1) - a * a);
  EXPECT_THROW(parse_expression(ctx, "0.25"), Error);
  EXPECT_THROW(parse_expression(ctx, "1/(a-a)"), Error);
  // beta + alpha = beta / alpha
  EXPECT_EQ(beta + a, beta / a);
}

TEST(Rank, Examples) {
  auto ctx = make_context(3);
  auto c = [&](int k) { return NFElem::alpha_pow(ctx, k).coeffs(); };
  EXPECT_EQ(rational_rank({c(0), c(1), c(2)}), 3);
  EXPECT_EQ(rational_rank({c(-2), c(-3), c(-4)}), 3);
  EXPECT_EQ(rational_rank({{Rational(1), Rational(0)}, {Rational(2), Rational(0)}, {Rational(0), Rational(0)}}), 1);
  EXPECT_EQ(rational_rank({}), 0);
  EXPECT_THROW(rational_rank({{Rational(1)}, {Rational(1), Rational(2)}}), Error);
}

TEST(Rank, AgreesWithOracleOnRandomMatrices) {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6), sparse(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<Rational>> m(8, std::vector<Rational>(8));
    int dep = trial % 5;  // force some rank deficiency
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) m[r][c] = sparse(rng) == 0 ? Rational(0) : make_rational(num(rng), den(rng));
    for (int d = 0; d < dep; ++d) {
      Rational f = make_rational(num(rng), den(rng));
      for (int c = 0; c < 8; ++c) m[7 - d][c] = m[d][c] * f + m[d + 1][c];
    }
    EXPECT_EQ(rational_rank(m), oracle_rank(m)) << "trial " << trial;
  }
}

TEST(Poly, SturmCounts) {
  EXPECT_EQ(sturm_real_roots(ay_minpoly(5)), 1);
  EXPECT_EQ(sturm_real_roots(ay_reciprocal_poly(4)), 2);
  for (int n = 3; n <= 12; ++n) {
    int expect = n % 2 ? 1 : 2;
    EXPECT_EQ(sturm_real_roots(ay_minpoly(n)), expect) << n;
    EXPECT_EQ(sturm_real_roots(ay_reciprocal_poly(n)), expect) << n;
  }
  // (X-1)^2 (X+2): squarefree part has two roots
  EXPECT_EQ(sturm_real_roots(IntPoly::from({2, -3, 0, 1})), 2);
  EXPECT_EQ(sturm_real_roots(IntPoly::from({1, 0, 1})), 0);
}

TEST(Poly, IrreducibilityModPrime) {
  EXPECT_TRUE(irreducible_mod_prime(IntPoly::from({1, 0, 1}), 3));
  EXPECT_FALSE(irreducible_mod_prime(IntPoly::from({1, 0, 1}), 5));
  EXPECT_FALSE(irreducible_mod_prime(IntPoly::from({-1, 0, 1}), 7));
  // X^4 + 1 is reducible mod every prime
  for (int64_t q : {3, 5, 7, 11, 13}) EXPECT_FALSE(irreducible_mod_prime(IntPoly::from({1, 0, 0, 0, 1}), q));
  // X^2+X+1 mod 2 is irreducible
  EXPECT_TRUE(irreducible_mod_prime(IntPoly::from({1, 1, 1}), 2));
  EXPECT_EQ(find_irreducibility_witness(IntPoly::from({1, 0, 0, 0, 1}), 200), 0);
}

TEST(Poly, Pisot) {
  for (int n = 2; n <= 12; ++n) EXPECT_TRUE(is_pisot(ay_reciprocal_poly(n), 1e-6)) << n;
  EXPECT_FALSE(is_pisot(IntPoly::from({-2, 0, 1}), 1e-6));
  // X^3 - X^2 - X + 1 = (X-1)^2 (X+1): no root strictly outside... root on the circle
  EXPECT_FALSE(is_pisot(IntPoly::from({1, -1, -1, 1}), 1e-6));
  // the reciprocal root is alpha^{-1}
  auto roots = complex_roots(ay_reciprocal_poly(3));
  double maxmod = 0;
  for (auto z : roots) maxmod = std::max<double>(maxmod, std::abs(z));
  EXPECT_NEAR(maxmod, 1.0 / bisect_root(3), 1e-9);
}
