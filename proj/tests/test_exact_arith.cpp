#include <gtest/gtest.h>

#include <random>

#include "telescope/core/algebraic.hpp"
#include "telescope/core/factor.hpp"
#include "telescope/core/poly_algorithms.hpp"
#include "test_util.hpp"

using namespace telescope;
using namespace telescope::testing_util;

TEST(PolyGcd, KnownAndTrivialExamples) {
  QPoly x = qx();
  EXPECT_EQ(gcd(x * x - 1, x * x - 2 * x + 1), x - 1);
  QPoly a = x * x * x + x;
  EXPECT_EQ(gcd(a, QPoly(Rational(1)) - (3 * x * x + 1)), x);
  QPoly p = 3 * x * x + 6;
  EXPECT_EQ(gcd(p, QPoly()), x * x + 2);
  EXPECT_TRUE(gcd(QPoly(), QPoly()).is_zero());
}

TEST(PolyGcd, MixedVariablesIsTypeError) {
  EXPECT_THROW(gcd(qx("x") + 1, qx("y") + 1), TypeError);
}

TEST(PolyXgcd, Examples) {
  QPoly x = qx();
  auto r = xgcd(x + 1, x * x + 1);
  EXPECT_EQ(r.g, QPoly(Rational(1)));
  EXPECT_EQ(r.s, -(x - 1) / Rational(2));
  EXPECT_EQ(r.t, QPoly(Rational(1, 2)));
  auto e = xgcd(x, x);
  EXPECT_EQ(e.g, x);
  EXPECT_TRUE(e.s.is_zero());
  EXPECT_EQ(e.t, QPoly(Rational(1)));
  auto f = xgcd(x - 1, x + 1);
  EXPECT_EQ(f.s, QPoly(Rational(-1, 2)));
  EXPECT_EQ(f.t, QPoly(Rational(1, 2)));
  EXPECT_THROW(xgcd(QPoly(), QPoly()), DomainError);
}

TEST(PolyGcd, RandomPropertyDividesAndBezout) {
  std::mt19937 rng(11);
  for (int it = 0; it < 300; ++it) {
    QPoly a = random_poly(rng, 8, 9), b = random_poly(rng, 8, 9);
    if (a.is_zero() && b.is_zero()) continue;
    QPoly common = random_poly(rng, 3, 9);
    if (!common.is_zero() && it % 2) {
      a = a * common;
      b = b * common;
    }
    if (a.is_zero() && b.is_zero()) continue;
    auto r = xgcd(a, b);
    EXPECT_EQ(r.s * a + r.t * b, r.g);
    EXPECT_EQ(gcd(a, b), r.g);
    if (!a.is_zero()) EXPECT_TRUE((a % r.g).is_zero());
    if (!b.is_zero()) EXPECT_TRUE((b % r.g).is_zero());
    if (!a.is_zero() && !b.is_zero() && !(a == b)) {
      EXPECT_LT(r.s.degree(), exact_div(b, r.g).degree() == 0 ? 1 : exact_div(b, r.g).degree());
    }
  }
}

TEST(Squarefree, KnownExamples) {
  QPoly x = qx();
  auto d = squarefree_decomposition(pow(x, 8) + 6 * pow(x, 6) + 12 * pow(x, 4) + 8 * x * x);
  ASSERT_EQ(d.factors.size(), 2u);
  EXPECT_EQ(d.factors[0].first, x);
  EXPECT_EQ(d.factors[0].second, 2);
  EXPECT_EQ(d.factors[1].first, x * x + 2);
  EXPECT_EQ(d.factors[1].second, 3);
  auto e = squarefree_decomposition(x * x + 1);
  ASSERT_EQ(e.factors.size(), 1u);
  EXPECT_EQ(e.factors[0].second, 1);
  auto f = squarefree_decomposition(pow(x + 4, 2) * pow(x + 5, 3));
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].first, x + 4);
  EXPECT_EQ(f.factors[1].first, x + 5);
  EXPECT_THROW(squarefree_decomposition(QPoly()), DomainError);
}

TEST(Split, Examples) {
  QPoly x = qx();
  auto s = split(x * x * pow(x * x + 2, 3));
  EXPECT_EQ(s.u, x * x);
  EXPECT_EQ(s.v, x * x + 2);
  EXPECT_EQ(s.m, 3);
  auto c = split(QPoly(Rational(7)));
  EXPECT_EQ(c.u, QPoly(Rational(7)));
  EXPECT_EQ(c.v, QPoly(Rational(1)));
  EXPECT_EQ(c.m, 1);
  auto sq = split(x * x);
  EXPECT_EQ(sq.u, QPoly(Rational(1)));
  EXPECT_EQ(sq.v, x);
  EXPECT_EQ(sq.m, 2);
}

TEST(Solvemod, Examples) {
  QPoly x = qx();
  EXPECT_EQ(solvemod(x, x + 1, x * x + 1), (x + 1) / Rational(2));
  EXPECT_EQ(solvemod(QPoly(Rational(1)), QPoly(Rational(2)), x), QPoly(Rational(1, 2)));
  EXPECT_TRUE(solvemod(QPoly(), x + 3, x * x + 1).is_zero());
  EXPECT_THROW(solvemod(QPoly(Rational(1)), x, x * x), NoSolutionError);
}

TEST(Solvemod, RandomPostcondition) {
  std::mt19937 rng(5);
  for (int it = 0; it < 200; ++it) {
    QPoly a = random_poly(rng, 6, 9), u = random_nonzero_poly(rng, 5, 9);
    QPoly v = random_monic(rng, 1 + it % 5, 9);
    try {
      QPoly b = solvemod(a, u, v);
      EXPECT_LT(b.degree(), v.degree());
      EXPECT_EQ((b * u) % v, a % v);
    } catch (const NoSolutionError&) {
      EXPECT_GT(gcd(u, v).degree(), 0);
    }
  }
}

TEST(Resultant, KnownExamples) {
  using QQ = Poly<QPoly>;
  QPoly z = qx("z");
  QQ x = QQ::variable("x");
  auto C = [&](const QPoly& p) { return QQ(p, "x"); };
  QQ a = x * x * x + x;
  QQ b = C(QPoly(Rational(1), "z")) - C(z) * (C(QPoly(Rational(3), "z")) * x * x + C(QPoly(Rational(1), "z")));
  EXPECT_EQ(resultant_param(a, b, "z"), -4 * pow(z, 3) + 3 * z + 1);
  QQ a2 = x * x - C(QPoly(Rational(2), "z"));
  QQ b2 = C(QPoly(Rational(1), "z")) - C(2 * z) * x;
  EXPECT_EQ(resultant_param(a2, b2, "z"), -8 * z * z + 1);
  QPoly c = qx("c");
  QQ a3 = x - C(c);
  EXPECT_EQ(resultant_param(a3, x, "c"), -c);
}

TEST(Resultant, AgreesWithSylvesterDeterminant) {
  // Oracle: Sylvester determinant with lc(b)^deg(a) prod a(beta) = (-1)^(deg a deg b) det Syl(a, b).
  std::mt19937 rng(17);
  for (int it = 0; it < 100; ++it) {
    QPoly a = random_nonzero_poly(rng, 5, 6), b = random_nonzero_poly(rng, 5, 6);
    if (a.degree() < 1 || b.degree() < 1) continue;
    std::size_t n = static_cast<std::size_t>(a.degree()), m = static_cast<std::size_t>(b.degree());
    std::vector<std::vector<Rational>> s(n + m, std::vector<Rational>(n + m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j <= n; ++j) s[i][i + j] = a[n - j];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= m; ++j) s[m + i][i + j] = b[m - j];
    Rational det = 1;
    std::size_t N = n + m;
    for (std::size_t c = 0; c < N; ++c) {
      std::size_t p = c;
      while (p < N && sgn(s[p][c]) == 0) ++p;
      if (p == N) {
        det = 0;
        break;
      }
      if (p != c) {
        std::swap(s[p], s[c]);
        det = -det;
      }
      det *= s[c][c];
      for (std::size_t r = c + 1; r < N; ++r) {
        Rational f = s[r][c] / s[c][c];
        for (std::size_t k = c; k < N; ++k) s[r][k] -= f * s[c][k];
      }
    }
    if ((n * m) % 2) det = -det;
    EXPECT_EQ(resultant(a, b), det);
    EXPECT_EQ(is_zero(resultant(a, b)), gcd(a, b).degree() > 0);
  }
}

TEST(Factor, KnownAndDerivedExamples) {
  QPoly z = qx("z");
  auto f = factor_rationals(-4 * pow(z, 3) + 3 * z + 1);
  EXPECT_EQ(f.unit, Rational(-4));
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].first, z - 1);
  EXPECT_EQ(f.factors[0].second, 1);
  EXPECT_EQ(f.factors[1].first, z + Rational(1, 2));
  EXPECT_EQ(f.factors[1].second, 2);
  QPoly x = qx();
  auto g = factor_rationals(x * x + 1);
  ASSERT_EQ(g.factors.size(), 1u);
  auto h = factor_rationals(pow(x, 4) - 1);
  ASSERT_EQ(h.factors.size(), 3u);
  EXPECT_EQ(h.expand(), pow(x, 4) - 1);
  EXPECT_THROW(factor_rationals(QPoly()), DomainError);
}

TEST(Factor, SwinnertonDyerStyleInputStaysIrreducible) {
  // x^4 - 10x^2 + 1 is irreducible over Q but splits modulo every prime.
  QPoly x = qx();
  auto f = factor_rationals(pow(x, 4) - 10 * x * x + 1);
  EXPECT_EQ(f.factors.size(), 1u);
  auto g = factor_rationals((pow(x, 4) - 10 * x * x + 1) * (x * x - 2) * (x + 3));
  EXPECT_EQ(g.factors.size(), 3u);
}

TEST(Factor, RandomProductsOfKnownIrreducibles) {
  // Oracle: products of linear factors and x^2 + c (c > 0), whose
  // irreducible factor count is known by construction.
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> co(-20, 20), pos(1, 30), cnt(1, 3);
  for (int it = 0; it < 100; ++it) {
    QPoly x = qx();
    QPoly p(Rational(co(rng) == 0 ? 5 : 3));
    std::vector<QPoly> distinct;
    int nl = cnt(rng), nq = cnt(rng) - 1;
    for (int i = 0; i < nl; ++i) {
      QPoly l = x - co(rng);
      bool dup = false;
      for (auto& d : distinct) dup |= d == l;
      if (!dup) distinct.push_back(l);
      p = p * l;
    }
    for (int i = 0; i < nq; ++i) {
      QPoly q = x * x + Rational(Rational(pos(rng)) / pos(rng));
      q = q.shift(Rational(co(rng)));
      bool dup = false;
      for (auto& d : distinct) dup |= d == q;
      if (!dup) distinct.push_back(q);
      p = p * q;
    }
    auto f = factor_rationals(p);
    EXPECT_EQ(f.expand(), p);
    EXPECT_EQ(f.factors.size(), distinct.size());
  }
}

TEST(Factor, RandomMultiplyBack) {
  std::mt19937 rng(23);
  for (int it = 0; it < 500; ++it) {
    QPoly p = random_nonzero_poly(rng, 6, 9);
    if (it % 3 == 0) p = p * random_nonzero_poly(rng, 3, 5);
    if (it % 5 == 0) p = p * p;
    auto s = squarefree_decomposition(p);
    EXPECT_EQ(s.expand(), p);
    for (std::size_t i = 0; i < s.factors.size(); ++i) {
      EXPECT_EQ(gcd(s.factors[i].first, s.factors[i].first.derivative()).degree(), 0);
      for (std::size_t j = i + 1; j < s.factors.size(); ++j)
        EXPECT_EQ(gcd(s.factors[i].first, s.factors[j].first).degree(), 0);
    }
    auto f = factor_rationals(p);
    EXPECT_EQ(f.expand(), p);
    for (const auto& [g, e] : f.factors) EXPECT_TRUE(is_one(g.lc()));
  }
}

TEST(IntegerRoots, Examples) {
  QPoly j = qx("j");
  auto r = integer_roots(j * (j - 3));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0], 0);
  EXPECT_EQ(r[1], 3);
  EXPECT_TRUE(integer_roots(j * j + 1).empty());
  EXPECT_TRUE(integer_roots(2 * j - 3).empty());
  auto big = integer_roots((j + 1000003) * (j - 17) * (3 * j + 1));
  ASSERT_EQ(big.size(), 2u);
  EXPECT_EQ(big[0], -1000003);
  EXPECT_THROW(integer_roots(QPoly()), DomainError);
}

TEST(Dispersion, Examples) {
  QPoly x = qx();
  EXPECT_EQ(dispersion(x * (x + 3) * (x * x - 2)), 3);
  EXPECT_EQ(dispersion(x * x + 1), 0);
  EXPECT_EQ(dispersion(x * (x + 1) * (x + 7)), 7);
  EXPECT_THROW(dispersion(QPoly(Rational(2))), DomainError);
}

TEST(Dispersion, AgreesWithBruteForceGcd) {
  std::mt19937 rng(29);
  for (int it = 0; it < 60; ++it) {
    QPoly p = random_monic(rng, 1 + it % 3, 6);
    if (it % 2) p = p * p.shift(Rational(1 + it % 4));
    long d = dispersion(p);
    long brute = 0;
    for (long i = 0; i <= 40; ++i)
      if (gcd(p, p.shift(Rational(i))).degree() > 0) brute = i;
    EXPECT_EQ(d, brute);
  }
}

TEST(AlgNumber, TraceAndInverse) {
  auto u = std::make_shared<const QPoly>(qx("z") * qx("z") - Rational(1, 8));
  AlgNumber a = AlgNumber::generator(u);
  EXPECT_EQ((a * a).rep(), QPoly(Rational(1, 8)));
  EXPECT_EQ((a * a.inverse()).rep(), QPoly(Rational(1)));
  EXPECT_EQ(a.trace(), Rational(0));
  EXPECT_EQ((a * a).trace(), Rational(1, 4));
  EXPECT_EQ(AlgNumber(QPoly(Rational(3)), u).trace(), Rational(6));
}
