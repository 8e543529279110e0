#include <gtest/gtest.h>

#include <random>

#include "telescope/core/partial_fractions.hpp"
#include "test_util.hpp"

using namespace telescope;
using namespace telescope::testing_util;

namespace {

QFun random_fraction(std::mt19937& rng) {
  QPoly den = random_monic(rng, 1, 3) * random_monic(rng, 2, 3);
  std::uniform_int_distribution<int> coin(0, 1);
  if (coin(rng)) den = den * pow(random_monic(rng, 1, 3), 2);
  return QFun(random_poly(rng, 6, 5), den);
}

}  // namespace

TEST(RatFun, NormalFormIsReducedAndMonic) {
  QPoly x = qx();
  QFun f((x - 1) * (x + 2) * 3, (x - 1) * (x * 2 + 4) * (x + 5));
  EXPECT_EQ(f.num(), QPoly(Rational(3, 2)));
  EXPECT_EQ(f.den(), x + 5);
}

TEST(RatFun, FieldAxiomsOnRandomInputs) {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    QFun a = random_fraction(rng), b = random_fraction(rng), c = random_fraction(rng);
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_EQ(a - a, QFun());
    if (!b.is_zero()) EXPECT_EQ(a / b * b, a);
    EXPECT_EQ((a * b).derivative(), a.derivative() * b + a * b.derivative());
  }
}

TEST(RatFun, ShiftAndEvaluate) {
  QPoly x = qx();
  QFun f(x + 1, x * x);
  EXPECT_EQ(f.shift(Rational(1)), QFun(x + 2, (x + 1) * (x + 1)));
  EXPECT_EQ(f(Rational(2)), Rational(3, 4));
  EXPECT_THROW(f(Rational(0)), DomainError);
}

TEST(PartialFractions, SquarefreeExample) {
  QPoly x = qx();
  QPoly num = pow(x, 7) - 24 * pow(x, 4) - 4 * x * x + 8 * x - 8;
  QPoly den = pow(x, 8) + 6 * pow(x, 6) + 12 * pow(x, 4) + 8 * x * x;
  QFun f(num, den);
  auto pf = partial_fractions(f);
  ASSERT_EQ(pf.terms.size(), 2u);
  EXPECT_TRUE(pf.poly_part.is_zero());
  EXPECT_EQ(pf.terms[0].base, x);
  EXPECT_EQ(pf.terms[0].exponent, 2);
  EXPECT_EQ(pf.terms[0].num, x - 1);
  EXPECT_EQ(pf.terms[1].base, x * x + 2);
  EXPECT_EQ(pf.terms[1].exponent, 3);
  EXPECT_EQ(pf.terms[1].num, pow(x, 4) - 6 * pow(x, 3) - 18 * x * x - 12 * x + 8);
  EXPECT_EQ(pf.recombine(), f);
}

TEST(PartialFractions, IrreducibleTermsHaveSmallNumerators) {
  std::mt19937 rng(5);
  for (int i = 0; i < 60; ++i) {
    QFun f = random_fraction(rng);
    for (auto mode : {PFMode::squarefree, PFMode::irreducible}) {
      auto pf = partial_fractions(f, mode);
      EXPECT_EQ(pf.recombine(), f);
      for (const auto& t : pf.terms) {
        int bound = mode == PFMode::irreducible ? t.base.degree() : t.base.degree() * t.exponent;
        EXPECT_LT(t.num.degree(), bound);
      }
    }
  }
}

TEST(PartialFractions, IrreducibleSplitsCoprimeFactors) {
  QPoly x = qx();
  auto pf = partial_fractions(QFun(QPoly(1), pow(x, 3) + x), PFMode::irreducible);
  ASSERT_EQ(pf.terms.size(), 2u);
  EXPECT_EQ(pf.terms[0].num, QPoly(1));
  EXPECT_EQ(pf.terms[0].base, x);
  EXPECT_EQ(pf.terms[1].num, -x);
  EXPECT_EQ(pf.terms[1].base, x * x + 1);
}
