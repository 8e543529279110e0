#include <gtest/gtest.h>

#include <chrono>
#include <functional>
#include <map>
#include <random>

#include "telescope/expr/ast.hpp"
#include "telescope/expr/eval.hpp"
#include "telescope/hyper/gosper.hpp"
#include "telescope/hyper/term.hpp"
#include "telescope/hyper/zeilberger.hpp"
#include "telescope/verify/verify.hpp"
#include "gosper_oracle.hpp"
#include "test_util.hpp"

using namespace telescope;
using namespace telescope::testing_util;

namespace {

using L2 = RatFun<QFun>;

BiFun bi(const std::string& s) { return to_bivariate(*parse_expr(s), "k", "n"); }
QFun qn(const std::string& s) { return to_qfun(*parse_expr(s), "n"); }
QFun qk(const std::string& s) { return to_qfun(*parse_expr(s), "k"); }

OreOp rec(std::vector<std::string> c) {
  std::vector<QFun> v;
  for (const auto& s : c) v.push_back(qn(s));
  return OreOp(OreGen::S, v, "n");
}

RatFun<QFun> k_quotient_n(const std::string& s) {
  std::function<QFun(const std::string&)> pf = [](const std::string& v) { return QFun::variable(v); };
  return compile_k_quotient<QFun>(parse_expr(s), "k", pf);
}

RatFun<L2> k_quotient_mn(const std::string& s) {
  std::function<L2(const std::string&)> pf = [](const std::string& v) {
    return v == "m" ? L2::variable("m") : L2(QFun::variable("n"));
  };
  return compile_k_quotient<L2>(parse_expr(s), "k", pf);
}

RatFun<L2> in_mn(const std::string& s) {
  std::function<RatFun<L2>(const Rational&)> num = [](const Rational& r) { return RatFun<L2>(L2(QFun(r))); };
  std::function<RatFun<L2>(const Expr&)> leaf = [](const Expr& l) -> RatFun<L2> {
    if (l.name == "k") return RatFun<L2>::variable("k");
    if (l.name == "m") return RatFun<L2>(L2::variable("m"));
    return RatFun<L2>(L2(QFun::variable("n")));
  };
  return eval_field<RatFun<L2>>(*parse_expr(s), num, leaf);
}

bool proportional(const OreOp& a, const OreOp& b) {
  if (a.order() != b.order()) return false;
  QFun ratio = a.lc() / b.lc();
  if (!ratio.is_constant()) return false;
  return a == ratio * b;
}

std::string random_linear(std::mt19937& rng, bool need_k) {
  std::uniform_int_distribution<int> a(0, 2), b(-2, 2), c(0, 3);
  int bn = a(rng), bk = b(rng);
  if (need_k && bk == 0) bk = 1;
  return std::to_string(bn) + "*n+" + std::to_string(bk) + "*k+" + std::to_string(c(rng));
}

std::string random_proper_term(std::mt19937& rng) {
  std::uniform_int_distribution<int> kind(0, 3), count(1, 3), ex(-2, 2);
  std::string s = "1";
  int nf = count(rng);
  for (int i = 0; i < nf; ++i) {
    int e = ex(rng);
    if (e == 0) e = 1;
    switch (kind(rng)) {
      case 0:
        s += "*factorial(" + random_linear(rng, false) + ")^" + std::to_string(e);
        break;
      case 1:
        s += "*binomial(" + random_linear(rng, false) + "," + random_linear(rng, true) + ")^" + std::to_string(e);
        break;
      case 2:
        s += "*(" + std::to_string(ex(rng) + 3) + ")^(" + random_linear(rng, false) + ")";
        break;
      default:
        s += "*(" + random_linear(rng, true) + "+1)^" + std::to_string(std::abs(e));
    }
  }
  return s;
}

// Factorial and binomial arguments stay nonnegative for 6 <= n, 0 <= k <= 4,
// where the formal quotients agree with the values.
std::string random_nonnegative_term(std::mt19937& rng) {
  std::uniform_int_distribution<int> kind(0, 2), count(1, 3), ex(-2, 2), a(1, 2), b(-1, 1), c(0, 3);
  std::string s = "1";
  int nf = count(rng);
  for (int i = 0; i < nf; ++i) {
    int e = ex(rng);
    if (e == 0) e = 1;
    std::string up = std::to_string(a(rng)) + "*n+" + std::to_string(b(rng)) + "*k+" + std::to_string(c(rng));
    switch (kind(rng)) {
      case 0:
        s += "*factorial(" + up + ")^" + std::to_string(e);
        break;
      case 1:
        s += "*binomial(2*n+" + std::to_string(b(rng)) + "*k+" + std::to_string(c(rng)) + "," +
             std::to_string(a(rng)) + "*k+" + std::to_string(c(rng)) + ")^" + std::to_string(e);
        break;
      default:
        s += "*(" + std::to_string(ex(rng) + 3) + ")^(" + up + ")";
    }
  }
  return s;
}


}  // namespace

TEST(Compile, BinomialQuotients) {
  HyperTerm t = compile(parse_expr("binomial(n,k)"));
  EXPECT_EQ(t.u, bi("(n+1)/(n+1-k)"));
  EXPECT_EQ(t.v, bi("(n-k)/(k+1)"));
}

TEST(Compile, AlternatingSquaredBinomial) {
  HyperTerm t = compile(parse_expr("(-1)^k*binomial(2*n,n+k)^2"));
  EXPECT_EQ(t.v, bi("-((n-k)/(n+k+1))^2"));
  EXPECT_TRUE(compatibility_check(t));
}

TEST(Compile, UnivariateQuotient) {
  EXPECT_EQ(k_quotient_mn("binomial(m,k)/binomial(n,k)"), in_mn("(m-k)/(n-k)"));
}

TEST(Compile, NonLinearArgumentRejected) {
  EXPECT_THROW(compile(parse_expr("factorial(n*k)")), UnsupportedExpression);
  EXPECT_THROW(compile(parse_expr("binomial(n,k/2)")), UnsupportedExpression);
}

TEST(Compatibility, Examples) {
  EXPECT_TRUE(compatibility_check(compile(parse_expr("binomial(n,k)"))));
  EXPECT_FALSE(compatibility_check(HyperTerm::from_quotients(bi("n+1"), bi("n*k"))));
  EXPECT_TRUE(compatibility_check(HyperTerm::from_quotients(bi("1"), bi("1"))));
}

TEST(Compatibility, RandomProperTerms) {
  std::mt19937 rng(21);
  for (int i = 0; i < 100; ++i) {
    std::string s = random_proper_term(rng);
    HyperTerm t = compile(parse_expr(s));
    EXPECT_TRUE(compatibility_check(t)) << s;
  }
}

TEST(Compile, QuotientsMatchExactEvaluation) {
  std::mt19937 rng(22);
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    std::string s = random_nonnegative_term(rng);
    auto e = parse_expr(s);
    HyperTerm t = compile(e);
    for (long n = 6; n < 9; ++n)
      for (long k = 1; k < 4; ++k) {
        ExtValue f, fn, fk;
        try {
          f = eval_ext(*e, {{"n", Rational(n)}, {"k", Rational(k)}});
          fn = eval_ext(*e, {{"n", Rational(n + 1)}, {"k", Rational(k)}});
          fk = eval_ext(*e, {{"n", Rational(n)}, {"k", Rational(k + 1)}});
        } catch (const DomainError&) {
          continue;
        }
        if (f.infinite || fn.infinite || fk.infinite || f.value == 0) continue;
        auto at = [&](const BiFun& g) -> std::optional<Rational> {
          try {
            auto ev = [&](const BiPoly& p) {
              return p.map<Rational>([&](const QFun& c) { return c(Rational(n)); })(Rational(k));
            };
            Rational d = ev(g.den());
            if (d == 0) return std::nullopt;
            return ev(g.num()) / d;
          } catch (const DomainError&) {
            return std::nullopt;
          }
        };
        if (auto q = at(t.u)) {
          EXPECT_EQ(*q, fn.value / f.value) << s;
          ++checked;
        }
        if (auto q = at(t.v)) {
          EXPECT_EQ(*q, fk.value / f.value) << s;
          ++checked;
        }
      }
  }
  EXPECT_GT(checked, 300);
}

TEST(GosperForm, Examples) {
  auto gf = gosper_form(k_quotient_mn("binomial(m,k)/binomial(n,k)"));
  EXPECT_EQ(RatFun<L2>(gf.p), in_mn("1"));
  EXPECT_EQ(RatFun<L2>(gf.q) / RatFun<L2>(gf.r), in_mn("(m-k)/(n-k)"));
  EXPECT_EQ(RatFun<L2>(gf.r).num().degree(), 1);
  auto one = gosper_form(QFun(Rational(1)));
  EXPECT_EQ(one.p, QPoly(Rational(1)));
  EXPECT_EQ(one.q, QPoly(Rational(1)));
  EXPECT_EQ(one.r, QPoly(Rational(1)));
  auto g2 = gosper_form(qk("(k+2)/k"));
  EXPECT_EQ(QFun(g2.p), qk("k*(k+1)"));
  EXPECT_EQ(QFun(g2.q) / QFun(g2.r), QFun(Rational(1)));
  EXPECT_THROW(gosper_form(QFun()), DomainError);
}

TEST(GosperForm, RandomInvariants) {
  std::mt19937 rng(23);
  for (int i = 0; i < 150; ++i) {
    QFun w = random_ratio(rng);
    QPoly a = random_monic(rng, 1, 3, "k");
    std::uniform_int_distribution<int> sh(1, 4);
    w = w * QFun(a.shift(Rational(sh(rng))), a);
    auto gf = gosper_form(w);
    EXPECT_EQ(QFun(gf.p.shift(Rational(1)), gf.p) * QFun(gf.q, gf.r), w);
    for (long j = 0; j <= 12; ++j) EXPECT_EQ(gcd(gf.q, gf.r.shift(Rational(j))).degree(), 0);
    for (const auto& j : integer_roots(shift_resultant(gf.q, gf.r)))
      if (j >= 0) EXPECT_EQ(gcd(gf.q, gf.r.shift(Rational(j))).degree(), 0);
  }
}

TEST(GosperDegreeBound, Examples) {
  auto gf = gosper_form(k_quotient_mn("binomial(m,k)/binomial(n,k)"));
  EXPECT_EQ(gosper_degree_bound(gf), std::optional<long>(0));
  EXPECT_EQ(gosper_degree_bound(gosper_form(QFun(Rational(1)))), std::optional<long>(1));
  GosperForm<Rational> g3{qpoly({1}, "k"), qpoly({1, 1}, "k"), qpoly({2}, "k")};
  EXPECT_EQ(gosper_degree_bound(g3), std::nullopt);
}

TEST(Gosper, Examples) {
  auto y = gosper(k_quotient_mn("binomial(m,k)/binomial(n,k)"));
  ASSERT_TRUE(y.has_value());
  EXPECT_EQ(*y, in_mn("(n-k+1)/(m-n-1)"));
  auto y1 = gosper(k_quotient_n("1"));
  ASSERT_TRUE(y1.has_value());
  EXPECT_EQ(RatFun<QFun>(*y1), RatFun<QFun>::variable("k"));
  EXPECT_FALSE(gosper(k_quotient_n("1/k")).has_value());
  EXPECT_FALSE(gosper(qk("k/(k+1)")).has_value());
}

TEST(Gosper, IdentityAndCompletenessAgainstBruteForce) {
  std::mt19937 rng(24);
  int summable = 0;
  for (int i = 0; i < 100; ++i) {
    QFun w;
    bool constructed = i % 2 == 0;
    if (constructed) {
      // ratio of G(k+1) - G(k) where G(k+1)/G(k) = rho
      QFun rho;
      do rho = random_ratio(rng);
      while (rho == QFun(Rational(1)));
      w = rho * (rho.shift(Rational(1)) - QFun(Rational(1))) / (rho - QFun(Rational(1)));
    } else {
      w = random_ratio(rng);
    }
    auto gf = gosper_form(w);
    auto d = gosper_degree_bound(gf);
    bool brute = d && brute_polynomial_solution(gf, *d);
    auto y = gosper(w);
    EXPECT_EQ(y.has_value(), brute) << w;
    if (constructed) EXPECT_TRUE(y.has_value()) << w;
    if (y) {
      ++summable;
      EXPECT_EQ(w * y->shift(Rational(1)) - *y, QFun(Rational(1)));
    }
  }
  EXPECT_GE(summable, 50);
}

TEST(ParamGosper, BinomialOrderOne) {
  HyperTerm t = compile(parse_expr("binomial(n,k)"));
  auto s = telescope_at_order(t, 1);
  ASSERT_TRUE(s.has_value());
  QFun ratio = s->first[1];
  EXPECT_EQ(s->first[0] / ratio, QFun(Rational(-2)));
  EXPECT_EQ(s->second / BiFun(ratio), bi("k/(k-n-1)"));
}

TEST(ParamGosper, SingleParameterIsPlainGosper) {
  auto w = k_quotient_mn("binomial(m,k)/binomial(n,k)");
  auto s = gosper_parameterized(w, {Poly<L2>(L2(QFun(Rational(1))), "k")});
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->y / RatFun<L2>(s->c[0]), in_mn("(n-k+1)/(m-n-1)"));
}

TEST(ParamGosper, NoTelescoperForInverseSumOfSquares) {
  HyperTerm t = compile(parse_expr("1/(n^2+k^2)"));
  for (int r = 0; r <= 3; ++r) EXPECT_FALSE(telescope_at_order(t, r).has_value()) << r;
}

TEST(Zeilberger, Binomial) {
  auto res = zeilberger(compile(parse_expr("binomial(n,k)")));
  ASSERT_TRUE(res.has_value());
  EXPECT_EQ(res->telescoper, rec({"-2", "1"}));
  EXPECT_EQ(res->order, 1);
  EXPECT_TRUE(res->verified);
}

TEST(Zeilberger, AperyMinimalOrder) {
  HyperTerm t = compile(parse_expr("binomial(n,k)^2*binomial(n+k,k)^2"));
  EXPECT_FALSE(telescope_at_order(t, 1).has_value());
  auto res = zeilberger(t);
  ASSERT_TRUE(res.has_value());
  EXPECT_TRUE(proportional(res->telescoper, rec({"(n+1)^3", "-(2*n+3)*(17*n^2+51*n+39)", "(n+2)^3"})));
  EXPECT_TRUE(check_telescoper_sum(res->telescoper, res->certificate, t).ok);
}

TEST(Zeilberger, CentralBinomialSquares) {
  HyperTerm t = compile(parse_expr("binomial(2*n-2*k,n-k)^2*binomial(2*k,k)^2"));
  auto res = zeilberger(t);
  ASSERT_TRUE(res.has_value());
  EXPECT_EQ(res->order, 2);
  EXPECT_TRUE(proportional(res->telescoper, rec({"256*(n+1)^3", "-8*(2*n+3)*(2*n^2+6*n+5)", "(n+2)^3"})));
}

TEST(Zeilberger, MinimalityAndVerificationOnRegressionSet) {
  for (const char* s : {"binomial(n,k)", "binomial(n,k)^2", "binomial(n,k)*2^k", "binomial(2*n,k)",
                        "(-1)^k*binomial(2*n,n+k)^2", "binomial(2*n-2*k,n-k)*binomial(2*k,k)",
                        "binomial(n,k)^3", "factorial(n)/(factorial(k)*factorial(n-k))*k"}) {
    auto e = parse_expr(s);
    HyperTerm t = compile(e);
    auto res = zeilberger(t);
    ASSERT_TRUE(res.has_value()) << s;
    if (res->order > 0) EXPECT_FALSE(telescope_at_order(t, res->order - 1).has_value()) << s;
    EXPECT_TRUE(check_telescoper_sum(res->telescoper, res->certificate, t).ok) << s;
    EXPECT_LE(res->order, az_order_bound(e)) << s;
  }
}

TEST(AzOrderBound, Examples) {
  EXPECT_EQ(az_order_bound(parse_expr("binomial(n,k)")), 1);
  EXPECT_EQ(az_order_bound(parse_expr("binomial(n,k)^2*binomial(n+k,k)^2")), 4);
  EXPECT_EQ(az_order_bound(parse_expr("factorial(k)")), 1);
}

TEST(WZ, Examples) {
  auto r = wz_pair(parse_expr("binomial(n,k)"), parse_expr("2^n"));
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r, bi("-k/(2*(n-k+1))"));
  EXPECT_FALSE(wz_pair(parse_expr("binomial(n,k)"), parse_expr("3^n")).has_value());
  auto e = parse_expr("binomial(n,k)^2/binomial(2*n,n)");
  auto r2 = wz_pair(parse_expr("binomial(n,k)^2"), parse_expr("binomial(2*n,n)"));
  ASSERT_TRUE(r2.has_value());
  HyperTerm F = compile(e);
  // F(n+1,k) - F(n,k) = R(n,k+1) F(n,k+1) - R(n,k) F(n,k), divided by F(n,k)
  EXPECT_EQ(F.u - BiFun(QFun(Rational(1))), r2->shift(QFun(Rational(1))) * F.v - *r2);
}
