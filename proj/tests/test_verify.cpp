#include <gtest/gtest.h>

#include "telescope/ct/bivariate.hpp"
#include "telescope/expr/ast.hpp"
#include "telescope/expr/eval.hpp"
#include "telescope/hyper/zeilberger.hpp"
#include "telescope/verify/verify.hpp"

using namespace telescope;

namespace {

QFun qn(const std::string& s) { return to_qfun(*parse_expr(s), "n"); }
BiFun nk(const std::string& s) { return to_bivariate(*parse_expr(s), "k", "n"); }
BiFun xy(const std::string& s) { return to_bivariate(*parse_expr(s), "y", "x"); }

OreOp sop(std::vector<std::string> c) {
  std::vector<QFun> v;
  for (const auto& s : c) v.push_back(qn(s));
  return OreOp(OreGen::S, v, "n");
}

OreOp dop(std::vector<std::string> c) {
  std::vector<QFun> v;
  for (const auto& s : c) v.push_back(to_qfun(*parse_expr(s), "x"));
  return OreOp(OreGen::D, v, "x");
}

std::vector<Rational> rats(std::vector<long> v) { return {v.begin(), v.end()}; }

}  // namespace

// k(2k-6n-5)/(2(2n+1)(n+1)) binomial(2n+2,k) as a multiple of binomial(2n,k)
const char* kCentralCert = "k*(2*k-6*n-5)/((2*n+2-k)*(2*n+1-k))";

TEST(CheckSum, Examples) {
  HyperTerm c = compile(parse_expr("binomial(2*n,k)"));
  EXPECT_TRUE(check_telescoper_sum(sop({"-4", "1"}), nk(kCentralCert), c).ok);

  HyperTerm b = compile(parse_expr("binomial(n,k)"));
  auto ok = check_telescoper_sum(sop({"-2", "1"}), nk("-k/(n+1-k)"), b);
  EXPECT_TRUE(ok.ok);
  EXPECT_EQ(ok.residual, "0");
  ASSERT_FALSE(ok.warnings.empty());
  EXPECT_NE(ok.warnings[0].find("n + 1"), std::string::npos);

  auto bad = check_telescoper_sum(sop({"-2", "1"}), BiFun(), b);
  EXPECT_FALSE(bad.ok);
  EXPECT_NE(bad.residual, "0");
}

TEST(CheckIntegral, Examples) {
  BiFun f = xy("1/(x*y^3+y+1)");
  auto res = hermite_telescoper(f);
  EXPECT_TRUE(check_telescoper_integral(res.telescoper, res.certificate, f).ok);
  EXPECT_TRUE(check_telescoper_integral(dop({"0", "1"}), BiFun(), xy("1/(1+y)")).ok);
  auto bad = check_telescoper_integral(res.telescoper, res.certificate + xy("1/(1+y)"), f);
  EXPECT_FALSE(bad.ok);
  EXPECT_NE(bad.residual, "0");
}

TEST(CheckRecurrence, Examples) {
  OreOp apery = sop({"(n+1)^3", "-(2*n+3)*(17*n^2+51*n+39)", "(n+2)^3"});
  EXPECT_TRUE(check_recurrence_on_values(apery, rats({1, 5, 73, 1445}), 0).ok);
  EXPECT_TRUE(check_recurrence_on_values(sop({"-2", "1"}), rats({1, 2, 4, 8}), 0).ok);
  EXPECT_FALSE(check_recurrence_on_values(sop({"-2", "1"}), rats({1, 3, 9}), 0).ok);
  EXPECT_THROW(check_recurrence_on_values(apery, rats({1, 5}), 0), DomainError);
}

TEST(EvalSum, Examples) {
  EXPECT_EQ(eval_sum(parse_expr("binomial(n,k)"), 5), 32);
  EXPECT_EQ(eval_sum(parse_expr("binomial(n,k)^2*binomial(n+k,k)^2"), 2), 73);
  EXPECT_EQ(eval_sum(parse_expr("binomial(2*n-2*k,n-k)*binomial(2*k,k)"), 3), 64);
  EXPECT_EQ(eval_sum(parse_expr("binomial(n,k)"), 5, std::make_pair(0L, 2L)), 16);
  EXPECT_THROW(eval_sum(parse_expr("factorial(k-n)"), 2, std::make_pair(0L, 3L)), DomainError);
}

TEST(EvalSum, TelescopersAnnihilateNaturalBoundarySums) {
  for (const char* s : {"binomial(n,k)", "binomial(n,k)^2", "binomial(n,k)*2^k", "(-1)^k*binomial(2*n,n+k)^2",
                        "binomial(2*n-2*k,n-k)*binomial(2*k,k)", "binomial(n,k)^3", "k*binomial(n,k)"}) {
    auto e = parse_expr(s);
    auto res = zeilberger(compile(e));
    ASSERT_TRUE(res.has_value()) << s;
    std::vector<Rational> v;
    for (long n = 0; n <= 12 + res->order; ++n) v.push_back(eval_sum(e, n));
    auto rep = check_recurrence_on_values(res->telescoper, v, 0);
    EXPECT_TRUE(rep.ok) << s << ": " << rep.residual;
  }
}

TEST(BoundaryTerm, HalfCentralSum) {
  auto e = parse_expr("binomial(2*n,k)");
  BiFun R = nk(kCentralCert);
  auto S = [&](long n) { return eval_sum(e, n, std::make_pair(0L, n)); };
  for (long n = 1; n <= 12; ++n) {
    Rational rhs = boundary_term(e, R, n, 0, n);
    Rational c(binomial(static_cast<unsigned long>(2 * n + 2), static_cast<unsigned long>(n + 1)));
    EXPECT_EQ(rhs, -Rational(4 * n + 3, 4 * n + 2) * c) << n;
    EXPECT_EQ(S(n + 1) - 4 * S(n), -c / Rational(4 * n + 2)) << n;
  }
  // homogenize with an annihilator of the right-hand side
  OreOp L = sop({"-(4*n+2)", "n+2"}) * sop({"-4", "1"});
  EXPECT_EQ(L, sop({"16*n+8", "-(8*n+10)", "n+2"}));
  std::vector<Rational> v;
  for (long n = 0; n <= 14; ++n) v.push_back(S(n));
  EXPECT_TRUE(check_recurrence_on_values(L, v, 0).ok);
}
