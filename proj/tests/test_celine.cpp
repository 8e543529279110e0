#include <gtest/gtest.h>

#include "telescope/celine/celine.hpp"
#include "telescope/expr/ast.hpp"
#include "telescope/expr/eval.hpp"
#include "telescope/verify/verify.hpp"

using namespace telescope;

namespace {

QFun qn(const std::string& s) { return to_qfun(*parse_expr(s), "n"); }

OreOp rec(std::vector<std::string> c) {
  std::vector<QFun> v;
  for (const auto& s : c) v.push_back(qn(s));
  return OreOp(OreGen::S, v, "n");
}

std::optional<QFun> ratio(const OreOp& a, const OreOp& b) {
  if (a.order() != b.order()) return std::nullopt;
  QFun r = a.lc() / b.lc();
  if (!(a == r * b)) return std::nullopt;
  return r;
}

bool positive_multiple(const OreOp& a, const OreOp& b) {
  auto r = ratio(a, b);
  return r && r->is_constant() && sgn(r->constant_value()) > 0;
}

HyperTerm term(const std::string& s) { return compile(parse_expr(s)); }

// sum_{i,j} a_ij f(n+i,k+j) at exact values
Rational apply_kfree(const KFreeRecurrence& r, const ExprPtr& e, long n, long k) {
  Rational acc = 0;
  for (int i = 0; i <= r.r(); ++i)
    for (int j = 0; j <= r.s(); ++j) {
      const QFun& c = r.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (c.is_zero()) continue;
      acc += c(Rational(n)) * eval_exact(*e, {{"n", Rational(n + i)}, {"k", Rational(k + j)}});
    }
  return acc;
}

}  // namespace

TEST(KFree, PascalKernel) {
  auto recs = kfree_recurrence(term("binomial(n,k)"), 1, 1);
  ASSERT_EQ(recs.size(), 1u);
  std::vector<std::vector<QFun>> want{{QFun(-1), QFun(-1)}, {QFun(), QFun(1)}};
  EXPECT_EQ(recs[0].a, want);
}

TEST(KFree, SquaredBinomialNeedsLargerAnsatz) {
  EXPECT_TRUE(kfree_recurrence(term("binomial(n,k)^2"), 1, 1).empty());
  EXPECT_EQ(kfree_recurrence(term("binomial(n,k)^2"), 2, 2).size(), 1u);
}

TEST(KFree, RecurrencesHoldOnValues) {
  for (auto [s, r, q] : std::vector<std::tuple<const char*, int, int>>{
           {"binomial(n,k)", 1, 1}, {"binomial(n,k)^2", 2, 2}, {"(-1)^k*binomial(2*n,n+k)^2", 2, 4}}) {
    auto e = parse_expr(s);
    auto recs = kfree_recurrence(compile(e), r, q);
    ASSERT_FALSE(recs.empty()) << s;
    for (long n = 0; n < 6; ++n)
      for (long k = -3; k < 8; ++k) EXPECT_EQ(apply_kfree(recs[0], e, n, k), 0) << s << " " << n << " " << k;
  }
}

TEST(CelineSum, Binomial) {
  auto op = celine_sum_recurrence(term("binomial(n,k)"), 1, 1);
  ASSERT_TRUE(op.has_value());
  EXPECT_TRUE(positive_multiple(*op, rec({"-2", "1"})));
}

TEST(CelineSum, SquaredBinomial) {
  auto op = celine_sum_recurrence(term("binomial(n,k)^2"), 2, 2);
  ASSERT_TRUE(op.has_value());
  EXPECT_TRUE(positive_multiple(*op, rec({"0", "-6-4*n", "2+n"})));
}

TEST(CelineSum, AlternatingSquaredBinomial) {
  auto op = celine_sum_recurrence(term("(-1)^k*binomial(2*n,n+k)^2"), 2, 4);
  ASSERT_TRUE(op.has_value());
  EXPECT_TRUE(positive_multiple(*op, rec({"112+400*n+416*n^2+128*n^3", "-110-288*n-240*n^2-64*n^3",
                                          "18+45*n+34*n^2+8*n^3"})));
}

TEST(CelineSum, AperyOrderFour) {
  auto recs = kfree_recurrence(term("binomial(n,k)^2*binomial(n+k,k)^2"), 4, 3);
  EXPECT_EQ(recs.size(), 1u);
  auto op = celine_sum_recurrence(term("binomial(n,k)^2*binomial(n+k,k)^2"), 4, 3);
  ASSERT_TRUE(op.has_value());
  OreOp published = rec({"-504-2076*n-3408*n^2-2832*n^3-1248*n^4-276*n^5-24*n^6",
                     "63000+194316*n+245760*n^2+162672*n^3+59256*n^4+11232*n^5+864*n^6",
                     "-277560-734604*n-798792*n^2-457224*n^3-145392*n^4-24360*n^5-1680*n^6",
                     "224280+564636*n+578136*n^2+308280*n^3+90360*n^4+13824*n^5+864*n^6",
                     "-9216-22272*n-21696*n^2-10896*n^3-2976*n^4-420*n^5-24*n^6"});
  auto r = ratio(published, *op);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r, qn("12*(n+2)"));
  std::vector<Rational> b{1, 5, 73, 1445, 33001, 819005};
  EXPECT_TRUE(check_recurrence_on_values(*op, b, 0).ok);
}

TEST(Wegschaider, LiftsVanishingColumnSums) {
  // 1 - S_n S_k - S_k^2 + S_n S_k^2
  KFreeRecurrence r;
  r.a = {{QFun(1), QFun(), QFun(-1)}, {QFun(), QFun(-1), QFun(1)}};
  auto d = wegschaider_lift(r);
  EXPECT_EQ(d.power, 1);
  EXPECT_TRUE(ratio(d.kfree, rec({"-2", "1"})).has_value());
  EXPECT_TRUE(d.X[0].is_zero());
}

TEST(Wegschaider, IdentityWhenColumnSumsSurvive) {
  auto recs = kfree_recurrence(term("binomial(n,k)"), 1, 1);
  auto d = wegschaider_lift(recs[0]);
  EXPECT_EQ(d.power, 0);
  EXPECT_EQ(d.kfree, rec({"-2", "1"}));
}
