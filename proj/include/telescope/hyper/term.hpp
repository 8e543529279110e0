#pragma once

#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "telescope/core/errors.hpp"
#include "telescope/core/ratfun.hpp"
#include "telescope/expr/ast.hpp"
#include "telescope/expr/eval.hpp"

namespace telescope {

using BiPoly = Poly<QFun>;   // in k, coefficients polynomials in n
using BiFun = RatFun<QFun>;  // in k over Q(n)

inline BiFun shift_n(const BiFun& f, long s) {
  auto sh = [&](const QFun& c) { return c.shift(Rational(s)); };
  return BiFun::from_reduced(f.num().map<QFun>(sh).with_var(f.num().var()), f.den().map<QFun>(sh).with_var(f.den().var()));
}

inline BiPoly shift_n(const BiPoly& p, long s) {
  return p.map<QFun>([&](const QFun& c) { return c.shift(Rational(s)); }).with_var(p.var());
}

// Rational constant times a product of normalized bivariate polynomials to
// integer powers. A factor is normalized when its coefficients are
// polynomials in n and lc_k has leading n-coefficient 1.
struct BiFactored {
  Rational c = 1;
  std::vector<std::pair<BiPoly, long>> f;

  void mul_factor(const BiPoly& p, long e) {
    if (e == 0) return;
    for (auto it = f.begin(); it != f.end(); ++it) {
      if (it->first == p) {
        it->second += e;
        if (it->second == 0) f.erase(it);
        return;
      }
    }
    f.emplace_back(p, e);
  }

  void mul_poly(BiPoly p, long e) {
    if (p.is_zero()) throw DomainError("zero factor in a hypergeometric term");
    QPoly l(Rational(1), "n");
    for (int i = 0; i <= p.degree(); ++i) l = lcm(l, p[static_cast<std::size_t>(i)].den());
    if (l.degree() > 0) {
      p = p * QFun(l);
      mul_poly(BiPoly(QFun(l), p.var()), -e);
    }
    Rational c0 = p.lc().num().lc();
    c *= telescope::pow(c0, e);
    p = p * QFun(1 / c0);
    if (p.degree() == 0 && p.lc().num().degree() == 0) return;
    mul_factor(p, e);
  }

  BiFactored& operator*=(const BiFactored& o) {
    c *= o.c;
    for (const auto& [p, e] : o.f) mul_factor(p, e);
    return *this;
  }
  friend BiFactored operator*(BiFactored a, const BiFactored& b) { return a *= b; }

  BiFactored pow(long e) const {
    BiFactored r;
    r.c = telescope::pow(c, e);
    for (const auto& [p, x] : f) r.f.emplace_back(p, x * e);
    return r;
  }
  BiFactored inverse() const { return pow(-1); }

  BiFactored shift_n(long s) const {
    BiFactored r;
    r.c = c;
    for (const auto& [p, e] : f) r.mul_factor(telescope::shift_n(p, s), e);
    return r;
  }
  BiFactored shift_k(long s) const {
    BiFactored r;
    r.c = c;
    for (const auto& [p, e] : f) r.mul_factor(p.shift(QFun(Rational(s))), e);
    return r;
  }

  BiPoly numerator() const {
    BiPoly r(QFun(c), "k");
    for (const auto& [p, e] : f)
      if (e > 0) r = r * telescope::pow(p, static_cast<unsigned>(e));
    return r.with_var("k");
  }
  BiPoly denominator() const {
    BiPoly r(QFun(1), "k");
    for (const auto& [p, e] : f)
      if (e < 0) r = r * telescope::pow(p, static_cast<unsigned>(-e));
    return r.with_var("k");
  }
  BiFun value() const { return BiFun(numerator(), denominator()); }

  static BiFactored from(const BiFun& g) {
    BiFactored r;
    if (g.is_zero()) throw DomainError("zero factor in a hypergeometric term");
    r.mul_poly(g.num(), 1);
    r.mul_poly(g.den(), -1);
    return r;
  }
};

// f(n+1,k)/f(n,k) = u and f(n,k+1)/f(n,k) = v.
struct HyperTerm {
  BiFun u, v;
  BiFactored uf, vf;
  ExprPtr source;

  static HyperTerm from_quotients(const BiFun& u, const BiFun& v) {
    return {u, v, BiFactored::from(u), BiFactored::from(v), nullptr};
  }
  static HyperTerm from_factored(const BiFactored& uf, const BiFactored& vf) {
    return {uf.value(), vf.value(), uf, vf, nullptr};
  }
};

inline bool compatibility_check(const HyperTerm& t) {
  return t.u.shift(QFun(1)) * t.v == t.u * shift_n(t.v, 1);
}

// Multiplicative pieces of a term: Gamma(arg)^e, base^exponent and rational
// subexpressions.
struct ProductAtoms {
  Rational constant = 1;
  std::vector<std::pair<ExprPtr, long>> rational;
  std::vector<std::pair<ExprPtr, long>> gammas;
  std::vector<std::pair<Rational, ExprPtr>> exponentials;
};

namespace detail {

inline bool is_plain_rational(const Expr& e) {
  if (e.op == ExprOp::Call) return false;
  if (e.op == ExprOp::Pow) {
    auto ex = constant_value(*e.args[1]);
    if (!ex || !as_integer(*ex)) return false;
    return is_plain_rational(*e.args[0]);
  }
  for (const auto& a : e.args)
    if (!is_plain_rational(*a)) return false;
  return true;
}

inline ExprPtr plus(const ExprPtr& a, long c) { return make_node(ExprOp::Add, {a, make_num(Rational(c))}, a->pos); }

inline void collect_atoms(const ExprPtr& ep, long e, ProductAtoms& out) {
  const Expr& x = *ep;
  switch (x.op) {
    case ExprOp::Mul:
      collect_atoms(x.args[0], e, out);
      collect_atoms(x.args[1], e, out);
      return;
    case ExprOp::Div:
      collect_atoms(x.args[0], e, out);
      collect_atoms(x.args[1], -e, out);
      return;
    case ExprOp::Neg:
      if (e % 2) out.constant = -out.constant;
      collect_atoms(x.args[0], e, out);
      return;
    case ExprOp::Num:
      if (is_zero(x.value)) throw DomainError("the term is identically zero");
      out.constant *= pow(x.value, e);
      return;
    case ExprOp::Pow: {
      auto ex = constant_value(*x.args[1]);
      if (ex && as_integer(*ex)) {
        collect_atoms(x.args[0], e * *as_integer(*ex), out);
        return;
      }
      auto b = constant_value(*x.args[0]);
      if (!b) throw UnsupportedExpression("power with symbolic base and variable exponent at position " + std::to_string(x.pos));
      if (is_zero(*b)) throw DomainError("zero base with a variable exponent");
      out.exponentials.emplace_back(*b, make_node(ExprOp::Mul, {make_num(Rational(e)), x.args[1]}, x.pos));
      return;
    }
    case ExprOp::Call: {
      const auto& a = x.args;
      if (x.name == "factorial") {
        out.gammas.emplace_back(plus(a[0], 1), e);
      } else if (x.name == "binomial") {
        out.gammas.emplace_back(plus(a[0], 1), e);
        out.gammas.emplace_back(plus(a[1], 1), -e);
        out.gammas.emplace_back(plus(make_node(ExprOp::Sub, {a[0], a[1]}, x.pos), 1), -e);
      } else if (x.name == "pochhammer") {
        out.gammas.emplace_back(make_node(ExprOp::Add, {a[0], a[1]}, x.pos), e);
        out.gammas.emplace_back(a[0], -e);
      } else {
        throw UnsupportedExpression("unknown function " + x.name);
      }
      return;
    }
    default:
      if (!is_plain_rational(x))
        throw UnsupportedExpression("sum of non-rational terms at position " + std::to_string(x.pos));
      out.rational.emplace_back(ep, e);
  }
}

// Gamma(X + s)/Gamma(X) as (numerator, denominator).
template <class P>
std::pair<P, P> gamma_shift(const P& X, long s) {
  P num(typename P::coeff_type(1), X.var()), den(typename P::coeff_type(1), X.var());
  for (long i = 0; i < s; ++i) num = num * (X + P(typename P::coeff_type(i), X.var()));
  for (long i = 1; i <= -s; ++i) den = den * (X - P(typename P::coeff_type(i), X.var()));
  return {num, den};
}

struct LinearNK {
  BiPoly X;
  long a, b;
};

inline LinearNK linear_nk(const Expr& arg) {
  BiFun f = to_bivariate(arg, "k", "n");
  auto bad = [&]() {
    return UnsupportedExpression("argument '" + to_string(arg) + "' at position " + std::to_string(arg.pos) +
                                 " is not integer-linear in n and k");
  };
  if (!f.is_polynomial() || f.num().degree() > 1) throw bad();
  BiPoly X = f.num();
  QFun c0 = X.coeff(0), c1 = X.coeff(1);
  if (!c0.is_polynomial() || c0.num().degree() > 1 || !c1.is_constant()) throw bad();
  auto a = as_integer(c0.num().coeff(1)), b = as_integer(c1.constant_value());
  if (!a || !b) throw bad();
  return {X.with_var("k"), *a, *b};
}

}  // namespace detail

inline ProductAtoms product_atoms(const ExprPtr& e) {
  ProductAtoms out;
  detail::collect_atoms(e, 1, out);
  return out;
}

inline void collect_symbols(const Expr& e, std::set<std::string>& out) {
  if (e.op == ExprOp::Sym) out.insert(e.name);
  for (const auto& a : e.args) collect_symbols(*a, out);
}

inline HyperTerm compile(const ExprPtr& e) {
  std::set<std::string> syms;
  collect_symbols(*e, syms);
  for (const auto& s : syms)
    if (s != "n" && s != "k")
      throw UnsupportedExpression("symbol '" + s + "' is not supported; terms may only involve n and k");
  ProductAtoms atoms = product_atoms(e);
  BiFactored uf, vf;
  for (const auto& [arg, ex] : atoms.gammas) {
    auto lin = detail::linear_nk(*arg);
    auto add = [&](BiFactored& t, long s) {
      for (long i = 0; i < s; ++i) t.mul_poly(lin.X + BiPoly(QFun(Rational(i)), "k"), ex);
      for (long i = 1; i <= -s; ++i) t.mul_poly(lin.X - BiPoly(QFun(Rational(i)), "k"), -ex);
    };
    add(uf, lin.a);
    add(vf, lin.b);
  }
  for (const auto& [base, ex] : atoms.exponentials) {
    auto lin = detail::linear_nk(*ex);
    uf.c *= pow(base, lin.a);
    vf.c *= pow(base, lin.b);
  }
  for (const auto& [sub, ex] : atoms.rational) {
    BiFun r = pow(to_bivariate(*sub, "k", "n"), ex);
    if (r.is_zero()) throw DomainError("the term is identically zero");
    BiFactored rf = BiFactored::from(r), inv = rf.inverse();
    uf *= rf.shift_n(1) * inv;
    vf *= rf.shift_k(1) * inv;
  }
  HyperTerm t = HyperTerm::from_factored(uf, vf);
  t.source = e;
  return t;
}

// Shift quotient H(k+1)/H(k) over a parameter field L; param maps the
// other symbols into L.
template <class L>
RatFun<L> compile_k_quotient(const ExprPtr& e, const std::string& k, const std::function<L(const std::string&)>& param) {
  using P = Poly<L>;
  auto to_l = [&](const Expr& x) {
    return eval_field<RatFun<L>>(
        x, [](const Rational& r) { return RatFun<L>(L(r)); },
        [&](const Expr& l) -> RatFun<L> {
          if (l.op == ExprOp::Sym) return l.name == k ? RatFun<L>::variable(k) : RatFun<L>(param(l.name));
          throw UnsupportedExpression("unexpected '" + to_string(l) + "' at position " + std::to_string(l.pos));
        });
  };
  auto linear = [&](const Expr& x) -> std::pair<P, long> {
    RatFun<L> f = to_l(x);
    auto bad = UnsupportedExpression("argument '" + to_string(x) + "' at position " + std::to_string(x.pos) +
                                     " is not integer-linear in " + k);
    if (!f.is_polynomial() || f.num().degree() > 1) throw bad;
    auto b = as_integer(f.num().coeff(1));
    if (!b) throw bad;
    return {f.num().with_var(k), *b};
  };
  ProductAtoms atoms = product_atoms(e);
  RatFun<L> v(L(1));
  for (const auto& [arg, ex] : atoms.gammas) {
    auto [X, b] = linear(*arg);
    auto [num, den] = detail::gamma_shift(X, b);
    v *= pow(RatFun<L>(num, den), ex);
  }
  for (const auto& [base, ex] : atoms.exponentials) {
    auto [X, b] = linear(*ex);
    v *= RatFun<L>(L(pow(base, b)));
  }
  for (const auto& [sub, ex] : atoms.rational) {
    RatFun<L> r = pow(to_l(*sub), ex);
    if (r.is_zero()) throw DomainError("the term is identically zero");
    v *= r.shift(L(1)) / r;
  }
  return RatFun<L>::from_reduced(v.num().with_var(k), v.den().with_var(k));
}

// Order bound r = max(A + D, B + C) for proper terms, from the k-coefficients
// of the factorial arguments.
inline long az_order_bound(const ExprPtr& e) {
  ProductAtoms atoms = product_atoms(e);
  for (const auto& [sub, ex] : atoms.rational) {
    if (ex < 0 && !to_bivariate(*sub, "k", "n").is_constant())
      throw UnsupportedExpression("not a proper term: rational prefactor in the denominator");
    BiFun r = to_bivariate(*sub, "k", "n");
    if (!r.is_polynomial()) throw UnsupportedExpression("not a proper term: non-polynomial prefactor");
    for (int i = 0; i <= r.num().degree(); ++i)
      if (!r.num()[static_cast<std::size_t>(i)].is_polynomial())
        throw UnsupportedExpression("not a proper term: non-polynomial prefactor");
  }
  long A = 0, B = 0, C = 0, D = 0;
  for (const auto& [arg, ex] : atoms.gammas) {
    long b = detail::linear_nk(*arg).b;
    if (b == 0) continue;
    long w = std::labs(b) * std::labs(ex);
    if (ex > 0)
      (b > 0 ? A : B) += w;
    else
      (b > 0 ? C : D) += w;
  }
  return std::max(A + D, B + C);
}

}  // namespace telescope
