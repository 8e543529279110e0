#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "telescope/core/errors.hpp"
#include "telescope/core/factor.hpp"
#include "telescope/core/ratfun.hpp"
#include "telescope/expr/ast.hpp"

namespace telescope {

// Constant rational value of an expression without symbols or calls.
inline std::optional<Rational> constant_value(const Expr& e) {
  switch (e.op) {
    case ExprOp::Num:
      return e.value;
    case ExprOp::Neg: {
      auto a = constant_value(*e.args[0]);
      if (!a) return std::nullopt;
      return Rational(-*a);
    }
    case ExprOp::Add:
    case ExprOp::Sub:
    case ExprOp::Mul:
    case ExprOp::Div:
    case ExprOp::Pow: {
      auto a = constant_value(*e.args[0]), b = constant_value(*e.args[1]);
      if (!a || !b) return std::nullopt;
      if (e.op == ExprOp::Add) return Rational(*a + *b);
      if (e.op == ExprOp::Sub) return Rational(*a - *b);
      if (e.op == ExprOp::Mul) return Rational(*a * *b);
      if (e.op == ExprOp::Div) {
        if (is_zero(*b)) throw DomainError("division by zero");
        return Rational(*a / *b);
      }
      auto ex = as_integer(*b);
      if (!ex) return std::nullopt;
      if (is_zero(*a) && *ex < 0) throw DomainError("division by zero");
      return pow(*a, *ex);
    }
    default:
      return std::nullopt;
  }
}

// Evaluate +, -, *, / and constant integer powers in the field T.
template <class T>
T eval_field(const Expr& e, const std::function<T(const Rational&)>& num,
             const std::function<T(const Expr&)>& leaf) {
  auto rec = [&](const Expr& c) { return eval_field<T>(c, num, leaf); };
  switch (e.op) {
    case ExprOp::Num:
      return num(e.value);
    case ExprOp::Neg:
      return -rec(*e.args[0]);
    case ExprOp::Add:
      return rec(*e.args[0]) + rec(*e.args[1]);
    case ExprOp::Sub:
      return rec(*e.args[0]) - rec(*e.args[1]);
    case ExprOp::Mul:
      return rec(*e.args[0]) * rec(*e.args[1]);
    case ExprOp::Div: {
      T d = rec(*e.args[1]);
      if (is_zero(d)) throw DomainError("division by zero at position " + std::to_string(e.pos));
      return rec(*e.args[0]) / d;
    }
    case ExprOp::Pow: {
      auto ex = constant_value(*e.args[1]);
      std::optional<long> n = ex ? as_integer(*ex) : std::nullopt;
      if (!n) return leaf(e);
      T b = rec(*e.args[0]);
      if (is_zero(b) && *n < 0) throw DomainError("division by zero at position " + std::to_string(e.pos));
      return pow(b, *n);
    }
    default:
      return leaf(e);
  }
}

// Rational function in the named variables, nested as RatFun over the
// innermost field.
inline QFun to_qfun(const Expr& e, const std::string& var) {
  return eval_field<QFun>(
      e, [](const Rational& r) { return QFun(r); },
      [&](const Expr& l) -> QFun {
        if (l.op == ExprOp::Sym && l.name == var) return QFun::variable(var);
        throw UnsupportedExpression("unexpected '" + to_string(l) + "' at position " + std::to_string(l.pos) +
                                    "; expected a rational function in " + var);
      });
}

inline QPoly to_qpoly(const Expr& e, const std::string& var) {
  QFun f = to_qfun(e, var);
  if (!f.is_polynomial()) throw UnsupportedExpression("expected a polynomial in " + var);
  return f.num() / f.den().lc();
}

// Rational function in outer over Q(inner).
inline RatFun<QFun> to_bivariate(const Expr& e, const std::string& outer, const std::string& inner) {
  using B = RatFun<QFun>;
  return eval_field<B>(
      e, [](const Rational& r) { return B(QFun(r)); },
      [&](const Expr& l) -> B {
        if (l.op == ExprOp::Sym && l.name == outer) return B::variable(outer);
        if (l.op == ExprOp::Sym && l.name == inner) return B(QFun::variable(inner));
        throw UnsupportedExpression("unexpected '" + to_string(l) + "' at position " + std::to_string(l.pos) +
                                    "; expected a rational function in " + inner + ", " + outer);
      });
}

// Exact value, or infinity for a pole of a factorial in a numerator.
struct ExtValue {
  bool infinite = false;
  Rational value;
};

namespace detail {

inline ExtValue ext_mul(const ExtValue& a, const ExtValue& b) {
  if (a.infinite || b.infinite) {
    if ((!a.infinite && is_zero(a.value)) || (!b.infinite && is_zero(b.value)))
      throw DomainError("indeterminate product 0 * infinity");
    return {true, 0};
  }
  return {false, a.value * b.value};
}

inline ExtValue ext_inv(const ExtValue& a) {
  if (a.infinite) return {false, 0};
  if (is_zero(a.value)) throw DomainError("division by zero");
  return {false, 1 / a.value};
}

inline ExtValue ext_add(const ExtValue& a, const ExtValue& b) {
  if (a.infinite && b.infinite) throw DomainError("indeterminate sum of infinities");
  if (a.infinite || b.infinite) return {true, 0};
  return {false, a.value + b.value};
}

inline long require_integer(const ExtValue& v, const char* what) {
  if (v.infinite) throw DomainError(std::string(what) + " argument is undefined");
  auto i = as_integer(v.value);
  if (!i) throw DomainError(std::string(what) + " needs an integer argument, got " + v.value.get_str());
  return *i;
}

inline Rational falling(const Rational& a, long m) {
  Rational r = 1;
  for (long i = 0; i < m; ++i) r *= a - i;
  return r;
}

}  // namespace detail

// binomial(a, b) = a(a-1)...(a-b+1)/b! for integer b >= 0 and 0 for b < 0;
// 1/m! = 0 for negative integers m.
inline ExtValue eval_ext(const Expr& e, const std::map<std::string, Rational>& env) {
  using namespace detail;
  auto rec = [&](const Expr& c) { return eval_ext(c, env); };
  switch (e.op) {
    case ExprOp::Num:
      return {false, e.value};
    case ExprOp::Sym: {
      auto it = env.find(e.name);
      if (it == env.end()) throw DomainError("unbound symbol '" + e.name + "'");
      return {false, it->second};
    }
    case ExprOp::Neg: {
      ExtValue a = rec(*e.args[0]);
      return {a.infinite, -a.value};
    }
    case ExprOp::Add:
      return ext_add(rec(*e.args[0]), rec(*e.args[1]));
    case ExprOp::Sub: {
      ExtValue b = rec(*e.args[1]);
      return ext_add(rec(*e.args[0]), {b.infinite, -b.value});
    }
    case ExprOp::Mul:
      return ext_mul(rec(*e.args[0]), rec(*e.args[1]));
    case ExprOp::Div:
      return ext_mul(rec(*e.args[0]), ext_inv(rec(*e.args[1])));
    case ExprOp::Pow: {
      ExtValue b = rec(*e.args[0]);
      long n = require_integer(rec(*e.args[1]), "exponent");
      if (b.infinite) return n > 0 ? ExtValue{true, 0} : n < 0 ? ExtValue{false, 0} : ExtValue{false, 1};
      if (is_zero(b.value) && n < 0) throw DomainError("division by zero");
      return {false, pow(b.value, n)};
    }
    case ExprOp::Call: {
      if (e.name == "factorial") {
        long m = require_integer(rec(*e.args[0]), "factorial");
        if (m < 0) return {true, 0};
        return {false, Rational(factorial(static_cast<unsigned long>(m)))};
      }
      if (e.name == "binomial") {
        ExtValue a = rec(*e.args[0]);
        long b = require_integer(rec(*e.args[1]), "binomial");
        if (b < 0) return {false, 0};
        if (a.infinite) throw DomainError("binomial argument is undefined");
        return {false, falling(a.value, b) / Rational(factorial(static_cast<unsigned long>(b)))};
      }
      if (e.name == "pochhammer") {
        ExtValue a = rec(*e.args[0]);
        long m = require_integer(rec(*e.args[1]), "pochhammer");
        if (a.infinite) throw DomainError("pochhammer argument is undefined");
        Rational r = 1;
        if (m >= 0) {
          for (long i = 0; i < m; ++i) r *= a.value + i;
          return {false, r};
        }
        for (long i = 1; i <= -m; ++i) r *= a.value - i;
        if (is_zero(r)) return {true, 0};
        return {false, 1 / r};
      }
      throw UnsupportedExpression("unknown function " + e.name);
    }
  }
  return {};
}

inline Rational eval_exact(const Expr& e, const std::map<std::string, Rational>& env) {
  ExtValue v = eval_ext(e, env);
  if (v.infinite) throw DomainError("expression is undefined at this point");
  return v.value;
}

}  // namespace telescope
