#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <vector>

#include "telescope/core/errors.hpp"
#include "telescope/core/numbers.hpp"

namespace telescope {

enum class ExprOp { Num, Sym, Add, Sub, Mul, Div, Neg, Pow, Call };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprOp op;
  Rational value;
  std::string name;
  std::vector<ExprPtr> args;
  std::size_t pos = 0;
};

inline ExprPtr make_num(const Rational& v, std::size_t pos = 0) {
  return std::make_shared<const Expr>(Expr{ExprOp::Num, v, {}, {}, pos});
}
inline ExprPtr make_sym(const std::string& s, std::size_t pos = 0) {
  return std::make_shared<const Expr>(Expr{ExprOp::Sym, 0, s, {}, pos});
}
inline ExprPtr make_node(ExprOp op, std::vector<ExprPtr> args, std::size_t pos = 0) {
  return std::make_shared<const Expr>(Expr{op, 0, {}, std::move(args), pos});
}
inline ExprPtr make_call(const std::string& f, std::vector<ExprPtr> args, std::size_t pos = 0) {
  return std::make_shared<const Expr>(Expr{ExprOp::Call, 0, f, std::move(args), pos});
}

namespace detail {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip();
    if (i_ < s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg + " at position " + std::to_string(i_), i_); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      skip();
      std::size_t p = i_;
      if (eat('+'))
        e = make_node(ExprOp::Add, {e, term()}, p);
      else if (eat('-'))
        e = make_node(ExprOp::Sub, {e, term()}, p);
      else
        return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = factor();
    for (;;) {
      skip();
      std::size_t p = i_;
      if (eat('*'))
        e = make_node(ExprOp::Mul, {e, factor()}, p);
      else if (eat('/'))
        e = make_node(ExprOp::Div, {e, factor()}, p);
      else
        return e;
    }
  }

  ExprPtr factor() {
    skip();
    std::size_t p = i_;
    if (eat('-')) return make_node(ExprOp::Neg, {factor()}, p);
    if (eat('+')) return factor();
    ExprPtr b = postfix();
    skip();
    p = i_;
    if (eat('^')) {
      skip();
      std::size_t q = i_;
      ExprPtr ex = eat('-') ? make_node(ExprOp::Neg, {postfix()}, q) : postfix();
      return make_node(ExprOp::Pow, {b, ex}, p);
    }
    return b;
  }

  ExprPtr postfix() {
    ExprPtr b = base();
    for (;;) {
      skip();
      std::size_t p = i_;
      if (!eat('!')) return b;
      b = make_call("factorial", {b}, p);
    }
  }

  ExprPtr base() {
    skip();
    std::size_t p = i_;
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return make_num(Rational(Integer(s_.substr(p, i_ - p))), p);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      std::string id = s_.substr(p, i_ - p);
      if (!eat('(')) return make_sym(id, p);
      std::size_t arity = id == "factorial" ? 1 : (id == "binomial" || id == "pochhammer") ? 2 : 0;
      if (arity == 0) {
        i_ = p;
        fail("unknown function '" + id + "'");
      }
      std::vector<ExprPtr> args{expr()};
      while (eat(',')) args.push_back(expr());
      if (!eat(')')) fail("expected ')'");
      if (args.size() != arity) {
        i_ = p;
        fail(id + " expects " + std::to_string(arity) + " argument(s)");
      }
      return make_call(id, std::move(args), p);
    }
    if (eat('(')) {
      ExprPtr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

inline int precedence(const Expr& e) {
  switch (e.op) {
    case ExprOp::Add:
    case ExprOp::Sub:
      return 1;
    case ExprOp::Mul:
    case ExprOp::Div:
      return 2;
    case ExprOp::Neg:
      return 3;
    case ExprOp::Pow:
      return 4;
    case ExprOp::Num:
      return e.value.get_den() == 1 && sgn(e.value) >= 0 ? 5 : 2;
    default:
      return 5;
  }
}

}  // namespace detail

inline ExprPtr parse_expr(const std::string& s) { return detail::Parser(s).parse(); }

inline std::string to_string(const Expr& e) {
  auto wrap = [](const Expr& c, int min_prec) {
    std::string s = to_string(c);
    return detail::precedence(c) < min_prec ? "(" + s + ")" : s;
  };
  switch (e.op) {
    case ExprOp::Num:
      return e.value.get_str();
    case ExprOp::Sym:
      return e.name;
    case ExprOp::Add:
      return wrap(*e.args[0], 1) + " + " + wrap(*e.args[1], 2);
    case ExprOp::Sub:
      return wrap(*e.args[0], 1) + " - " + wrap(*e.args[1], 2);
    case ExprOp::Mul:
      return wrap(*e.args[0], 2) + "*" + wrap(*e.args[1], 3);
    case ExprOp::Div:
      return wrap(*e.args[0], 2) + "/" + wrap(*e.args[1], 3);
    case ExprOp::Neg:
      return "-" + wrap(*e.args[0], 3);
    case ExprOp::Pow:
      return wrap(*e.args[0], 5) + "^" + wrap(*e.args[1], 5);
    case ExprOp::Call: {
      std::string s = e.name + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) s += (i ? ", " : "") + to_string(*e.args[i]);
      return s + ")";
    }
  }
  return {};
}

}  // namespace telescope
