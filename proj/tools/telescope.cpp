#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "telescope/telescope.hpp"

using namespace telescope;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0, kNo = 1, kUsage = 2, kInternal = 3;

struct Options {
  bool json = false;
  bool verify = true;
  std::string var;
  std::vector<std::string> exprs;
  int r_max = 6;
  int r = 1, s = 1;
  std::string method = "hermite";
  std::string gen;
  std::string telescoper, certificate, values, init;
  int count = 10;
};

std::set<std::string> symbols(const Expr& e) {
  std::set<std::string> s;
  collect_symbols(e, s);
  return s;
}

// The single free symbol, or fallback when there is none.
std::string pick_var(const Expr& e, const std::string& given, const std::string& fallback) {
  if (!given.empty()) return given;
  auto s = symbols(e);
  if (s.size() > 1) throw UnsupportedExpression("several symbols; choose the variable with --var");
  return s.empty() ? fallback : *s.begin();
}

json op_json(const OreOp& P) {
  json c = json::array();
  for (const auto& x : P.coeffs) c.push_back(x.to_string());
  return {{"generator", P.symbol()}, {"variable", P.var}, {"coeffs", c}};
}

json strings(const std::vector<std::string>& v) { return json(v); }

// Operators are written as polynomials in S or D with coefficients on the left.
OreOp parse_operator(const std::string& text, const std::string& gen_hint, const std::string& var_hint) {
  ExprPtr e = parse_expr(text);
  auto syms = symbols(*e);
  std::string g = gen_hint;
  if (g.empty()) {
    bool hs = syms.count("S"), hd = syms.count("D");
    if (hs && hd) throw UnsupportedExpression("operator mixes S and D");
    g = hd ? "D" : "S";
  }
  if (g != "S" && g != "D") throw UnsupportedExpression("generator must be S or D");
  syms.erase(g);
  std::string v = var_hint;
  if (v.empty()) {
    if (syms.size() > 1) throw UnsupportedExpression("operator coefficients must be in one variable");
    v = syms.empty() ? (g == "S" ? "n" : "x") : *syms.begin();
  }
  BiFun f = to_bivariate(*e, g, v);
  if (!f.is_polynomial()) throw UnsupportedExpression("operator must be polynomial in " + g);
  std::vector<QFun> c(f.num().coeffs().begin(), f.num().coeffs().end());
  return OreOp(g == "S" ? OreGen::S : OreGen::D, c, v);
}

std::vector<Rational> parse_values(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto v = constant_value(*parse_expr(item));
    if (!v) throw UnsupportedExpression("value '" + item + "' is not a number");
    out.push_back(*v);
  }
  return out;
}

struct Output {
  json j = json::object();
  std::vector<std::string> lines;
  int code = kOk;

  void text(const std::string& s) { lines.push_back(s); }
  int emit(bool as_json) const {
    if (as_json)
      std::cout << j.dump(2) << "\n";
    else
      for (const auto& l : lines) std::cout << l << "\n";
    return code;
  }
};

void telescoping(Output& out, const OreOp& P, const std::string& cert, bool verified,
                 const std::vector<std::string>& warnings) {
  out.j["telescoper"] = op_json(P);
  out.j["certificate"] = cert;
  out.j["order"] = P.order();
  out.j["verified"] = verified;
  out.j["warnings"] = strings(warnings);
  out.text("telescoper: " + P.to_string());
  out.text("certificate: " + cert);
  out.text("order: " + std::to_string(P.order()));
  out.text(std::string("verified: ") + (verified ? "true" : "false"));
  for (const auto& w : warnings) out.text("warning: " + w);
}

Output integrate_rational_cmd(const Options& o) {
  ExprPtr e = parse_expr(o.exprs.at(0));
  QFun f = to_qfun(*e, pick_var(*e, o.var, "x"));
  auto res = integrate_rational(f);
  Output out;
  json logs = json::array();
  out.text("rational: " + res.rational.to_string());
  for (const auto& t : res.log) {
    logs.push_back({{"u", t.u.to_string()}, {"g", t.g.to_string()}});
    out.text("log: " + to_string(t));
  }
  out.j = {{"rational", res.rational.to_string()}, {"log", logs}, {"verified", true}};
  return out;
}

Output logpart_cmd(const Options& o) {
  ExprPtr e = parse_expr(o.exprs.at(0));
  QFun f = to_qfun(*e, pick_var(*e, o.var, "x"));
  LogPart L = logpart(f);
  bool ok = !o.verify || logpart_derivative(L) == f;
  if (!ok) throw std::logic_error("log part failed differentiation check");
  Output out;
  json logs = json::array();
  for (const auto& t : L) {
    logs.push_back({{"u", t.u.to_string()}, {"g", t.g.to_string()}});
    out.text(to_string(t));
  }
  out.j = {{"log", logs}, {"verified", o.verify}};
  return out;
}

Output sum_polynomial_cmd(const Options& o) {
  ExprPtr e = parse_expr(o.exprs.at(0));
  std::string v = pick_var(*e, o.var, "k");
  QFun f = to_qfun(*e, v);
  if (!f.is_polynomial()) throw UnsupportedExpression("sum-polynomial needs a polynomial");
  QPoly g = sum_polynomial(f.num().with_var(v));
  bool ok = !o.verify || g.shift(Rational(1)) - g == f.num().with_var(v);
  if (!ok) throw std::logic_error("antidifference failed check");
  Output out;
  out.text("antidifference: " + g.to_string());
  out.j = {{"antidifference", g.to_string()}, {"verified", o.verify}};
  return out;
}

Output sum_rational_cmd(const Options& o) {
  ExprPtr e = parse_expr(o.exprs.at(0));
  std::string v = pick_var(*e, o.var, "k");
  QFun f = to_qfun(*e, v);
  auto res = abramov_reduce(f);
  if (o.verify && res.g.shift(Rational(1)) - res.g + res.r != f) throw std::logic_error("decomposition failed check");
  Output out;
  bool summable = res.r.is_zero();
  out.text("antidifference: " + res.g.to_string());
  out.text("remainder: " + res.r.to_string());
  out.text(std::string("summable: ") + (summable ? "yes" : "no"));
  out.j = {{"antidifference", res.g.to_string()}, {"remainder", res.r.to_string()}, {"summable", summable},
           {"verified", o.verify}};
  return out;
}

template <class L>
Output gosper_with(const ExprPtr& e, const std::string& k, const std::function<L(const std::string&)>& param) {
  RatFun<L> w = compile_k_quotient<L>(e, k, param);
  auto y = gosper(w);
  Output out;
  if (!y) {
    out.text("not Gosper-summable");
    out.j = {{"summable", false}};
    out.code = kNo;
    return out;
  }
  if (w * y->shift(L(1)) - *y != RatFun<L>(L(1))) throw std::logic_error("Gosper certificate failed check");
  std::string c = y->to_string();
  out.text("certificate: " + c);
  out.text("antidifference: (" + c + ")*(" + to_string(*e) + ")");
  out.j = {{"summable", true}, {"certificate", c}, {"verified", true}};
  return out;
}

Output gosper_cmd(const Options& o) {
  ExprPtr e = parse_expr(o.exprs.at(0));
  std::string k = o.var.empty() ? "k" : o.var;
  auto syms = symbols(*e);
  syms.erase(k);
  std::vector<std::string> ps(syms.begin(), syms.end());
  if (ps.empty()) {
    std::function<Rational(const std::string&)> pf = [](const std::string& s) -> Rational {
      throw UnsupportedExpression("unexpected symbol " + s);
    };
    return gosper_with<Rational>(e, k, pf);
  }
  if (ps.size() == 1) {
    std::function<QFun(const std::string&)> pf = [](const std::string& s) { return QFun::variable(s); };
    return gosper_with<QFun>(e, k, pf);
  }
  if (ps.size() == 2) {
    using L2 = RatFun<QFun>;
    std::string a = ps[0], b = ps[1];
    std::function<L2(const std::string&)> pf = [a, b](const std::string& s) {
      return s == a ? L2::variable(a) : L2(QFun::variable(b));
    };
    return gosper_with<L2>(e, k, pf);
  }
  throw UnsupportedExpression("gosper supports at most two parameters besides " + k);
}

Output zeilberger_cmd(const Options& o) {
  ExprPtr e = parse_expr(o.exprs.at(0));
  HyperTerm t = compile(e);
  auto res = zeilberger(t, o.r_max);
  Output out;
  if (!res) {
    out.text("no telescoper of order <= " + std::to_string(o.r_max));
    out.j = {{"telescoper", nullptr}, {"order", nullptr}, {"verified", false}, {"warnings", json::array()}};
    out.code = kNo;
    return out;
  }
  bool ok = res->verified;
  if (o.verify) ok = check_telescoper_sum(res->telescoper, res->certificate, t).ok;
  if (!ok) throw std::logic_error("telescoper failed verification");
  telescoping(out, res->telescoper, res->certificate.to_string(), ok, res->warnings);
  return out;
}

Output celine_cmd(const Options& o) {
  ExprPtr e = parse_expr(o.exprs.at(0));
  auto op = celine_sum_recurrence(compile(e), o.r, o.s);
  Output out;
  if (!op) {
    out.text("no k-free recurrence with r = " + std::to_string(o.r) + ", s = " + std::to_string(o.s));
    out.j = {{"telescoper", nullptr}, {"order", nullptr}, {"verified", false}, {"warnings", json::array()}};
    out.code = kNo;
    return out;
  }
  std::vector<std::string> warnings;
  bool verified = false;
  if (o.verify) {
    try {
      std::vector<Rational> v;
      for (long n = 0; n <= 15 + op->order(); ++n) v.push_back(eval_sum(e, n));
      verified = check_recurrence_on_values(*op, v, 0).ok;
      if (!verified) throw std::logic_error("recurrence fails on evaluated sums");
    } catch (const DomainError& err) {
      warnings.push_back(std::string("not checked on values: ") + err.what());
    }
  }
  out.j["telescoper"] = op_json(*op);
  out.j["order"] = op->order();
  out.j["verified"] = verified;
  out.j["warnings"] = strings(warnings);
  out.text("recurrence: " + op->to_string());
  out.text("order: " + std::to_string(op->order()));
  out.text(std::string("verified: ") + (verified ? "true" : "false"));
  for (const auto& w : warnings) out.text("warning: " + w);
  return out;
}

BiFun xy_function(const std::string& s) { return to_bivariate(*parse_expr(s), "y", "x"); }

Output ct_rational_cmd(const Options& o) {
  BiFun f = xy_function(o.exprs.at(0));
  DiffTelescopingResult res;
  if (o.method == "hermite")
    res = hermite_telescoper(f);
  else if (o.method == "az")
    res = az_telescoper(f);
  else
    throw UnsupportedExpression("unknown method " + o.method);
  bool ok = !o.verify || check_telescoper_integral(res.telescoper, res.certificate, f).ok;
  if (!ok) throw std::logic_error("telescoper failed verification");
  Output out;
  telescoping(out, res.telescoper, res.certificate.to_string(), o.verify, {});
  return out;
}

Output diagonal_cmd(const Options& o) {
  OreOp P = diagonal_annihilator(xy_function(o.exprs.at(0)));
  Output out;
  out.j = {{"telescoper", op_json(P)}, {"order", P.order()}, {"verified", true}, {"warnings", json::array()}};
  out.text("annihilator: " + P.to_string());
  out.text("order: " + std::to_string(P.order()));
  return out;
}

Output operator_result(const std::string& key, const OreOp& P) {
  Output out;
  out.j = {{key, op_json(P)}, {"operator", P.to_string()}, {"order", P.order()}};
  out.text(P.to_string());
  return out;
}

Output dfinite_cmd(const std::string& which, const Options& o) {
  std::string gen = o.gen;
  for (const auto& e : o.exprs) {
    if (!gen.empty()) break;
    auto syms = symbols(*parse_expr(e));
    if (syms.count("S")) gen = "S";
    if (syms.count("D")) gen = "D";
  }
  auto arg = [&](std::size_t i) {
    if (o.exprs.size() <= i) throw CLI::ValidationError("dfinite " + which + " needs " + std::to_string(i + 1) + " operators");
    return parse_operator(o.exprs[i], gen, o.var);
  };
  if (which == "mul") return operator_result("result", arg(0) * arg(1));
  if (which == "lclm") return operator_result("result", lclm(arg(0), arg(1)));
  if (which == "sum") return operator_result("result", annihilator_sum(arg(0), arg(1)));
  if (which == "product") return operator_result("result", annihilator_product(arg(0), arg(1)));
  if (which == "ode2rec") {
    auto r = ode_to_rec(arg(0));
    Output out = operator_result("result", r.rec);
    out.j["degree_bound"] = r.degree_bound;
    out.j["valid_from"] = r.valid_from;
    out.text("valid for n >= " + std::to_string(r.valid_from));
    return out;
  }
  if (which == "unroll") {
    auto v = unroll({arg(0), parse_values(o.init)}, static_cast<std::size_t>(o.count));
    Output out;
    json vals = json::array();
    std::string line;
    for (const auto& x : v) {
      vals.push_back(x.get_str());
      line += (line.empty() ? "" : ", ") + x.get_str();
    }
    out.j = {{"values", vals}};
    out.text(line);
    return out;
  }
  throw CLI::ValidationError("unknown dfinite operation " + which);
}

Output verify_cmd(const Options& o) {
  if (o.telescoper.empty()) throw CLI::ValidationError("verify needs --telescoper");
  OreOp P = parse_operator(o.telescoper, o.gen, "");
  VerificationReport rep;
  if (!o.values.empty()) {
    rep = check_recurrence_on_values(P, parse_values(o.values), 0);
  } else {
    if (o.exprs.empty()) throw CLI::ValidationError("verify needs a summand/integrand or --values");
    ExprPtr cert = parse_expr(o.certificate.empty() ? "0" : o.certificate);
    if (P.gen == OreGen::S) {
      if (P.var != "n") throw UnsupportedExpression("telescoper must be in S and n");
      rep = check_telescoper_sum(P, to_bivariate(*cert, "k", "n"), compile(parse_expr(o.exprs[0])));
    } else {
      if (P.var != "x") throw UnsupportedExpression("telescoper must be in D and x");
      rep = check_telescoper_integral(P, to_bivariate(*cert, "y", "x"), xy_function(o.exprs[0]));
    }
  }
  Output out;
  out.j = {{"verified", rep.ok}, {"residual", rep.residual}, {"warnings", strings(rep.warnings)}};
  out.text(std::string("verified: ") + (rep.ok ? "true" : "false"));
  out.text("residual: " + rep.residual);
  for (const auto& w : rep.warnings) out.text("warning: " + w);
  out.code = rep.ok ? kOk : kNo;
  return out;
}

void report_parse_error(const ParseError& e, const std::vector<std::string>& inputs) {
  std::cerr << "parse error: " << e.what() << "\n";
  for (const auto& s : inputs) {
    if (e.position > s.size()) continue;
    try {
      parse_expr(s);
    } catch (const ParseError& again) {
      if (again.position != e.position) continue;
      std::cerr << "  " << s << "\n  " << std::string(e.position, ' ') << "^\n";
      return;
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact symbolic summation and integration"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "machine-readable output");
  app.add_flag("--verify,!--no-verify", o.verify, "re-check every result (default on)");

  auto exprs = [&](CLI::App* c, const std::string& what, bool required = true) {
    auto* opt = c->add_option("expr", o.exprs, what);
    if (required) opt->required();
  };
  auto* integ = app.add_subcommand("integrate-rational", "integral of a rational function");
  exprs(integ, "rational function");
  integ->add_option("--var", o.var, "integration variable");
  auto* logp = app.add_subcommand("logpart", "logarithmic part of a proper rational function with squarefree denominator");
  exprs(logp, "rational function");
  logp->add_option("--var", o.var, "integration variable");
  auto* sp = app.add_subcommand("sum-polynomial", "indefinite sum of a polynomial");
  exprs(sp, "polynomial");
  sp->add_option("--var", o.var, "summation variable");
  auto* sr = app.add_subcommand("sum-rational", "Abramov decomposition f = g(k+1) - g(k) + r");
  exprs(sr, "rational function");
  sr->add_option("--var", o.var, "summation variable");
  auto* gos = app.add_subcommand("gosper", "indefinite hypergeometric summation");
  exprs(gos, "hypergeometric term");
  gos->add_option("--var", o.var, "summation variable (default k)");
  auto* zb = app.add_subcommand("zeilberger", "creative telescoping for a term in n and k");
  exprs(zb, "proper hypergeometric term");
  zb->add_option("--r-max", o.r_max, "largest telescoper order tried")->capture_default_str();
  auto* cel = app.add_subcommand("celine", "k-free recurrence and recurrence for the sum over k");
  exprs(cel, "proper hypergeometric term");
  cel->add_option("--r", o.r, "shifts in n")->capture_default_str();
  cel->add_option("--s", o.s, "shifts in k")->capture_default_str();
  auto* ct = app.add_subcommand("ct-rational", "telescoper in D_x for a rational function of x and y");
  exprs(ct, "rational function of x and y");
  ct->add_option("--method", o.method, "hermite or az")->capture_default_str();
  auto* dg = app.add_subcommand("diagonal", "annihilator of the diagonal of a rational power series in x and y");
  exprs(dg, "rational function of x and y");
  auto* df = app.add_subcommand("dfinite", "Ore operator arithmetic and closure properties");
  df->require_subcommand(1);
  std::string df_op;
  const std::vector<std::pair<const char*, const char*>> df_cmds{
      {"mul", "product of operators"},
      {"lclm", "least common left multiple"},
      {"sum", "annihilator of the sum of two solutions"},
      {"product", "annihilator of the product of two solutions"},
      {"ode2rec", "recurrence for the Taylor coefficients of a solution"},
      {"unroll", "sequence values from a recurrence"}};
  for (const auto& [name, help] : df_cmds) {
    auto* c = df->add_subcommand(name, help);
    exprs(c, "operators as polynomials in S or D");
    c->add_option("--gen", o.gen, "generator S or D");
    c->add_option("--var", o.var, "coefficient variable");
    if (std::string(name) == "unroll") {
      c->add_option("--init", o.init, "initial values, comma separated")->required();
      c->add_option("--count", o.count, "number of terms")->capture_default_str();
    }
    c->callback([&df_op, name] { df_op = name; });
  }
  auto* ver = app.add_subcommand("verify", "check a telescoper and certificate, or a recurrence on values");
  exprs(ver, "summand in n and k, or integrand in x and y", false);
  ver->add_option("--telescoper", o.telescoper, "operator in S (sums) or D (integrals)");
  ver->add_option("--certificate", o.certificate, "certificate ratio (sums) or function (integrals)");
  ver->add_option("--values", o.values, "comma separated values starting at n = 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    Output out;
    CLI::App* sub = app.get_subcommands().front();
    std::string name = sub->get_name();
    if (name == "integrate-rational") out = integrate_rational_cmd(o);
    else if (name == "logpart") out = logpart_cmd(o);
    else if (name == "sum-polynomial") out = sum_polynomial_cmd(o);
    else if (name == "sum-rational") out = sum_rational_cmd(o);
    else if (name == "gosper") out = gosper_cmd(o);
    else if (name == "zeilberger") out = zeilberger_cmd(o);
    else if (name == "celine") out = celine_cmd(o);
    else if (name == "ct-rational") out = ct_rational_cmd(o);
    else if (name == "diagonal") out = diagonal_cmd(o);
    else if (name == "dfinite") out = dfinite_cmd(df_op, o);
    else if (name == "verify") out = verify_cmd(o);
    return out.emit(o.json);
  } catch (const ParseError& e) {
    std::vector<std::string> inputs = o.exprs;
    for (const auto* s : {&o.telescoper, &o.certificate})
      if (!s->empty()) inputs.push_back(*s);
    report_parse_error(e, inputs);
    return kUsage;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedExpression& e) {
    std::cerr << "unsupported input: " << e.what() << "\n";
    return kUsage;
  } catch (const TypeError& e) {
    std::cerr << "type error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kUsage;
  } catch (const SingularPointError& e) {
    std::cerr << "singular point: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
