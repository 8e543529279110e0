#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "telescope/core/algebraic.hpp"
#include "telescope/core/factor.hpp"
#include "telescope/core/poly_algorithms.hpp"
#include "telescope/core/ratfun.hpp"
#include "telescope/integrate/hermite.hpp"

namespace telescope {

// Sum over the roots z of u of z * log(g(z, x)).
struct LogTerm {
  QPoly u;
  Poly<QPoly> g;  // in x, coefficients reduced polynomials in z
};

using LogPart = std::vector<LogTerm>;

namespace detail {

inline Poly<AlgNumber> to_alg(const Poly<QPoly>& p, const std::shared_ptr<const QPoly>& mod) {
  return p.map<AlgNumber>([&](const QPoly& c) { return AlgNumber(c, mod); });
}

inline Poly<AlgNumber> to_alg(const QPoly& p, const std::shared_ptr<const QPoly>& mod) {
  return p.map<AlgNumber>([&](const Rational& c) { return AlgNumber(QPoly(c, mod->var()), mod); });
}

inline Poly<QPoly> from_alg(const Poly<AlgNumber>& p, const std::string& zvar) {
  return p.map<QPoly>([&](const AlgNumber& c) { return c.rep().with_var(zvar); });
}

// Swap the roles of the outer and inner variables.
inline Poly<QPoly> transpose(const Poly<QPoly>& p, const std::string& inner_var) {
  int d = coeff_degree(p);
  std::vector<QPoly> out(static_cast<std::size_t>(std::max(d + 1, 0)));
  for (int j = 0; j <= d; ++j) {
    std::vector<Rational> c(static_cast<std::size_t>(p.degree() + 1));
    for (int i = 0; i <= p.degree(); ++i) c[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)].coeff(j);
    out[static_cast<std::size_t>(j)] = QPoly(std::move(c), p.var());
  }
  return Poly<QPoly>(std::move(out), inner_var);
}

}  // namespace detail

// Rothstein-Trager/Lazard-Rioboo-Trager logarithmic part of a proper a/b
// with b squarefree.
inline LogPart logpart(const QFun& f, const std::string& zvar = "z") {
  LogPart out;
  if (f.is_zero()) return out;
  const QPoly& a = f.num();
  const QPoly& b = f.den();
  if (a.degree() >= b.degree()) throw DomainError("logpart needs a proper rational function");
  if (gcd(b, b.derivative()).degree() > 0) throw DomainError("logpart needs a squarefree denominator");
  std::string x = b.var();
  QPoly db = b.derivative();
  int n = std::max(a.degree(), db.degree());
  std::vector<QPoly> ac;
  for (int i = 0; i <= n; ++i) ac.push_back(QPoly(std::vector<Rational>{a.coeff(i), -db.coeff(i)}, zvar));
  Poly<QPoly> A(std::move(ac), x);
  Poly<QPoly> B = b.map<QPoly>([&](const Rational& c) { return QPoly(c, zvar); });
  QPoly R = resultant_param(B, A, zvar);
  for (const auto& [u, e] : factor_rationals(R).factors) {
    if (u.degree() < 1) continue;
    auto mod = std::make_shared<const QPoly>(u.with_var(zvar));
    Poly<AlgNumber> g = gcd(detail::to_alg(B, mod), detail::to_alg(A, mod));
    out.push_back({u.with_var(zvar), detail::from_alg(g, zvar)});
  }
  return out;
}

// Derivative of the log part as an element of Q(x).
inline QFun logpart_derivative(const LogPart& L) {
  QFun total;
  for (const auto& t : L) {
    std::string zvar = t.u.var();
    std::string x = t.g.var();
    auto mod = std::make_shared<const QPoly>(t.u);
    Poly<AlgNumber> g = detail::to_alg(t.g, mod);
    Poly<QPoly> gz = detail::transpose(t.g, zvar);
    Poly<QPoly> uz = t.u.map<QPoly>([&](const Rational& c) { return QPoly(c, x); });
    QPoly N = resultant_param(gz, uz, x);
    Poly<AlgNumber> ghat = exact_div(detail::to_alg(N, mod), g);
    Poly<AlgNumber> prod = g.derivative() * ghat * AlgNumber::generator(mod);
    std::vector<Rational> c;
    for (int i = 0; i <= prod.degree(); ++i) c.push_back(prod[static_cast<std::size_t>(i)].trace());
    total += QFun(QPoly(std::move(c), x), N.with_var(x));
  }
  return total;
}

struct RationalIntegral {
  QFun rational;
  LogPart log;
};

inline RationalIntegral integrate_rational(const QFun& f, const std::string& zvar = "z") {
  auto hr = hermite_reduce(f);
  RationalIntegral out{hr.g, logpart(hr.h, zvar)};
  if (out.rational.derivative() + logpart_derivative(out.log) != f)
    throw std::logic_error("integration result failed differentiation check");
  return out;
}

inline std::string to_string(const LogTerm& t) {
  return "(" + t.u.to_string() + ", " + t.g.to_string() + ")";
}

}  // namespace telescope
