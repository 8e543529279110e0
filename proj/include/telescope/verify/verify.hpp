#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "telescope/core/errors.hpp"
#include "telescope/dfinite/ore.hpp"
#include "telescope/expr/eval.hpp"
#include "telescope/hyper/term.hpp"

namespace telescope {

struct VerificationReport {
  bool ok = false;
  std::string residual;
  std::vector<std::string> warnings;
};

// Roots k = a*n + b (a, b integers) of a bivariate polynomial in k.
inline std::vector<std::pair<long, long>> integer_linear_roots(const BiPoly& p) {
  std::vector<std::pair<long, long>> out;
  if (p.degree() < 1) return out;
  const long n0 = 1000;
  std::vector<Rational> c;
  for (int i = 0; i <= p.degree(); ++i) {
    const QFun& x = p[static_cast<std::size_t>(i)];
    if (is_zero(x.den()(Rational(n0)))) return out;
    c.push_back(x(Rational(n0)));
  }
  QPoly s(std::move(c), "k");
  if (s.is_zero()) return out;
  QFun n = QFun::variable("n");
  for (const auto& r : integer_roots(s)) {
    for (long a = -4; a <= 4; ++a) {
      Integer bb = r - a * n0;
      if (!bb.fits_slong_p()) continue;
      long b = bb.get_si();
      QFun at = p.eval(n * QFun(Rational(a)) + QFun(Rational(b)));
      if (at.is_zero()) out.emplace_back(a, b);
    }
  }
  return out;
}

inline std::string linear_string(long a, long b) {
  QPoly p(std::vector<Rational>{Rational(b), Rational(a)}, "n");
  return p.to_string();
}

// sum_i p_i(n) prod_{j<i} u(n+j,k) = R(n,k+1) v(n,k) - R(n,k).
inline VerificationReport check_telescoper_sum(const OreOp& P, const BiFun& R, const HyperTerm& t) {
  VerificationReport rep;
  BiFun lhs;
  BiFactored U;
  for (int i = 0; i <= P.order(); ++i) {
    if (i > 0) U *= t.uf.shift_n(i - 1);
    if (!P.coeffs[static_cast<std::size_t>(i)].is_zero()) lhs += BiFun(P.coeffs[static_cast<std::size_t>(i)]) * U.value();
  }
  BiFun res = lhs - (R.shift(QFun(Rational(1))) * t.v - R);
  rep.ok = res.is_zero();
  rep.residual = res.to_string();
  for (const auto& [a, b] : integer_linear_roots(R.den()))
    rep.warnings.push_back("certificate has a pole at k = " + linear_string(a, b));
  return rep;
}

// Coefficientwise d/dx of a function of y over Q(x).
inline BiFun diff_inner(const BiFun& f) {
  auto d = [](const BiPoly& p) {
    return p.map<QFun>([](const QFun& c) { return c.derivative(); }).with_var(p.var());
  };
  if (f.den().degree() == 0 && f.den().lc() == QFun(Rational(1))) return BiFun(d(f.num()));
  BiPoly dd = d(f.den());
  BiPoly h = gcd(f.den(), dd);
  BiPoly d1 = exact_div(f.den(), h);
  return BiFun(d(f.num()) * d1 - f.num() * exact_div(dd, h), f.den() * d1);
}

// P f - D_y g for P in D_x.
inline VerificationReport check_telescoper_integral(const OreOp& P, const BiFun& g, const BiFun& f) {
  VerificationReport rep;
  BiFun acc, df = f;
  for (int i = 0; i <= P.order(); ++i) {
    if (i > 0) df = diff_inner(df);
    if (!P.coeffs[static_cast<std::size_t>(i)].is_zero()) acc += BiFun(P.coeffs[static_cast<std::size_t>(i)]) * df;
  }
  BiFun res = acc - g.derivative();
  rep.ok = res.is_zero();
  rep.residual = res.to_string();
  return rep;
}

// values[i] is the term with index offset + i.
inline VerificationReport check_recurrence_on_values(const OreOp& P, const std::vector<Rational>& values, long offset) {
  int r = P.order();
  if (r < 0) throw DomainError("zero operator");
  if (values.size() <= static_cast<std::size_t>(r))
    throw DomainError("need more than " + std::to_string(r) + " values for a recurrence of order " + std::to_string(r));
  std::vector<QPoly> p = cleared_coefficients(P);
  VerificationReport rep{true, "0", {}};
  for (std::size_t m = 0; m + static_cast<std::size_t>(r) < values.size(); ++m) {
    Rational n(offset + static_cast<long>(m)), acc = 0;
    for (int i = 0; i <= r; ++i) acc += p[static_cast<std::size_t>(i)](n) * values[m + static_cast<std::size_t>(i)];
    if (!is_zero(acc)) {
      rep.ok = false;
      rep.residual = acc.get_str() + " at n = " + n.get_str();
      return rep;
    }
  }
  return rep;
}

// Half-width of a k-range containing the support of a binomial-bounded term.
inline long support_radius(const ExprPtr& e, long n) {
  ProductAtoms atoms = product_atoms(e);
  long best = -1;
  for (const auto& [arg, ex] : atoms.gammas) {
    BiFun f = to_bivariate(*arg, "k", "n");
    if (!f.is_polynomial() || f.num().degree() > 1) continue;
    if (f.num().coeff(1).is_zero()) continue;
    Rational c = f.num().coeff(0)(Rational(n));
    Integer bound = abs(c.get_num()) / c.get_den() + 2;
    if (bound.fits_slong_p()) best = std::max(best, bound.get_si());
  }
  if (best < 0) throw DomainError("cannot detect a finite support in k; give an explicit range");
  return best;
}

// Sum over k of the term at the given n, over [lo, hi] or the detected support.
inline Rational eval_sum(const ExprPtr& e, long n, std::optional<std::pair<long, long>> range = std::nullopt) {
  if (!range) {
    long r = support_radius(e, n);
    range = std::make_pair(-r, r);
  }
  Rational s = 0;
  for (long k = range->first; k <= range->second; ++k)
    s += eval_exact(*e, {{"n", Rational(n)}, {"k", Rational(k)}});
  return s;
}

// G(n, hi + 1) - G(n, lo) with G = R f, the right-hand side left over when
// the range is not natural.
inline Rational boundary_term(const ExprPtr& e, const BiFun& R, long n, long lo, long hi) {
  auto G = [&](long k) {
    Rational f = eval_exact(*e, {{"n", Rational(n)}, {"k", Rational(k)}});
    QFun num = R.num().eval(QFun(Rational(k))), den = R.den().eval(QFun(Rational(k)));
    if (den.is_zero()) throw DomainError("certificate is singular at k = " + std::to_string(k));
    QFun q = num / den;
    if (is_zero(q.den()(Rational(n)))) throw DomainError("certificate is singular at k = " + std::to_string(k));
    return Rational(q(Rational(n)) * f);
  };
  return G(hi + 1) - G(lo);
}

}  // namespace telescope
